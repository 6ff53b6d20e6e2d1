"""Command-line entry point: ``medsynth {profile,generate,evaluate,all}``."""

import argparse
import logging
import sys

from .exceptions import ConfigError, MedSynthError
from .pipeline import cmd_evaluate, cmd_generate, cmd_profile, load_config, load_real

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARTIAL = 2
EXIT_EVALUATION = 3


def build_parser():
    parser = argparse.ArgumentParser(prog="medsynth", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("profile", "profile the real table"),
                            ("generate", "generate and gate synthetic records"),
                            ("evaluate", "evaluate generated runs and write reports"),
                            ("all", "profile, generate and evaluate")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="run configuration JSON (default: bundled diabetes fixture)")
        p.add_argument("--jobs", type=int, help="concurrent generation runs")
        p.add_argument("--seed", type=int, help="master seed")
        p.add_argument("--out", help="output directory")
        p.add_argument("--backend", action="append", help="restrict to this backend (repeatable)")
        p.add_argument("--tier", action="append", help="restrict to this template tier (repeatable)")
        p.add_argument("--k", type=int, help="records requested per run")
    return parser


def _generation_status(metas):
    return EXIT_PARTIAL if any(m["status"] != "ok" for m in metas) else EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    overrides = {"jobs": args.jobs, "seed": args.seed, "output_dir": args.out,
                 "backends": args.backend, "tiers": args.tier, "k": args.k}
    try:
        cfg = load_config(args.config, overrides)
        real = load_real(cfg)
    except (ConfigError, MedSynthError) as exc:
        print(f"medsynth: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "profile":
            cmd_profile(cfg, real)
            print(cfg.output_dir / "profile.json")
            return EXIT_OK
        profile = cmd_profile(cfg, real)
        status = EXIT_OK
        if args.command in ("generate", "all"):
            metas = cmd_generate(cfg, real, profile)
            for m in metas:
                print(f"{m['run_id']}: {m['status']}"
                      + (f" ({m.get('n_accepted', 0)} accepted)" if m["status"] == "ok" else
                         f" - {m.get('error')}"))
            status = _generation_status(metas)
        if args.command in ("evaluate", "all"):
            report, runs = cmd_evaluate(cfg, real, profile)
            print(cfg.output_dir / "report.json")
            if any(r.status == "evaluation_failed" for r in runs):
                return EXIT_EVALUATION
            if any(r.status != "ok" for r in runs):
                status = EXIT_PARTIAL
        return status
    except ConfigError as exc:
        print(f"medsynth: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MedSynthError, OSError) as exc:
        print(f"medsynth: evaluation failed: {exc}", file=sys.stderr)
        return EXIT_EVALUATION


if __name__ == "__main__":
    sys.exit(main())
