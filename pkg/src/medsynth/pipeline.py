"""End-to-end orchestration: profile, prompt, generate, gate, evaluate, report.

Each (backend, tier) pair is an isolated run with its own artifact
directory ``runs/{dataset}-{backend}-{tier}-{seed}/``.  A failing run is
recorded and skipped; it never aborts its siblings.
"""

import json
import logging
import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .dataprofile import DataProfiler
from .exceptions import ConfigError, MedSynthError, UndefinedMetricError
from .fidelity import evaluate_fidelity, load_checks
from .genclient import API_KEY_ENV, GenerationConfig, MockBackend, RemoteBackend, generate
from .mlutility import ClassifierSpec, tstr_trts
from .privacyaudit import PrivacyConfig, evaluate_privacy
from .promptforge import DEFAULT_INCLUDE_SEEDS, TemplateTier, build_prompt, sample_seeds
from .recordgate import RecordGate, mcs, parse_lines
from .rules import RuleSet, load_rules
from .scoreboard import RunResult, Thresholds, build_report, emit_report, score_pool
from .table import load_csv, load_schema

logger = logging.getLogger(__name__)

ENDPOINT_ENV = "SYNTH_API_BASE"
MODEL_ENV = "SYNTH_MODEL"
RUN_FILES = ("prompt.txt", "raw.ndjson", "accepted.csv", "accepted.ndjson", "rejections.json",
             "log.jsonl", "run.json")


def bundled_config_path():
    return Path(str(resources.files("medsynth") / "data" / "diabetes" / "config.json"))


@dataclass
class RunConfig:
    path: Path
    dataset: str
    data_path: Path
    schema: tuple
    label: str
    task: str
    rules: RuleSet
    checks: tuple
    tiers: list
    backends: list
    k: int
    seed: int = 0
    n_seeds: int = 3
    include_seeds: dict = field(default_factory=dict)
    generation: dict = field(default_factory=dict)
    thresholds: Thresholds = field(default_factory=Thresholds)
    profile: dict = field(default_factory=dict)
    privacy: PrivacyConfig = field(default_factory=PrivacyConfig)
    classifiers: tuple = ()
    repeats: int = 3
    repair: bool = True
    output_dir: Path = Path("medsynth-out")
    jobs: int = 1

    def run_id(self, backend, tier):
        return f"{self.dataset}-{backend['name']}-{TemplateTier.parse(tier).value}-{self.seed}"

    def run_seed(self, backend, tier):
        salt = zlib.crc32(f"{backend['name']}|{TemplateTier.parse(tier).value}".encode())
        return int(np.random.SeedSequence([self.seed, salt]).generate_state(1)[0])

    def run_dir(self, run_id):
        return self.output_dir / "runs" / run_id


def _resolve(base, value):
    p = Path(value)
    return p if p.is_absolute() else base / p


def _load_part(base, value, loader, *args):
    """Config entries may be inline documents or paths relative to the config file."""
    if isinstance(value, str):
        return loader(_resolve(base, value), *args)
    return loader(value, *args)


def load_config(path=None, overrides=None):
    """Read and validate a run configuration; problems raise :class:`ConfigError`."""
    path = Path(path) if path else bundled_config_path()
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    base = path.parent
    try:
        ds = doc["dataset"]
        columns, label = _load_part(base, ds["schema"], load_schema)
        data_path = _resolve(base, ds["path"])
    except KeyError as exc:
        raise ConfigError(f"config is missing {exc}") from None
    except MedSynthError as exc:
        raise ConfigError(f"schema: {exc}") from exc
    label = ds.get("label", label)
    rules = _load_part(base, doc["rules"], load_rules, columns) if doc.get("rules") else RuleSet()
    checks = _load_part(base, doc["checks"], load_checks, columns) if doc.get("checks") else ()

    backends = list(doc.get("backends") or [{"name": "mock", "type": "mock"}])
    for b in backends:
        if b.get("type", "mock") not in ("mock", "remote") or "name" not in b:
            raise ConfigError(f"bad backend entry {b!r}")
    if "backends" in overrides:
        wanted = list(overrides["backends"])
        known = {b["name"] for b in backends}
        missing = [w for w in wanted if w not in known]
        if missing:
            raise ConfigError(f"unknown backend(s) {missing}; configured: {sorted(known)}")
        backends = [b for b in backends if b["name"] in wanted]
    if not backends:
        raise ConfigError("at least one backend is required")
    try:
        tiers = [TemplateTier.parse(t).value for t in overrides.get("tiers", doc.get("tiers", []))]
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    k = int(overrides.get("k", doc.get("k", 100)))
    if k < 1:
        raise ConfigError("k must be >= 1")
    include = {TemplateTier.parse(t).value: bool(v) for t, v in (doc.get("include_seeds") or {}).items()}
    try:
        GenerationConfig(**doc.get("generation", {}))
        thresholds = Thresholds(**doc.get("thresholds", {}))
        privacy = PrivacyConfig(**doc.get("privacy", {}))
        util = doc.get("utility", {})
        classifiers = tuple(ClassifierSpec(c) if isinstance(c, str) else ClassifierSpec(**c)
                            for c in util.get("classifiers", ["decision_tree", "random_forest",
                                                              "boosted_trees"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    out = overrides.get("output_dir", doc.get("output_dir", "medsynth-out"))
    return RunConfig(
        path=path, dataset=ds.get("name", data_path.stem), data_path=data_path,
        schema=tuple(columns), label=label, task=ds.get("task", "clinical prediction"),
        rules=rules, checks=checks, tiers=tiers, backends=backends, k=k,
        seed=int(overrides.get("seed", doc.get("seed", 0))), n_seeds=int(doc.get("n_seeds", 3)),
        include_seeds=include, generation=dict(doc.get("generation", {})), thresholds=thresholds,
        profile=dict(doc.get("profile", {})), privacy=privacy, classifiers=classifiers,
        repeats=int(util.get("repeats", 3)), repair=bool(doc.get("repair", True)),
        output_dir=Path(out), jobs=max(1, int(overrides.get("jobs", doc.get("jobs", 1)))),
    )


def load_real(cfg):
    try:
        return load_csv(cfg.data_path, cfg.schema, cfg.label)
    except OSError as exc:
        raise ConfigError(f"cannot read dataset: {exc}") from exc


def fit_profile(cfg, real):
    p = cfg.profile
    return DataProfiler(threshold=p.get("threshold", 5), cutoff=p.get("cutoff", 0.15),
                        expert_flagged=tuple(tuple(x) for x in p.get("expert_flagged", ()))).fit(real).profile_


def cmd_profile(cfg, real=None):
    """Profile the real table and write ``profile.json``; returns the profile."""
    real = real if real is not None else load_real(cfg)
    profile = fit_profile(cfg, real)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    (cfg.output_dir / "profile.json").write_text(profile.to_json() + "\n", encoding="utf-8")
    return profile


def make_backend(spec, cfg, profile, seed):
    if spec.get("type", "mock") == "mock":
        return MockBackend(profile, cfg.rules, repair=spec.get("repair", cfg.repair), seed=seed,
                           seconds_per_record=spec.get("seconds_per_record", 0.001), name=spec["name"])
    endpoint = spec.get("endpoint") or os.environ.get(ENDPOINT_ENV)
    model = spec.get("model") or os.environ.get(MODEL_ENV)
    if not endpoint or not model:
        raise ConfigError(f"remote backend {spec['name']!r} needs an endpoint and a model")
    return RemoteBackend(endpoint, model, api_key=os.environ.get(spec.get("api_key_env", API_KEY_ENV)),
                         timeout=spec.get("timeout", 120.0), seed=spec.get("seed"), name=spec["name"])


def _write_json(path, doc):
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def run_generation(cfg, real, profile, backend_spec, tier, backend=None):
    """One isolated (backend, tier) run; returns the ``run.json`` document."""
    run_id = cfg.run_id(backend_spec, tier)
    out = cfg.run_dir(run_id)
    out.mkdir(parents=True, exist_ok=True)
    meta = {"run_id": run_id, "dataset": cfg.dataset, "backend": backend_spec["name"],
            "tier": tier, "seed": cfg.seed, "k": cfg.k, "status": "ok"}
    try:
        seed = cfg.run_seed(backend_spec, tier)
        tier_enum = TemplateTier.parse(tier)
        use_seeds = cfg.include_seeds.get(tier, DEFAULT_INCLUDE_SEEDS[tier_enum])
        seeds = sample_seeds(real, min(cfg.n_seeds, real.n_rows), seed) if use_seeds else []
        prompt = build_prompt(tier_enum, profile, cfg.rules, cfg.k, seeds, task=cfg.task)
        (out / "prompt.txt").write_text(prompt.to_text(), encoding="utf-8")
        gen_cfg = GenerationConfig(**{**cfg.generation, "seed": seed})
        backend = backend or make_backend(backend_spec, cfg, profile, seed)
        try:
            lines, log = generate(prompt, gen_cfg, backend, profile)
        except MedSynthError as exc:
            log = getattr(exc, "log", None)
            if log is not None:
                (out / "log.jsonl").write_text(log.to_jsonl(), encoding="utf-8")
            raise
        (out / "raw.ndjson").write_text("".join(json.dumps(ln) + "\n" for ln in lines), encoding="utf-8")
        gate = RecordGate(cfg.schema, cfg.rules, cfg.label).fit(real)
        accepted = gate.transform(lines)
        log.rejected_lines = gate.report_.n_lines - gate.report_.counts["accepted"]
        (out / "log.jsonl").write_text(log.to_jsonl(), encoding="utf-8")
        _write_json(out / "rejections.json", gate.report_.to_dict())
        accepted.to_csv(out / "accepted.csv")
        (out / "accepted.ndjson").write_text(
            "".join(json.dumps(r, sort_keys=True) + "\n" for r in accepted.records()), encoding="utf-8")
        parsed, _ = parse_lines(lines, cfg.schema, gate.vocabularies_)
        meta.update({
            "rejection": gate.report_.counts,
            "acceptance_rate": gate.report_.acceptance_rate,
            "n_accepted": accepted.n_rows,
            "mcs": mcs(parsed, cfg.rules) if parsed else None,
            "mcs_hard": mcs(parsed, cfg.rules.hard_rules) if parsed else None,
            "duration_seconds": log.duration_seconds,
            "generation": log.summary(),
        })
    except Exception as exc:  # isolation: one run's failure never aborts the others
        logger.warning("run %s failed: %s", run_id, exc)
        meta.update(status="failed", error=f"{type(exc).__name__}: {exc}")
    _write_json(out / "run.json", meta)
    return meta


def _pairs(cfg):
    return [(b, t) for b in cfg.backends for t in cfg.tiers]


def cmd_generate(cfg, real=None, profile=None, backends=None):
    """Generate every (backend, tier) run, up to ``cfg.jobs`` at a time.

    ``backends`` optionally maps backend names to ready-made backend
    objects (used by tests to inject transports).  Returns run metadata in
    configuration order.
    """
    real = real if real is not None else load_real(cfg)
    profile = profile if profile is not None else cmd_profile(cfg, real)
    backends = backends or {}
    pairs = _pairs(cfg)
    if not pairs:
        logger.info("no tiers selected; nothing to generate")
        return []
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        futures = [pool.submit(run_generation, cfg, real, profile, b, t, backends.get(b["name"]))
                   for b, t in pairs]
        return [f.result() for f in futures]


def evaluate_run(cfg, real, profile, meta):
    run = RunResult(run_id=meta["run_id"], dataset=meta["dataset"], backend=meta["backend"],
                    tier=meta["tier"], seed=meta["seed"], status=meta.get("status", "failed"),
                    error=meta.get("error"), mcs=meta.get("mcs"),
                    duration_seconds=meta.get("duration_seconds"),
                    rejection=meta.get("rejection", {}))
    run_dir = Path("runs") / run.run_id
    run.artifacts = {name.replace(".", "_"): str(run_dir / name) for name in RUN_FILES
                     if (cfg.output_dir / run_dir / name).exists()}
    if run.status != "ok":
        return run
    try:
        syn = load_csv(cfg.run_dir(run.run_id) / "accepted.csv", cfg.schema, cfg.label)
        if syn.n_rows == 0:
            raise UndefinedMetricError("no accepted records")
        fid = evaluate_fidelity(real, syn, cfg.checks, profile.correlations.pairs())
        priv = evaluate_privacy(real, syn, cfg.privacy)
        run.quality, run.privacy = fid.metrics, priv.metrics
        run.unavailable = {**fid.unavailable, **priv.unavailable}
        run.details = {**fid.details, **priv.details}
        if cfg.label and cfg.classifiers:
            run.utility = tstr_trts(real, syn, cfg.classifiers, cfg.repeats, cfg.seed).to_dict()
        else:
            run.unavailable["utility"] = "no label column configured"
    except Exception as exc:  # recorded as an unavailable run, others continue
        logger.warning("evaluation of %s failed: %s", run.run_id, exc)
        run.status = "evaluation_failed"
        run.error = f"{type(exc).__name__}: {exc}"
    return run


def cmd_evaluate(cfg, real=None, profile=None):
    """Evaluate every configured run found on disk and write the reports.

    Returns ``(report, runs)``.
    """
    real = real if real is not None else load_real(cfg)
    profile = profile if profile is not None else fit_profile(cfg, real)
    runs = []
    for b, t in _pairs(cfg):
        run_id = cfg.run_id(b, t)
        meta_path = cfg.run_dir(run_id) / "run.json"
        if meta_path.exists():
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
        else:
            meta = {"run_id": run_id, "dataset": cfg.dataset, "backend": b["name"], "tier": t,
                    "seed": cfg.seed, "status": "missing", "error": "run was not generated"}
        runs.append(evaluate_run(cfg, real, profile, meta))
    scores = score_pool(runs, cfg.thresholds)
    meta = {"dataset": cfg.dataset, "seed": cfg.seed, "k": cfg.k, "tiers": cfg.tiers,
            "backends": [b["name"] for b in cfg.backends], "version": __version__,
            "profile": "profile.json"}
    report = build_report(runs, scores, cfg.thresholds, meta)
    emit_report(report, cfg.output_dir)
    return report, runs


def cmd_all(cfg):
    real = load_real(cfg)
    profile = cmd_profile(cfg, real)
    cmd_generate(cfg, real, profile)
    return cmd_evaluate(cfg, real, profile)
