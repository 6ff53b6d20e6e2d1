"""Pool-wise normalization, composite scores and report emission.

Raw metrics of every run in one invocation are min-max normalized per
metric name and direction-aligned so 1.0 is always best.  Quality and
privacy composites are plain means of the aligned values; the harmonic
score balances the two.  GFI and efficiency are gap scores: lower wins.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .fidelity import LOWER


@dataclass(frozen=True)
class Thresholds:
    eps_stat: float = 0.2
    eps_util: float = 0.1
    delta_priv: float = 0.5


@dataclass
class RunResult:
    run_id: str
    dataset: str
    backend: str
    tier: str
    seed: int
    status: str = "ok"
    error: str = None
    quality: dict = field(default_factory=dict)    # name -> MetricValue
    privacy: dict = field(default_factory=dict)
    mcs: float = None
    duration_seconds: float = None
    rejection: dict = field(default_factory=dict)
    utility: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    unavailable: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)

    @property
    def evaluated(self):
        return self.status == "ok" and bool(self.quality or self.privacy)


def normalize(pool):
    """Direction-aligned min-max normalization of each metric over the pool.

    ``pool`` is a list of ``{name: MetricValue}``.  A metric that is
    constant across the pool, or seen in only one run, maps to 1.0.
    """
    bounds = {}
    for metrics in pool:
        for name, m in metrics.items():
            lo, hi = bounds.get(name, (m.value, m.value))
            bounds[name] = (min(lo, m.value), max(hi, m.value))
    out = []
    for metrics in pool:
        norm = {}
        for name, m in metrics.items():
            lo, hi = bounds[name]
            if hi == lo:
                norm[name] = 1.0
                continue
            v = (m.value - lo) / (hi - lo)
            norm[name] = 1.0 - v if m.direction == LOWER else v
        out.append(norm)
    return out


def mean_score(values):
    values = list(values)
    if not values:
        return None
    return float(np.mean(values))


def harmonic(q, p):
    return 0.0 if q + p == 0 else 2.0 * q * p / (q + p)


def gfi(quality_norm, privacy_norm, mcs):
    """Mean gap ``1 - aligned`` over quality, privacy and rule-consistency terms."""
    if not quality_norm or not privacy_norm or mcs is None:
        return None
    gaps = [1.0 - v for v in quality_norm] + [1.0 - v for v in privacy_norm] + [1.0 - mcs]
    return float(np.mean(gaps))


def norm_speeds(durations):
    """Min-max scaled durations with the fastest at 0; constant pools give 0."""
    vals = [d for d in durations if d is not None]
    if len(vals) < 2 or max(vals) == min(vals):
        return [None if d is None else 0.0 for d in durations]
    lo, hi = min(vals), max(vals)
    return [None if d is None else (d - lo) / (hi - lo) for d in durations]


def efficiency(norm_speed, gfi_value):
    if norm_speed is None or gfi_value is None:
        return None
    return 0.5 * (norm_speed + gfi_value)


def mean_ks(run):
    ks = [m.value for k, m in run.quality.items() if k.startswith("ks[")]
    return float(np.mean(ks)) if ks else None


def utility_gap(run, classifier=None):
    """Largest TRTR minus TSTR accuracy over the available classifiers."""
    tstr, trtr = run.utility.get("TSTR", {}), run.utility.get("TRTR", {})
    gaps = []
    for kind, cell in tstr.items():
        if classifier and kind != classifier:
            continue
        base = trtr.get(kind, {})
        if "accuracy" in cell and "accuracy" in base:
            gaps.append(base["accuracy"] - cell["accuracy"])
    return max(gaps) if gaps else None


def score_pool(runs, thresholds=Thresholds()):
    """Composite scores and threshold flags for every evaluated run, in order."""
    evaluated = [r for r in runs if r.evaluated]
    qn = normalize([r.quality for r in evaluated])
    pn = normalize([r.privacy for r in evaluated])
    speeds = norm_speeds([r.duration_seconds for r in evaluated])
    scores = {}
    for run, q_norm, p_norm, speed in zip(evaluated, qn, pn, speeds):
        Q = mean_score(q_norm.values())
        P = mean_score(p_norm.values())
        H = harmonic(Q, P) if Q is not None and P is not None else None
        G = gfi(list(q_norm.values()), list(p_norm.values()), run.mcs)
        ks = mean_ks(run)
        gap = utility_gap(run)
        flags = {
            "stat_ok": None if ks is None else ks <= thresholds.eps_stat,
            "privacy_flagged": None if P is None else P < thresholds.delta_priv,
            "util_ok": None if gap is None else gap <= thresholds.eps_util,
        }
        scores[run.run_id] = {
            "Q": Q, "P": P, "H": H, "GFI": G, "norm_speed": speed,
            "efficiency": efficiency(speed, G), "mean_ks": ks, "utility_gap": gap,
            "flags": flags, "normalized": {"quality": q_norm, "privacy": p_norm},
        }
    return scores


def _metric_map(metrics):
    return {k: metrics[k].to_dict() for k in sorted(metrics)}


def build_report(runs, scores, thresholds=Thresholds(), meta=None):
    """Machine-readable report; contains nothing wall-clock dependent for mock runs."""
    entries = []
    for run in runs:
        entry = {
            "run_id": run.run_id, "dataset": run.dataset, "backend": run.backend,
            "tier": run.tier, "seed": run.seed, "status": run.status,
            "rejection": run.rejection, "artifacts": run.artifacts,
            "duration_seconds": run.duration_seconds,
        }
        if run.error:
            entry["error"] = run.error
        if run.evaluated:
            entry.update({
                "metrics": {"quality": _metric_map(run.quality), "privacy": _metric_map(run.privacy)},
                "mcs": run.mcs, "utility": run.utility, "details": run.details,
                "unavailable": run.unavailable, "scores": scores.get(run.run_id),
            })
        entries.append(entry)
    return {
        "meta": meta or {},
        "thresholds": {"eps_stat": thresholds.eps_stat, "eps_util": thresholds.eps_util,
                       "delta_priv": thresholds.delta_priv},
        "runs": entries,
    }


def _fmt(x, digits=2):
    return "--" if x is None else f"{x:.{digits}f}"


def _table(header, rows):
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines)


def render_markdown(report):
    runs = [r for r in report["runs"] if r.get("scores")]
    out = ["# Synthetic data evaluation report", ""]
    th = report["thresholds"]
    out.append(f"Thresholds: eps_stat={th['eps_stat']}, eps_util={th['eps_util']}, "
               f"delta_priv={th['delta_priv']}")
    out += ["", "## Quality / privacy / harmonic", ""]
    rows = []
    for r in runs:
        s = r["scores"]
        marker = " (flagged)" if s["flags"]["privacy_flagged"] else ""
        rows.append([r["dataset"], r["backend"], r["tier"], _fmt(s["Q"]), _fmt(s["P"]) + marker, _fmt(s["H"])])
    out.append(_table(["Dataset", "Backend", "Tier", "Qual.", "Priv.", "H"], rows))
    out += ["", "## Machine-learning utility", ""]
    rows = []
    for r in runs:
        for kind in sorted(r["utility"].get("TSTR", {})):
            cells = []
            for direction in ("TSTR", "TRTS"):
                c = r["utility"].get(direction, {}).get(kind, {})
                cells += [_fmt(c.get("accuracy")), _fmt(c.get("macro_f1")), _fmt(c.get("auc_roc"))]
            rows.append([r["run_id"], kind] + cells)
    out.append(_table(["Run", "Classifier", "TSTR Acc.", "TSTR F1", "TSTR AUC",
                       "TRTS Acc.", "TRTS F1", "TRTS AUC"], rows))
    out += ["", "## Efficiency ranking (lower is better)", ""]
    ranked = sorted(runs, key=lambda r: (r["scores"]["efficiency"] is None,
                                         r["scores"]["efficiency"] or 0.0, r["run_id"]))
    rows = [[i, r["run_id"], _fmt(r["scores"]["GFI"], 3), _fmt(r["scores"]["norm_speed"], 3),
             _fmt(r["scores"]["efficiency"], 3)] for i, r in enumerate(ranked, start=1)]
    out.append(_table(["Rank", "Run", "GFI", "NormSpeed", "Efficiency"], rows))
    failed = [r for r in report["runs"] if r["status"] != "ok"]
    if failed:
        out += ["", "## Failed runs", ""]
        out.append(_table(["Run", "Status", "Error"],
                          [[r["run_id"], r["status"], r.get("error", "")] for r in failed]))
    flagged = [r["run_id"] for r in runs
               if r["scores"]["flags"]["privacy_flagged"] or r["scores"]["flags"]["stat_ok"] is False
               or r["scores"]["flags"]["util_ok"] is False]
    if flagged:
        out += ["", "## Flagged for review", ""] + [f"- {rid}" for rid in flagged]
    return "\n".join(out) + "\n"


def render_grid_csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["run_id", "dataset", "backend", "tier", "status", "Q", "P", "H", "GFI",
                "efficiency", "stat_ok", "privacy_flagged", "util_ok"])
    for r in report["runs"]:
        s = r.get("scores") or {}
        flags = s.get("flags", {})
        w.writerow([r["run_id"], r["dataset"], r["backend"], r["tier"], r["status"]]
                   + ["" if s.get(k) is None else repr(s[k]) for k in ("Q", "P", "H", "GFI", "efficiency")]
                   + ["" if flags.get(k) is None else flags[k]
                      for k in ("stat_ok", "privacy_flagged", "util_ok")])
    return buf.getvalue()


def emit_report(report, out_dir):
    """Write report.json, report.md and score_grid.csv; returns their paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {"json": out / "report.json", "markdown": out / "report.md", "csv": out / "score_grid.csv"}
    paths["json"].write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    paths["markdown"].write_text(render_markdown(report), encoding="utf-8")
    paths["csv"].write_text(render_grid_csv(report), encoding="utf-8")
    return paths
