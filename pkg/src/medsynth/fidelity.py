"""Two-sample fidelity metrics between a real table and its synthetic counterpart.

Every metric is returned as a :class:`MetricValue` carrying its direction,
so downstream aggregation can align "higher is better" without a lookup.
Continuous columns are discretized onto a shared equal-width grid before
any information-theoretic comparison.
"""

import json
import math
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import numpy as np
from scipy.stats import chi2 as chi2_dist

from .dataprofile import pearson
from .exceptions import ConfigError, UndefinedMetricError
from .validation import check_pmf, check_sample

HIGHER = "higher_better"
LOWER = "lower_better"
KL_EPS = 1e-6
CONSISTENCY_EPS = 1e-9


@dataclass(frozen=True)
class MetricValue:
    name: str
    value: float
    direction: str
    scope: str = "dataset"

    def __post_init__(self):
        if self.direction not in (HIGHER, LOWER):
            raise ValueError(f"bad direction {self.direction!r}")
        if not math.isfinite(self.value):
            raise ValueError(f"metric {self.name} is not finite: {self.value}")

    def to_dict(self):
        return {"value": self.value, "direction": self.direction, "scope": self.scope}


@dataclass(frozen=True)
class HistogramSpec:
    bin_count: int = 20

    def __post_init__(self):
        if self.bin_count < 2:
            raise ValueError("bin_count must be >= 2")


# ---------------------------------------------------------------- numeric

def wasserstein_1d(real, syn):
    """Integral of ``|F_real - F_syn|`` over the pooled support."""
    x = np.sort(check_sample(real, "real"))
    y = np.sort(check_sample(syn, "syn"))
    grid = np.unique(np.concatenate([x, y]))
    if grid.size < 2:
        return 0.0
    fx = np.searchsorted(x, grid[:-1], side="right") / x.size
    fy = np.searchsorted(y, grid[:-1], side="right") / y.size
    return float(np.sum(np.abs(fx - fy) * np.diff(grid)))


def ks_statistic(real, syn):
    x = np.sort(check_sample(real, "real"))
    y = np.sort(check_sample(syn, "syn"))
    grid = np.concatenate([x, y])
    fx = np.searchsorted(x, grid, side="right") / x.size
    fy = np.searchsorted(y, grid, side="right") / y.size
    return float(np.max(np.abs(fx - fy)))


def _ad_variance(n_sizes, N):
    k = len(n_sizes)
    H = sum(1.0 / n for n in n_sizes)
    inv = 1.0 / np.arange(1, N)                       # 1/1 .. 1/(N-1)
    h = float(inv.sum())
    # g = sum_{i=1}^{N-2} sum_{j=i+1}^{N-1} 1 / ((N - i) j)
    tail = np.cumsum(inv[::-1])[::-1]                  # tail[m] = sum_{j=m+1}^{N-1} 1/j
    i = np.arange(1, N - 1)
    g = float(np.sum(tail[i] / (N - i)))
    a = (4 * g - 6) * (k - 1) + (10 - 6 * g) * H
    b = (2 * g - 4) * k ** 2 + 8 * h * k + (2 * g - 14 * h - 4) * H - 8 * h + 4 * g - 6
    c = (6 * h + 2 * g - 2) * k ** 2 + (4 * h - 4 * g + 6) * k + (2 * h - 6) * H + 4 * h
    d = (2 * h + 6) * k ** 2 - 4 * h * k
    return (a * N ** 3 + b * N ** 2 + c * N + d) / ((N - 1.0) * (N - 2.0) * (N - 3.0))


def ad_ksample(real, syn):
    """Standardized two-sample Anderson-Darling statistic with midrank ties.

    Returns ``(A2 - (k - 1)) / sigma`` where ``A2`` is the tie-corrected
    rank statistic and ``sigma`` its null standard deviation.
    """
    samples = [np.sort(check_sample(real, "real", 2)), np.sort(check_sample(syn, "syn", 2))]
    pooled = np.sort(np.concatenate(samples))
    N = pooled.size
    distinct = np.unique(pooled)
    if distinct.size < 2:
        raise UndefinedMetricError("Anderson-Darling is undefined when every value is identical")
    below = np.searchsorted(pooled, distinct, side="left")
    ties = np.searchsorted(pooled, distinct, side="right") - below
    b_mid = below + ties / 2.0
    denom = b_mid * (N - b_mid) - N * ties / 4.0
    a2 = 0.0
    for s in samples:
        s_below = np.searchsorted(s, distinct, side="left")
        s_ties = np.searchsorted(s, distinct, side="right") - s_below
        m_mid = s_below + s_ties / 2.0
        a2 += np.sum(ties / N * (N * m_mid - s.size * b_mid) ** 2 / denom) / s.size
    a2 *= (N - 1.0) / N
    sigma2 = _ad_variance([s.size for s in samples], N)
    return float((a2 - (len(samples) - 1)) / math.sqrt(sigma2))


def range_coverage(real, syn):
    """``(coverage, overflow_fraction)`` of the synthetic range against the real one."""
    x = check_sample(real, "real")
    y = check_sample(syn, "syn")
    lo, hi = float(x.min()), float(x.max())
    if hi == lo:
        raise UndefinedMetricError("range coverage needs a non-degenerate real range")
    overlap = max(0.0, min(hi, float(y.max())) - max(lo, float(y.min())))
    overflow = float(np.mean((y < lo) | (y > hi)))
    return overlap / (hi - lo), overflow


# ---------------------------------------------------------------- distributions

def _shared_support(p, q):
    p = check_pmf(p, "p")
    q = check_pmf(q, "q")
    if p.size != q.size:
        raise ValueError("pmfs must share a support")
    return p, q


def _plogp_ratio(p, q):
    mask = p > 0
    return float(np.sum(p[mask] * np.log2(p[mask] / q[mask])))


def jsd(p, q):
    p, q = _shared_support(p, q)
    m = 0.5 * (p + q)
    value = 0.5 * _plogp_ratio(p, m) + 0.5 * _plogp_ratio(q, m)
    return min(1.0, max(0.0, value))


def kl_divergence(p, q, eps=KL_EPS):
    """``KL(p || q)`` in bits, with ``eps`` added to ``q`` and renormalized.

    Cells empty in both pmfs are dropped first so the smoothing only
    touches the support that is actually shared.
    """
    p, q = _shared_support(p, q)
    keep = (p > 0) | (q > 0)
    p, q = p[keep], q[keep]
    q = (q + eps) / (1.0 + eps * q.size)
    return max(0.0, _plogp_ratio(p, q))


def entropy(p):
    p = check_pmf(p)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz)))


def entropy_difference(p, q):
    return abs(entropy(p) - entropy(q))


def bin_codes(values, lo, hi, bins):
    """Equal-width bin index of each value over ``[lo, hi]``; the top edge is closed."""
    values = np.asarray(values, dtype=float)
    if hi == lo:
        return np.zeros(values.size, dtype=int)
    idx = np.floor((values - lo) * bins / (hi - lo)).astype(int)
    return np.clip(idx, 0, bins - 1)


def histogram_pmfs(real, syn, spec=HistogramSpec()):
    """Pmfs of both samples over ``spec.bin_count`` bins spanning the pooled range."""
    x = check_sample(real, "real")
    y = check_sample(syn, "syn")
    lo = float(min(x.min(), y.min()))
    hi = float(max(x.max(), y.max()))
    bins = spec.bin_count
    p = np.bincount(bin_codes(x, lo, hi, bins), minlength=bins) / x.size
    q = np.bincount(bin_codes(y, lo, hi, bins), minlength=bins) / y.size
    return p, q


def category_counts(values):
    counts = {}
    for v in values:
        if v is None or (isinstance(v, float) and math.isnan(v)):
            continue
        key = str(int(v)) if isinstance(v, (float, np.floating)) and float(v).is_integer() else str(v)
        counts[key] = counts.get(key, 0) + 1
    return counts


def category_pmfs(real_counts, syn_counts):
    universe = sorted(set(real_counts) | set(syn_counts))
    rt, st = sum(real_counts.values()), sum(syn_counts.values())
    if rt == 0 or st == 0:
        raise UndefinedMetricError("category pmf needs at least one value per side")
    p = np.array([real_counts.get(c, 0) / rt for c in universe])
    q = np.array([syn_counts.get(c, 0) / st for c in universe])
    return p, q


def chi_square(real_counts, syn_counts):
    """Goodness of fit of synthetic counts against real proportions.

    Categories never seen in the real data (expected count 0) are folded
    into the cell with the smallest positive expectation.
    Returns ``(statistic, p_value)``.
    """
    universe = sorted(set(real_counts) | set(syn_counts))
    real_total = sum(real_counts.get(c, 0) for c in universe)
    syn_total = sum(syn_counts.get(c, 0) for c in universe)
    if syn_total < 1 or real_total < 1:
        raise UndefinedMetricError("chi-square needs counts on both sides")
    observed = np.array([syn_counts.get(c, 0) for c in universe], dtype=float)
    expected = np.array([real_counts.get(c, 0) for c in universe], dtype=float) / real_total * syn_total
    zero = expected == 0
    if zero.any():
        target = int(np.argmin(np.where(zero, np.inf, expected)))
        observed[target] += observed[zero].sum()
        observed, expected = observed[~zero], expected[~zero]
    if observed.size < 2:
        raise UndefinedMetricError("chi-square needs at least 2 cells")
    stat = float(np.sum((observed - expected) ** 2 / expected))
    return stat, float(chi2_dist.sf(stat, observed.size - 1))


def category_preservation(real_cats, syn_cats):
    """``(rate, hallucinated)``: share of real categories seen in syn, and novel syn categories."""
    real_cats, syn_cats = set(real_cats), set(syn_cats)
    if not real_cats:
        raise UndefinedMetricError("no real categories")
    return len(real_cats & syn_cats) / len(real_cats), len(syn_cats - real_cats)


def mutual_information(x, y):
    """MI in bits between two discrete code sequences."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.size != y.size:
        raise ValueError("columns differ in length")
    if x.size < 2:
        raise UndefinedMetricError("mutual information needs at least 2 rows")
    _, xi = np.unique(x, return_inverse=True)
    _, yi = np.unique(y, return_inverse=True)
    joint = np.zeros((xi.max() + 1, yi.max() + 1))
    np.add.at(joint, (xi, yi), 1.0)
    joint /= x.size
    px = joint.sum(axis=1, keepdims=True)
    py = joint.sum(axis=0, keepdims=True)
    nz = joint > 0
    return max(0.0, float(np.sum(joint[nz] * np.log2(joint[nz] / (px @ py)[nz]))))


# ---------------------------------------------------------------- table level

def correlation_matrix(table, names):
    """Pairwise-complete Pearson matrix; zero-variance rows and columns are 0."""
    n = len(names)
    mat = np.zeros((n, n))
    for i, f in enumerate(names):
        x = table.column(f)
        ok = ~np.isnan(x)
        if ok.sum() >= 2 and np.ptp(x[ok]) > 0:
            mat[i, i] = 1.0
        else:
            warnings.warn(f"column {f} has zero variance; its correlations are set to 0",
                          RuntimeWarning, stacklevel=3)
    for i, j in combinations(range(n), 2):
        if mat[i, i] == 0 or mat[j, j] == 0:
            continue
        x, y = table.column(names[i]), table.column(names[j])
        ok = ~np.isnan(x) & ~np.isnan(y)
        rho = pearson(x[ok], y[ok]) if ok.sum() >= 2 else None
        mat[i, j] = mat[j, i] = 0.0 if rho is None else rho
    return mat


def correlation_gap(real, syn, pairs=()):
    """Frobenius norm of the correlation-matrix difference, plus ``|delta rho|`` per pair."""
    names = real.numeric_like_names()
    if names != syn.numeric_like_names():
        raise ValueError("real and synthetic tables have different numeric columns")
    if len(names) < 2:
        raise UndefinedMetricError("correlation gap needs at least 2 numeric columns")
    cr = correlation_matrix(real, names)
    cs = correlation_matrix(syn, names)
    pos = {n: i for i, n in enumerate(names)}
    deltas = {f"{f}~{g}": abs(cr[pos[f], pos[g]] - cs[pos[f], pos[g]]) for f, g in pairs}
    return float(np.linalg.norm(cr - cs, "fro")), deltas


@dataclass(frozen=True)
class ClinicalCheck:
    type: str
    columns: tuple

    KINDS = {"group_mean_gap": ("value", "group"), "slope_gap": ("x", "y"),
             "cooccurrence_gap": ("a", "b")}

    @property
    def label(self):
        return f"{self.type}({', '.join(self.columns)})"

    def statistic(self, table):
        """The check's statistic on ``table``, or None when a group is empty."""
        u, v = (table.column(c) for c in self.columns)
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        ok = ~np.isnan(u) & ~np.isnan(v)
        u, v = u[ok], v[ok]
        if self.type == "group_mean_gap":
            hi, lo = u[v == 1], u[v == 0]
            if hi.size == 0 or lo.size == 0:
                return None
            return float(hi.mean() - lo.mean())
        if self.type == "slope_gap":
            if u.size < 2 or np.ptp(u) == 0:
                return None
            uc = u - u.mean()
            return float(np.dot(uc, v - v.mean()) / np.dot(uc, uc))
        if u.size == 0:
            return None
        return float(np.mean((u == 1) & (v == 1)))

    def to_dict(self):
        return {"type": self.type, **dict(zip(self.KINDS[self.type], self.columns))}


def load_checks(source, schema):
    """Parse a checks document: a JSON list (or path to one) of ``{type, <columns>}``."""
    if isinstance(source, (str, Path)):
        try:
            source = json.loads(Path(source).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read checks file: {exc}") from exc
    if isinstance(source, dict):
        source = source.get("checks", [])
    kinds = {c.name: c.kind for c in schema}
    checks = []
    for d in source or []:
        kind = d.get("type")
        if kind not in ClinicalCheck.KINDS:
            raise ConfigError(f"unknown check type {kind!r}")
        cols = []
        for role in ClinicalCheck.KINDS[kind]:
            name = d.get(role)
            if name not in kinds:
                raise ConfigError(f"check {kind}: unknown column {name!r} for {role!r}")
            if kinds[name] == "categorical":
                raise ConfigError(f"check {kind}: column {name!r} must be numeric or binary")
            cols.append(name)
        checks.append(ClinicalCheck(kind, tuple(cols)))
    return tuple(checks)


def clinical_consistency_score(real, syn, checks):
    """Mean relative deviation ``|s_real - s_syn| / (|s_real| + 1e-9)`` over the checks.

    Returns ``(score, per_check)``; checks with an empty group on either
    side are skipped with a warning.
    """
    per_check = {}
    for check in checks:
        a, b = check.statistic(real), check.statistic(syn)
        if a is None or b is None:
            warnings.warn(f"clinical check {check.label} skipped: empty group", RuntimeWarning, stacklevel=2)
            continue
        per_check[check.label] = abs(a - b) / (abs(a) + CONSISTENCY_EPS)
    if not per_check:
        raise UndefinedMetricError("every clinical check was skipped")
    return float(np.mean(list(per_check.values()))), per_check


# ---------------------------------------------------------------- driver

@dataclass
class MetricReport:
    metrics: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    unavailable: dict = field(default_factory=dict)

    def add(self, name, value, direction, scope="dataset"):
        self.metrics[name] = MetricValue(name, float(value), direction, scope)

    def value(self, name):
        return self.metrics[name].value

    def to_dict(self):
        return {k: self.metrics[k].to_dict() for k in sorted(self.metrics)}


def _codes(table, name, lo_hi, bins):
    col = table.column_schema(name)
    values = table.column(name)
    if col.kind == "numeric":
        lo, hi = lo_hi[name]
        out = np.full(values.size, -1)
        ok = ~np.isnan(values)
        out[ok] = bin_codes(values[ok], lo, hi, bins)
        return out
    if col.kind == "binary":
        return np.where(np.isnan(values), -1, values).astype(int)
    return np.array(["\0" if v is None else v for v in values], dtype=object)


def _missing_code(codes):
    return codes == -1 if codes.dtype != object else np.array([c == "\0" for c in codes])


def mutual_information_gap(real, syn, spec=HistogramSpec()):
    """Mean ``|MI_real - MI_syn|`` over all column pairs, plus the per-pair values."""
    lo_hi = {}
    for name in real.names_of_kind("numeric"):
        pooled = np.concatenate([real.column(name), syn.column(name)])
        pooled = pooled[~np.isnan(pooled)]
        lo_hi[name] = (float(pooled.min()), float(pooled.max())) if pooled.size else (0.0, 0.0)
    codes_r = {n: _codes(real, n, lo_hi, spec.bin_count) for n in real.names}
    codes_s = {n: _codes(syn, n, lo_hi, spec.bin_count) for n in real.names}
    pairs = {}
    for f, g in combinations(real.names, 2):
        mi = []
        for codes in (codes_r, codes_s):
            ok = ~_missing_code(codes[f]) & ~_missing_code(codes[g])
            mi.append(mutual_information(codes[f][ok], codes[g][ok]))
        pairs[f"{f}~{g}"] = {"real": mi[0], "syn": mi[1], "gap": abs(mi[0] - mi[1])}
    if not pairs:
        raise UndefinedMetricError("mutual information needs at least 2 columns")
    return float(np.mean([p["gap"] for p in pairs.values()])), pairs


def _try(report, name, fn):
    try:
        return fn()
    except UndefinedMetricError as exc:
        report.unavailable[name] = str(exc)
        return None


def evaluate_fidelity(real, syn, checks=(), pairs=(), spec=HistogramSpec()):
    """Every fidelity metric for one synthetic table, keyed ``metric[column]``.

    ``pairs`` are the correlation pairs worth reporting individually
    (normally the profile's retained pairs).
    """
    if syn.n_rows == 0:
        raise UndefinedMetricError("synthetic table is empty")
    if real.names != syn.names:
        raise ValueError("real and synthetic tables have different columns")
    rep = MetricReport()
    for col in real.schema:
        name = col.name
        tag = f"[{name}]"
        scope = f"column({name})"
        if col.kind == "numeric":
            r, s = real.column(name), syn.column(name)
            for metric, fn in (("wasserstein", wasserstein_1d), ("ks", ks_statistic),
                               ("anderson_darling", ad_ksample)):
                v = _try(rep, metric + tag, lambda fn=fn: fn(r, s))
                if v is not None:
                    rep.add(metric + tag, v, LOWER, scope)
            pq = _try(rep, "jsd" + tag, lambda: histogram_pmfs(r, s, spec))
            cov = _try(rep, "range_coverage" + tag, lambda: range_coverage(r, s))
            if cov is not None:
                rep.add("range_coverage" + tag, cov[0], HIGHER, scope)
                rep.add("range_overflow" + tag, cov[1], LOWER, scope)
        else:
            rc, sc = category_counts(real.column(name)), category_counts(syn.column(name))
            pq = _try(rep, "jsd" + tag, lambda: category_pmfs(rc, sc))
            chi = _try(rep, "chi2" + tag, lambda: chi_square(rc, sc))
            if chi is not None:
                rep.add("chi2" + tag, chi[0], LOWER, scope)
                rep.add("chi2_pvalue" + tag, chi[1], HIGHER, scope)
            pres = _try(rep, "category_preservation" + tag, lambda: category_preservation(rc, sc))
            if pres is not None:
                rep.add("category_preservation" + tag, pres[0], HIGHER, scope)
                rep.add("hallucinated_categories" + tag, pres[1], LOWER, scope)
        if pq is not None:
            p, q = pq
            rep.add("jsd" + tag, jsd(p, q), LOWER, scope)
            rep.add("kl" + tag, kl_divergence(p, q), LOWER, scope)
            rep.add("entropy_gap" + tag, entropy_difference(p, q), LOWER, scope)
    chis = [m.value for k, m in rep.metrics.items() if k.startswith("chi2[")]
    if chis:
        rep.add("chi2_mean", float(np.mean(chis)), LOWER)
    gap = _try(rep, "correlation_gap", lambda: correlation_gap(real, syn, pairs))
    if gap is not None:
        rep.add("correlation_gap", gap[0], LOWER)
        for key, delta in gap[1].items():
            rep.add(f"correlation_delta[{key}]", delta, LOWER, f"pair({key.replace('~', ',')})")
    mi = _try(rep, "mi_gap", lambda: mutual_information_gap(real, syn, spec))
    if mi is not None:
        rep.add("mi_gap", mi[0], LOWER)
        rep.details["mutual_information"] = mi[1]
    if checks:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            ccs = _try(rep, "clinical_consistency", lambda: clinical_consistency_score(real, syn, checks))
        if ccs is not None:
            rep.add("clinical_consistency", ccs[0], LOWER)
            rep.details["clinical_checks"] = ccs[1]
        skipped = [str(w.message) for w in caught]
        if skipped:
            rep.details["skipped_checks"] = skipped
    return rep
