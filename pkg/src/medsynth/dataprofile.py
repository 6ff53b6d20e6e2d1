"""Privacy-safe aggregate profile of a real table.

Only aggregates leave this module: per-column moments and quartiles for
numeric columns, thresholded category frequencies for categorical and
binary columns, and the Pearson correlations worth mentioning.
"""

import json
import warnings
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .exceptions import InsufficientDataError
from .table import ColumnSchema, DatasetTable

QUANTILE_PROBS = (0.25, 0.5, 0.75)
OTHER = "Other"


@dataclass(frozen=True)
class NumericProfile:
    mean: float
    std: float
    min: float
    max: float
    quantiles: tuple  # values at QUANTILE_PROBS

    def to_dict(self):
        return {
            "mean": self.mean,
            "std": self.std,
            "min": self.min,
            "max": self.max,
            "quantiles": {str(p): q for p, q in zip(QUANTILE_PROBS, self.quantiles)},
        }

    @classmethod
    def from_dict(cls, d):
        qs = tuple(float(d["quantiles"][str(p)]) for p in QUANTILE_PROBS)
        return cls(float(d["mean"]), float(d["std"]), float(d["min"]), float(d["max"]), qs)


@dataclass(frozen=True)
class CategoricalProfile:
    pmf: dict
    # Internal only: never serialized, since rare tokens are exactly what we hide.
    merged_other: tuple = ()
    counts: dict = field(default_factory=dict)
    # True when the "Other" entry is the merge bucket rather than a real token.
    other_bucket: bool = False

    def to_dict(self):
        return {"pmf": dict(self.pmf), "other_bucket": self.other_bucket}

    @classmethod
    def from_dict(cls, d):
        pmf = {str(k): float(v) for k, v in d["pmf"].items()}
        return cls(pmf=pmf, other_bucket=bool(d.get("other_bucket", False)))


@dataclass(frozen=True)
class CorrelationSet:
    entries: tuple = ()  # (f, g, rho) with f before g in schema order
    expert_flagged: frozenset = frozenset()

    def to_dict(self):
        return {
            "entries": [{"f": f, "g": g, "rho": rho} for f, g, rho in self.entries],
            "expert_flagged": sorted(sorted(p) for p in self.expert_flagged),
        }

    @classmethod
    def from_dict(cls, d):
        entries = tuple((e["f"], e["g"], float(e["rho"])) for e in d["entries"])
        flagged = frozenset(frozenset(p) for p in d.get("expert_flagged", []))
        return cls(entries, flagged)

    def pairs(self):
        return [(f, g) for f, g, _ in self.entries]


@dataclass(frozen=True)
class DataProfile:
    schema: tuple
    numeric: dict
    categorical: dict
    correlations: CorrelationSet
    row_count: int
    missingness: dict = field(default_factory=dict)

    def column(self, name):
        for c in self.schema:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            # Declared category lists may name rare tokens, so they stay out.
            "schema": [c.to_dict(include_categories=False) for c in self.schema],
            "numeric": {k: v.to_dict() for k, v in self.numeric.items()},
            "categorical": {k: v.to_dict() for k, v in self.categorical.items()},
            "correlations": self.correlations.to_dict(),
            "row_count": self.row_count,
            "missingness": dict(self.missingness),
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        return cls(
            schema=tuple(ColumnSchema.from_dict(c) for c in d["schema"]),
            numeric={k: NumericProfile.from_dict(v) for k, v in d["numeric"].items()},
            categorical={k: CategoricalProfile.from_dict(v) for k, v in d["categorical"].items()},
            correlations=CorrelationSet.from_dict(d["correlations"]),
            row_count=int(d["row_count"]),
            missingness={k: float(v) for k, v in d.get("missingness", {}).items()},
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def profile_numeric(values):
    arr = np.asarray(values, dtype=float).ravel()
    arr = arr[~np.isnan(arr)]
    if arr.size < 2:
        raise InsufficientDataError(f"need at least 2 values, got {arr.size}")
    qs = np.quantile(arr, QUANTILE_PROBS, method="linear")
    return NumericProfile(
        mean=float(arr.mean()),
        std=float(arr.std(ddof=1)),
        min=float(arr.min()),
        max=float(arr.max()),
        quantiles=tuple(float(q) for q in qs),
    )


def profile_categorical(values, threshold=5):
    """Frequency table with sub-threshold categories folded into ``"Other"``.

    The merged bucket is surfaced even when it is itself below the
    threshold; merging cannot recurse.
    """
    counts = {}
    for v in values:
        if v is None or (isinstance(v, float) and np.isnan(v)):
            continue
        key = _category_key(v)
        counts[key] = counts.get(key, 0) + 1
    total = sum(counts.values())
    if total == 0:
        raise InsufficientDataError("column has no non-missing values")
    kept = {c: n for c, n in counts.items() if n >= threshold}
    merged = tuple(sorted(c for c in counts if counts[c] < threshold))
    if merged:
        kept[OTHER] = kept.get(OTHER, 0) + sum(counts[c] for c in merged)
    order = sorted(kept, key=lambda c: (c == OTHER, -kept[c], c))
    pmf = {c: kept[c] / total for c in order}
    return CategoricalProfile(pmf=pmf, merged_other=merged, counts=dict(counts),
                              other_bucket=bool(merged))


def _category_key(v):
    if isinstance(v, (float, np.floating)) and float(v).is_integer():
        return str(int(v))
    return str(v)


def pearson(x, y):
    """Pearson correlation of two equal-length float arrays; None if either is constant."""
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    if sxx == 0.0 or syy == 0.0:
        return None
    rho = float(np.dot(xc, yc)) / np.sqrt(sxx * syy)
    return max(-1.0, min(1.0, rho))


def compute_correlations(table, cutoff=0.15, expert_flagged=()):
    """Pairwise Pearson correlations over numeric and binary columns.

    A pair is kept when ``|rho| > cutoff`` or it is expert-flagged.  Rows
    missing either value are dropped pairwise.
    """
    flagged = frozenset(frozenset(p) for p in expert_flagged)
    names = table.numeric_like_names()
    entries = []
    if len(names) < 2 or table.n_rows < 3:
        return CorrelationSet((), flagged)
    for f, g in combinations(names, 2):
        x, y = table.column(f), table.column(g)
        ok = ~np.isnan(x) & ~np.isnan(y)
        if ok.sum() < 3:
            continue
        rho = pearson(x[ok], y[ok])
        if rho is None:
            warnings.warn(f"correlation {f}~{g} skipped: zero variance", RuntimeWarning, stacklevel=2)
            continue
        if abs(rho) > cutoff or frozenset((f, g)) in flagged:
            entries.append((f, g, rho))
    return CorrelationSet(tuple(entries), flagged)


def build_profile(table, threshold=5, cutoff=0.15, expert_flagged=()):
    numeric, categorical, missingness = {}, {}, {}
    for col in table.schema:
        values = table.column(col.name)
        missingness[col.name] = float(table.missing_mask(col.name).mean()) if table.n_rows else 0.0
        try:
            if col.kind == "numeric":
                numeric[col.name] = profile_numeric(values)
            else:
                categorical[col.name] = profile_categorical(values, threshold)
        except InsufficientDataError as exc:
            raise InsufficientDataError(f"column {col.name!r}: {exc}") from exc
    return DataProfile(
        schema=table.schema,
        numeric=numeric,
        categorical=categorical,
        correlations=compute_correlations(table, cutoff, expert_flagged),
        row_count=table.n_rows,
        missingness=missingness,
    )


class DataProfiler(BaseEstimator):
    """Estimator wrapper around :func:`build_profile`.

    >>> profiler = DataProfiler(threshold=5).fit(table)   # doctest: +SKIP
    >>> profiler.profile_.row_count                        # doctest: +SKIP
    """

    def __init__(self, threshold=5, cutoff=0.15, expert_flagged=()):
        self.threshold = threshold
        self.cutoff = cutoff
        self.expert_flagged = expert_flagged

    def fit(self, table, y=None):
        if not isinstance(table, DatasetTable):
            raise TypeError(f"expected a DatasetTable, got {type(table).__name__}")
        self.profile_ = build_profile(table, self.threshold, self.cutoff, self.expert_flagged)
        self.n_features_in_ = len(table.schema)
        return self

    def transform(self, table=None):
        check_is_fitted(self, "profile_")
        return self.profile_.to_dict()
