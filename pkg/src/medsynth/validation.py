"""Input validation helpers used at public entry points."""

import math

import numpy as np

from .exceptions import UndefinedMetricError

PMF_ATOL = 1e-9


def check_sample(values, name="sample", min_size=1):
    """Return ``values`` as a finite 1-D float array with at least ``min_size`` entries.

    Missing entries (NaN) are dropped before the size check.
    """
    arr = np.asarray(values, dtype=float).ravel()
    arr = arr[~np.isnan(arr)]
    if arr.size < min_size:
        raise UndefinedMetricError(
            f"{name} needs at least {min_size} value(s), got {arr.size}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains infinite values")
    return arr


def check_pmf(p, name="pmf"):
    arr = np.asarray(p, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has negative or non-finite entries")
    if abs(arr.sum() - 1.0) > PMF_ATOL:
        raise ValueError(f"{name} sums to {arr.sum():.12g}, expected 1")
    return arr


def check_same_length(*arrays):
    lengths = {len(a) for a in arrays}
    if len(lengths) > 1:
        raise ValueError(f"inputs have mismatched lengths {sorted(lengths)}")


def check_unit_interval(x, name):
    if not (0.0 <= x <= 1.0) or math.isnan(x):
        raise ValueError(f"{name} must lie in [0, 1], got {x}")
    return float(x)


def check_positive_int(x, name, minimum=1):
    if isinstance(x, bool) or int(x) != x or x < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {x!r}")
    return int(x)
