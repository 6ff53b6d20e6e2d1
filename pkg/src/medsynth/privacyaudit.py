"""Empirical disclosure-risk audit of a synthetic table against its source.

These are audits, not guarantees: they measure how close synthetic rows
sit to real ones, how many are verbatim copies, and how easy the two sets
are to tell apart.
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .exceptions import ConfigError, UndefinedMetricError
from .fidelity import HIGHER, LOWER, MetricReport, bin_codes

ROUND_DECIMALS = 9
# Distances this close count as a tie in NNAA (the cross-set neighbour wins).
TIE_RTOL = 1e-9


@dataclass(frozen=True)
class PrivacyConfig:
    k_anon: int = 5
    numeric_bins_for_quasi_id: int = 10
    covariance_ridge: float = 1e-6
    threshold: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.k_anon < 2:
            raise ValueError("k_anon must be >= 2")
        if self.covariance_ridge <= 0:
            raise ValueError("covariance_ridge must be > 0")
        if self.numeric_bins_for_quasi_id < 1:
            raise ValueError("numeric_bins_for_quasi_id must be >= 1")


class MixedDistance:
    """Embed rows so Euclidean distance is z-scored on numerics plus one per mismatch.

    Numeric columns are standardized with the reference table's mean and
    (population) standard deviation, a zero deviation counting as 1, and
    missing numerics sit at the mean.  Binary columns enter as 0/1.
    Categorical columns become one-hot blocks scaled by ``1/sqrt(2)`` so a
    mismatch adds exactly 1 to the squared distance.
    """

    def fit(self, table):
        self.schema_ = table.schema
        self.center_, self.scale_, self.vocab_ = {}, {}, {}
        for col in table.schema:
            values = table.column(col.name)
            if col.kind == "numeric":
                ok = values[~np.isnan(values)]
                mu = float(ok.mean()) if ok.size else 0.0
                sd = float(ok.std()) if ok.size else 0.0
                self.center_[col.name] = mu
                self.scale_[col.name] = sd if sd > 0 else 1.0
        return self

    def transform(self, table, vocab):
        blocks = []
        for col in self.schema_:
            values = table.column(col.name)
            if col.kind == "numeric":
                z = (values - self.center_[col.name]) / self.scale_[col.name]
                blocks.append(np.nan_to_num(z, nan=0.0)[:, None])
            elif col.kind == "binary":
                blocks.append(np.nan_to_num(values, nan=-1.0)[:, None])
            else:
                pos = {c: i for i, c in enumerate(vocab[col.name])}
                onehot = np.zeros((table.n_rows, len(pos)))
                for r, v in enumerate(values):
                    onehot[r, pos[v]] = 1.0
                blocks.append(onehot / np.sqrt(2.0))
        return np.hstack(blocks) if blocks else np.zeros((table.n_rows, 0))


def embed_pair(real, syn):
    """Embed both tables with statistics fitted on ``real``."""
    vocab = {}
    for col in real.schema:
        if col.kind == "categorical":
            seen = set(real.column(col.name)) | set(syn.column(col.name))
            vocab[col.name] = sorted(seen, key=lambda v: (v is None, str(v)))
    dist = MixedDistance().fit(real)
    return dist.transform(real, vocab), dist.transform(syn, vocab)


def nn_distance_ratio(real, syn):
    """Mean synthetic-to-real NN distance over the mean real leave-one-out NN distance."""
    if real.n_rows < 2 or syn.n_rows < 1:
        raise UndefinedMetricError("need at least 2 real rows and 1 synthetic row")
    xr, xs = embed_pair(real, syn)
    d_rr = cdist(xr, xr)
    np.fill_diagonal(d_rr, np.inf)
    denominator = float(d_rr.min(axis=1).mean())
    if denominator == 0.0:
        raise UndefinedMetricError("every real row has an identical twin; the ratio is undefined")
    return float(cdist(xs, xr).min(axis=1).mean()) / denominator


def _canonical_rows(table):
    keys = []
    for rec in table.records():
        keys.append(tuple(round(v, ROUND_DECIMALS) if isinstance(v, float) else v
                          for v in rec.values()))
    return keys


def identifiability_score(real, syn):
    """Share of synthetic rows identical to some real row."""
    if syn.n_rows == 0:
        raise UndefinedMetricError("synthetic table is empty")
    real_rows = set(_canonical_rows(real))
    return sum(1 for r in _canonical_rows(syn) if r in real_rows) / syn.n_rows


def _quasi_keys(table, qi, edges, bins):
    keys = []
    columns = {}
    for col in qi:
        values = table.column(col.name)
        if col.kind == "numeric":
            lo, hi = edges[col.name]
            codes = bin_codes(np.nan_to_num(values, nan=lo), lo, hi, bins).astype(object)
            codes[values < lo] = "below"
            codes[values > hi] = "above"
            codes[np.isnan(values)] = None
            columns[col.name] = codes
        elif col.kind == "binary":
            columns[col.name] = [None if np.isnan(v) else int(v) for v in values]
        else:
            columns[col.name] = list(values)
    for i in range(table.n_rows):
        keys.append(tuple(columns[c.name][i] for c in qi))
    return keys


def k_anonymity_violation_rate(real, syn, cfg=PrivacyConfig()):
    """Share of synthetic rows whose quasi-identifier class holds fewer than k real rows."""
    qi = [c for c in real.schema if c.quasi_identifier]
    if not qi:
        raise ConfigError("no quasi-identifier columns are flagged in the schema")
    if real.n_rows == 0 or syn.n_rows == 0:
        raise UndefinedMetricError("k-anonymity needs rows on both sides")
    edges = {}
    for col in qi:
        if col.kind == "numeric":
            v = real.column(col.name)
            v = v[~np.isnan(v)]
            edges[col.name] = (float(v.min()), float(v.max())) if v.size else (0.0, 0.0)
    bins = cfg.numeric_bins_for_quasi_id
    classes = Counter(_quasi_keys(real, qi, edges, bins))
    syn_keys = _quasi_keys(syn, qi, edges, bins)
    return sum(1 for key in syn_keys if classes.get(key, 0) < cfg.k_anon) / syn.n_rows


def mahalanobis_anomaly(real, syn, cfg=PrivacyConfig()):
    """``(scores, mean)`` of ridge-regularized Mahalanobis distances to the real mean.

    Uses numeric columns only; rows with a missing numeric are dropped.
    """
    names = real.names_of_kind("numeric")
    if len(names) < 2:
        raise UndefinedMetricError("Mahalanobis needs at least 2 numeric columns")
    xr = np.column_stack([real.column(n) for n in names])
    xs = np.column_stack([syn.column(n) for n in names])
    xr = xr[~np.isnan(xr).any(axis=1)]
    xs = xs[~np.isnan(xs).any(axis=1)]
    if xr.shape[0] <= len(names):
        raise UndefinedMetricError("need more real rows than numeric columns")
    if xs.shape[0] == 0:
        raise UndefinedMetricError("no complete synthetic rows")
    mu = xr.mean(axis=0)
    cov = np.cov(xr, rowvar=False) + cfg.covariance_ridge * np.eye(len(names))
    diff = xs - mu
    solved = np.linalg.solve(cov, diff.T).T
    scores = np.sqrt(np.maximum(np.sum(diff * solved, axis=1), 0.0))
    return scores, float(scores.mean())


def _strictly_nearer(own, cross):
    return own < cross * (1.0 - TIE_RTOL)


def nnaa(real, syn, cfg=PrivacyConfig()):
    """Nearest-neighbour adversarial accuracy; 0.5 means indistinguishable.

    The larger table is subsampled (seeded) to the size of the smaller.
    A distance tie, up to ``TIE_RTOL`` relative rounding, counts the
    cross-set neighbour as nearest.
    """
    if real.n_rows < 2 or syn.n_rows < 2:
        raise UndefinedMetricError("NNAA needs at least 2 rows per side")
    n = min(real.n_rows, syn.n_rows)
    rng = np.random.default_rng(cfg.seed)
    if real.n_rows > n:
        real = real.take(np.sort(rng.choice(real.n_rows, n, replace=False)))
    if syn.n_rows > n:
        syn = syn.take(np.sort(rng.choice(syn.n_rows, n, replace=False)))
    xr, xs = embed_pair(real, syn)
    d_rr = cdist(xr, xr)
    d_ss = cdist(xs, xs)
    np.fill_diagonal(d_rr, np.inf)
    np.fill_diagonal(d_ss, np.inf)
    d_rs = cdist(xr, xs)
    aa_real = np.mean(_strictly_nearer(d_rr.min(axis=1), d_rs.min(axis=1)))
    aa_syn = np.mean(_strictly_nearer(d_ss.min(axis=1), d_rs.min(axis=0)))
    return float(0.5 * (aa_real + aa_syn))


def evaluate_privacy(real, syn, cfg=PrivacyConfig()):
    rep = MetricReport()

    def attempt(name, fn):
        try:
            return fn()
        except (UndefinedMetricError, ConfigError) as exc:
            rep.unavailable[name] = str(exc)
            return None

    ratio = attempt("nn_distance_ratio", lambda: nn_distance_ratio(real, syn))
    if ratio is not None:
        rep.add("nn_distance_ratio", ratio, HIGHER)
    ident = attempt("identifiability", lambda: identifiability_score(real, syn))
    if ident is not None:
        rep.add("identifiability", ident, LOWER)
    kanon = attempt("k_anonymity_violation", lambda: k_anonymity_violation_rate(real, syn, cfg))
    if kanon is not None:
        rep.add("k_anonymity_violation", kanon, LOWER)
    mai = attempt("mahalanobis_mean", lambda: mahalanobis_anomaly(real, syn, cfg))
    if mai is not None:
        rep.add("mahalanobis_mean", mai[1], LOWER)
    score = attempt("nnaa_gap", lambda: nnaa(real, syn, cfg))
    if score is not None:
        rep.add("nnaa_gap", abs(score - 0.5), LOWER)
        rep.details["nnaa"] = score
        rep.details["nnaa_seed"] = cfg.seed
    return rep
