"""Drive a text-generation backend in batches and log what came back.

Two backends ship: :class:`RemoteBackend` speaks the OpenAI-compatible
chat-completions protocol, and :class:`MockBackend` samples independent
marginals from a :class:`~medsynth.dataprofile.DataProfile` (the null
model used as a test double and a fidelity baseline).
"""

import json
import logging
import os
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone

import httpx
import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .dataprofile import OTHER
from .exceptions import BackendError, EmptyGenerationError, InfeasibleRulesError
from .rules import RuleSet
from .table import binary_value, render_csv_row

logger = logging.getLogger(__name__)

API_KEY_ENV = "SYNTH_API_KEY"
CHARS_PER_TOKEN = 4
BUDGET_SAFETY = 1.25
MIN_BUDGET = 64
PERMANENT_STATUSES = frozenset({400, 401, 403, 404, 405, 422})


@dataclass
class GenerationConfig:
    backend: str = "mock"
    endpoint: str = None
    model: str = None
    temperature: float = 0.7
    top_p: float = 0.9
    batch_size: int = 20
    max_tokens: int = None
    seed: int = 0
    retries: int = 2
    backoff_seconds: float = 0.5
    timeout_seconds: float = 120.0

    def __post_init__(self):
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError(f"temperature must be in [0, 2], got {self.temperature}")
        if not 0.0 < self.top_p <= 1.0:
            raise ValueError(f"top_p must be in (0, 1], got {self.top_p}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.retries < 0:
            raise ValueError("retries must be >= 0")


@dataclass
class GenerationLog:
    backend: str
    records_requested: int
    batches: list = field(default_factory=list)
    rejected_lines: int = 0
    started_at: str = ""
    finished_at: str = ""

    @property
    def raw_lines_received(self):
        return sum(b["received"] for b in self.batches)

    @property
    def wall_clock_seconds(self):
        return sum(b["wall_clock_seconds"] for b in self.batches)

    @property
    def duration_seconds(self):
        """Seconds used for efficiency scoring (simulated for deterministic backends)."""
        return sum(b["duration_seconds"] for b in self.batches)

    @property
    def failures(self):
        return [b for b in self.batches if b["status"] != "ok"]

    def to_jsonl(self):
        return "".join(json.dumps(dict(b, backend=self.backend), sort_keys=True) + "\n"
                       for b in self.batches)

    def summary(self):
        return {
            "backend": self.backend,
            "records_requested": self.records_requested,
            "raw_lines_received": self.raw_lines_received,
            "rejected_lines": self.rejected_lines,
            "n_batches": len(self.batches),
            "n_failures": len(self.failures),
        }


def _now():
    return datetime.now(timezone.utc).isoformat(timespec="milliseconds")


def example_record(profile):
    """One plausible record rendered as CSV, used to size the token budget."""
    rec = {}
    for col in profile.schema:
        if col.kind == "numeric":
            rec[col.name] = round(profile.numeric[col.name].mean, 2)
        else:
            top = next(iter(profile.categorical[col.name].pmf))
            rec[col.name] = binary_value(top) if col.kind == "binary" else top
    return render_csv_row(rec, profile.schema)


def token_budget(k, prompt=None, profile=None, record_text=None):
    """``max(64, ceil(k * per_record * 1.25))`` with ``per_record = ceil(chars / 4) + 2``."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if record_text is None:
        if profile is not None:
            record_text = example_record(profile)
        elif prompt is not None and prompt.seeds:
            record_text = prompt.seeds[0]
        elif prompt is not None:
            record_text = prompt.placeholder_log.get("header", "")
        else:
            raise ValueError("token_budget needs a profile, a prompt, or record_text")
    per_record = -(-len(record_text) // CHARS_PER_TOKEN) + 2
    # Integer form of ceil(k * per_record * 1.25) avoids float rounding.
    return max(MIN_BUDGET, -(-k * per_record * 5 // 4))


class IndependentMarginalsSampler(BaseEstimator):
    """Sample rows column by column from a profile, ignoring correlations.

    Numeric columns draw from ``normal(mean, std)`` clipped to the observed
    ``[min, max]``; categorical and binary columns draw from their pmf, with
    the ``"Other"`` bucket resolved uniformly over the tokens it merged.
    With ``repair=True`` a row that breaks a rule has the consequent fields
    of the broken rules redrawn, up to ``max_attempts`` times, after which
    the row is dropped.
    """

    def __init__(self, rules=None, repair=True, random_state=0, max_attempts=100, decimals=2):
        self.rules = rules
        self.repair = repair
        self.random_state = random_state
        self.max_attempts = max_attempts
        self.decimals = decimals

    def fit(self, profile, y=None):
        self.profile_ = profile
        self.schema_ = tuple(profile.schema)
        self._tokens = {}
        for col in self.schema_:
            if col.kind == "numeric":
                continue
            cat = profile.categorical[col.name]
            self._tokens[col.name] = (list(cat.pmf), np.array(list(cat.pmf.values())))
        return self

    def _draw(self, col, n, rng):
        if col.kind == "numeric":
            num = self.profile_.numeric[col.name]
            values = np.clip(rng.normal(num.mean, num.std, size=n), num.min, num.max)
            values = np.round(values, 0 if col.integer else self.decimals)
            return [float(v) for v in np.clip(values, num.min, num.max)]
        tokens, probs = self._tokens[col.name]
        picks = rng.choice(len(tokens), size=n, p=probs / probs.sum())
        cat = self.profile_.categorical[col.name]
        out = []
        for i in picks:
            token = tokens[i]
            if token == OTHER and cat.other_bucket and cat.merged_other:
                token = cat.merged_other[rng.integers(len(cat.merged_other))]
            out.append(binary_value(token) if col.kind == "binary" else token)
        return out

    def sample_records(self, k, rng=None):
        check_is_fitted(self, "profile_")
        if rng is None:
            rng = np.random.default_rng(self.random_state)
        if k == 0:
            return []
        columns = {col.name: self._draw(col, k, rng) for col in self.schema_}
        rows = [{name: columns[name][i] for name in columns} for i in range(k)]
        rules = self.rules if self.rules is not None else RuleSet()
        if not self.repair or not len(rules):
            return rows
        by_name = {c.name: c for c in self.schema_}
        kept, dropped = [], 0
        for row in rows:
            for _ in range(self.max_attempts):
                broken = rules.violations(row)
                if not broken:
                    break
                fields = sorted({c.field for r in broken for c in r.consequent})
                for name in fields:
                    row[name] = self._draw(by_name[name], 1, rng)[0]
            if rules.violations(row):
                dropped += 1
            else:
                kept.append(row)
        if dropped > k / 2:
            raise InfeasibleRulesError(
                f"rule repair gave up on {dropped} of {k} rows; the rules look unsatisfiable"
            )
        return kept

    def sample(self, k, rng=None):
        """``k`` CSV lines in schema order (fewer if repair dropped rows)."""
        return [render_csv_row(r, self.schema_) for r in self.sample_records(k, rng)]


def mock_generate(profile, rules=None, k=20, seed=0, repair=True):
    sampler = IndependentMarginalsSampler(rules=rules, repair=repair, random_state=seed)
    return sampler.fit(profile).sample(k)


class TransientBackendError(Exception):
    pass


class MockBackend:
    """Deterministic stand-in for a model endpoint.

    Batch ``i`` is sampled with a generator seeded from ``(seed, i)``, so
    output is independent of batch scheduling.  Reported durations are
    simulated (``seconds_per_record`` per line) to keep reports reproducible.
    """

    deterministic = True

    def __init__(self, profile, rules=None, repair=True, seed=0, seconds_per_record=0.001, name="mock"):
        self.sampler = IndependentMarginalsSampler(rules=rules, repair=repair, random_state=seed).fit(profile)
        self.seed = seed
        self.seconds_per_record = seconds_per_record
        self.name = name

    def complete(self, prompt, n_records, max_tokens, temperature, top_p, batch_index=0):
        rng = np.random.default_rng([self.seed, batch_index])
        return "\n".join(self.sampler.sample(n_records, rng))

    def simulated_seconds(self, n_lines):
        return self.seconds_per_record * n_lines


class RemoteBackend:
    """OpenAI-compatible ``/v1/chat/completions`` client."""

    deterministic = False

    def __init__(self, endpoint, model, api_key=None, timeout=120.0, seed=None,
                 transport=None, name=None):
        base = endpoint.rstrip("/")
        if base.endswith("/v1"):
            base = base[: -len("/v1")]
        self.url = f"{base}/v1/chat/completions"
        self.model = model
        self.api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV)
        self.seed = seed
        self.name = name or model
        self._client = httpx.Client(timeout=timeout, transport=transport)

    def request_body(self, prompt, max_tokens, temperature, top_p):
        body = {
            "model": self.model,
            "messages": prompt.messages(),
            "temperature": temperature,
            "top_p": top_p,
            "max_tokens": max_tokens,
        }
        if self.seed is not None:
            body["seed"] = self.seed
        return body

    def complete(self, prompt, n_records, max_tokens, temperature, top_p, batch_index=0):
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        body = self.request_body(prompt, max_tokens, temperature, top_p)
        try:
            resp = self._client.post(self.url, headers=headers, content=json.dumps(body, sort_keys=True))
        except httpx.TransportError as exc:
            raise TransientBackendError(f"transport error: {exc}") from exc
        if resp.status_code in PERMANENT_STATUSES:
            raise BackendError(f"{self.url} returned HTTP {resp.status_code}", status=resp.status_code)
        if resp.status_code != 200:
            raise TransientBackendError(f"HTTP {resp.status_code}")
        try:
            payload = resp.json()
            return payload["choices"][0]["message"]["content"] or ""
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise TransientBackendError(f"malformed completion payload: {exc}") from exc

    def close(self):
        self._client.close()


def batch_sizes(k, batch_size):
    full, rest = divmod(k, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def generate(prompt, cfg, backend, profile=None, sleep=time.sleep, clock=time.perf_counter):
    """Request ``prompt.k`` records in batches of ``cfg.batch_size``.

    Transient failures are retried with exponential backoff; a batch that
    still fails is logged and skipped.  A permanent failure (e.g. HTTP 401)
    raises :class:`BackendError` carrying the log.  Whitespace-only lines
    are dropped; everything else is returned verbatim for the gate.
    """
    log = GenerationLog(backend=getattr(backend, "name", type(backend).__name__),
                        records_requested=prompt.k, started_at=_now())
    lines = []
    for i, size in enumerate(batch_sizes(prompt.k, cfg.batch_size)):
        batch_prompt = prompt.with_count(size)
        max_tokens = cfg.max_tokens or token_budget(size, batch_prompt, profile)
        entry = {"batch": i, "requested": size, "received": 0, "status": "ok",
                 "attempts": 0, "started_at": _now()}
        t0 = clock()
        text = None
        for attempt in range(cfg.retries + 1):
            entry["attempts"] = attempt + 1
            try:
                text = backend.complete(batch_prompt, size, max_tokens, cfg.temperature,
                                        cfg.top_p, batch_index=i)
                break
            except TransientBackendError as exc:
                entry["error"] = str(exc)
                if attempt < cfg.retries:
                    sleep(cfg.backoff_seconds * 2 ** attempt)
            except BackendError as exc:
                entry.update(status="permanent_failure", error=str(exc), http_status=exc.status)
                entry["wall_clock_seconds"] = entry["duration_seconds"] = clock() - t0
                log.batches.append(entry)
                log.finished_at = _now()
                raise BackendError(str(exc), status=exc.status, log=log) from exc
        elapsed = clock() - t0
        received = [] if text is None else [ln for ln in text.splitlines() if ln.strip()]
        if text is None:
            entry["status"] = "failed_after_retries"
            logger.warning("batch %d failed after %d attempts: %s", i, entry["attempts"], entry.get("error"))
        else:
            entry.pop("error", None)
        entry["received"] = len(received)
        entry["wall_clock_seconds"] = elapsed
        entry["duration_seconds"] = (backend.simulated_seconds(len(received))
                                     if getattr(backend, "deterministic", False) else elapsed)
        log.batches.append(entry)
        lines.extend(received)
    log.finished_at = _now()
    if not lines:
        raise EmptyGenerationError("backend returned no lines", log=log)
    return lines, log
