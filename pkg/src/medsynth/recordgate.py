"""Turn raw generated lines into typed, rule-checked records.

Each line is tried as a JSON object first and as a CSV row in schema order
second.  Every input line ends up with exactly one outcome in the
:class:`RejectionReport`: accepted, parse_failure, schema_violation, or
rule_violation.
"""

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .exceptions import UndefinedMetricError
from .rules import RuleSet
from .table import DatasetTable, binary_value, is_missing

ACCEPTED = "accepted"
PARSE_FAILURE = "parse_failure"
SCHEMA_VIOLATION = "schema_violation"
RULE_VIOLATION = "rule_violation"
STATUSES = (ACCEPTED, PARSE_FAILURE, SCHEMA_VIOLATION, RULE_VIOLATION)


def normalize_key(name):
    return re.sub(r"[\s_\-]+", "", str(name)).lower()


@dataclass
class ParsedRecord:
    line_no: int
    values: dict
    grammar: str


@dataclass
class RejectionReport:
    outcomes: list = field(default_factory=list)

    @property
    def counts(self):
        out = dict.fromkeys(STATUSES, 0)
        for o in self.outcomes:
            out[o["status"]] += 1
        return out

    @property
    def n_lines(self):
        return len(self.outcomes)

    @property
    def acceptance_rate(self):
        return self.counts[ACCEPTED] / self.n_lines if self.outcomes else 0.0

    def add(self, line_no, status, **info):
        self.outcomes.append({"line": line_no, "status": status, **info})

    def outcome(self, line_no):
        for o in self.outcomes:
            if o["line"] == line_no:
                return o
        raise KeyError(line_no)

    def to_dict(self):
        return {"counts": self.counts, "n_lines": self.n_lines, "outcomes": self.outcomes}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class CellError(ValueError):
    def __init__(self, column, reason):
        super().__init__(f"{column}: {reason}")
        self.column = column
        self.reason = reason


def _looks_like_header(cells, schema):
    return [normalize_key(c) for c in cells] == [normalize_key(c.name) for c in schema]


def parse_line(text, schema):
    """Return ``(values, grammar)`` or raise ``ValueError`` with a reason."""
    line = text.strip()
    if not line:
        raise ValueError("blank line")
    if line.startswith("{"):
        candidate = line.rstrip(",").strip()
        try:
            obj = json.loads(candidate)
        except json.JSONDecodeError:
            raise ValueError("malformed JSON object") from None
        if not isinstance(obj, dict):
            raise ValueError("JSON value is not an object")
        by_key = {normalize_key(c.name): c.name for c in schema}
        values = {}
        for key, value in obj.items():
            name = by_key.get(normalize_key(key))
            if name is None:
                values.setdefault("__unknown__", []).append(key)
            else:
                values[name] = value
        return values, "json"
    try:
        cells = next(csv.reader(io.StringIO(line), skipinitialspace=True))
    except (csv.Error, StopIteration):
        raise ValueError("malformed CSV row") from None
    if len(cells) != len(schema):
        raise ValueError(f"expected {len(schema)} fields, found {len(cells)}")
    if _looks_like_header(cells, schema):
        raise ValueError("header row")
    return {c.name: cell.strip() for c, cell in zip(schema, cells)}, "csv"


def coerce_value(value, column, vocabulary=None):
    if is_missing(value):
        raise CellError(column.name, "missing")
    if column.kind == "binary":
        v = binary_value(value)
        if v is None:
            raise CellError(column.name, f"not binary: {value!r}")
        return v
    if column.kind == "numeric":
        if isinstance(value, bool):
            raise CellError(column.name, f"not numeric: {value!r}")
        try:
            v = float(value.strip() if isinstance(value, str) else value)
        except (TypeError, ValueError):
            raise CellError(column.name, f"not numeric: {value!r}") from None
        if not math.isfinite(v):
            raise CellError(column.name, f"not finite: {value!r}")
        if column.bounds is not None and not column.bounds[0] <= v <= column.bounds[1]:
            raise CellError(column.name, "out-of-bounds")
        return v
    if isinstance(value, (dict, list, bool)):
        raise CellError(column.name, f"not a category token: {value!r}")
    token = str(value).strip()
    vocab = column.categories if column.categories is not None else vocabulary
    if vocab is None or column.open_vocabulary:
        if vocab is not None:
            return {c.lower(): c for c in vocab}.get(token.lower(), token)
        return token
    match = {c.lower(): c for c in vocab}.get(token.lower())
    if match is None:
        raise CellError(column.name, f"unknown category {token!r}")
    return match


def coerce(values, schema, vocabularies=None):
    """Typed copy of ``values`` or :class:`CellError` for the first bad column.

    Idempotent: a typed record coerces to itself.
    """
    vocabularies = vocabularies or {}
    if values.get("__unknown__"):
        raise CellError(values["__unknown__"][0], "unexpected field")
    return {c.name: coerce_value(values.get(c.name), c, vocabularies.get(c.name)) for c in schema}


def apply_rules(records, rules):
    """Drop records that violate a hard rule.

    Returns ``(kept, delta)`` where ``delta`` lists, by position in
    ``records``, every record with at least one violation together with the
    hard and soft rule ids it broke.
    """
    rules = rules if isinstance(rules, RuleSet) else RuleSet(tuple(rules))
    kept, delta = [], []
    for i, rec in enumerate(records):
        values = rec.values if isinstance(rec, ParsedRecord) else rec
        broken = rules.violations(values)
        hard = [r.id for r in broken if r.hard]
        soft = [r.id for r in broken if not r.hard]
        if broken:
            delta.append({"index": i, "hard": hard, "soft": soft})
        if not hard:
            kept.append(rec)
    return kept, delta


def mcs(records, rules):
    """Share of records that break no rule, hard or soft."""
    records = list(records)
    if not records:
        raise UndefinedMetricError("medical consistency needs at least one record")
    rules = rules if isinstance(rules, RuleSet) else RuleSet(tuple(rules))
    clean = sum(1 for r in records if not rules.violations(r.values if isinstance(r, ParsedRecord) else r))
    return clean / len(records)


def parse_lines(lines, schema, vocabularies=None):
    """Parse and coerce raw lines; returns ``(records, report)``."""
    schema = tuple(schema)
    report = RejectionReport()
    records = []
    for line_no, text in enumerate(lines):
        try:
            values, grammar = parse_line(text, schema)
        except ValueError as exc:
            report.add(line_no, PARSE_FAILURE, reason=str(exc))
            continue
        try:
            typed = coerce(values, schema, vocabularies)
        except CellError as exc:
            report.add(line_no, SCHEMA_VIOLATION, column=exc.column, reason=exc.reason, grammar=grammar)
            continue
        report.add(line_no, ACCEPTED, grammar=grammar)
        records.append(ParsedRecord(line_no, typed, grammar))
    return records, report


class RecordGate(BaseEstimator):
    """Parse, coerce and rule-filter generated lines against a schema.

    ``fit`` learns categorical vocabularies from a reference table for
    columns whose schema does not declare them.  ``transform`` returns the
    accepted records as a :class:`DatasetTable` and stores the per-line
    report in ``report_``.
    """

    def __init__(self, schema, rules=None, label_column=None):
        self.schema = schema
        self.rules = rules
        self.label_column = label_column

    def fit(self, table=None, y=None):
        self.vocabularies_ = {}
        for col in self.schema:
            if col.kind != "categorical" or col.categories is not None:
                continue
            if table is not None:
                seen = {v for v in table.column(col.name) if v is not None}
                self.vocabularies_[col.name] = tuple(sorted(seen))
        return self

    def transform(self, lines):
        check_is_fitted(self, "vocabularies_")
        rules = self.rules if self.rules is not None else RuleSet()
        records, report = parse_lines(lines, self.schema, self.vocabularies_)
        kept, delta = apply_rules(records, rules)
        for entry in delta:
            outcome = report.outcome(records[entry["index"]].line_no)
            if entry["hard"]:
                outcome.update(status=RULE_VIOLATION, rule_ids=entry["hard"] + entry["soft"])
            else:
                outcome["soft_violations"] = entry["soft"]
        self.report_ = report
        self.records_ = kept
        return DatasetTable.from_records(self.schema, [r.values for r in kept],
                                         label_column=self.label_column)

    def fit_transform(self, lines, table=None):
        return self.fit(table).transform(lines)


def empty_table_like(schema, label_column=None):
    return DatasetTable(schema, {c.name: np.array([], dtype=object if c.kind == "categorical" else float)
                                 for c in schema}, label_column=label_column)
