"""Declarative clinical rules: conjunctions of atomic conditions joined by implication."""

import json
import operator
from dataclasses import dataclass
from pathlib import Path

from .exceptions import ConfigError
from .table import binary_value, format_number

_OP_ALIASES = {
    "=": "=", "==": "=",
    "!=": "!=", "≠": "!=", "<>": "!=",
    ">": ">", ">=": ">=", "≥": ">=",
    "<": "<", "<=": "<=", "≤": "<=",
    "in": "in",
}
_ORDER_OPS = {">": operator.gt, ">=": operator.ge, "<": operator.lt, "<=": operator.le}


@dataclass(frozen=True)
class Condition:
    field: str
    op: str
    value: object

    def holds(self, record):
        v = record.get(self.field)
        if v is None:
            return False
        if self.op == "=":
            return v == self.value
        if self.op == "!=":
            return v != self.value
        if self.op == "in":
            return v in self.value
        return _ORDER_OPS[self.op](v, self.value)

    def describe(self):
        if self.op == "in":
            value = "{" + ", ".join(_fmt(v) for v in sorted(self.value, key=str)) + "}"
        else:
            value = _fmt(self.value)
        return f"{self.field} {self.op} {value}"

    def to_dict(self):
        value = sorted(self.value, key=str) if self.op == "in" else self.value
        return {"field": self.field, "op": self.op, "value": value}


def _fmt(v):
    return format_number(v) if isinstance(v, (int, float)) and not isinstance(v, bool) else str(v)


@dataclass(frozen=True)
class ClinicalRule:
    id: str
    antecedent: tuple
    consequent: tuple
    hard: bool = True

    def applies(self, record):
        return all(c.holds(record) for c in self.antecedent)

    def violated_by(self, record):
        return self.applies(record) and not all(c.holds(record) for c in self.consequent)

    def describe(self):
        lhs = " and ".join(c.describe() for c in self.antecedent)
        rhs = " and ".join(c.describe() for c in self.consequent)
        return f"If {lhs} then {rhs}"

    def to_dict(self):
        return {
            "id": self.id,
            "if": [c.to_dict() for c in self.antecedent],
            "then": [c.to_dict() for c in self.consequent],
            "hard": self.hard,
        }


@dataclass(frozen=True)
class RuleSet:
    rules: tuple = ()
    provenance: str = ""

    def __post_init__(self):
        ids = [r.id for r in self.rules]
        if len(set(ids)) != len(ids):
            raise ConfigError("duplicate rule ids")

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    @property
    def hard_rules(self):
        return RuleSet(tuple(r for r in self.rules if r.hard), self.provenance)

    def violations(self, record):
        return [r for r in self.rules if r.violated_by(record)]

    def to_list(self):
        return [r.to_dict() for r in self.rules]


def _typed_value(raw, column, op):
    if op == "in":
        if not isinstance(raw, (list, tuple)):
            raise ConfigError(f"'in' on {column.name!r} needs a list value")
        return frozenset(_typed_value(v, column, "=") for v in raw)
    if column.kind == "binary":
        v = binary_value(raw)
        if v is None:
            raise ConfigError(f"{raw!r} is not a binary value for {column.name!r}")
        return v
    if column.kind == "numeric":
        try:
            return float(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"{raw!r} is not numeric for {column.name!r}") from None
    if op in _ORDER_OPS:
        raise ConfigError(f"comparator {op!r} is not defined for categorical {column.name!r}")
    if column.categories is not None:
        match = {c.lower(): c for c in column.categories}.get(str(raw).strip().lower())
        if match is None:
            raise ConfigError(f"{raw!r} is not a category of {column.name!r}")
        return match
    return str(raw)


def _condition(d, columns, rule_id):
    try:
        name, op, raw = d["field"], d["op"], d["value"]
    except (KeyError, TypeError):
        raise ConfigError(f"rule {rule_id}: conditions need field/op/value") from None
    if name not in columns:
        raise ConfigError(f"rule {rule_id}: unknown field {name!r}")
    if op not in _OP_ALIASES:
        raise ConfigError(f"rule {rule_id}: unknown comparator {op!r}")
    op = _OP_ALIASES[op]
    return Condition(name, op, _typed_value(raw, columns[name], op))


def load_rules(source, schema):
    """Parse a rules document (path, JSON list, or ``{"rules": [...]}``) against ``schema``.

    Every referenced field must exist and every comparator must suit the
    field's kind; violations raise :class:`ConfigError` immediately.
    """
    provenance = ""
    if isinstance(source, (str, Path)):
        provenance = str(source)
        try:
            source = json.loads(Path(source).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read rules file: {exc}") from exc
    if isinstance(source, dict):
        provenance = source.get("provenance", provenance)
        source = source.get("rules", [])
    if source is None:
        return RuleSet((), provenance)
    columns = {c.name: c for c in schema}
    rules = []
    for i, d in enumerate(source):
        rule_id = str(d.get("id", f"rule{i + 1}"))
        if not d.get("if") or not d.get("then"):
            raise ConfigError(f"rule {rule_id}: needs non-empty 'if' and 'then'")
        rules.append(ClinicalRule(
            id=rule_id,
            antecedent=tuple(_condition(c, columns, rule_id) for c in d["if"]),
            consequent=tuple(_condition(c, columns, rule_id) for c in d["then"]),
            hard=bool(d.get("hard", True)),
        ))
    return RuleSet(tuple(rules), provenance)
