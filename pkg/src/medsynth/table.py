"""Typed in-memory tables and their CSV / schema-file loaders."""

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import FormatError, SchemaError

KINDS = ("numeric", "categorical", "binary")
MISSING_TOKENS = frozenset({"", "na", "nan", "null"})
BINARY_ALIASES = {
    "0": 0, "1": 1, "0.0": 0, "1.0": 1,
    "no": 0, "yes": 1, "false": 0, "true": 1,
}


@dataclass(frozen=True)
class ColumnSchema:
    name: str
    kind: str
    bounds: tuple = None
    description: str = ""
    quasi_identifier: bool = False
    # Allowed tokens for categorical columns; None means "learn from data".
    categories: tuple = None
    open_vocabulary: bool = False
    integer: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"column {self.name!r}: unknown kind {self.kind!r}")
        if self.bounds is not None:
            if self.kind != "numeric":
                raise SchemaError(f"column {self.name!r}: bounds only apply to numeric columns")
            lo, hi = (float(b) for b in self.bounds)
            if not lo < hi:
                raise SchemaError(f"column {self.name!r}: bounds need lo < hi, got [{lo}, {hi}]")
            object.__setattr__(self, "bounds", (lo, hi))
        if self.categories is not None:
            object.__setattr__(self, "categories", tuple(str(c) for c in self.categories))

    @property
    def is_numeric_like(self):
        """True for columns usable as numbers (numeric, or binary as 0/1)."""
        return self.kind in ("numeric", "binary")

    def to_dict(self, include_categories=True):
        d = asdict(self)
        d["bounds"] = list(self.bounds) if self.bounds is not None else None
        if include_categories:
            d["categories"] = list(self.categories) if self.categories is not None else None
        else:
            d.pop("categories")
        return d

    @classmethod
    def from_dict(cls, d):
        known = {"name", "kind", "bounds", "description", "quasi_identifier",
                 "categories", "open_vocabulary", "integer"}
        extra = set(d) - known
        if extra:
            raise SchemaError(f"column {d.get('name')!r}: unknown keys {sorted(extra)}")
        if "name" not in d or "kind" not in d:
            raise SchemaError("every column needs 'name' and 'kind'")
        d = dict(d)
        if d.get("bounds") is not None:
            d["bounds"] = tuple(d["bounds"])
        if d.get("categories") is not None:
            d["categories"] = tuple(d["categories"])
        return cls(**d)


def load_schema(source):
    """Read a schema document: ``{"columns": [...], "label": name}`` or a bare list.

    ``source`` may be a path or an already-parsed object.  Returns
    ``(columns, label_column)``.
    """
    if isinstance(source, (str, Path)):
        try:
            doc = json.loads(Path(source).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise FormatError(f"{source}: {exc}") from exc
    else:
        doc = source
    if isinstance(doc, list):
        doc = {"columns": doc}
    columns = [ColumnSchema.from_dict(c) for c in doc.get("columns", [])]
    names = [c.name for c in columns]
    if not columns:
        raise SchemaError("schema declares no columns")
    if len(set(names)) != len(names):
        raise SchemaError("duplicate column names in schema")
    label = doc.get("label")
    if label is not None and label not in names:
        raise SchemaError(f"label column {label!r} is not in the schema")
    return columns, label


def binary_value(raw):
    """Map a binary cell (number, bool or alias string) to 0/1, or None."""
    if isinstance(raw, bool):
        return int(raw)
    if isinstance(raw, (int, float, np.integer, np.floating)):
        return int(raw) if raw in (0, 1) else None
    if isinstance(raw, str):
        return BINARY_ALIASES.get(raw.strip().lower())
    return None


def is_missing(value):
    if value is None:
        return True
    if isinstance(value, float) and math.isnan(value):
        return True
    return isinstance(value, str) and value.strip().lower() in MISSING_TOKENS


def format_number(x):
    """Shortest faithful text for a float; integral values drop the fraction."""
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def format_cell(value, column):
    if is_missing(value):
        return ""
    if column.kind == "binary":
        return str(int(value))
    if column.kind == "numeric":
        return format_number(value)
    return str(value)


class DatasetTable:
    """Column-oriented table with a fixed schema.

    Numeric and binary columns are float arrays with NaN for missing cells;
    categorical columns are object arrays with None for missing cells.
    """

    def __init__(self, schema, columns, label_column=None, coercion_failures=0):
        self.schema = tuple(schema)
        names = [c.name for c in self.schema]
        if set(columns) != set(names):
            raise SchemaError(
                f"column data {sorted(columns)} does not match schema {sorted(names)}"
            )
        lengths = {len(v) for v in columns.values()}
        if len(lengths) > 1:
            raise SchemaError("columns have different lengths")
        self._data = {}
        for col in self.schema:
            values = columns[col.name]
            if col.kind == "categorical":
                arr = np.array([None if is_missing(v) else str(v) for v in values], dtype=object)
            else:
                arr = np.asarray(values, dtype=float).copy()
            arr.setflags(write=False)
            self._data[col.name] = arr
        if label_column is not None and label_column not in names:
            raise SchemaError(f"label column {label_column!r} is not in the schema")
        self.label_column = label_column
        self.coercion_failures = coercion_failures

    @classmethod
    def from_records(cls, schema, records, label_column=None):
        """Build from an iterable of dicts keyed by column name (already typed)."""
        schema = tuple(schema)
        records = list(records)
        cols = {c.name: [r.get(c.name) for r in records] for c in schema}
        for c in schema:
            if c.kind != "categorical":
                cols[c.name] = [np.nan if is_missing(v) else float(v) for v in cols[c.name]]
        return cls(schema, cols, label_column=label_column)

    @property
    def names(self):
        return [c.name for c in self.schema]

    @property
    def n_rows(self):
        return len(next(iter(self._data.values()))) if self._data else 0

    def __len__(self):
        return self.n_rows

    def __repr__(self):
        return f"DatasetTable({self.n_rows} rows x {len(self.schema)} columns)"

    def column(self, name):
        return self._data[name]

    def column_schema(self, name):
        for c in self.schema:
            if c.name == name:
                return c
        raise KeyError(name)

    def names_of_kind(self, *kinds):
        return [c.name for c in self.schema if c.kind in kinds]

    def numeric_like_names(self):
        return [c.name for c in self.schema if c.is_numeric_like]

    def out_of_bounds(self, name):
        """Boolean mask of non-missing cells outside the column's declared bounds."""
        col = self.column_schema(name)
        values = self._data[name]
        if col.kind != "numeric" or col.bounds is None:
            return np.zeros(len(values), dtype=bool)
        lo, hi = col.bounds
        with np.errstate(invalid="ignore"):
            return ~np.isnan(values) & ((values < lo) | (values > hi))

    def missing_mask(self, name):
        values = self._data[name]
        if self.column_schema(name).kind == "categorical":
            return np.array([v is None for v in values], dtype=bool)
        return np.isnan(values)

    def record(self, i):
        out = {}
        for c in self.schema:
            v = self._data[c.name][i]
            if c.kind == "binary":
                v = None if np.isnan(v) else int(v)
            elif c.kind == "numeric":
                v = None if np.isnan(v) else float(v)
            out[c.name] = v
        return out

    def records(self):
        return [self.record(i) for i in range(self.n_rows)]

    def row_strings(self):
        """Every row rendered as one CSV line in schema order."""
        return [render_csv_row(self.record(i), self.schema) for i in range(self.n_rows)]

    def take(self, indices):
        idx = np.asarray(indices, dtype=int)
        cols = {name: arr[idx] for name, arr in self._data.items()}
        return DatasetTable(self.schema, cols, label_column=self.label_column)

    def drop_missing(self):
        keep = np.ones(self.n_rows, dtype=bool)
        for name in self.names:
            keep &= ~self.missing_mask(name)
        return self.take(np.flatnonzero(keep))

    def to_csv(self, path):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.names)
        for i in range(self.n_rows):
            rec = self.record(i)
            writer.writerow([format_cell(rec[c.name], c) for c in self.schema])
        Path(path).write_text(buf.getvalue(), encoding="utf-8")


def render_csv_row(record, schema):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="").writerow(
        [format_cell(record.get(c.name), c) for c in schema]
    )
    return buf.getvalue()


@dataclass
class LoadReport:
    coercion_failures: int = 0
    failures: list = field(default_factory=list)


def _parse_cell(raw, column):
    """Return (value, ok).  ``ok`` is False when a non-empty cell failed to coerce."""
    if is_missing(raw):
        return None, True
    text = raw.strip()
    if column.kind == "numeric":
        try:
            value = float(text)
        except ValueError:
            return None, False
        return (value, True) if math.isfinite(value) else (None, False)
    if column.kind == "binary":
        value = binary_value(text)
        return (value, value is not None)
    return text, True


def load_csv(path, schema, label_column=None):
    """Load an RFC-4180 CSV file with a header row into a :class:`DatasetTable`.

    Header names must match the schema names (any order).  Cells that cannot
    be coerced become missing and are counted in ``table.coercion_failures``.
    """
    schema = list(schema)
    try:
        text = Path(path).read_text(encoding="utf-8-sig")
    except UnicodeDecodeError as exc:
        raise FormatError(f"{path}: not UTF-8 ({exc})") from exc
    try:
        rows = list(csv.reader(io.StringIO(text), strict=True))
    except csv.Error as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if not rows:
        raise FormatError(f"{path}: missing header row")
    header = [h.strip() for h in rows[0]]
    expected = [c.name for c in schema]
    if sorted(header) != sorted(expected):
        raise SchemaError(
            f"{path}: header {header} does not match schema columns {expected}"
        )
    position = {name: i for i, name in enumerate(header)}
    cols = {name: [] for name in expected}
    report = LoadReport()
    for line_no, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise FormatError(
                f"{path}:{line_no}: expected {len(header)} cells, got {len(row)}"
            )
        for col in schema:
            value, ok = _parse_cell(row[position[col.name]], col)
            if not ok:
                report.coercion_failures += 1
                report.failures.append((line_no, col.name, row[position[col.name]]))
            cols[col.name].append(value)
    for col in schema:
        if col.kind != "categorical":
            cols[col.name] = [np.nan if v is None else v for v in cols[col.name]]
    table = DatasetTable(schema, cols, label_column=label_column,
                         coercion_failures=report.coercion_failures)
    table.load_report = report
    return table
