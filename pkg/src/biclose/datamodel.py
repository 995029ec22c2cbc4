"""Typed mixed-attribute matrices: schema, categorical encoding, missing cells.

Every other part of the library works on a :class:`MixedMatrix`, a numeric
n x m matrix with a per-column schema.  Categorical values are encoded to
integers starting at 1 (ordinal columns follow their declared order, nominal
columns get an arbitrary but fixed order), numeric values pass through
unchanged, and missing cells are carried in an explicit boolean mask instead
of a sentinel value.
"""

import csv
import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class BicloseError(Exception):
    """Base class for errors raised by this package."""


class SchemaError(BicloseError):
    """Schema file or attribute declaration is invalid or inconsistent."""


class DataError(BicloseError):
    """Data values do not conform to the declared schema."""


class AttributeKind(enum.Enum):
    REAL = "real"
    INTEGER = "integer"
    ORDINAL = "ordinal"
    NOMINAL = "nominal"


CATEGORICAL_KINDS = (AttributeKind.ORDINAL, AttributeKind.NOMINAL)


@dataclass(frozen=True)
class AttributeSchema:
    """Declaration of one column: name, kind, categories and tolerance.

    ``epsilon`` is the maximum spread (max - min of the encoded values) a
    group of rows may have in this column and still count as homogeneous.
    Nominal columns must use ``epsilon = 0``: their integer codes carry no
    order, so only exact equality is meaningful.

    ``categories`` is required for ordinal columns (it defines the encoding
    order).  For nominal columns it may be left empty, in which case the
    categories are inferred in first-appearance order when a dataset is
    encoded.
    """

    name: str
    kind: AttributeKind
    categories: tuple[str, ...] = ()
    epsilon: float = 0.0

    def __post_init__(self):
        if self.epsilon < 0:
            raise SchemaError(f"column {self.name!r}: epsilon must be >= 0")
        if self.kind is AttributeKind.NOMINAL and self.epsilon != 0:
            raise SchemaError(
                f"column {self.name!r}: nominal columns require epsilon=0, "
                f"got {self.epsilon}"
            )
        if self.kind is AttributeKind.ORDINAL and not self.categories:
            raise SchemaError(
                f"column {self.name!r}: ordinal columns need an ordered "
                "category list"
            )
        if self.kind not in CATEGORICAL_KINDS and self.categories:
            raise SchemaError(
                f"column {self.name!r}: numeric columns take no categories"
            )
        if len(set(self.categories)) != len(self.categories):
            raise SchemaError(f"column {self.name!r}: duplicate categories")

    @property
    def is_categorical(self) -> bool:
        return self.kind in CATEGORICAL_KINDS

    def encode_category(self, text: str) -> int:
        """Return the 1-based integer code of a category string."""
        try:
            return self.categories.index(text) + 1
        except ValueError:
            raise DataError(
                f"column {self.name!r}: unknown category {text!r}"
            ) from None

    def decode_category(self, code: int) -> str:
        return self.categories[code - 1]


def schema_from_dict(entry: dict) -> AttributeSchema:
    """Build an :class:`AttributeSchema` from one JSON column entry."""
    if not isinstance(entry, dict) or "name" not in entry or "kind" not in entry:
        raise SchemaError(f"column entry needs 'name' and 'kind': {entry!r}")
    try:
        kind = AttributeKind(str(entry["kind"]).lower())
    except ValueError:
        raise SchemaError(
            f"column {entry.get('name')!r}: unknown kind {entry['kind']!r}"
        ) from None
    return AttributeSchema(
        name=str(entry["name"]),
        kind=kind,
        categories=tuple(str(c) for c in entry.get("categories", ())),
        epsilon=float(entry.get("epsilon", 0.0)),
    )


@dataclass(frozen=True)
class DatasetSchema:
    """Sidecar description of a data file: columns plus file-level options."""

    columns: tuple[AttributeSchema, ...]
    missing_token: str = ""
    label_column: str | None = None

    def __post_init__(self):
        names = [c.name for c in self.columns]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise SchemaError(f"duplicate column names: {', '.join(dupes)}")
        if self.label_column in names:
            raise SchemaError(
                f"label column {self.label_column!r} also declared as an "
                "attribute column"
            )

    def column(self, name: str) -> AttributeSchema:
        for c in self.columns:
            if c.name == name:
                return c
        raise SchemaError(f"no column named {name!r} in schema")


def load_schema(path: str | Path) -> DatasetSchema:
    """Parse a JSON sidecar schema file."""
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SchemaError(f"cannot read schema file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(raw, dict) or "columns" not in raw:
        raise SchemaError(f"schema file {path} needs a 'columns' list")
    columns = tuple(schema_from_dict(c) for c in raw["columns"])
    label = raw.get("label_column")
    return DatasetSchema(
        columns=columns,
        missing_token=str(raw.get("missing_token", "")),
        label_column=None if label is None else str(label),
    )


@dataclass(frozen=True)
class MixedMatrix:
    """Encoded data matrix shared by the enumerator, oracle and rule modules.

    Immutable after construction (arrays are marked read-only) and therefore
    safe to share across threads.
    """

    values: np.ndarray
    missing: np.ndarray
    schema: tuple[AttributeSchema, ...]
    row_labels: tuple[str, ...] | None = None
    row_ids: tuple[str, ...] | None = None

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if self.missing is None:
            missing = np.zeros(values.shape, dtype=bool)
        else:
            missing = np.ascontiguousarray(self.missing, dtype=bool)
        if values.ndim != 2:
            raise DataError("values must be a 2-d array")
        if missing.shape != values.shape:
            raise DataError("missing mask shape differs from values shape")
        if values.shape[1] != len(self.schema):
            raise DataError(
                f"{values.shape[1]} columns but {len(self.schema)} schemas"
            )
        values.setflags(write=False)
        missing.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "missing", missing)
        object.__setattr__(self, "schema", tuple(self.schema))
        if self.row_labels is not None:
            labels = tuple(str(c) for c in self.row_labels)
            if len(labels) != values.shape[0]:
                raise DataError("row_labels length differs from row count")
            object.__setattr__(self, "row_labels", labels)
        if self.row_ids is not None and len(self.row_ids) != values.shape[0]:
            raise DataError("row_ids length differs from row count")
        self._check_categorical_codes()

    def _check_categorical_codes(self):
        for j, col in enumerate(self.schema):
            if not col.is_categorical:
                continue
            if not col.categories:
                raise SchemaError(
                    f"column {col.name!r}: categorical column without "
                    "categories"
                )
            seen = self.values[~self.missing[:, j], j]
            ok = (seen == np.round(seen)) & (seen >= 1) & (seen <= len(col.categories))
            if not bool(np.all(ok)):
                raise DataError(
                    f"column {col.name!r}: encoded values must be integers "
                    f"in [1, {len(col.categories)}]"
                )

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]

    @property
    def epsilons(self) -> np.ndarray:
        return np.array([c.epsilon for c in self.schema], dtype=np.float64)

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.schema)

    def decode_interval(self, j: int, lo: float, hi: float) -> str:
        return decode_interval(self.schema[j], lo, hi)

    @classmethod
    def from_numeric(
        cls,
        values,
        epsilons: Sequence[float],
        *,
        missing=None,
        row_labels: Sequence[str] | None = None,
        column_names: Sequence[str] | None = None,
        kinds: Sequence[AttributeKind] | None = None,
    ) -> "MixedMatrix":
        """Wrap a plain numeric array, declaring every column real by default."""
        values = np.asarray(values, dtype=np.float64)
        if column_names is None:
            column_names = [f"c{j + 1}" for j in range(values.shape[1])]
        if kinds is None:
            kinds = [AttributeKind.REAL] * values.shape[1]
        schema = tuple(
            AttributeSchema(name=nm, kind=k, epsilon=float(e))
            for nm, k, e in zip(column_names, kinds, epsilons)
        )
        return cls(
            values=values,
            missing=missing,
            schema=schema,
            row_labels=None if row_labels is None else tuple(row_labels),
        )


@dataclass(frozen=True)
class EnumParams:
    """Search thresholds: minimum extent size, minimum intent size, and the
    per-column tolerance vector (mirrors the matrix schema)."""

    min_rows: int
    min_cols: int
    epsilons: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if self.min_rows < 1:
            raise ValueError("min_rows must be >= 1")
        if self.min_cols < 1:
            raise ValueError("min_cols must be >= 1")
        object.__setattr__(
            self, "epsilons", tuple(float(e) for e in self.epsilons)
        )
        if any(e < 0 for e in self.epsilons):
            raise ValueError("epsilons must be >= 0")

    @classmethod
    def for_matrix(cls, matrix: MixedMatrix, min_rows: int, min_cols: int) -> "EnumParams":
        return cls(
            min_rows=min_rows,
            min_cols=min_cols,
            epsilons=tuple(float(e) for e in matrix.epsilons),
        )

    def check_against(self, matrix: MixedMatrix):
        if not 1 <= self.min_rows <= matrix.n:
            raise ValueError(f"min_rows must be in [1, {matrix.n}]")
        if not 1 <= self.min_cols <= matrix.m:
            raise ValueError(f"min_cols must be in [1, {matrix.m}]")
        if len(self.epsilons) != matrix.m:
            raise ValueError("epsilons length differs from column count")
        if any(
            e != c.epsilon for e, c in zip(self.epsilons, matrix.schema)
        ):
            raise ValueError("epsilons differ from the schema tolerances")


def encode_dataset(
    raw_table: Sequence[Sequence[str]],
    schemas: Sequence[AttributeSchema],
    *,
    missing_token: str = "",
    row_labels: Sequence[str] | None = None,
    row_ids: Sequence[str] | None = None,
) -> MixedMatrix:
    """Encode a table of strings into a :class:`MixedMatrix`.

    Numeric cells pass through unchanged, ordinal categories map to their
    1-based rank in the declared order, and nominal categories map to 1-based
    codes (declared order if given, first appearance otherwise).  Cells equal
    to ``missing_token`` set the missing mask and nothing else.
    """
    schemas = list(schemas)
    m = len(schemas)
    n = len(raw_table)
    values = np.zeros((n, m), dtype=np.float64)
    missing = np.zeros((n, m), dtype=bool)
    inferred: dict[int, dict[str, int]] = {
        j: {} for j, c in enumerate(schemas)
        if c.kind is AttributeKind.NOMINAL and not c.categories
    }

    for i, row in enumerate(raw_table):
        if len(row) != m:
            raise DataError(f"row {i + 1} has {len(row)} cells, expected {m}")
        for j, cell in enumerate(row):
            col = schemas[j]
            if cell == missing_token:
                missing[i, j] = True
                continue
            if col.kind is AttributeKind.REAL:
                try:
                    values[i, j] = float(cell)
                except ValueError:
                    raise DataError(
                        f"column {col.name!r}, row {i + 1}: {cell!r} is not "
                        "a number"
                    ) from None
            elif col.kind is AttributeKind.INTEGER:
                try:
                    x = float(cell)
                except ValueError:
                    raise DataError(
                        f"column {col.name!r}, row {i + 1}: {cell!r} is not "
                        "a number"
                    ) from None
                if x != int(x):
                    raise DataError(
                        f"column {col.name!r}, row {i + 1}: {cell!r} is not "
                        "an integer"
                    )
                values[i, j] = x
            elif j in inferred:
                codes = inferred[j]
                if cell not in codes:
                    codes[cell] = len(codes) + 1
                values[i, j] = codes[cell]
            else:
                values[i, j] = col.encode_category(cell)

    for j, codes in inferred.items():
        if not codes:
            raise DataError(
                f"column {schemas[j].name!r}: no categories observed "
                "(all cells missing)"
            )
        schemas[j] = AttributeSchema(
            name=schemas[j].name,
            kind=AttributeKind.NOMINAL,
            categories=tuple(codes),
            epsilon=schemas[j].epsilon,
        )

    return MixedMatrix(
        values=values,
        missing=missing,
        schema=tuple(schemas),
        row_labels=None if row_labels is None else tuple(row_labels),
        row_ids=None if row_ids is None else tuple(row_ids),
    )


def _format_number(x: float) -> str:
    # integers print bare, everything else with two decimals
    if math.isfinite(x) and x == int(x):
        return str(int(x))
    return f"{x:.2f}"


def decode_interval(col: AttributeSchema, lo: float, hi: float) -> str:
    """Render the domain of interest [lo, hi] of one column as text.

    Real columns render as an interval, integer and ordinal columns as the
    finite set of values inside the interval, nominal columns as the single
    category (their tolerance is zero, so lo equals hi).
    """
    if lo > hi:
        raise ValueError(f"column {col.name!r}: lo {lo} > hi {hi}")
    if col.kind is AttributeKind.REAL:
        return f"{col.name}[{_format_number(lo)},{_format_number(hi)}]"
    if col.kind is AttributeKind.INTEGER:
        members = range(math.ceil(lo), math.floor(hi) + 1)
        return f"{col.name}{{{','.join(str(v) for v in members)}}}"
    if col.kind is AttributeKind.ORDINAL:
        cats = [
            c for rank, c in enumerate(col.categories, start=1)
            if lo <= rank <= hi
        ]
        return f"{col.name}{{{','.join(cats)}}}"
    if lo != hi:
        raise ValueError(
            f"column {col.name!r}: nominal domain must be a single value"
        )
    return f"{col.name}{{{col.decode_category(int(lo))}}}"


def _read_table(path: str | Path) -> tuple[list[str], list[list[str]]]:
    path = Path(path)
    delimiter = "\t" if path.suffix.lower() == ".tsv" else ","
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh, delimiter=delimiter)
            rows = [[cell.strip() for cell in row] for row in reader if row]
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise DataError(f"{path} is empty")
    return rows[0], rows[1:]


def load_dataset(data_path: str | Path, schema_path: str | Path) -> MixedMatrix:
    """Read a CSV/TSV file (header row required) under a sidecar schema.

    The matrix keeps the file's column order; schema entries are bound by
    name.  The label column named in the schema is extracted into
    ``row_labels`` and never becomes a matrix column.
    """
    ds = load_schema(schema_path)
    header, rows = _read_table(data_path)
    if len(set(header)) != len(header):
        raise SchemaError(f"duplicate header columns in {data_path}")
    declared = {c.name for c in ds.columns}
    label_col = ds.label_column

    attr_idx: list[int] = []
    schemas: list[AttributeSchema] = []
    label_idx = None
    for pos, name in enumerate(header):
        if name == label_col:
            label_idx = pos
            continue
        if name not in declared:
            raise SchemaError(
                f"header column {name!r} is not declared in the schema"
            )
        attr_idx.append(pos)
        schemas.append(ds.column(name))
    bound = {header[p] for p in attr_idx}
    unbound = sorted(declared - bound)
    if unbound:
        raise SchemaError(
            f"schema columns missing from the data header: {', '.join(unbound)}"
        )
    if label_col is not None and label_idx is None:
        raise SchemaError(f"label column {label_col!r} not found in header")

    table = []
    labels = [] if label_idx is not None else None
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise DataError(
                f"row {i + 2} has {len(row)} cells, expected {len(header)}"
            )
        table.append([row[p] for p in attr_idx])
        if labels is not None:
            labels.append(row[label_idx])

    return encode_dataset(
        table,
        schemas,
        missing_token=ds.missing_token,
        row_labels=labels,
    )
