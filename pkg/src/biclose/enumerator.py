"""Complete, non-redundant enumeration of maximal homogeneous biclusters.

A bicluster is a pair (extent, intent) of row and column index sets such
that in every intent column the extent's values span at most that column's
tolerance and no covered cell is missing.  :func:`enumerate_biclusters`
returns every maximal such pair meeting the size thresholds, each exactly
once, in a deterministic order.

Two interchangeable engines implement the search: a compiled extension
(``biclose._engine_cy``) and a pure-Python fallback (``biclose._engine_py``).
The compiled one is used when it imported successfully, unless the
``BICLOSE_PURE`` environment variable is set or an explicit ``engine=``
argument is given.

Each run is single-threaded over immutable inputs; results can be handed to
other threads freely.  Parallelizing the traversal would require the extent
registry to offer atomic check-and-insert, which the shipped engines do not
need or provide.
"""

import os
from dataclasses import dataclass

import numpy as np

from . import _engine_py
from .datamodel import EnumParams, MixedMatrix

try:
    from . import _engine_cy
except ImportError:
    _engine_cy = None


@dataclass(frozen=True)
class Bicluster:
    """A maximal homogeneous submatrix: sorted row and column index tuples."""

    extent: tuple[int, ...]
    intent: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "extent", tuple(int(i) for i in self.extent))
        object.__setattr__(self, "intent", tuple(int(j) for j in self.intent))
        if list(self.extent) != sorted(set(self.extent)):
            raise ValueError("extent must be strictly ascending")
        if list(self.intent) != sorted(set(self.intent)):
            raise ValueError("intent must be strictly ascending")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.extent), len(self.intent)


@dataclass(frozen=True)
class SearchNode:
    """One node of the search tree: a bicluster in progress, the column the
    closure scan resumes at, and the rows descendants must stay unextendable
    by."""

    extent: tuple[int, ...]
    intent: tuple[int, ...] = ()
    start_col: int = 0
    check_rows: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "extent", tuple(int(i) for i in self.extent))
        object.__setattr__(self, "intent", tuple(int(j) for j in self.intent))
        object.__setattr__(
            self, "check_rows", tuple(int(g) for g in self.check_rows)
        )
        if set(self.extent) & set(self.check_rows):
            raise ValueError("check_rows must be disjoint from the extent")

    @property
    def spawn_col(self) -> int:
        """Column this node's extent split from (meaningful for children)."""
        return self.start_col - 1

    @classmethod
    def supremum(cls, matrix: MixedMatrix) -> "SearchNode":
        return cls(extent=tuple(range(matrix.n)))


def engine_name() -> str:
    """Name of the engine `enumerate_biclusters` picks by default."""
    if _engine_cy is not None and not os.environ.get("BICLOSE_PURE"):
        return "compiled"
    return "python"


def _engine(engine: str | None):
    choice = engine or ("python" if os.environ.get("BICLOSE_PURE") else "auto")
    if choice == "auto":
        choice = "compiled" if _engine_cy is not None else "python"
    if choice == "compiled":
        if _engine_cy is None:
            raise RuntimeError("compiled engine is not available")
        return _engine_cy.mine
    if choice == "python":
        return _engine_py.mine
    raise ValueError(f"unknown engine {engine!r}")


def enumerate_biclusters(
    matrix: MixedMatrix,
    params: EnumParams,
    *,
    engine: str | None = None,
    prune_min_cols: bool = True,
    stats: dict | None = None,
) -> list[Bicluster]:
    """Enumerate all maximal homogeneous biclusters of ``matrix``.

    ``params`` fixes the minimum extent and intent sizes and must mirror the
    schema tolerances.  ``prune_min_cols`` disables an output-neutral search
    pruning and exists for diagnostics only.  If ``stats`` is a dict it
    receives node and candidate counters of the run.
    """
    params.check_against(matrix)
    mine = _engine(engine)
    raw, run_stats = mine(
        matrix.values,
        matrix.missing,
        np.asarray(params.epsilons, dtype=np.float64),
        params.min_rows,
        params.min_cols,
        prune_min_cols,
    )
    if stats is not None:
        stats.update(run_stats)
    return [Bicluster(extent=rows, intent=cols) for rows, cols in raw]


# Operation-level API.  These wrap the reference engine's internals on
# matrix/params objects so individual search steps can be exercised and
# tested in isolation.

def close_intent(
    matrix: MixedMatrix,
    params: EnumParams,
    node: SearchNode,
    registry: set | None = None,
):
    """Close one search node.

    Returns ``(closed_intent, children)``: the node's completed intent and
    the child nodes that survived all four admission checks (size, registry,
    canonicity, row-maximality), in spawn order.  Each child resumes at the
    column after the one its extent split from (``child.spawn_col``).
    """
    extent = np.asarray(sorted(node.extent), dtype=np.int64)
    check = np.asarray(sorted(node.check_rows), dtype=np.int64)
    closed, children, _ = _engine_py.close_node(
        matrix.values,
        matrix.missing,
        np.asarray(params.epsilons, dtype=np.float64),
        params.min_rows,
        extent,
        tuple(node.intent),
        node.start_col,
        check,
        set() if registry is None else registry,
    )
    closed = tuple(closed)
    return closed, [
        SearchNode(
            extent=tuple(int(i) for i in rows),
            intent=tuple(sorted(closed + (j,))),
            start_col=j + 1,
            check_rows=tuple(int(g) for g in omega),
        )
        for rows, j, omega in children
    ]


def compute_new_extents(matrix: MixedMatrix, params: EnumParams, extent, j: int):
    """Inclusion-maximal sub-extents of ``extent`` homogeneous in column j."""
    rows = np.asarray(sorted(extent), dtype=np.int64)
    wins = _engine_py.compute_new_extents(
        matrix.values, matrix.missing, rows, j, params.epsilons[j]
    )
    return [tuple(int(i) for i in w) for w in wins]


def is_canonical(matrix: MixedMatrix, extent, intent, j: int) -> bool:
    """True iff no free column before j could extend ``(extent, intent)``."""
    rows = np.asarray(sorted(extent), dtype=np.int64)
    in_intent = np.zeros(matrix.m, dtype=bool)
    for k in intent:
        in_intent[k] = True
    return _engine_py.is_canonical(
        matrix.values, matrix.missing, rows, in_intent, j, matrix.epsilons
    )


def is_row_maximal(matrix: MixedMatrix, extent, intent_cols, check_rows) -> bool:
    """True iff no check row fits ``extent`` on every listed column."""
    rows = np.asarray(sorted(extent), dtype=np.int64)
    return _engine_py.is_row_maximal(
        matrix.values,
        matrix.missing,
        rows,
        list(intent_cols),
        np.asarray(sorted(check_rows), dtype=np.int64),
        matrix.epsilons,
    )


def compute_check_rows(matrix: MixedMatrix, params: EnumParams, extent, j: int, check_rows=()):
    """Check set handed to the descendants of an extent spawned at column j."""
    rows = np.asarray(sorted(extent), dtype=np.int64)
    omega = _engine_py.compute_check_rows(
        matrix.values,
        matrix.missing,
        rows,
        j,
        np.asarray(sorted(check_rows), dtype=np.int64),
        params.epsilons[j],
        params.min_rows,
        matrix.n,
    )
    return tuple(int(g) for g in omega)


def abort_on_min_cols(intent_size: int, start_col: int, m: int, min_cols: int) -> bool:
    """True when a node (and its subtree) can no longer reach min_cols."""
    return _engine_py.abort_on_min_cols(intent_size, start_col, m, min_cols)
