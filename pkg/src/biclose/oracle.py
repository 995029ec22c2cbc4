"""Brute-force enumeration of maximal homogeneous biclusters.

Ground truth for small instances.  The strategy is deliberately unrelated to
the search engine: for every non-empty column subset it builds all
inclusion-maximal row sets homogeneous on the whole subset (by intersecting
per-column maximal row sets), closes each against every addable column, and
deduplicates by extent.  Obviously correct, acceptably slow.
"""

import numpy as np

from .datamodel import DataError, EnumParams, MixedMatrix
from .enumerator import Bicluster

MAX_COLUMNS = 20


def _column_maximal_sets(values, missing, j, eps_j, n):
    """Inclusion-maximal row sets with spread <= eps in column j.

    Every maximal set equals, for some anchor value v, the set of rows whose
    value lies in [v, v + eps]; collecting those candidate sets for every
    observed anchor and dropping dominated ones is exhaustive.
    """
    rows = [i for i in range(n) if not missing[i, j]]
    cands = []
    for anchor in rows:
        lo = values[anchor, j]
        cand = frozenset(
            i for i in rows if lo <= values[i, j] and values[i, j] - lo <= eps_j
        )
        cands.append(cand)
    return _keep_maximal(cands)


def _keep_maximal(sets):
    uniq = sorted(set(sets), key=lambda s: (-len(s), sorted(s)))
    out = []
    for s in uniq:
        if not any(s < t for t in out):
            out.append(s)
    return out


def brute_force_enumerate(matrix: MixedMatrix, params: EnumParams) -> list[Bicluster]:
    """All maximal homogeneous biclusters with at least ``min_rows`` rows and
    ``min_cols`` columns, sorted by (extent, intent)."""
    params.check_against(matrix)
    n, m = matrix.n, matrix.m
    if m > MAX_COLUMNS:
        raise DataError(
            f"instance too large for the brute-force path ({m} columns, "
            f"limit {MAX_COLUMNS})"
        )
    values = matrix.values
    missing = matrix.missing
    eps = matrix.epsilons

    per_column = [
        _column_maximal_sets(values, missing, j, eps[j], n) for j in range(m)
    ]

    # maximal row sets per column subset, built by adding one column at a time
    subset_sets: dict[int, list[frozenset]] = {}
    found: dict[frozenset, tuple] = {}
    for mask in range(1, 1 << m):
        low = mask & (-mask)
        j = low.bit_length() - 1
        if mask == low:
            sets = per_column[j]
        else:
            prev = subset_sets[mask ^ low]
            inter = {s & w for s in prev for w in per_column[j]}
            inter.discard(frozenset())
            sets = _keep_maximal(inter)
        subset_sets[mask] = sets
        for rows in sets:
            if len(rows) < params.min_rows or rows in found:
                continue
            idx = np.array(sorted(rows), dtype=np.int64)
            closed = []
            for k in range(m):
                if missing[idx, k].any():
                    continue
                vals = values[idx, k]
                if float(vals.max()) - float(vals.min()) <= eps[k]:
                    closed.append(k)
            if len(closed) >= params.min_cols:
                found[rows] = (tuple(int(i) for i in idx), tuple(closed))

    biclusters = [Bicluster(extent=e, intent=i) for e, i in found.values()]
    biclusters.sort(key=lambda b: (b.extent, b.intent))
    return biclusters
