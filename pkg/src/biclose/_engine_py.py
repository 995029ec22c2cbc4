"""Pure-Python enumeration engine.

This is the reference implementation of the search; ``_engine_cy`` is a
compiled twin with identical semantics that is preferred at import time when
available.  Both must produce bit-identical output sequences, which the test
suite asserts, so every floating-point comparison here is written in the
exact form the compiled engine uses (always ``a - b <= eps``, never
``a <= b + eps``).

The search walks a tree of nodes ``(extent I, intent J, start column y,
check rows)`` rooted at the supremum (all rows, empty intent).  Closing a
node scans columns from ``y``: a column homogeneous over I with no missing
cell joins J; a failing column spawns candidate sub-extents (maximal sorted
windows of width eps).  A candidate survives only if it is large enough, not
seen before (extent registry), canonical (no earlier free column could
extend it, which pins each bicluster to a single generation path), and
row-maximal (no previously dropped row could rejoin it).
"""

import numpy as np


def column_stats(values, missing, rows, j):
    """Max, min and missing-flag of column j over the given rows."""
    vals = values[rows, j]
    has_missing = bool(missing[rows, j].any())
    if has_missing:
        keep = ~missing[rows, j]
        if not keep.any():
            return 0.0, 0.0, True
        vals = vals[keep]
    return float(vals.max()), float(vals.min()), has_missing


def compute_new_extents(values, missing, rows, j, eps_j):
    """All inclusion-maximal sub-extents homogeneous in column j.

    Rows with a missing cell in column j are excluded.  The result is the
    classic sorted sweep: order the remaining rows by (value, row index) and
    emit each window that is not contained in the previously emitted one.
    Windows come out in ascending value order, each sorted by row index.
    """
    keep = ~missing[rows, j]
    rr = rows[keep]
    if rr.size == 0:
        return []
    vv = values[rr, j]
    order = np.lexsort((rr, vv))
    rr = rr[order]
    vv = vv[order]
    p = vv.size
    out = []
    r = 0
    last_emitted = -1
    for l in range(p):
        if r < l:
            r = l
        while r + 1 < p and vv[r + 1] - vv[l] <= eps_j:
            r += 1
        if r > last_emitted:
            out.append(np.sort(rr[l : r + 1]))
            last_emitted = r
    return out


def is_canonical(values, missing, rows, in_intent, j, eps):
    """True unless some earlier column outside the intent fits the rows.

    A candidate extent spawned at column j whose rows are also homogeneous
    (and fully present) in a free column k < j is reachable through that
    earlier column, so this path drops it.
    """
    for k in range(j):
        if in_intent[k]:
            continue
        if missing[rows, k].any():
            continue
        vals = values[rows, k]
        if float(vals.max()) - float(vals.min()) <= eps[k]:
            return False
    return True


def is_row_maximal(values, missing, rows, intent_cols, check_rows, eps):
    """True unless some check row fits the candidate on every intent column."""
    if len(check_rows) == 0:
        return True
    bounds = []
    for k in intent_cols:
        vals = values[rows, k]
        bounds.append((k, float(vals.min()), float(vals.max())))
    for g in check_rows:
        for k, mn, mx in bounds:
            if missing[g, k]:
                break
            v = values[g, k]
            if max(mx, v) - min(mn, v) > eps[k]:
                break
        else:
            return False
    return True


def compute_check_rows(values, missing, rows, j, check_rows, eps_j, min_rows, n):
    """Check set for the descendants of a candidate extent.

    Any outside row that could rejoin a descendant (which keeps at least
    ``min_rows`` of these rows) must lie within eps of the pivot values: the
    min_rows-th smallest and min_rows-th largest value of the extent in the
    spawning column.  The parent's check rows are carried over unfiltered.
    """
    vals = np.sort(values[rows, j])
    p1 = vals[min_rows - 1]
    p2 = vals[vals.size - min_rows]
    member = np.zeros(n, dtype=bool)
    member[rows] = True
    member[check_rows] = True
    out = list(check_rows)
    for i in range(n):
        if member[i] or missing[i, j]:
            continue
        v = values[i, j]
        if p1 - v <= eps_j and v - p2 <= eps_j:
            out.append(i)
    return np.array(sorted(out), dtype=np.int64)


def abort_on_min_cols(intent_size, start_col, m, min_cols):
    """True when even taking every remaining column cannot reach min_cols."""
    return intent_size + (m - start_col) < min_cols


def close_node(values, missing, eps, min_rows, extent, intent, start_col, check_rows, registry):
    """Close one node: final intent plus surviving child nodes in spawn order.

    ``registry`` collects every accepted extent so no extent seeds the
    recursion twice; insertion happens only after all four admission checks
    pass.  Children are (extent, spawn column, check rows) triples.
    """
    n, m = values.shape
    in_intent = np.zeros(m, dtype=bool)
    for k in intent:
        in_intent[k] = True
    closed = list(intent)
    children = []
    candidates = 0
    for j in range(start_col, m):
        if in_intent[j]:
            continue
        mx, mn, has_missing = column_stats(values, missing, extent, j)
        if not has_missing and mx - mn <= eps[j]:
            closed.append(j)
            in_intent[j] = True
            continue
        for cand in compute_new_extents(values, missing, extent, j, eps[j]):
            candidates += 1
            if cand.size < min_rows:
                continue
            key = cand.tobytes()
            if key in registry:
                continue
            if not is_canonical(values, missing, cand, in_intent, j, eps):
                continue
            spawn_intent = [k for k in range(m) if in_intent[k]] + [j]
            if not is_row_maximal(values, missing, cand, spawn_intent, check_rows, eps):
                continue
            registry.add(key)
            omega = compute_check_rows(
                values, missing, cand, j, check_rows, eps[j], min_rows, n
            )
            children.append((cand, j, omega))
    return sorted(closed), children, candidates


def mine(values, missing, eps, min_rows, min_cols, prune_min_cols=True):
    """Enumerate all maximal homogeneous biclusters of the matrix.

    Returns ``(biclusters, stats)`` where each bicluster is a pair of sorted
    index tuples ``(rows, cols)`` in depth-first generation order, and stats
    counts expanded nodes and examined candidate extents.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    missing = np.ascontiguousarray(missing, dtype=bool)
    eps = np.ascontiguousarray(eps, dtype=np.float64)
    n, m = values.shape
    registry = set()
    results = []
    stats = {"nodes": 0, "candidates": 0, "pruned": 0}

    root = (np.arange(n, dtype=np.int64), (), 0, np.empty(0, dtype=np.int64))
    stack = [root]
    while stack:
        extent, intent, start_col, check_rows = stack.pop()
        if prune_min_cols and abort_on_min_cols(len(intent), start_col, m, min_cols):
            stats["pruned"] += 1
            continue
        stats["nodes"] += 1
        closed, children, cand_count = close_node(
            values, missing, eps, min_rows, extent, intent, start_col,
            check_rows, registry,
        )
        stats["candidates"] += cand_count
        if len(closed) >= min_cols:
            results.append((tuple(int(i) for i in extent), tuple(closed)))
        for cand, j, omega in reversed(children):
            child_intent = tuple(sorted(closed + [j]))
            stack.append((cand, child_intent, j + 1, omega))
    return results, stats
