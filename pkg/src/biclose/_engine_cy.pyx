# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the pure-Python enumeration engine.

Semantics must match ``biclose._engine_py`` exactly: the test suite compares
complete output sequences of both engines.  Keep every floating-point
comparison in the same ``a - b <= eps`` form the fallback uses.
"""

import numpy as np

from libc.stdint cimport int64_t


cdef void _sort_pairs(double* v, int64_t* r, double* tv, int64_t* tr,
                      Py_ssize_t n) noexcept:
    """Bottom-up merge sort of (value, row) pairs, ascending on both keys."""
    cdef Py_ssize_t width = 1, lo, mid, hi, a, b, k
    cdef double* sv = v
    cdef int64_t* sr = r
    cdef double* dv = tv
    cdef int64_t* dr = tr
    cdef double* wv
    cdef int64_t* wr
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            if mid > n:
                mid = n
            hi = lo + 2 * width
            if hi > n:
                hi = n
            a = lo
            b = mid
            k = lo
            while a < mid and b < hi:
                if sv[a] < sv[b] or (sv[a] == sv[b] and sr[a] <= sr[b]):
                    dv[k] = sv[a]
                    dr[k] = sr[a]
                    a += 1
                else:
                    dv[k] = sv[b]
                    dr[k] = sr[b]
                    b += 1
                k += 1
            while a < mid:
                dv[k] = sv[a]
                dr[k] = sr[a]
                a += 1
                k += 1
            while b < hi:
                dv[k] = sv[b]
                dr[k] = sr[b]
                b += 1
                k += 1
            lo = hi
        wv = sv
        sv = dv
        dv = wv
        wr = sr
        sr = dr
        dr = wr
        width *= 2
    if sv != v:
        for k in range(n):
            v[k] = sv[k]
            r[k] = sr[k]


cdef void _sort_vals(double* x, double* t, Py_ssize_t n) noexcept:
    cdef Py_ssize_t width = 1, lo, mid, hi, a, b, k
    cdef double* s = x
    cdef double* d = t
    cdef double* w
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            if mid > n:
                mid = n
            hi = lo + 2 * width
            if hi > n:
                hi = n
            a = lo
            b = mid
            k = lo
            while a < mid and b < hi:
                if s[a] <= s[b]:
                    d[k] = s[a]
                    a += 1
                else:
                    d[k] = s[b]
                    b += 1
                k += 1
            while a < mid:
                d[k] = s[a]
                a += 1
                k += 1
            while b < hi:
                d[k] = s[b]
                b += 1
                k += 1
            lo = hi
        w = s
        s = d
        d = w
        width *= 2
    if s != x:
        for k in range(n):
            x[k] = s[k]


cdef void _sort_rows(int64_t* x, int64_t* t, Py_ssize_t n) noexcept:
    cdef Py_ssize_t width = 1, lo, mid, hi, a, b, k
    cdef int64_t* s = x
    cdef int64_t* d = t
    cdef int64_t* w
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            if mid > n:
                mid = n
            hi = lo + 2 * width
            if hi > n:
                hi = n
            a = lo
            b = mid
            k = lo
            while a < mid and b < hi:
                if s[a] <= s[b]:
                    d[k] = s[a]
                    a += 1
                else:
                    d[k] = s[b]
                    b += 1
                k += 1
            while a < mid:
                d[k] = s[a]
                a += 1
                k += 1
            while b < hi:
                d[k] = s[b]
                b += 1
                k += 1
            lo = hi
        w = s
        s = d
        d = w
        width *= 2
    if s != x:
        for k in range(n):
            x[k] = s[k]


cdef bint _is_canonical(const double[:, ::1] v, const unsigned char[:, ::1] miss,
                        int64_t[::1] rows, unsigned char* in_intent,
                        Py_ssize_t j, const double[::1] eps) noexcept:
    cdef Py_ssize_t k, t, i
    cdef double mn, mx, val
    cdef bint anymiss
    for k in range(j):
        if in_intent[k]:
            continue
        anymiss = 0
        mn = v[rows[0], k]
        mx = mn
        for t in range(rows.shape[0]):
            i = rows[t]
            if miss[i, k]:
                anymiss = 1
                break
            val = v[i, k]
            if val < mn:
                mn = val
            if val > mx:
                mx = val
        if anymiss:
            continue
        if mx - mn <= eps[k]:
            return 0
    return 1


cdef bint _is_row_maximal(const double[:, ::1] v, const unsigned char[:, ::1] miss,
                          int64_t[::1] rows, unsigned char* in_intent,
                          Py_ssize_t j, int64_t[::1] check,
                          const double[::1] eps, int64_t* cols_buf,
                          double* cmin, double* cmax) noexcept:
    cdef Py_ssize_t nb = 0, k, t, b, g
    cdef double mn, mx, val, hi, lo
    cdef bint addable
    cdef Py_ssize_t m = v.shape[1]
    if check.shape[0] == 0:
        return 1
    for k in range(m):
        if in_intent[k] or k == j:
            mn = v[rows[0], k]
            mx = mn
            for t in range(rows.shape[0]):
                val = v[rows[t], k]
                if val < mn:
                    mn = val
                if val > mx:
                    mx = val
            cols_buf[nb] = k
            cmin[nb] = mn
            cmax[nb] = mx
            nb += 1
    for t in range(check.shape[0]):
        g = check[t]
        addable = 1
        for b in range(nb):
            k = cols_buf[b]
            if miss[g, k]:
                addable = 0
                break
            val = v[g, k]
            hi = cmax[b]
            if val > hi:
                hi = val
            lo = cmin[b]
            if val < lo:
                lo = val
            if hi - lo > eps[k]:
                addable = 0
                break
        if addable:
            return 0
    return 1


def mine(values, missing, eps, Py_ssize_t min_rows, Py_ssize_t min_cols,
         bint prune_min_cols=True):
    """Enumerate all maximal homogeneous biclusters; see ``_engine_py.mine``."""
    V = np.ascontiguousarray(values, dtype=np.float64)
    Mk = np.ascontiguousarray(missing, dtype=np.uint8)
    E = np.ascontiguousarray(eps, dtype=np.float64)
    cdef const double[:, ::1] v = V
    cdef const unsigned char[:, ::1] miss = Mk
    cdef const double[::1] epsv = E
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t m = v.shape[1]

    buf_v = np.empty(n, dtype=np.float64)
    buf_r = np.empty(n, dtype=np.int64)
    tmp_v = np.empty(n, dtype=np.float64)
    tmp_r = np.empty(n, dtype=np.int64)
    omega_buf = np.empty(n, dtype=np.int64)
    piv_v = np.empty(n, dtype=np.float64)
    piv_t = np.empty(n, dtype=np.float64)
    in_intent_a = np.zeros(m, dtype=np.uint8)
    in_ext_a = np.zeros(n, dtype=np.uint8)
    is_chk_a = np.zeros(n, dtype=np.uint8)
    cols_buf_a = np.empty(m, dtype=np.int64)
    cmin_a = np.empty(m, dtype=np.float64)
    cmax_a = np.empty(m, dtype=np.float64)

    cdef double[::1] bv = buf_v
    cdef int64_t[::1] br = buf_r
    cdef double[::1] tv = tmp_v
    cdef int64_t[::1] tr = tmp_r
    cdef int64_t[::1] ob = omega_buf
    cdef double[::1] pv = piv_v
    cdef double[::1] pt = piv_t
    cdef unsigned char[::1] in_intent = in_intent_a
    cdef unsigned char[::1] in_ext = in_ext_a
    cdef unsigned char[::1] is_chk = is_chk_a
    cdef int64_t[::1] cols_buf = cols_buf_a
    cdef double[::1] cmin = cmin_a
    cdef double[::1] cmax = cmax_a

    cdef int64_t[::1] I, chk, G
    cdef Py_ssize_t j, k, t, i, p, l, r, last, wlen, q, start_col
    cdef double mn, mx, val, p1, p2, eps_j
    cdef bint anymiss
    cdef long nodes = 0, cands = 0, pruned = 0

    registry = set()
    results = []
    stack = [(np.arange(n, dtype=np.int64), (), 0,
              np.empty(0, dtype=np.int64))]

    while stack:
        extent, intent, start, check = stack.pop()
        start_col = start
        if prune_min_cols and len(intent) + (m - start_col) < min_cols:
            pruned += 1
            continue
        nodes += 1
        I = extent
        chk = check
        for k in range(m):
            in_intent[k] = 0
        for k in intent:
            in_intent[k] = 1
        closed = list(intent)
        children = []
        for j in range(start_col, m):
            if in_intent[j]:
                continue
            eps_j = epsv[j]
            anymiss = 0
            mn = 0.0
            mx = 0.0
            p = 0
            for t in range(I.shape[0]):
                i = I[t]
                if miss[i, j]:
                    anymiss = 1
                    continue
                val = v[i, j]
                if p == 0:
                    mn = val
                    mx = val
                else:
                    if val < mn:
                        mn = val
                    if val > mx:
                        mx = val
                bv[p] = val
                br[p] = i
                p += 1
            if not anymiss and mx - mn <= eps_j:
                closed.append(j)
                in_intent[j] = 1
                continue
            if p == 0:
                continue
            _sort_pairs(&bv[0], &br[0], &tv[0], &tr[0], p)
            r = 0
            last = -1
            for l in range(p):
                if r < l:
                    r = l
                while r + 1 < p and bv[r + 1] - bv[l] <= eps_j:
                    r += 1
                if r <= last:
                    continue
                last = r
                cands += 1
                wlen = r - l + 1
                if wlen < min_rows:
                    continue
                cand = np.empty(wlen, dtype=np.int64)
                G = cand
                for t in range(wlen):
                    G[t] = br[l + t]
                _sort_rows(&G[0], &tr[0], wlen)
                key = cand.tobytes()
                if key in registry:
                    continue
                if not _is_canonical(v, miss, G, &in_intent[0], j, epsv):
                    continue
                if not _is_row_maximal(v, miss, G, &in_intent[0], j, chk,
                                       epsv, &cols_buf[0], &cmin[0],
                                       &cmax[0]):
                    continue
                registry.add(key)
                # pivot bounds for the descendants' check set
                for t in range(wlen):
                    pv[t] = v[G[t], j]
                _sort_vals(&pv[0], &pt[0], wlen)
                p1 = pv[min_rows - 1]
                p2 = pv[wlen - min_rows]
                for t in range(wlen):
                    in_ext[G[t]] = 1
                for t in range(chk.shape[0]):
                    is_chk[chk[t]] = 1
                q = 0
                for i in range(n):
                    if is_chk[i]:
                        ob[q] = i
                        q += 1
                    elif not in_ext[i] and not miss[i, j]:
                        val = v[i, j]
                        if p1 - val <= eps_j and val - p2 <= eps_j:
                            ob[q] = i
                            q += 1
                for t in range(wlen):
                    in_ext[G[t]] = 0
                for t in range(chk.shape[0]):
                    is_chk[chk[t]] = 0
                omega = np.empty(q, dtype=np.int64)
                for t in range(q):
                    omega[t] = ob[t]
                children.append((cand, j, omega))
        closed.sort()
        if len(closed) >= min_cols:
            results.append(
                (tuple(int(x) for x in extent), tuple(closed))
            )
        for child in reversed(children):
            cand, j, omega = child
            child_intent = tuple(sorted(closed + [j]))
            stack.append((cand, child_intent, j + 1, omega))
    return results, {"nodes": nodes, "candidates": cands, "pruned": pruned}
