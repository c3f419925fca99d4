# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Walsh-Hadamard transform, pair-distance histograms,
and the exhaustive subset scan.  Semantics are identical to
``isoperim._pykernels``; that module is the reference implementation."""

import numpy as np

BACKEND = "compiled"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


def fwht_int64(a):
    """In-place unnormalized Walsh-Hadamard transform of an int64 vector."""
    arr = np.ascontiguousarray(a, dtype=np.int64)
    if arr is not a:
        raise ValueError("fwht_int64 requires a contiguous int64 array")
    cdef long long[::1] v = arr
    cdef Py_ssize_t n = v.shape[0], h = 1, i, j
    cdef long long x, y
    if n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    with nogil:
        while h < n:
            i = 0
            while i < n:
                for j in range(i, i + h):
                    x = v[j]
                    y = v[j + h]
                    v[j] = x + y
                    v[j + h] = x - y
                i += 2 * h
            h *= 2


def pair_histogram(points, int nbits):
    """Unordered pair counts by Hamming distance of index XORs."""
    pts_arr = np.ascontiguousarray(points, dtype=np.uint64)
    cdef unsigned long long[::1] pts = pts_arr
    cdef Py_ssize_t m = pts.shape[0], i, j
    out = np.zeros(nbits + 1, dtype=np.int64)
    cdef long long[::1] hist = out
    with nogil:
        for i in range(m):
            for j in range(i + 1, m):
                hist[__builtin_popcountll(pts[i] ^ pts[j])] += 1
    return out


def cross_histogram(apoints, bpoints, int nbits):
    """Ordered pair counts by distance over the product A x B."""
    a_arr = np.ascontiguousarray(apoints, dtype=np.uint64)
    b_arr = np.ascontiguousarray(bpoints, dtype=np.uint64)
    cdef unsigned long long[::1] a = a_arr
    cdef unsigned long long[::1] b = b_arr
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0], i, j
    out = np.zeros(nbits + 1, dtype=np.int64)
    cdef long long[::1] hist = out
    with nogil:
        for i in range(na):
            for j in range(nb):
                hist[__builtin_popcountll(a[i] ^ b[j])] += 1
    return out


cdef long long _pair_weight(unsigned long long[::1] members, Py_ssize_t m,
                            long long[::1] wdist) nogil:
    cdef long long total = 0
    cdef Py_ssize_t i, j
    for i in range(m):
        for j in range(i + 1, m):
            total += wdist[__builtin_popcountll(members[i] ^ members[j])]
    return total


def max_weighted_pairs(points, Py_ssize_t m, wdist, fixed=(), recheck_every=65536):
    """Exhaustive scan over all m-subsets of ``points`` maximizing pair weight.

    Mirror of `_pykernels.max_weighted_pairs`; weights and partial sums must
    fit in int64 (the wrapper in :mod:`isoperim.kernels` checks this).
    """
    pts_arr = np.ascontiguousarray(points, dtype=np.uint64)
    fix_arr = np.ascontiguousarray(fixed, dtype=np.uint64)
    w_arr = np.ascontiguousarray(wdist, dtype=np.int64)
    cdef unsigned long long[::1] pts = pts_arr
    cdef unsigned long long[::1] fix = fix_arr
    cdef long long[::1] w = w_arr
    cdef Py_ssize_t n_av = pts.shape[0], nfix = fix.shape[0]
    if not 0 <= m <= n_av:
        raise ValueError(f"cannot choose {m} of {n_av} points")
    cdef long long recheck = recheck_every

    idx_arr = np.arange(m, dtype=np.int64)
    cdef long long[::1] idx = idx_arr
    best_arr = pts_arr[:m].copy()
    cdef unsigned long long[::1] best_subset = best_arr
    # scratch: current members (chosen followed by fixed)
    cur_arr = np.empty(m + nfix, dtype=np.uint64)
    cdef unsigned long long[::1] cur = cur_arr

    cdef Py_ssize_t i, t, u
    cdef long long value, best, count = 1, steps = 0
    cdef unsigned long long p_new, p_old, q
    cdef long long nxt, limit
    cdef bint smaller, differs

    for t in range(m):
        cur[t] = pts[idx[t]]
    for t in range(nfix):
        cur[m + t] = fix[t]
    value = _pair_weight(cur, m + nfix, w)
    best = value

    with nogil:
        while True:
            i = 0
            while i < m:
                nxt = idx[i] + 1
                limit = idx[i + 1] if i + 1 < m else n_av
                if nxt < limit:
                    break
                i += 1
            if i == m:
                break
            # prefix idx[0..i] -> (0..i-1, idx[i]+1); suffix and fixed unchanged
            # remove within-prefix pairs and prefix-to-rest cross pairs
            for t in range(i + 1):
                p_old = pts[idx[t]]
                for u in range(t + 1, i + 1):
                    value -= w[__builtin_popcountll(p_old ^ pts[idx[u]])]
                for u in range(i + 1, m):
                    value -= w[__builtin_popcountll(p_old ^ pts[idx[u]])]
                for u in range(nfix):
                    value -= w[__builtin_popcountll(p_old ^ fix[u])]
            for t in range(i):
                idx[t] = t
            idx[i] += 1
            # add the new prefix back
            for t in range(i + 1):
                p_new = pts[idx[t]]
                for u in range(t + 1, i + 1):
                    value += w[__builtin_popcountll(p_new ^ pts[idx[u]])]
                for u in range(i + 1, m):
                    value += w[__builtin_popcountll(p_new ^ pts[idx[u]])]
                for u in range(nfix):
                    value += w[__builtin_popcountll(p_new ^ fix[u])]
            count += 1
            steps += 1
            if steps % recheck == 0:
                for t in range(m):
                    cur[t] = pts[idx[t]]
                if _pair_weight(cur, m + nfix, w) != value:
                    with gil:
                        raise RuntimeError("incremental pair-weight drift")
            if value >= best:
                smaller = False
                differs = False
                if value > best:
                    smaller = True
                else:
                    for t in range(m):
                        if pts[idx[t]] != best_subset[t]:
                            differs = True
                            smaller = pts[idx[t]] < best_subset[t]
                            break
                if smaller:
                    best = value
                    for t in range(m):
                        best_subset[t] = pts[idx[t]]
    return int(best), [int(x) for x in best_arr], int(count)
