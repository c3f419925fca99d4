"""Fallback implementations of the hot kernels (NumPy / pure Python).

These are the reference semantics for ``isoperim._fastkernels``; the two
backends must produce bit-identical results.  All arithmetic is exact:
int64 throughout, with callers responsible for staying inside int64 range
(the wrappers in :mod:`isoperim.kernels` enforce that and reroute to the
big-integer paths here when needed).
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_CHUNK = 1 << 22  # pair-histogram work chunk, keeps temporaries ~tens of MB


def fwht_int64(a: np.ndarray) -> None:
    """In-place Walsh-Hadamard transform of an int64 vector (length 2**n).

    Unnormalized butterflies: applying the transform twice multiplies by
    the length.  Values must stay inside int64; for 0/1 inputs they do.
    """
    n = a.shape[0]
    if n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    h = 1
    while h < n:
        b = a.reshape(-1, 2 * h)
        left = b[:, :h].copy()
        right = b[:, h:].copy()
        b[:, :h] = left + right
        b[:, h:] = left - right
        h *= 2


def pair_histogram(points: np.ndarray, nbits: int) -> np.ndarray:
    """Unordered pair counts by Hamming distance of index XORs.

    ``points`` is a 1-D array of distinct point indices.  Returns an int64
    vector h of length nbits+1 with h[d] = #{i < j : popcount(p_i ^ p_j) = d};
    h[0] is always 0.
    """
    pts = np.asarray(points, dtype=np.uint64)
    m = pts.shape[0]
    hist = np.zeros(nbits + 1, dtype=np.int64)
    if m < 2:
        return hist
    rows_per_chunk = max(1, _CHUNK // m)
    for lo in range(0, m, rows_per_chunk):
        hi = min(m, lo + rows_per_chunk)
        xors = pts[lo:hi, None] ^ pts[None, :]
        dists = np.bitwise_count(xors).astype(np.int64)
        # strict upper triangle of this row block
        mask = np.arange(m)[None, :] > np.arange(lo, hi)[:, None]
        hist += np.bincount(dists[mask], minlength=nbits + 1).astype(np.int64)
    return hist


def cross_histogram(apoints: np.ndarray, bpoints: np.ndarray, nbits: int) -> np.ndarray:
    """Ordered pair counts by distance over the product A x B."""
    a = np.asarray(apoints, dtype=np.uint64)
    b = np.asarray(bpoints, dtype=np.uint64)
    hist = np.zeros(nbits + 1, dtype=np.int64)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return hist
    rows_per_chunk = max(1, _CHUNK // max(1, b.shape[0]))
    for lo in range(0, a.shape[0], rows_per_chunk):
        hi = min(a.shape[0], lo + rows_per_chunk)
        xors = a[lo:hi, None] ^ b[None, :]
        dists = np.bitwise_count(xors).astype(np.int64)
        hist += np.bincount(dists.ravel(), minlength=nbits + 1).astype(np.int64)
    return hist


def _pair_weight(members, wdist):
    total = 0
    m = len(members)
    for i in range(m):
        pi = members[i]
        for j in range(i + 1, m):
            total += wdist[(pi ^ members[j]).bit_count()]
    return total


def max_weighted_pairs(points, m, wdist, fixed=(), recheck_every=65536):
    """Exhaustive scan over all m-subsets of ``points`` maximizing pair weight.

    The objective of a subset C is the total weight of all unordered pairs
    within C union ``fixed``, where a pair at Hamming distance d (popcount of
    the XOR of the two point indices) weighs wdist[d].

    Subsets are enumerated in colexicographic order with O(m) incremental
    updates per step; a full recount runs every ``recheck_every`` steps and
    any disagreement raises (exact arithmetic cannot drift, so disagreement
    means a bug).  Returns (best_value, best_subset_points_sorted, count).
    Ties are broken toward the lexicographically least subset of point
    values (fixed points included in the comparison, but they are constant).
    """
    pts = [int(p) for p in points]
    fix = [int(p) for p in fixed]
    n_av = len(pts)
    if not 0 <= m <= n_av:
        raise ValueError(f"cannot choose {m} of {n_av} points")
    wdist = [int(w) for w in wdist]

    idx = list(range(m))  # positions into pts, ascending

    def current_members():
        return [pts[i] for i in idx] + fix

    value = _pair_weight(current_members(), wdist)
    best = value
    best_subset = [pts[i] for i in idx]
    count = 1
    steps = 0

    while True:
        # colex successor: smallest position slot that can advance
        i = 0
        while i < m:
            nxt = idx[i] + 1
            limit = idx[i + 1] if i + 1 < m else n_av
            if nxt < limit:
                break
            i += 1
        if i == m:
            break
        # replace prefix idx[0..i] by (0..i-1, idx[i]+1); suffix unchanged
        old_pref = [pts[idx[t]] for t in range(i + 1)]
        new_pref = [pts[t] for t in range(i)] + [pts[idx[i] + 1]]
        rest = [pts[idx[t]] for t in range(i + 1, m)] + fix
        value -= _pair_weight(old_pref, wdist)
        value += _pair_weight(new_pref, wdist)
        for p_old in old_pref:
            for q in rest:
                value -= wdist[(p_old ^ q).bit_count()]
        for p_new in new_pref:
            for q in rest:
                value += wdist[(p_new ^ q).bit_count()]
        for t in range(i):
            idx[t] = t
        idx[i] += 1
        count += 1
        steps += 1
        if steps % recheck_every == 0:
            recount = _pair_weight(current_members(), wdist)
            if recount != value:
                raise RuntimeError(
                    f"incremental pair-weight drift: {value} vs {recount}"
                )
        if value > best:
            best = value
            best_subset = [pts[i2] for i2 in idx]
        elif value == best:
            cand = [pts[i2] for i2 in idx]
            if cand < best_subset:
                best_subset = cand
    return best, best_subset, count
