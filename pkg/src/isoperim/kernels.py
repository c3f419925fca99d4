"""Backend selection for the hot kernels.

Imports the compiled extension when available and falls back to the
NumPy/pure-Python implementations otherwise.  ``BACKEND`` records which one
is active.  The subset scan reroutes to the big-integer fallback whenever
the requested weights could overflow int64, so results are exact on either
backend.  ``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

if os.environ.get("ISOPERIM_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _fastkernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

BACKEND: str = _impl.BACKEND

_INT64_SAFE = (1 << 62) - 1


def fwht_int64(a: np.ndarray) -> None:
    """In-place unnormalized Walsh-Hadamard transform (exact, int64)."""
    _impl.fwht_int64(a)


def pair_histogram(points: np.ndarray, nbits: int) -> np.ndarray:
    """Unordered pair counts by Hamming distance of index XORs."""
    return _impl.pair_histogram(points, nbits)


def cross_histogram(apoints: np.ndarray, bpoints: np.ndarray, nbits: int) -> np.ndarray:
    """Ordered pair counts by distance over the product A x B."""
    return _impl.cross_histogram(apoints, bpoints, nbits)


def max_weighted_pairs(points, m, wdist, fixed=(), recheck_every=65536):
    """Exhaustive maximum pair weight over m-subsets; see `_pykernels`.

    Accepts arbitrary integer weights; the compiled backend is used only
    when every partial sum provably fits in int64.
    """
    wmax = max((abs(int(w)) for w in wdist), default=0)
    total = m + len(fixed)
    bound = wmax * (total * (total - 1) // 2)
    if bound > _INT64_SAFE:
        return _pykernels.max_weighted_pairs(points, m, wdist, fixed, recheck_every)
    return _impl.max_weighted_pairs(points, m, wdist, fixed, recheck_every)
