"""Subsets of the n-cube: constructions, distance distributions, spectra.

Point encoding: index j in [0, 2**n) represents the vertex x with
x_i = (-1)**bit_{i-1}(j), so the Hamming weight of j is the distance from
the all-ones vertex and ball/sphere/parity constructions are popcount
filters.  With this encoding, initial segments of the index order are the
lexicographic initial segments of the cube (coordinate n compared first),
so subcubes are realized with their fixed coordinates at the top: this
makes `subcube(n, k)`, `lex_segment(n, 2**(n-k))` and products literally
coincide.  Every quantity computed here is invariant under coordinate
relabeling, so the choice is cosmetic.

Distance distributions are computed by direct pair counting up to n = 14
and through the spectral route (Fourier weights + inverse MacWilliams
transform) beyond; the overlap region is a standing cross-check in the
test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .exactmath import binom_cum
from .krawtchouk import table

__all__ = [
    "Code",
    "subcube",
    "hamming_ball",
    "hamming_sphere",
    "lex_segment",
    "even_part",
    "odd_part",
    "product_extend",
    "random_code",
    "DistanceDistribution",
    "DualDistribution",
    "FourierSpectrum",
    "distance_distribution",
    "fourier_weights",
    "dual_distribution",
    "macwilliams_forward",
    "macwilliams_inverse",
    "edge_counts",
    "cdf_distance",
]

MAX_DIMENSION = 24
_DIRECT_LIMIT = 14  # direct pair counting up to here, spectral beyond


class Code:
    """An immutable subset of {-1,1}^n held as a 0/1 membership vector."""

    __slots__ = ("n", "mask", "size", "_hist", "_coeffs")

    def __init__(self, n: int, mask: np.ndarray):
        if not 0 <= n <= MAX_DIMENSION:
            raise ValueError(f"dimension {n} outside [0, {MAX_DIMENSION}]")
        arr = np.ascontiguousarray(mask, dtype=np.uint8)
        if arr.shape != (1 << n,):
            raise ValueError(f"mask must have length 2**{n}")
        if arr.max(initial=0) > 1:
            raise ValueError("mask entries must be 0/1")
        arr.setflags(write=False)
        self.n = n
        self.mask = arr
        self.size = int(arr.sum())
        self._hist = None
        self._coeffs = None

    @classmethod
    def from_indices(cls, n: int, indices) -> "Code":
        mask = np.zeros(1 << n, dtype=np.uint8)
        idx = np.asarray(list(indices), dtype=np.int64)
        if idx.size:
            if idx.min() < 0 or idx.max() >= (1 << n):
                raise ValueError("point index out of range")
            mask[idx] = 1
        return cls(n, mask)

    def indices(self) -> np.ndarray:
        return np.nonzero(self.mask)[0].astype(np.uint64)

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.size, 1 << self.n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Code)
            and self.n == other.n
            and bool(np.array_equal(self.mask, other.mask))
        )

    def __hash__(self) -> int:
        return hash((self.n, self.mask.tobytes()))

    def __repr__(self) -> str:
        return f"Code(n={self.n}, size={self.size})"

    def union(self, other: "Code") -> "Code":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return Code(self.n, self.mask | other.mask)

    def to_dict(self) -> dict:
        packed = np.packbits(self.mask, bitorder="little")
        return {"n": self.n, "bitmap_hex": packed.tobytes().hex()}

    @classmethod
    def from_dict(cls, d: dict) -> "Code":
        n = int(d["n"])
        raw = bytes.fromhex(d["bitmap_hex"])
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return cls(n, bits[: 1 << n])


def _weights_of_indices(n: int) -> np.ndarray:
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)


def subcube(n: int, k: int) -> Code:
    """The (n-k)-dimensional subcube with its k fixed coordinates set to 1.

    Realized as the initial index segment [0, 2**(n-k)), i.e. the top k
    coordinates are the fixed ones.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return lex_segment(n, 1 << (n - k))


def hamming_ball(n: int, radius: int) -> Code:
    """All points within Hamming distance `radius` of the all-ones vertex."""
    if not 0 <= radius <= n:
        raise ValueError(f"radius {radius} outside [0, {n}]")
    return Code(n, (_weights_of_indices(n) <= radius).astype(np.uint8))


def hamming_sphere(n: int, radius: int) -> Code:
    """All points at Hamming distance exactly `radius` from all-ones."""
    if not 0 <= radius <= n:
        raise ValueError(f"radius {radius} outside [0, {n}]")
    return Code(n, (_weights_of_indices(n) == radius).astype(np.uint8))


def lex_segment(n: int, m: int) -> Code:
    """The first m points in lexicographic order (= indices [0, m))."""
    if not 0 <= m <= (1 << n):
        raise ValueError(f"size {m} outside [0, 2**{n}]")
    mask = np.zeros(1 << n, dtype=np.uint8)
    mask[:m] = 1
    return Code(n, mask)


def even_part(c: Code) -> Code:
    """Members at even distance from the all-ones vertex."""
    even = (_weights_of_indices(c.n) & 1) == 0
    return Code(c.n, c.mask & even.astype(np.uint8))


def odd_part(c: Code) -> Code:
    """Members at odd distance from the all-ones vertex."""
    odd = (_weights_of_indices(c.n) & 1) == 1
    return Code(c.n, c.mask & odd.astype(np.uint8))


def product_extend(c: Code, k: int) -> Code:
    """The product of c with a free k-dimensional cube (size grows 2**k)."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if c.n + k > MAX_DIMENSION:
        raise ValueError(f"dimension overflow: {c.n}+{k} > {MAX_DIMENSION}")
    return Code(c.n + k, np.repeat(c.mask, 1 << k))


def random_code(n: int, m: int, rng: np.random.Generator) -> Code:
    """Uniformly random size-m subset of the n-cube."""
    idx = rng.choice(1 << n, size=m, replace=False)
    return Code.from_indices(n, idx)


# ---------------------------------------------------------------------------
# distributions and transforms


@dataclass(frozen=True)
class DistanceDistribution:
    """P(i) = fraction of ordered member pairs at distance i (by |A|^2)."""

    n: int
    size: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.n + 1:
            raise ValueError("distance distribution needs n+1 entries")
        if sum(self.entries) != 1:
            raise ValueError("distance distribution must sum to 1")
        for p in self.entries:
            if p < 0 or (p * self.size * self.size).denominator != 1:
                raise ValueError("entries must be nonnegative pair fractions")


@dataclass(frozen=True)
class DualDistribution:
    """Q(k) = degree-k Fourier weight of the indicator divided by alpha^2."""

    n: int
    alpha: Fraction
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.n + 1:
            raise ValueError("dual distribution needs n+1 entries")
        if self.entries[0] != 1:
            raise ValueError("dual distribution must start at 1")
        if sum(self.entries) != 1 / self.alpha:
            raise ValueError("dual distribution must sum to 1/alpha")
        if any(q < 0 for q in self.entries):
            raise ValueError("dual distribution entries must be >= 0")


@dataclass(frozen=True)
class FourierSpectrum:
    """Degree-collected squared Fourier coefficients W_0..W_n of a function.

    For the indicator of a set of density alpha: W_0 = alpha^2 and
    sum_k W_k = alpha.  `scaled_coeffs`, when present, holds the integer
    vector of 2**n times each Fourier coefficient, indexed by subset mask.
    """

    n: int
    weights: tuple[Fraction, ...]
    scaled_coeffs: np.ndarray | None = None

    def __post_init__(self):
        if len(self.weights) != self.n + 1:
            raise ValueError("spectrum needs n+1 degree weights")


def _fourier_ints(c: Code) -> np.ndarray:
    """Integer Fourier coefficients scaled by 2**n, indexed by subset mask."""
    if c._coeffs is None:
        arr = c.mask.astype(np.int64)
        kernels.fwht_int64(arr)
        arr.setflags(write=False)
        c._coeffs = arr
    return c._coeffs


def _weight_sums(c: Code) -> list[int]:
    """T_k = sum over |S| = k of (2**n fhat_S)^2, exact integers."""
    coeffs = _fourier_ints(c)
    sq = coeffs * coeffs  # bounded by 4**n <= 2**48, safe in int64
    acc = np.zeros(c.n + 1, dtype=np.int64)
    np.add.at(acc, _weights_of_indices(c.n), sq)
    return [int(t) for t in acc]


def _ordered_histogram(c: Code) -> list[int]:
    """Ordered pair counts N_d = #{(x, y) in A^2 : d(x, y) = d}; N_0 = |A|."""
    if c._hist is None:
        if c.n <= _DIRECT_LIMIT:
            unordered = kernels.pair_histogram(c.indices(), c.n)
            hist = [2 * int(u) for u in unordered]
            hist[0] = c.size
        else:
            sums = _weight_sums(c)
            tab = table(c.n)
            scale = 1 << c.n
            hist = []
            for d in range(c.n + 1):
                row = tab.row(d)
                num = sum(t * row[i] for i, t in enumerate(sums))
                if num % scale:
                    raise ArithmeticError("spectral pair count not integral")
                hist.append(num // scale)
        c._hist = hist
    return c._hist


def distance_distribution(c: Code) -> DistanceDistribution:
    """Exact distance distribution of a nonempty code."""
    if c.size == 0:
        raise ValueError("distance distribution of an empty code is undefined")
    hist = _ordered_histogram(c)
    m2 = c.size * c.size
    return DistanceDistribution(
        n=c.n, size=c.size, entries=tuple(Fraction(h, m2) for h in hist)
    )


def fourier_weights(c: Code) -> FourierSpectrum:
    """Exact degree-collected Fourier weights of the indicator of c."""
    sums = _weight_sums(c)
    denom = 1 << (2 * c.n)
    weights = tuple(Fraction(t, denom) for t in sums)
    # Parseval for a 0/1 function: total weight is the density
    if sum(sums) != (1 << c.n) * c.size:
        raise ArithmeticError("Parseval check failed in fourier_weights")
    if weights[0] != c.alpha**2:
        raise ArithmeticError("degree-0 weight must equal alpha^2")
    return FourierSpectrum(n=c.n, weights=weights, scaled_coeffs=_fourier_ints(c))


def dual_distribution(c: Code) -> DualDistribution:
    """Fourier weights rescaled by alpha^2 (the dual distance distribution)."""
    if c.size == 0:
        raise ValueError("dual distribution of an empty code is undefined")
    sums = _weight_sums(c)
    m2 = c.size * c.size
    return DualDistribution(
        n=c.n, alpha=c.alpha, entries=tuple(Fraction(t, m2) for t in sums)
    )


def _transform(vec: tuple[Fraction, ...], n: int, inverse: bool) -> tuple[Fraction, ...]:
    tab = table(n)
    out = []
    for k in range(n + 1):
        row = tab.row(k)
        s = sum(v * row[i] for i, v in enumerate(vec))
        out.append(s / (1 << n) if inverse else s)
    return tuple(out)


def macwilliams_forward(p: DistanceDistribution) -> DualDistribution:
    """Distance distribution -> dual distribution (Krawtchouk transform)."""
    alpha = Fraction(p.size, 1 << p.n)
    return DualDistribution(
        n=p.n, alpha=alpha, entries=_transform(p.entries, p.n, inverse=False)
    )


def macwilliams_inverse(q: DualDistribution) -> DistanceDistribution:
    """Dual distribution -> distance distribution (inverse transform)."""
    size = q.alpha * (1 << q.n)
    if size.denominator != 1:
        raise ValueError("dual distribution does not describe an integer-size code")
    return DistanceDistribution(
        n=q.n, size=int(size), entries=_transform(q.entries, q.n, inverse=True)
    )


def edge_counts(c: Code, r: int) -> tuple[int, int]:
    """(boundary, internal) edge counts of c in the distance-<=r cube graph.

    internal e(A) counts unordered member pairs at distance 1..r; boundary
    follows from regularity of the graph: every vertex has C(n, <=r) - 1
    neighbors, so 2 e(A) + |boundary| = (C(n, <=r) - 1) |A|.
    """
    if not 1 <= r <= c.n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={c.n}")
    if c.size == 0:
        raise ValueError("edge counts of an empty code are undefined")
    hist = _ordered_histogram(c)
    ordered_within = sum(hist[1 : r + 1])
    if ordered_within % 2:
        raise ArithmeticError("ordered pair count at positive distance must be even")
    internal = ordered_within // 2
    degree = binom_cum(c.n, r) - 1
    boundary = degree * c.size - 2 * internal
    if boundary < 0:
        raise ArithmeticError("negative boundary: pair counting is inconsistent")
    return boundary, internal


def cdf_distance(c: Code, r: int) -> Fraction:
    """Cumulative distance mass sum_{i <= r} P(i), exact."""
    if not 0 <= r <= c.n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={c.n}")
    if c.size == 0:
        raise ValueError("cdf of an empty code is undefined")
    hist = _ordered_histogram(c)
    return Fraction(sum(hist[: r + 1]), c.size * c.size)
