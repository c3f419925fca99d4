"""Exact combinatorial arithmetic and entropy functionals.

Everything set-valued in this package (distance distributions, Fourier
weights, noise stabilities, LP data) is carried as Python ``int`` /
``fractions.Fraction``, which are arbitrary precision; floating point is
confined to entropy, Gaussian, and asymptotic formulas.

The binomial coefficient here is the generalized one: ``binom(x, j)`` is
defined for *any* integer ``x``, including negative values, as
``x (x-1) ... (x-j+1) / j!``.  The negative branch matters: the cumulative
Krawtchouk identity evaluates a polynomial at argument -1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

__all__ = [
    "binom",
    "binom_cum",
    "binary_entropy",
    "relative_entropy",
    "validate_prob_vector",
]

#: tolerance for float probability vectors summing to one
PROB_TOL = 1e-12


def binom(x: int, j: int) -> int:
    """Generalized binomial coefficient C(x, j) for integer x of either sign.

    Returns x(x-1)...(x-j+1)/j! for j > 0, 1 for j == 0, and 0 for j < 0.
    For 0 <= x < j this is 0.
    """
    if j < 0:
        return 0
    if j == 0:
        return 1
    if x >= 0:
        return math.comb(x, j) if j <= x else 0
    num = 1
    for t in range(j):
        num *= x - t
    # product of j consecutive integers is divisible by j!
    return num // math.factorial(j)


def binom_cum(n: int, r: int) -> int:
    """Partial binomial sum C(n, 0) + C(n, 1) + ... + C(n, r), for n >= 0.

    Returns 0 for r < 0 and 2**n for r >= n.
    """
    if n < 0:
        raise ValueError(f"binom_cum requires n >= 0, got n={n}")
    if r < 0:
        return 0
    if r >= n:
        return 1 << n
    return sum(math.comb(n, i) for i in range(r + 1))


def binary_entropy(p: float) -> float:
    """Binary entropy -p log2 p - (1-p) log2 (1-p), with 0 log2 0 = 0."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"binary_entropy requires p in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def validate_prob_vector(v: Sequence[float], name: str = "vector") -> list[float]:
    """Check nonnegativity and normalization (within PROB_TOL); return floats."""
    out = [float(x) for x in v]
    if any(x < 0.0 for x in out):
        raise ValueError(f"{name} has a negative entry: {out}")
    total = math.fsum(out)
    if abs(total - 1.0) > PROB_TOL:
        raise ValueError(f"{name} sums to {total}, not 1 within {PROB_TOL}")
    return out


def relative_entropy(q: Sequence[float], p: Sequence[float]) -> float:
    """Relative entropy sum q(x) log2 (q(x)/p(x)) in bits, with 0 log2 (0/p) = 0.

    Raises ValueError if the supports are incompatible (q(x) > 0 where
    p(x) = 0) or if either argument is not a probability vector.
    """
    if len(q) != len(p):
        raise ValueError(f"length mismatch: {len(q)} vs {len(p)}")
    qv = validate_prob_vector(q, "q")
    pv = validate_prob_vector(p, "p")
    terms = []
    for i, (qi, pi) in enumerate(zip(qv, pv)):
        if qi == 0.0:
            continue
        if pi == 0.0:
            raise ValueError(f"support violation at index {i}: q={qi} but p=0")
        terms.append(qi * math.log2(qi / pi))
    return math.fsum(terms)


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions, and 'p/q' strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")
