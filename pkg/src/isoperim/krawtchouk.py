"""Exact Krawtchouk polynomial values and their extremal properties.

K_k^(n) is the degree-k Krawtchouk polynomial, the eigenvalue system of the
Hamming association scheme:

    K_k^(n)(x) = sum_j (-1)^j C(x, j) C(n-x, k-j),

with generating function sum_k K_k^(n)(i) z^k = (1-z)^i (1+z)^(n-i).
Everything here is exact integer / rational arithmetic.  Tables are built by
the generating-function recurrence; the defining sum is kept as an
independent cross-check (exercised by the verification suites), guarding
against binomial-convention bugs at negative arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactmath import binom, binom_cum

__all__ = [
    "krawtchouk",
    "krawtchouk_sum",
    "KrawtchoukTable",
    "table",
    "krawtchouk_cumulative",
    "noise_eigenvalue",
    "VerificationReport",
    "check_value_dominance",
    "check_asym_dominance",
    "empirical_dominance_threshold",
]


def krawtchouk_sum(n: int, k: int, x: int) -> int:
    """Defining alternating sum, valid for any k >= 0 and any integer x.

    For k > n and x in [0:n] the value is 0 (the generating polynomial has
    degree n), but at negative x it is generally nonzero.
    """
    if n < 0 and x >= 0:
        raise ValueError(f"order n={n} must be >= 0 for x >= 0")
    if k < 0:
        raise ValueError(f"degree k={k} must be >= 0")
    return sum(
        (-1 if j & 1 else 1) * binom(x, j) * binom(n - x, k - j)
        for j in range(k + 1)
    )


def krawtchouk(n: int, k: int, x: int) -> int:
    """K_k^(n)(x) for 0 <= k <= n and any integer x."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"degree k={k} out of range [0, {n}]")
    return krawtchouk_sum(n, k, x)


@dataclass(frozen=True)
class KrawtchoukTable:
    """Full table of K_k^(n)(i) for 0 <= k, i <= n (immutable)."""

    n: int
    rows: tuple[tuple[int, ...], ...]  # rows[k][i]

    def value(self, k: int, i: int) -> int:
        return self.rows[k][i]

    def row(self, k: int) -> tuple[int, ...]:
        return self.rows[k]

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(self.rows[k][i] for k in range(self.n + 1))


@lru_cache(maxsize=64)
def table(n: int) -> KrawtchoukTable:
    """Build the (n+1) x (n+1) table via the generating-function recurrence.

    Column i holds the coefficients of (1-z)^i (1+z)^(n-i); column i follows
    from column i-1 through (1+z) * col_i = (1-z) * col_(i-1), a single
    exact synthetic-division pass.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    cols = [[math.comb(n, k) for k in range(n + 1)]]
    for _ in range(n):
        prev = cols[-1]
        new = [prev[0]] + [0] * n
        for k in range(1, n + 1):
            new[k] = prev[k] - prev[k - 1] - new[k - 1]
        cols.append(new)
    rows = tuple(
        tuple(cols[i][k] for i in range(n + 1)) for k in range(n + 1)
    )
    return KrawtchoukTable(n=n, rows=rows)


def krawtchouk_cumulative(n: int, r: int, i: int) -> int:
    """sum_{k=0}^{r} K_k^(n)(i), computed two ways and cross-asserted.

    The sum telescopes to a single evaluation one dimension down,
    K_r^(n-1)(i-1); at i = 0 that relies on the generalized binomial at
    argument -1 and equals C(n, <=r).
    """
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    if not 0 <= i <= n:
        raise ValueError(f"need 0 <= i <= n, got i={i}")
    direct = sum(krawtchouk_sum(n, k, i) for k in range(r + 1))
    shifted = krawtchouk_sum(n - 1, r, i - 1)
    if direct != shifted:
        raise ArithmeticError(
            f"cumulative-Krawtchouk identity failed at (n={n}, r={r}, i={i}): "
            f"{direct} != {shifted}"
        )
    return direct


def noise_eigenvalue(n: int, r: int, k: int, model: str) -> Fraction:
    """Eigenvalue of the radius-r sphere/ball noise operator on degree k.

    Equals 2 P[Z_1 ... Z_k = 1] - 1 for Z uniform on the radius-r Hamming
    sphere (model="sphere") or ball (model="ball"); always 1 at k = 0.
    """
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}")
    if model == "sphere":
        return Fraction(krawtchouk_sum(n, r, k), math.comb(n, r))
    if model == "ball":
        return Fraction(krawtchouk_sum(n - 1, r, k - 1), binom_cum(n, r))
    raise ValueError(f"unknown noise model {model!r}")


def _within_tail_threshold(t: int, n: int) -> bool:
    """Exact test for t <= (s - sqrt(s)) / 2 with s = n/2 + 2 (no floats)."""
    s = Fraction(n, 2) + 2
    lhs = s - 2 * t
    return lhs >= 0 and lhs * lhs >= s


@dataclass
class VerificationReport:
    """Outcome of an exhaustive inequality check."""

    description: str
    passed: bool
    checked: int
    counterexamples: list[tuple] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


_MAX_COUNTEREXAMPLES = 20


def check_value_dominance(n: int, at: int) -> VerificationReport:
    """Exhaustively verify K_k(at) >= |K_k(i)| over the attested (k, i) range.

    at=0: all 0 <= k, i <= n.
    at=1: 0 <= k <= (n-1)/2 and 1 <= i <= n-1.
    at=2: k up to the square-root threshold (exact test) and 2 <= i <= n-2.
    A counterexample is reported, not raised.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    tab = table(n)
    if at == 0:
        ks = range(n + 1)
        istart, iend = 0, n
    elif at == 1:
        ks = range((n - 1) // 2 + 1)
        istart, iend = 1, n - 1
    elif at == 2:
        ks = [k for k in range(n + 1) if _within_tail_threshold(k, n)]
        istart, iend = 2, n - 2
    else:
        raise ValueError(f"dominance center must be 0, 1 or 2, got {at}")
    checked = 0
    bad: list[tuple] = []
    for k in ks:
        row = tab.row(k)
        pivot = row[at]
        for i in range(istart, iend + 1):
            checked += 1
            if pivot < abs(row[i]):
                if len(bad) < _MAX_COUNTEREXAMPLES:
                    bad.append((k, i, pivot, row[i]))
    return VerificationReport(
        description=f"K_k({at}) >= |K_k(i)| on its range, n={n}",
        passed=not bad,
        checked=checked,
        counterexamples=bad,
    )


def check_asym_dominance(n: int, i: int, delta: float) -> VerificationReport:
    """Check K_k(i) >= |K_k(x)| for x in [i, n-i], k in [delta*n, (1/2-delta)*n].

    This dominance only holds for sufficiently large n, so the result is a
    diagnostic: failures at small n are expected and informative.
    """
    if n < 1 or i < 0:
        raise ValueError(f"need n >= 1 and i >= 0, got n={n}, i={i}")
    d = Fraction(delta)
    if not 0 < d < Fraction(1, 4):
        raise ValueError(f"delta must lie in (0, 1/4), got {delta}")
    klo = math.ceil(d * n)
    khi = math.floor((Fraction(1, 2) - d) * n)
    tab = table(n)
    checked = 0
    bad: list[tuple] = []
    for k in range(klo, khi + 1):
        row = tab.row(k)
        pivot = row[i]
        for x in range(i, n - i + 1):
            checked += 1
            if pivot < abs(row[x]):
                if len(bad) < _MAX_COUNTEREXAMPLES:
                    bad.append((k, x, pivot, row[x]))
    return VerificationReport(
        description=f"K_k({i}) >= |K_k(x)| on the central band, n={n}, delta={delta}",
        passed=not bad,
        checked=checked,
        counterexamples=bad,
    )


def empirical_dominance_threshold(n: int) -> int:
    """Largest k0 such that K_k(2) >= |K_k(i)| for all k <= k0, 2 <= i <= n-2.

    Search utility for how far the square-root threshold can actually be
    pushed at a given n; nothing in the library hard-codes the answer.
    """
    if n < 4:
        return n
    tab = table(n)
    for k in range(n + 1):
        row = tab.row(k)
        pivot = row[2]
        if any(pivot < abs(row[i]) for i in range(2, n - 1)):
            return k - 1
    return n
