"""Noise stability of subsets under sphere, ball, and i.i.d. bit-flip noise.

For X uniform on the cube and Y = X with a random flip pattern Z applied,
the stability of a set A is P[X in A, Y in A].  Z is uniform on a Hamming
sphere (radius r), uniform on a Hamming ball, or a product of independent
biased flips (flip probability beta).  Each stability is computed exactly,
both combinatorially from the pair-distance histogram and spectrally from
the Fourier weights against the noise-operator eigenvalues; the test suite
holds the two routes equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .exactmath import binom_cum
from .hypercube import (
    Code,
    FourierSpectrum,
    _fourier_ints,
    _ordered_histogram,
    _weights_of_indices,
    cdf_distance,
    fourier_weights,
)
from .krawtchouk import noise_eigenvalue

__all__ = [
    "NoiseModel",
    "sphere_noise",
    "ball_noise",
    "iid_noise",
    "StabilityValue",
    "stab_sphere",
    "stab_ball",
    "stab_iid",
    "stab_spectral",
    "cross_stability",
    "ball_stability_cdf_identity",
    "StabilitySandwichReport",
    "stability_sandwich_report",
    "tail_weight",
]

_DIRECT_LIMIT = 14


@dataclass(frozen=True)
class NoiseModel:
    """A flip-pattern distribution: sphere(r), ball(r), or iid(beta)."""

    kind: str
    r: int | None = None
    beta: Fraction | None = None

    def eigenvalue(self, n: int, k: int) -> Fraction:
        """Multiplier applied to degree-k Fourier mass by this noise."""
        if self.kind == "iid":
            return (1 - 2 * self.beta) ** k
        return noise_eigenvalue(n, self.r, k, self.kind)

    def pattern_probability(self, n: int, d: int) -> Fraction:
        """Probability of one fixed flip pattern of weight d."""
        if self.kind == "sphere":
            return Fraction(1, math.comb(n, self.r)) if d == self.r else Fraction(0)
        if self.kind == "ball":
            return Fraction(1, binom_cum(n, self.r)) if d <= self.r else Fraction(0)
        return self.beta**d * (1 - self.beta) ** (n - d)

    def label(self) -> str:
        if self.kind == "iid":
            return f"iid(beta={self.beta})"
        return f"{self.kind}(r={self.r})"


def sphere_noise(r: int) -> NoiseModel:
    return NoiseModel(kind="sphere", r=r)


def ball_noise(r: int) -> NoiseModel:
    return NoiseModel(kind="ball", r=r)


def iid_noise(beta) -> NoiseModel:
    b = Fraction(beta)
    if not 0 <= b <= 1:
        raise ValueError(f"flip probability must lie in [0, 1], got {beta}")
    return NoiseModel(kind="iid", beta=b)


@dataclass(frozen=True)
class StabilityValue:
    """An exact stability P[X in A, Y in A] for one noise model."""

    value: Fraction
    model: NoiseModel
    n: int

    def __post_init__(self):
        if not 0 <= self.value <= 1:
            raise ValueError(f"stability {self.value} outside [0, 1]")


def _check_radius(c: Code, r: int) -> None:
    if not 0 <= r <= c.n:
        raise ValueError(f"radius {r} outside [0, {c.n}]")


def _stab_from_histogram(c: Code, model: NoiseModel) -> Fraction:
    hist = _ordered_histogram(c)
    total = sum(
        nd * model.pattern_probability(c.n, d) for d, nd in enumerate(hist) if nd
    )
    value = Fraction(total, 1 << c.n)
    alpha = c.alpha
    if not 0 <= value <= alpha:
        raise ArithmeticError(f"stability {value} escapes [0, alpha={alpha}]")
    return value


def stab_sphere(c: Code, r: int) -> StabilityValue:
    """Stability under uniform radius-r sphere noise, exact pair counting."""
    _check_radius(c, r)
    model = sphere_noise(r)
    return StabilityValue(_stab_from_histogram(c, model), model, c.n)


def stab_ball(c: Code, r: int) -> StabilityValue:
    """Stability under uniform radius-r ball noise, exact pair counting."""
    _check_radius(c, r)
    model = ball_noise(r)
    return StabilityValue(_stab_from_histogram(c, model), model, c.n)


def stab_iid(c: Code, beta) -> StabilityValue:
    """Stability under independent bit flips with rational flip probability."""
    model = iid_noise(beta)
    return StabilityValue(_stab_from_histogram(c, model), model, c.n)


def stab_spectral(spec: FourierSpectrum, model: NoiseModel) -> StabilityValue:
    """Stability from the Fourier weights against the noise eigenvalues."""
    value = sum(
        w * model.eigenvalue(spec.n, k) for k, w in enumerate(spec.weights) if w
    )
    return StabilityValue(Fraction(value), model, spec.n)


def _cross_spectrum(f: Code, g: Code) -> list[int]:
    """C_k = sum over |S| = k of (2**n fhat_S)(2**n ghat_S), exact."""
    cf = _fourier_ints(f).astype(object)
    cg = _fourier_ints(g)
    prods = cf * cg
    acc = [0] * (f.n + 1)
    for w, p in zip(_weights_of_indices(f.n), prods):
        acc[int(w)] += int(p)
    return acc


def cross_stability(f: Code, g: Code, model: NoiseModel) -> Fraction:
    """Exact P[X in f, Y in g] under the given noise model."""
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} vs {g.n}")
    n = f.n
    if n <= _DIRECT_LIMIT:
        hist = kernels.cross_histogram(f.indices(), g.indices(), n)
        total = sum(
            int(nd) * model.pattern_probability(n, d)
            for d, nd in enumerate(hist)
            if nd
        )
        return Fraction(total, 1 << n)
    denom = 1 << (2 * n)
    acc = _cross_spectrum(f, g)
    return Fraction(
        sum(Fraction(ck, denom) * model.eigenvalue(n, k) for k, ck in enumerate(acc) if ck)
    )


def ball_stability_cdf_identity(c: Code, r: int) -> tuple[Fraction, Fraction]:
    """Both sides of the ball-stability / distance-cdf identity, independently.

    Left: spectral ball stability.  Right: alpha^2 2^n / C(n, <=r) times the
    cumulative distance mass, from pair counting.  Exact equality is
    asserted; a mismatch means an arithmetic bug.
    """
    _check_radius(c, r)
    if c.size == 0:
        raise ValueError("identity undefined for an empty code")
    lhs = stab_spectral(fourier_weights(c), ball_noise(r)).value
    alpha = c.alpha
    rhs = alpha**2 * (1 << c.n) / binom_cum(c.n, r) * cdf_distance(c, r)
    if lhs != rhs:
        raise ArithmeticError(
            f"ball stability {lhs} != rescaled cdf {rhs} at n={c.n}, r={r}"
        )
    return lhs, rhs


@dataclass(frozen=True)
class StabilitySandwichReport:
    """Signed finite-n slack in the sphere/ball versus i.i.d. sandwiches.

    The limiting inequalities hold up to vanishing corrections that are
    never quantified, so this is a reporter: no field is an assertion.
    For even r the slacks are (relative to Stab = the i.i.d. value at
    beta = r/n): sphere in [Stab, 2 Stab], ball in [Stab, 2(1-beta) Stab];
    for odd r: sphere in [0, Stab], ball in [2 beta Stab, Stab].  Each
    slack is (value - lower bound) or (upper bound - value).
    """

    n: int
    r: int
    beta: Fraction
    parity: str
    sphere: Fraction
    ball: Fraction
    iid: Fraction
    sphere_lower_slack: Fraction
    sphere_upper_slack: Fraction
    ball_lower_slack: Fraction
    ball_upper_slack: Fraction


def stability_sandwich_report(c: Code, r: int) -> StabilitySandwichReport:
    """Compute all three stabilities and the four sandwich slacks at (c, r)."""
    if not 1 <= 2 * r <= c.n:
        raise ValueError(f"need 1 <= r <= n/2, got r={r}, n={c.n}")
    beta = Fraction(r, c.n)
    s = stab_sphere(c, r).value
    b = stab_ball(c, r).value
    i = stab_iid(c, beta).value
    if r % 2 == 0:
        rep = StabilitySandwichReport(
            n=c.n, r=r, beta=beta, parity="even",
            sphere=s, ball=b, iid=i,
            sphere_lower_slack=s - i,
            sphere_upper_slack=2 * i - s,
            ball_lower_slack=b - i,
            ball_upper_slack=2 * (1 - beta) * i - b,
        )
    else:
        rep = StabilitySandwichReport(
            n=c.n, r=r, beta=beta, parity="odd",
            sphere=s, ball=b, iid=i,
            sphere_lower_slack=s,
            sphere_upper_slack=i - s,
            ball_lower_slack=b - 2 * beta * i,
            ball_upper_slack=i - b,
        )
    return rep


def tail_weight(spec: FourierSpectrum, k0: int) -> Fraction:
    """Top-degree Fourier mass sum_{k >= n-k0} W_k (finite-n tail diagnostic)."""
    if not 0 <= k0 <= spec.n:
        raise ValueError(f"k0 must lie in [0, {spec.n}], got {k0}")
    return Fraction(sum(spec.weights[spec.n - k0 :]))
