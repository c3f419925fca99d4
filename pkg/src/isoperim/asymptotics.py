"""Probabilistic and hypercontractive bounds, exponents, and diagnostics.

Floating point lives here (Gaussian quadrant probabilities, entropy
exponents); the finite-n ratio and construction reports stay exact.  All
limit-flavored quantities are reported as bounds or gap diagnostics, never
asserted as equalities at finite n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.integrate import quad
from scipy.special import ndtri

from .exactmath import binary_entropy, binom_cum, relative_entropy
from .hypercube import Code, fourier_weights, product_extend
from .stability import sphere_noise, stab_iid, stab_spectral

__all__ = [
    "gaussian_quadrant",
    "small_set_bound",
    "HcBoundSet",
    "hypercontractivity_bounds",
    "sphere_distance_exponent",
    "ball_distance_exponent",
    "iid_stability_exponent",
    "BallSphereRatioReport",
    "ball_sphere_ratio_report",
    "ProductLimitReport",
    "product_limit_report",
]


def gaussian_quadrant(alpha: float, rho: float) -> float:
    """P[Z1 > t, Z2 > t] for rho-correlated standard normals, P[Z1 > t] = alpha.

    Computed as alpha^2 plus the integral over correlation s in [0, rho] of
    the bivariate density at (t, t): d/ds P[Z1 > t, Z2 > t; s] equals
    exp(-t^2/(1+s)) / (2 pi sqrt(1-s^2)).  Absolute accuracy ~1e-10.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if not -1.0 < rho < 1.0:
        raise ValueError(f"rho must lie in (-1, 1), got {rho}")
    t = -ndtri(alpha)  # upper-alpha quantile
    tsq = t * t

    def density(s: float) -> float:
        return math.exp(-tsq / (1.0 + s)) / (2.0 * math.pi * math.sqrt(1.0 - s * s))

    val, _err = quad(density, 0.0, rho, epsabs=1e-12, epsrel=1e-12, limit=200)
    return alpha * alpha + val


def small_set_bound(alpha: float, beta: float) -> float:
    """Small-set expansion ceiling alpha^(1/(1-beta)) on i.i.d. stability."""
    if not 0.0 < alpha <= 0.5:
        raise ValueError(f"alpha must lie in (0, 1/2], got {alpha}")
    if not 0.0 < beta <= 0.5:
        raise ValueError(f"beta must lie in (0, 1/2], got {beta}")
    return alpha ** (1.0 / (1.0 - beta))


@dataclass(frozen=True)
class HcBoundSet:
    """Limit bounds on the odd/even sphere- and ball-noise maxima.

    Lower bounds combine the Gaussian quadrant value of Hamming balls with
    the subcube value when the density is a power of two.  These bound the
    n -> infinity maxima; at finite n they are reference values only.
    """

    alpha: float
    beta: float
    rho: float
    odd_lower: float
    odd_upper: float
    even_sphere_lower: float
    even_sphere_upper: float
    even_ball_lower: float
    even_ball_upper: float
    subcube_lower: float | None
    even_sphere_subcube_lower: float | None
    gaussian_lower: float


_POW2_TOL = 1e-12
_SANDWICH_TOL = 1e-9


def hypercontractivity_bounds(alpha: float, beta: float) -> HcBoundSet:
    """Assemble the limit lower/upper bounds at density alpha, flip rate beta."""
    if not 0.0 < alpha <= 0.5:
        raise ValueError(f"alpha must lie in (0, 1/2], got {alpha}")
    if not 0.0 < beta <= 0.5:
        raise ValueError(f"beta must lie in (0, 1/2], got {beta}")
    rho = 1.0 - 2.0 * beta
    upper = small_set_bound(alpha, beta)
    gauss = gaussian_quadrant(alpha, rho)

    k = round(math.log2(1.0 / alpha))
    is_pow2 = k >= 1 and abs(2.0 ** (-k) - alpha) < _POW2_TOL
    sub = ((1.0 - beta) / 2.0) ** k if is_pow2 else None
    sub_even = 0.5 * ((1.0 - beta) / 2.0) ** (k - 1) if is_pow2 else None

    # the doubled-density quadrant degenerates to 1 at alpha = 1/2
    gauss2 = 1.0 if 2.0 * alpha >= 1.0 else gaussian_quadrant(2.0 * alpha, rho)

    odd_lower = max(gauss, sub) if sub is not None else gauss
    even_ball_lower = odd_lower
    even_sphere_lower = (
        max(0.5 * gauss2, sub_even) if sub_even is not None else 0.5 * gauss2
    )
    bounds = HcBoundSet(
        alpha=alpha,
        beta=beta,
        rho=rho,
        odd_lower=odd_lower,
        odd_upper=upper,
        even_sphere_lower=even_sphere_lower,
        even_sphere_upper=2.0 * upper,
        even_ball_lower=even_ball_lower,
        even_ball_upper=2.0 * (1.0 - beta) * upper,
        subcube_lower=sub,
        even_sphere_subcube_lower=sub_even,
        gaussian_lower=gauss,
    )
    pairs = [
        (bounds.odd_lower, bounds.odd_upper),
        (bounds.even_sphere_lower, bounds.even_sphere_upper),
        (bounds.even_ball_lower, bounds.even_ball_upper),
    ]
    for lo, hi in pairs:
        if lo > hi + _SANDWICH_TOL:
            raise ArithmeticError(f"lower bound {lo} exceeds upper bound {hi}")
    return bounds


# ---------------------------------------------------------------------------
# exponents at exponentially small density (base-2 throughout)


def _check_sigma_beta(sigma: float, beta: float, beta_hi: float) -> None:
    if not 0.0 < sigma < 0.5:
        raise ValueError(f"sigma must lie in (0, 1/2), got {sigma}")
    if not 0.0 < beta < beta_hi:
        raise ValueError(f"beta must lie in (0, {beta_hi}), got {beta}")


def sphere_distance_exponent(sigma: float, beta: float) -> float:
    """Exponent of the maximal distance-r mass at size 2^(n H(sigma)), r = beta n.

    H(sigma) - sigma H(beta/(2 sigma)) - (1-sigma) H(beta/(2(1-sigma))) while
    beta <= 2 sigma (1-sigma), and 0 beyond (the mass stops decaying).
    """
    _check_sigma_beta(sigma, beta, 1.0)
    if beta > 2.0 * sigma * (1.0 - sigma):
        return 0.0
    return (
        binary_entropy(sigma)
        - sigma * binary_entropy(beta / (2.0 * sigma))
        - (1.0 - sigma) * binary_entropy(beta / (2.0 * (1.0 - sigma)))
    )


def _coupling_divergence(sigma: float, theta: float, beta: float) -> float:
    """Relative entropy of the theta-coupling against the beta-product pair."""
    q = (1.0 - sigma - theta / 2.0, theta / 2.0, theta / 2.0, sigma - theta / 2.0)
    p = ((1.0 - beta) / 2.0, beta / 2.0, beta / 2.0, (1.0 - beta) / 2.0)
    return relative_entropy(q, p)


def ball_distance_exponent(sigma: float, beta: float) -> float:
    """Exponent of the maximal ball stability at size 2^(n H(sigma)), r = beta n.

    For beta <= 2 sigma (1-sigma) this is the divergence of the
    theta = beta coupling; beyond, 1 + H(min(beta, 1/2)) - 2 H(sigma).
    """
    _check_sigma_beta(sigma, beta, 1.0)
    if beta <= 2.0 * sigma * (1.0 - sigma):
        return _coupling_divergence(sigma, beta, beta)
    return 1.0 + binary_entropy(min(beta, 0.5)) - 2.0 * binary_entropy(sigma)


def iid_stability_exponent(sigma: float, beta: float) -> tuple[float, float]:
    """(exponent, optimal theta) for i.i.d. stability at size 2^(n H(sigma)).

    The exponent minimizes the coupling divergence over theta in [0, 2 sigma];
    the minimizer has the closed form (sqrt(1 + 4 (kappa-1) sigma (1-sigma))
    - 1) / (kappa - 1) with kappa = ((1-beta)/beta)^2, degenerating to
    2 sigma (1-sigma) at beta = 1/2.
    """
    _check_sigma_beta(sigma, beta, 0.5 + 1e-15)
    kappa = ((1.0 - beta) / beta) ** 2
    if abs(kappa - 1.0) < 1e-14:
        theta = 2.0 * sigma * (1.0 - sigma)
    else:
        theta = (math.sqrt(1.0 + 4.0 * (kappa - 1.0) * sigma * (1.0 - sigma)) - 1.0) / (
            kappa - 1.0
        )
    if not 0.0 <= theta <= 2.0 * sigma:
        raise ArithmeticError(f"optimal theta {theta} escaped [0, {2 * sigma}]")
    return _coupling_divergence(sigma, theta, beta), theta


# ---------------------------------------------------------------------------
# finite-n convergence diagnostics


@dataclass(frozen=True)
class BallSphereRatioReport:
    """Exact ball/sphere size ratio next to its geometric-series limit.

    The finite-n ratio never exceeds the geometric sum; that one-sided
    bound is asserted exactly.  `binomial_rows` lists sampled finite-n
    ratios C(n-k, r-i)/C(n, r) next to their beta^i (1-beta)^(k-i) limits.
    """

    n: int
    r: int
    beta: Fraction
    ratio: Fraction
    geometric_sum: Fraction
    gap: float
    binomial_rows: tuple[tuple[int, int, Fraction, float], ...]


def ball_sphere_ratio_report(n: int, r: int) -> BallSphereRatioReport:
    if not 1 <= r < n / 2:
        raise ValueError(f"need 1 <= r < n/2, got r={r}, n={n}")
    beta = Fraction(r, n)
    ratio = Fraction(binom_cum(n, r), math.comb(n, r))
    odds = beta / (1 - beta)
    geom = sum(odds**j for j in range(r + 1))
    if ratio > geom:
        raise ArithmeticError(
            f"ball/sphere ratio {ratio} exceeds geometric sum {geom}"
        )
    rows = []
    for k, i in ((1, 0), (1, 1), (2, 0), (2, 1), (2, 2)):
        if r - i >= 0 and n - k >= 0:
            finite = Fraction(math.comb(n - k, r - i), math.comb(n, r))
            limit = float(beta) ** i * (1.0 - float(beta)) ** (k - i)
            rows.append((k, i, finite, limit))
    return BallSphereRatioReport(
        n=n,
        r=r,
        beta=beta,
        ratio=ratio,
        geometric_sum=geom,
        gap=float(geom - ratio),
        binomial_rows=tuple(rows),
    )


@dataclass(frozen=True)
class ProductLimitReport:
    """Sphere stability of cube-products at odd radii versus the i.i.d. value.

    Extending a fixed set by k free coordinates and taking radius
    2 floor((n+k) beta / 2) + 1 drives the sphere stability to the i.i.d.
    stability of the base set as k grows; rows exhibit the convergence.
    """

    base_n: int
    beta: Fraction
    iid_value: Fraction
    rows: tuple[tuple[int, int, int, Fraction, Fraction], ...]
    # each row: (k, extended dimension, radius, sphere stability, gap)


def product_limit_report(c: Code, beta, k_steps) -> ProductLimitReport:
    b = Fraction(beta)
    if not 0 < b < 1:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    target = stab_iid(c, b).value
    rows = []
    for k in sorted(int(k) for k in k_steps):
        ext = product_extend(c, k)  # raises on dimension overflow
        dim = ext.n
        radius = 2 * math.floor(Fraction(dim) * b / 2) + 1
        if radius > dim:
            raise ValueError(f"radius {radius} exceeds dimension {dim}")
        val = stab_spectral(fourier_weights(ext), sphere_noise(radius)).value
        rows.append((k, dim, radius, val, target - val))
    return ProductLimitReport(
        base_n=c.n, beta=b, iid_value=target, rows=tuple(rows)
    )
