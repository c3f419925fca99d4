"""Linear-programming bounds on ball-noise stability / distance CDFs.

The primal program relaxes the dual distance distribution of a size-M code:
with w_i the cumulative Krawtchouk sums (w_i = K_r^(n-1)(i-1)), minimize
sum_{i>=2} u_i (w_1 - w_i) subject to the Krawtchouk positivity constraints.
Its LP dual is a maximization whose feasible points certify lower bounds on
the primal optimum, hence upper bounds on the stability.  This module
builds both programs exactly, evaluates the closed-form certificate family
(1- and 2-sparse dual vectors supported at high degree), and assembles the
resulting stability/CDF upper bounds.

Case split everywhere: the radius r is "small" when r <= n/2 - 1 and
"large" otherwise, crossed with the parity of r.  For large even r the
certificate is the large-odd one at radius r+1, which remains feasible
because raising the radius only relaxes the right-hand sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import binom, binom_cum
from .krawtchouk import krawtchouk_sum, table
from .simplex import GE, LE, LpSolution, RationalLp, solve_exact

__all__ = [
    "BoundQuery",
    "build_primal",
    "build_dual",
    "solve_both",
    "ClosedFormDualBound",
    "dual_bound_closed_form",
    "certificate_candidates",
    "DualCertificate",
    "dual_certificate",
    "odd_large_alternative_certificate",
    "check_dual_vector",
    "UpperBound",
    "lp_upper_bound",
    "AsymptoticBound",
    "asymptotic_upper_bound",
    "SubcubeValues",
    "subcube_values",
]


@dataclass(frozen=True)
class BoundQuery:
    """One (n, r, M) instance; alpha = M/2^n and beta = r/n are exact."""

    n: int
    r: int
    m: int

    def __post_init__(self):
        if not 1 <= self.r <= self.n:
            raise ValueError(f"need 1 <= r <= n, got r={self.r}, n={self.n}")
        if not 1 <= self.m <= (1 << self.n):
            raise ValueError(f"need 1 <= M <= 2**n, got M={self.m}")

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.m, 1 << self.n)

    @property
    def beta(self) -> Fraction:
        return Fraction(self.r, self.n)


def _omega(n: int, r: int, i: int) -> int:
    # cumulative Krawtchouk sum, evaluated one dimension down
    return krawtchouk_sum(n - 1, r, i - 1)


def _rhs_coefficient(q: BoundQuery, k: int) -> Fraction:
    tab = table(q.n)
    return tab.value(k, 0) + tab.value(k, 1) * (1 / q.alpha - 1)


def build_primal(q: BoundQuery) -> RationalLp:
    """Minimize sum u_i (w_1 - w_i) over the relaxed dual distributions."""
    n, r = q.n, q.r
    tab = table(n)
    w1 = _omega(n, r, 1)
    objective = [Fraction(w1 - _omega(n, r, i)) for i in range(2, n + 1)]
    rows = []
    for k in range(1, n + 1):
        coeffs = [Fraction(tab.value(k, 1) - tab.value(k, i)) for i in range(2, n + 1)]
        rows.append((coeffs, LE, _rhs_coefficient(q, k)))
    return RationalLp(minimize=True, objective=objective, rows=rows)


def build_dual(q: BoundQuery) -> RationalLp:
    """Maximize -sum_k [K_k(0) + K_k(1)(1/alpha - 1)] x_k over feasible x >= 0."""
    n, r = q.n, q.r
    tab = table(n)
    w1 = _omega(n, r, 1)
    objective = [-_rhs_coefficient(q, k) for k in range(1, n + 1)]
    rows = []
    for i in range(2, n + 1):
        coeffs = [Fraction(tab.value(k, 1) - tab.value(k, i)) for k in range(1, n + 1)]
        rows.append((coeffs, GE, Fraction(-(w1 - _omega(n, r, i)))))
    return RationalLp(minimize=False, objective=objective, rows=rows)


def solve_both(q: BoundQuery) -> tuple[LpSolution, LpSolution]:
    """Solve the primal and its dual; exact value equality is asserted."""
    ps = solve_exact(build_primal(q))
    ds = solve_exact(build_dual(q))
    if ps.status != "optimal" or ds.status != "optimal":
        raise ArithmeticError(f"expected optimal pair, got {ps.status}/{ds.status}")
    if ps.value != ds.value:
        raise ArithmeticError(f"strong duality broken: {ps.value} != {ds.value}")
    return ps, ds


# ---------------------------------------------------------------------------
# closed-form dual certificates


def _is_small_radius(n: int, r: int) -> bool:
    return 2 * r <= n - 2


def _within_high_band(k: int, n: int) -> bool:
    """Exact test for n - k <= (s - sqrt(s))/2 with s = n/2 + 2."""
    s = Fraction(n, 2) + 2
    lhs = s - 2 * (n - k)
    return lhs >= 0 and lhs * lhs >= s


def _in_feasible_index_set(k: int, n: int, r: int) -> bool:
    """Membership in the admissible index set for small odd radii.

    Even k qualify from (n+r+1)/2 upward; odd k from the square-root
    threshold max((n+1)/2, (n-1)r/(n-1-r)) + sqrt((n+1)r/(2(n-1-r))).
    """
    if k % 2 == 0:
        return 2 * k >= n + r + 1
    if n - 1 - r <= 0:
        return False
    base = max(Fraction(n + 1, 2), Fraction((n - 1) * r, n - 1 - r))
    rad = Fraction((n + 1) * r, 2 * (n - 1 - r))
    diff = k - base
    return diff >= 0 and diff * diff >= rad


def _case_of(q: BoundQuery) -> str:
    small = _is_small_radius(q.n, q.r)
    odd = q.r % 2 == 1
    return ("odd" if odd else "even") + ("_small" if small else "_large")


def certificate_candidates(q: BoundQuery) -> list[int]:
    """Admissible support degrees k for the closed-form dual certificates."""
    n = q.n
    case = _case_of(q)
    if case == "even_small":
        return [k for k in range(1, n + 1) if k % 2 and _within_high_band(k, n)]
    if case == "odd_small":
        return [
            k
            for k in range(1, n + 1)
            if _within_high_band(k, n) and _in_feasible_index_set(k, n, q.r)
        ]
    # large radii: odd k with k >= n/2 + 1
    return [k for k in range(1, n + 1) if k % 2 and 2 * k >= n + 2]


def _clause_value(q: BoundQuery, k: int) -> Fraction:
    """Certificate objective in closed form for admissible k (by case)."""
    n, r, alpha = q.n, q.r, q.alpha
    case = _case_of(q)
    if case == "even_small":
        lead = Fraction(n * binom(n - 2, r - 1), 2 * k - n)
        bracket = 2 * (1 / alpha - 1) - (1 / alpha) * Fraction(n + 1, k + 1)
        return lead * bracket
    if case == "odd_small":
        lead = Fraction((n - 1) * binom(n - 2, r - 1), 2 * k - n - 1)
        bracket = 2 * (1 / alpha - 1) - (1 / alpha) * Fraction(n, k)
        return lead * bracket
    top = r + 1 if case == "even_large" else r
    lead = Fraction(k * binom(n - 2, top), 2 * k - n)
    bracket = 2 * (1 / alpha - 1) - (1 / alpha) * Fraction(n, k)
    return lead * bracket


@dataclass(frozen=True)
class ClosedFormDualBound:
    """Best closed-form certificate objective (None when no k is admissible)."""

    value: Fraction | None
    k_star: int | None
    case: str
    candidates: tuple[int, ...]

    @property
    def plus(self) -> Fraction:
        """Clipped at zero: the all-zero vector is always dual feasible."""
        if self.value is None or self.value < 0:
            return Fraction(0)
        return self.value


def dual_bound_closed_form(q: BoundQuery) -> ClosedFormDualBound:
    """Maximize the closed-form certificate objective over admissible k."""
    if q.alpha > Fraction(1, 2):
        raise ValueError(f"bounds are stated for alpha <= 1/2, got {q.alpha}")
    cands = certificate_candidates(q)
    best, best_k = None, None
    for k in cands:
        v = _clause_value(q, k)
        if best is None or v > best:
            best, best_k = v, k
    return ClosedFormDualBound(
        value=best, k_star=best_k, case=_case_of(q), candidates=tuple(cands)
    )


def check_dual_vector(q: BoundQuery, x: list[Fraction]) -> tuple[bool, list, Fraction]:
    """Exact feasibility of x for the dual program plus its objective value."""
    n, r = q.n, q.r
    if len(x) != n:
        raise ValueError(f"dual vector must have length n={n}")
    tab = table(n)
    w1 = _omega(n, r, 1)
    violations = []
    for j, xk in enumerate(x):
        if xk < 0:
            violations.append(("nonneg", j + 1, xk))
    for i in range(2, n + 1):
        lhs = sum(
            (tab.value(k, 1) - tab.value(k, i)) * x[k - 1]
            for k in range(1, n + 1)
            if x[k - 1]
        )
        rhs = -(w1 - _omega(n, r, i))
        if lhs < rhs:
            violations.append(("row", i, lhs - rhs))
    objective = -sum(_rhs_coefficient(q, k) * x[k - 1] for k in range(1, n + 1) if x[k - 1])
    return (not violations, violations, Fraction(objective))


@dataclass(frozen=True)
class DualCertificate:
    """A constructed sparse dual vector with its exact verification."""

    q: BoundQuery
    k: int
    case: str
    x: tuple[Fraction, ...]
    objective: Fraction
    feasible: bool
    violations: tuple
    clause_value: Fraction


def _sparse_vector(n: int, entries: dict[int, Fraction]) -> list[Fraction]:
    x = [Fraction(0)] * n
    for k, v in entries.items():
        if 1 <= k <= n:
            x[k - 1] = v
    return x


def dual_certificate(q: BoundQuery, k: int) -> DualCertificate:
    """Construct and exactly verify the closed-form certificate at degree k.

    even_small: 2-sparse equal pair at (k, k+1), collapsing to 1-sparse at
    k = n.  odd_small and the large-radius cases: 1-sparse.  The vector is
    checked against every dual constraint; feasibility is reported, never
    assumed.
    """
    n, r = q.n, q.r
    case = _case_of(q)
    if k not in certificate_candidates(q):
        raise ValueError(f"k={k} is not admissible for case {case} at (n={n}, r={r})")
    if case == "even_small":
        val = Fraction(n * binom(n - 2, r - 1), math.comb(n, k) * (2 * k - n))
        entries = {k: val} if k == n else {k: val, k + 1: val}
    elif case == "odd_small":
        val = Fraction(
            n * (n - 1) * binom(n - 2, r - 1),
            math.comb(n, k) * k * (2 * k - n - 1),
        )
        entries = {k: val}
    else:
        top = r + 1 if case == "even_large" else r
        val = Fraction(n * binom(n - 2, top), math.comb(n, k) * (2 * k - n))
        entries = {k: val}
    x = _sparse_vector(n, entries)
    feasible, violations, objective = check_dual_vector(q, x)
    return DualCertificate(
        q=q,
        k=k,
        case=case,
        x=tuple(x),
        objective=objective,
        feasible=feasible,
        violations=tuple(violations),
        clause_value=_clause_value(q, k),
    )


def odd_large_alternative_certificate(q: BoundQuery, k: int) -> DualCertificate:
    """Diagnostic variant for large odd radii: the small-radius scaling.

    Transplanting the small-odd-radius coefficient n(n-1)C(n-2, r-1) /
    (C(n,k) k (2k-n-1)) to r > n/2 - 1 does not solve the defining
    equations there and is generally infeasible; this constructs it anyway
    so the discrepancy can be reported next to the solved form.
    """
    n, r = q.n, q.r
    if _case_of(q) != "odd_large":
        raise ValueError("variant defined only for large odd radii")
    val = Fraction(
        n * (n - 1) * binom(n - 2, r - 1), math.comb(n, k) * k * (2 * k - n - 1)
    )
    x = _sparse_vector(n, {k: val})
    feasible, violations, objective = check_dual_vector(q, x)
    return DualCertificate(
        q=q,
        k=k,
        case="odd_large_variant",
        x=tuple(x),
        objective=objective,
        feasible=feasible,
        violations=tuple(violations),
        clause_value=_clause_value(q, k),
    )


# ---------------------------------------------------------------------------
# assembled upper bounds


@dataclass(frozen=True)
class UpperBound:
    """Stability and CDF upper bounds for one query."""

    q: BoundQuery
    mode: str  # "closed_form" or "exact_lp"
    dual_value_plus: Fraction  # the certified lower bound on the dual optimum
    bstab: Fraction
    cdf: Fraction


def lp_upper_bound(q: BoundQuery, mode: str = "closed_form") -> UpperBound:
    """Upper bounds on ball stability and on the distance CDF at radius r.

    closed_form uses the clipped certificate maximum; exact_lp replaces it
    by the clipped LP optimum, which can only tighten the bound.
    """
    if q.alpha > Fraction(1, 2):
        raise ValueError(f"bounds are stated for alpha <= 1/2, got {q.alpha}")
    if mode == "closed_form":
        lower = dual_bound_closed_form(q).plus
    elif mode == "exact_lp":
        sol = solve_exact(build_primal(q))
        if sol.status != "optimal":
            raise ArithmeticError(f"primal LP not optimal: {sol.status}")
        lower = max(sol.value, Fraction(0))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    n, r, alpha = q.n, q.r, q.alpha
    ball_sz = binom_cum(n, r)
    w0, w1 = ball_sz, binom(n - 1, r)
    cdf = Fraction(w0 + (1 / alpha - 1) * w1 - lower, 1 << n)
    bstab = alpha**2 * (1 - Fraction(lower, ball_sz)) + alpha * (1 - alpha) * Fraction(
        w1, ball_sz
    )
    if bstab != alpha**2 * (1 << n) / ball_sz * cdf:
        raise ArithmeticError("stability and CDF bounds fell out of scale")
    return UpperBound(q=q, mode=mode, dual_value_plus=Fraction(lower), bstab=bstab, cdf=cdf)


@dataclass(frozen=True)
class AsymptoticBound:
    """Leading-term-only large-n form of the stability upper bound.

    Every field drops unquantified vanishing corrections; nothing here is
    suitable for pass/fail comparison at finite n.
    """

    alpha: float
    beta: float
    phi: float
    phi_hat: float | None
    eta_hat: float | None
    phi_n: float
    ball_bound: float
    kappa_leading: float
    leading_term_only: bool = True


def _phi(alpha: float) -> float:
    if alpha < 0.25:
        return 2.0 * (1.0 - math.sqrt(alpha)) ** 2 / alpha
    return 1.0 / alpha - 2.0


def _eta_hat(alpha: float, beta: float) -> float:
    return max(
        1.0 / (2.0 * (1.0 - math.sqrt(alpha))),
        min((1.0 + beta) / 2.0, beta / (1.0 - beta)),
    )


def _phi_hat(alpha: float, beta: float) -> float:
    if alpha < 0.25:
        eta = _eta_hat(alpha, beta)
        return (2.0 * (1.0 / alpha - 1.0) - 1.0 / (alpha * eta)) / (2.0 * eta - 1.0)
    return 1.0 / alpha - 2.0


def asymptotic_upper_bound(q: BoundQuery) -> AsymptoticBound:
    """Evaluate the large-n bound coefficients for this query's (alpha, beta)."""
    alpha = float(q.alpha)
    beta = float(q.beta)
    if not 0.0 < alpha <= 0.5:
        raise ValueError(f"alpha must lie in (0, 1/2], got {alpha}")
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
    n, r = q.n, q.r
    small = _is_small_radius(n, r)
    phi = _phi(alpha)
    phi_hat = _phi_hat(alpha, beta) if (small and r % 2 == 1) else None
    eta = _eta_hat(alpha, beta) if (small and r % 2 == 1 and alpha < 0.25) else None
    if not small:
        phi_n = 0.0
        kappa_coeff = binom(n - 2, r + 1) if r % 2 == 0 else binom(n - 2, r)
        kappa = kappa_coeff * phi
    elif r % 2 == 0:
        phi_n = beta * phi - (1.0 / alpha - 1.0)
        kappa = binom(n - 2, r - 1) * phi
    else:
        phi_n = beta * phi_hat - (1.0 / alpha - 1.0)
        kappa = binom(n - 2, r - 1) * phi_hat
    ball = alpha * alpha * (1.0 - (1.0 - 2.0 * beta) * phi_n)
    return AsymptoticBound(
        alpha=alpha,
        beta=beta,
        phi=phi,
        phi_hat=phi_hat,
        eta_hat=eta,
        phi_n=phi_n,
        ball_bound=ball,
        kappa_leading=float(kappa),
    )


@dataclass(frozen=True)
class SubcubeValues:
    """Closed-form stabilities attained by subcubes (and even parts)."""

    ball: Fraction
    sphere: Fraction
    even_part_sphere: Fraction | None  # None at k = 0 (no larger cube to halve)


def subcube_values(n: int, k: int, r: int) -> SubcubeValues:
    """Stability of the codimension-k subcube under radius-r noise.

    ball: alpha C(n-k, <=r) / C(n, <=r); sphere: alpha C(n-k, r) / C(n, r);
    even_part_sphere: the even (or odd) half of a codimension-(k-1) subcube,
    alpha [C(n-k, r) + C(n-k, r-1)] / C(n, r) -- strictly larger for even r.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}")
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}")
    alpha = Fraction(1, 1 << k)
    ball = alpha * Fraction(binom_cum(n - k, r), binom_cum(n, r))
    sphere = alpha * Fraction(binom(n - k, r), binom(n, r))
    even_sphere = None
    if k >= 1:
        even_sphere = alpha * Fraction(
            binom(n - k, r) + binom(n - k, r - 1), binom(n, r)
        )
    return SubcubeValues(ball=ball, sphere=sphere, even_part_sphere=even_sphere)
