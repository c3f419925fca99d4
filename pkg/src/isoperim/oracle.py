"""Brute-force ground truth: exact maximal stability over all size-M subsets.

Enumerates every M-subset of the n-cube (colex order, incremental pair
updates) and maximizes the requested stability; feasible only while
C(2^n, M) stays within the enumeration budget.  The witness is the
lexicographically least maximizer, so results are stable goldens and
independent of how the enumeration space is partitioned.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .exactmath import binom_cum
from .hypercube import Code, even_part, hamming_ball, lex_segment, subcube
from .lpbound import BoundQuery, lp_upper_bound, subcube_values
from .stability import NoiseModel, ball_noise, iid_noise, sphere_noise, stab_ball

__all__ = [
    "BudgetExceededError",
    "OracleResult",
    "default_budget",
    "exhaustive_max_stability",
    "verify_bound_vs_oracle",
]

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "ISOPERIM_BUDGET"

MODELS = ("sphere", "ball", "iid", "cdf")


class BudgetExceededError(RuntimeError):
    """Raised instead of attempting an enumeration beyond the budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"enumeration needs {required} subsets, budget is {budget}"
        )
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class OracleResult:
    """Exact optimum with the lexicographically least witness."""

    n: int
    m: int
    model: str
    r: int | None
    beta: Fraction | None
    optimum: Fraction
    witness: Code
    subsets_examined: int

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "m": self.m,
            "model": self.model,
            "optimum": f"{self.optimum.numerator}/{self.optimum.denominator}",
            "optimum_decimal": float(self.optimum),
            "witness": self.witness.to_dict(),
            "subsets_examined": self.subsets_examined,
        }
        if self.r is not None:
            d["r"] = self.r
        if self.beta is not None:
            d["beta"] = f"{self.beta.numerator}/{self.beta.denominator}"
        return d


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        return int(raw)
    return DEFAULT_BUDGET


def _weights_and_value(n, m, model, r, beta):
    """Distance weights for the scan and the map from best count to value."""
    if model in ("ball", "cdf"):
        w = [0] + [1 if d <= r else 0 for d in range(1, n + 1)]
        if model == "ball":
            denom = (1 << n) * binom_cum(n, r)
        else:
            denom = m * m
        return w, lambda best: Fraction(2 * best + m, denom)
    if model == "sphere":
        w = [1 if d == r else 0 for d in range(n + 1)]
        w[0] = 0
        scale = (1 << n) * math.comb(n, r)
        if r == 0:
            return w, lambda best: Fraction(m, scale)
        return w, lambda best: Fraction(2 * best, scale)
    # iid: integer weights p^d (q-p)^(n-d) over common denominator q^n 2^n
    p, qd = beta.numerator, beta.denominator
    w = [p**d * (qd - p) ** (n - d) for d in range(n + 1)]
    denom = qd**n * (1 << n)
    const = m * w[0]
    w = [0] + w[1:]
    return w, lambda best: Fraction(2 * best + const, denom)


def exhaustive_max_stability(
    n: int,
    m: int,
    model: str,
    r: int | None = None,
    beta=None,
    budget: int | None = None,
    partitions: int = 1,
) -> OracleResult:
    """Exact maximum stability over all size-m subsets of the n-cube.

    model is one of "sphere", "ball", "iid", "cdf"; sphere/ball/cdf need the
    radius r, iid needs the exact flip probability beta.  The cdf mode
    maximizes the cumulative distance mass, which shares its maximizers
    with the ball mode.  `partitions` > 1 splits the scan by the largest
    member point and reduces associatively; the result is identical.
    """
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}, got {model!r}")
    if not 1 <= m <= (1 << n):
        raise ValueError(f"need 1 <= m <= 2**n, got m={m}")
    if model == "iid":
        beta = Fraction(beta)
        if not 0 <= beta <= 1:
            raise ValueError(f"beta must lie in [0, 1], got {beta}")
        r = None
    else:
        if r is None or not 0 <= r <= n:
            raise ValueError(f"model {model} needs a radius in [0, {n}]")
        beta = None
    cap = budget if budget is not None else default_budget()
    npoints = 1 << n
    required = math.comb(npoints, m)
    if required > cap:
        raise BudgetExceededError(required, cap)

    weights, assemble = _weights_and_value(n, m, model, r, beta)

    if partitions <= 1:
        best, subset, count = kernels.max_weighted_pairs(range(npoints), m, weights)
    else:
        # split by largest member v: choose the remaining m-1 out of [0, v)
        best = None
        subset = None
        count = 0
        for v in range(m - 1, npoints):
            b, s, c = kernels.max_weighted_pairs(
                range(v), m - 1, weights, fixed=(v,)
            )
            count += c
            cand = sorted(s + [v])
            if best is None or b > best or (b == best and cand < subset):
                best, subset = b, cand
        if count != required:
            raise ArithmeticError("partitioned enumeration lost subsets")

    witness = Code.from_indices(n, subset)
    return OracleResult(
        n=n,
        m=m,
        model=model,
        r=r,
        beta=beta,
        optimum=assemble(best),
        witness=witness,
        subsets_examined=required,
    )


@dataclass(frozen=True)
class OracleComparison:
    """Bound vs ground truth vs constructions for one query."""

    q: BoundQuery
    bound_closed: Fraction
    bound_exact_lp: Fraction
    oracle: Fraction
    witness: Code
    constructions: dict
    tight: bool


def verify_bound_vs_oracle(q: BoundQuery, budget: int | None = None) -> OracleComparison:
    """Assert bound >= brute-force optimum >= every standard construction."""
    res = exhaustive_max_stability(q.n, q.m, "ball", r=q.r, budget=budget)
    closed = lp_upper_bound(q, "closed_form").bstab
    exact = lp_upper_bound(q, "exact_lp").bstab

    constructions: dict[str, Fraction] = {}
    constructions["lex"] = stab_ball(lex_segment(q.n, q.m), q.r).value
    k = q.n - q.m.bit_length() + 1
    if q.m == 1 << (q.n - k):
        constructions["subcube"] = subcube_values(q.n, k, q.r).ball
        if k >= 1:
            half = even_part(subcube(q.n, k - 1))
            constructions["even_part"] = stab_ball(half, q.r).value
    for b in range(q.n + 1):
        if binom_cum(q.n, b) == q.m:
            constructions["ball"] = stab_ball(hamming_ball(q.n, b), q.r).value
            break

    if exact > closed:
        raise ArithmeticError("exact LP bound must not exceed the closed form")
    for name, val in constructions.items():
        if val > res.optimum:
            raise ArithmeticError(
                f"construction {name}={val} beats the oracle {res.optimum}"
            )
    if res.optimum > exact:
        raise ArithmeticError(
            f"oracle {res.optimum} beats the LP bound {exact}; bound is wrong"
        )
    return OracleComparison(
        q=q,
        bound_closed=closed,
        bound_exact_lp=exact,
        oracle=res.optimum,
        witness=res.witness,
        constructions=constructions,
        tight=res.optimum == exact or res.optimum == closed,
    )


def noise_model_of(result: OracleResult) -> NoiseModel:
    """The stability model an oracle result optimized (cdf maps to ball)."""
    if result.model == "sphere":
        return sphere_noise(result.r)
    if result.model in ("ball", "cdf"):
        return ball_noise(result.r)
    return iid_noise(result.beta)
