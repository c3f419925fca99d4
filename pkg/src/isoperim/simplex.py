"""Exact rational linear programming via a two-phase tableau simplex.

All arithmetic is in `fractions.Fraction`, so the only classical hazard is
cycling; Bland's rule (lowest eligible index enters, lowest basis index
leaves on ratio ties) guarantees termination.  Every optimal solve is
self-certifying: primal feasibility, dual feasibility, and exact equality
of primal and dual objective values are verified before the solution is
returned, and any violation raises.

Dual convention.  One multiplier y_i per input row.  For a minimization:
sum_i y_i b_i equals the optimal value, y_i <= 0 on <= rows, y_i >= 0 on
>= rows (free on equalities), and c - A^T y is nonnegative on x >= 0
variables (zero on free variables).  For a maximization the mirror holds
(y >= 0 on <= rows, A^T y - c >= 0 on x >= 0 variables).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

__all__ = ["LE", "GE", "EQ", "RationalLp", "LpSolution", "SimplexError", "solve_exact"]

LE, GE, EQ = "<=", ">=", "=="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class SimplexError(RuntimeError):
    """Internal inconsistency (failed certificate check) in the solver."""


@dataclass
class RationalLp:
    """A finite LP with exact rational data.

    rows are (coefficients, sense, rhs) with sense one of "<=", ">=", "==".
    nonneg[j] is True for x_j >= 0 and False for a free variable; it
    defaults to all-nonnegative.
    """

    minimize: bool
    objective: list[Fraction]
    rows: list[tuple[list[Fraction], str, Fraction]]
    nonneg: list[bool] = field(default_factory=list)

    def __post_init__(self):
        self.objective = [Fraction(x) for x in self.objective]
        nv = len(self.objective)
        if not self.nonneg:
            self.nonneg = [True] * nv
        if len(self.nonneg) != nv:
            raise ValueError("nonneg flags must match the variable count")
        fixed = []
        for coeffs, sense, rhs in self.rows:
            if len(coeffs) != nv:
                raise ValueError("row width must match the variable count")
            if sense not in (LE, GE, EQ):
                raise ValueError(f"unknown sense {sense!r}")
            fixed.append(([Fraction(x) for x in coeffs], sense, Fraction(rhs)))
        self.rows = fixed


@dataclass
class LpSolution:
    """Solver outcome with exact primal and dual certificates at optimality."""

    status: str
    value: Fraction | None = None
    primal: list[Fraction] | None = None
    dual: list[Fraction] | None = None


def _pivot(tableau, cost, basis, row, col):
    piv = tableau[row][col]
    inv = 1 / piv
    trow = tableau[row]
    for j in range(len(trow)):
        trow[j] *= inv
    for i, other in enumerate(tableau):
        if i != row and other[col]:
            f = other[col]
            for j in range(len(other)):
                other[j] -= f * trow[j]
    if cost[col]:
        f = cost[col]
        for j in range(len(cost)):
            cost[j] -= f * trow[j]
    basis[row] = col


def _reduced_costs(tableau, basis, c, ncols):
    cost = list(c) + [Fraction(0)]  # trailing slot accumulates -objective
    for i, bj in enumerate(basis):
        if c[bj]:
            f = c[bj]
            row = tableau[i]
            for j in range(ncols + 1):
                cost[j] -= f * row[j]
    return cost


def _run_simplex(tableau, cost, basis, eligible):
    """Bland iterations to optimality; returns None or UNBOUNDED."""
    ncols = len(cost) - 1
    while True:
        col = -1
        for j in range(ncols):
            if eligible[j] and cost[j] < 0:
                col = j
                break
        if col < 0:
            return None
        row = -1
        best = None
        for i, trow in enumerate(tableau):
            a = trow[col]
            if a > 0:
                ratio = trow[ncols] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best = ratio
                    row = i
        if row < 0:
            return UNBOUNDED
        _pivot(tableau, cost, basis, row, col)


def solve_exact(lp: RationalLp) -> LpSolution:
    """Solve exactly; on optimal status both certificates are verified."""
    nv = len(lp.objective)
    sign = 1 if lp.minimize else -1

    # split free variables x = x+ - x-
    colmap: list[tuple[int, int]] = []
    for j, nn in enumerate(lp.nonneg):
        colmap.append((j, 1))
        if not nn:
            colmap.append((j, -1))
    nx = len(colmap)
    c_int = [sign * lp.objective[v] * s for (v, s) in colmap]

    # normalize rows to b >= 0, record sign multipliers
    rows_a, rows_b, senses, mult = [], [], [], []
    flip = {LE: GE, GE: LE, EQ: EQ}
    for coeffs, sense, rhs in lp.rows:
        m = -1 if rhs < 0 else 1
        rows_a.append([m * coeffs[v] * s for (v, s) in colmap])
        rows_b.append(m * rhs)
        senses.append(flip[sense] if m < 0 else sense)
        mult.append(m)
    nrows = len(rows_a)

    # columns: [x-split | one slack/surplus per inequality | one artificial per row]
    slack_col = {}
    ns = 0
    for i, s in enumerate(senses):
        if s != EQ:
            slack_col[i] = nx + ns
            ns += 1
    art_col = [nx + ns + i for i in range(nrows)]
    ncols = nx + ns + nrows

    zero = Fraction(0)
    one = Fraction(1)
    tableau = []
    for i in range(nrows):
        row = rows_a[i] + [zero] * (ns + nrows) + [rows_b[i]]
        if i in slack_col:
            row[slack_col[i]] = one if senses[i] == LE else -one
        row[art_col[i]] = one
        tableau.append(row)
    basis = list(art_col)

    # phase 1: minimize the artificial total
    c1 = [zero] * (nx + ns) + [one] * nrows
    cost = _reduced_costs(tableau, basis, c1, ncols)
    eligible = [True] * ncols
    status = _run_simplex(tableau, cost, basis, eligible)
    if status == UNBOUNDED:
        raise SimplexError("phase 1 cannot be unbounded")
    if -cost[ncols] != 0:
        return LpSolution(status=INFEASIBLE)

    # drive leftover artificials out of the basis; drop redundant rows
    art_set = set(art_col)
    drop = []
    for i in range(nrows):
        if basis[i] in art_set:
            piv_col = next(
                (j for j in range(nx + ns) if tableau[i][j] != 0), None
            )
            if piv_col is None:
                drop.append(i)
            else:
                _pivot(tableau, cost, basis, i, piv_col)
    kept = [i for i in range(nrows) if i not in drop]
    tableau = [tableau[i] for i in kept]
    basis = [basis[i] for i in kept]

    # phase 2: artificial columns stay (they carry the duals) but cannot enter
    c2 = c_int + [zero] * (ns + nrows)
    cost = _reduced_costs(tableau, basis, c2, ncols)
    eligible = [j < nx + ns for j in range(ncols)]
    status = _run_simplex(tableau, cost, basis, eligible)
    if status == UNBOUNDED:
        return LpSolution(status=UNBOUNDED)

    # primal solution
    xsplit = [zero] * ncols
    for i, bj in enumerate(basis):
        xsplit[bj] = tableau[i][ncols]
    x = [zero] * nv
    for (v, s), val in zip(colmap, (xsplit[j] for j in range(nx))):
        x[v] += s * val
    value_int = -cost[ncols]

    # duals from reduced costs of the artificial unit columns
    y_int = [zero] * nrows
    for i in range(nrows):
        y_int[i] = -cost[art_col[i]]
    y = [mult[i] * y_int[i] for i in range(nrows)]

    if lp.minimize:
        value, y_out = value_int, y
    else:
        value, y_out = -value_int, [-yi for yi in y]

    _verify_certificates(lp, value, x, y_out)
    return LpSolution(status=OPTIMAL, value=value, primal=x, dual=y_out)


def _verify_certificates(lp, value, x, y):
    """Exact feasibility + strong duality of the reported pair; raise on failure."""
    for j, (xj, nn) in enumerate(zip(x, lp.nonneg)):
        if nn and xj < 0:
            raise SimplexError(f"primal var {j} negative: {xj}")
    obj = sum(cj * xj for cj, xj in zip(lp.objective, x))
    if obj != value:
        raise SimplexError(f"objective mismatch: {obj} != {value}")
    for (coeffs, sense, rhs), yi in zip(lp.rows, y):
        lhs = sum(a * xj for a, xj in zip(coeffs, x))
        if sense == LE and lhs > rhs:
            raise SimplexError(f"row violated: {lhs} <= {rhs}")
        if sense == GE and lhs < rhs:
            raise SimplexError(f"row violated: {lhs} >= {rhs}")
        if sense == EQ and lhs != rhs:
            raise SimplexError(f"row violated: {lhs} == {rhs}")
        want = 1 if lp.minimize else -1
        if sense == LE and want * yi > 0:
            raise SimplexError(f"dual sign on <= row: {yi}")
        if sense == GE and want * yi < 0:
            raise SimplexError(f"dual sign on >= row: {yi}")
    if sum(yi * rhs for (_, _, rhs), yi in zip(lp.rows, y)) != value:
        raise SimplexError("strong duality failed")
    for j in range(len(lp.objective)):
        slack = lp.objective[j] - sum(
            lp.rows[i][0][j] * y[i] for i in range(len(lp.rows))
        )
        if not lp.minimize:
            slack = -slack
        if lp.nonneg[j]:
            if slack < 0:
                raise SimplexError(f"dual infeasible at var {j}: slack {slack}")
        elif slack != 0:
            raise SimplexError(f"dual slack on free var {j}: {slack}")


def solution_to_dict(sol: LpSolution) -> dict:
    """JSON-ready form with rationals as 'p/q' strings."""

    def frac(x: Fraction) -> str:
        return f"{x.numerator}/{x.denominator}"

    out: dict = {"status": sol.status}
    out["value"] = frac(sol.value) if sol.value is not None else None
    out["primal"] = [frac(v) for v in sol.primal] if sol.primal is not None else None
    out["dual"] = [frac(v) for v in sol.dual] if sol.dual is not None else None
    return out
