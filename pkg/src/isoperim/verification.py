"""Property suites behind the `verify` CLI command.

Each suite runs a family of exact identities/inequalities over a grid and
returns CheckResult rows; the CLI prints them and maps any failure to a
nonzero exit.  Suites deliberately recompute quantities along independent
routes (defining sum vs table, pair counts vs spectra, primal vs dual)
so that a single arithmetic bug cannot hide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactmath import binom, binom_cum
from .hypercube import (
    distance_distribution,
    dual_distribution,
    even_part,
    fourier_weights,
    macwilliams_forward,
    macwilliams_inverse,
    odd_part,
    random_code,
    subcube,
)
from .krawtchouk import (
    check_value_dominance,
    krawtchouk_cumulative,
    krawtchouk_sum,
    table,
)
from .lpbound import (
    BoundQuery,
    build_dual,
    build_primal,
    certificate_candidates,
    dual_bound_closed_form,
    dual_certificate,
    odd_large_alternative_certificate,
    solve_both,
)
from .simplex import solve_exact
from .stability import (
    ball_noise,
    ball_stability_cdf_identity,
    cross_stability,
    iid_noise,
    sphere_noise,
    stab_ball,
    stab_iid,
    stab_sphere,
    stab_spectral,
)

__all__ = ["CheckResult", "run_suite", "SUITES"]

SEED = 20240801


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _random_codes(max_n: int, count: int, nmin: int = 2):
    rng = np.random.default_rng(SEED)
    codes = []
    for _ in range(count):
        n = int(rng.integers(nmin, max_n + 1))
        m = int(rng.integers(1, (1 << n) + 1))
        codes.append(random_code(n, m, rng))
    return codes


def suite_krawtchouk(max_n: int = 24) -> list[CheckResult]:
    out = []
    gen_ok = recip_ok = refl_ok = rec_ok = cum_ok = True
    gen_bad = recip_bad = refl_bad = rec_bad = cum_bad = ""
    for n in range(1, max_n + 1):
        tab = table(n)
        prev = table(n - 1) if n >= 1 else None
        for i in range(n + 1):
            for k in range(n + 1):
                v = tab.value(k, i)
                if v != krawtchouk_sum(n, k, i):
                    gen_ok, gen_bad = False, f"(n={n},k={k},i={i})"
                if math.comb(n, i) * v != math.comb(n, k) * tab.value(i, k):
                    recip_ok, recip_bad = False, f"(n={n},k={k},i={i})"
                sign_k = -1 if k % 2 else 1
                sign_i = -1 if i % 2 else 1
                if v != sign_k * tab.value(k, n - i) or v != sign_i * tab.value(n - k, i):
                    refl_ok, refl_bad = False, f"(n={n},k={k},i={i})"
                if 1 <= k and i <= n - 1 and prev is not None:
                    if v != prev.value(k, i) + prev.value(k - 1, i):
                        rec_ok, rec_bad = False, f"(n={n},k={k},i={i})"
        for r in range(n + 1):
            for i in range(n + 1):
                try:
                    krawtchouk_cumulative(n, r, i)
                except ArithmeticError:
                    cum_ok, cum_bad = False, f"(n={n},r={r},i={i})"
    out.append(CheckResult(f"defining sum == generating-function table, n<={max_n}", gen_ok, gen_bad))
    out.append(CheckResult(f"reciprocity C(n,i)K_k(i) = C(n,k)K_i(k), n<={max_n}", recip_ok, recip_bad))
    out.append(CheckResult(f"reflection identities, n<={max_n}", refl_ok, refl_bad))
    out.append(CheckResult(f"dimension recurrence, n<={max_n}", rec_ok, rec_bad))
    out.append(CheckResult(f"cumulative identity incl. i=0, n<={max_n}", cum_ok, cum_bad))
    for at in (0, 1, 2):
        worst = None
        ok = True
        for n in range(1, max_n + 1):
            rep = check_value_dominance(n, at)
            if not rep.passed:
                ok = False
                worst = rep.counterexamples[:3]
        out.append(
            CheckResult(
                f"K_k({at}) dominance on its range, n<={max_n}", ok, str(worst or "")
            )
        )
    return out


def suite_macwilliams(max_n: int = 12, count: int = 60) -> list[CheckResult]:
    out = []
    codes = _random_codes(max_n, count)
    round_ok = two_path_ok = pos_ok = True
    detail = ""
    for c in codes:
        dd = distance_distribution(c)
        q = macwilliams_forward(dd)
        back = macwilliams_inverse(q)
        if back.entries != dd.entries:
            round_ok, detail = False, f"roundtrip at n={c.n}, M={c.size}"
        if q.entries != dual_distribution(c).entries:
            two_path_ok, detail = False, f"two-path at n={c.n}, M={c.size}"
        tab = table(c.n)
        for k in range(c.n + 1):
            s = sum(qi * tab.value(k, i) for i, qi in enumerate(q.entries))
            if s < 0:
                pos_ok, detail = False, f"positivity at n={c.n}, k={k}"
    out.append(CheckResult(f"transform roundtrip, {count} random codes", round_ok, detail))
    out.append(CheckResult("pair-count vs spectral dual distribution", two_path_ok, detail))
    out.append(CheckResult("Krawtchouk positivity of dual distributions", pos_ok, detail))
    return out


def _duality_grid(max_n: int):
    for n in range(3, max_n + 1):
        for m in (1 << (n - 3), 1 << (n - 2), 3 << (n - 3), 1 << (n - 1)):
            for r in range(1, n + 1):
                yield BoundQuery(n, r, m)


def suite_duality(max_n: int = 10) -> list[CheckResult]:
    out = []
    ok = True
    detail = ""
    count = 0
    for q in _duality_grid(max_n):
        ps, ds = solve_both(q)  # raises if the pair disagrees; also self-checks
        count += 1
        if ps.value < 0:
            ok, detail = False, f"negative optimum at {q}"
    out.append(CheckResult(f"strong duality on the grid ({count} instances), n<={max_n}", ok, detail))

    # a code's dual distribution is primal feasible and scores >= the optimum
    rng = np.random.default_rng(SEED)
    feas_ok = True
    detail = ""
    for _ in range(20):
        n = int(rng.integers(3, min(max_n, 10) + 1))
        m = int(rng.integers(1, (1 << (n - 1)) + 1))
        c = random_code(n, m, rng)
        q = BoundQuery(n, int(rng.integers(1, n + 1)), m)
        lp = build_primal(q)
        u = dual_distribution(c).entries[2:]
        for coeffs, _sense, rhs in lp.rows:
            if sum(a * ui for a, ui in zip(coeffs, u)) > rhs:
                feas_ok, detail = False, f"dual distribution infeasible at {q}"
        score = sum(co * ui for co, ui in zip(lp.objective, u))
        opt = solve_exact(lp).value
        if score < opt:
            feas_ok, detail = False, f"code beats LP optimum at {q}"
    out.append(CheckResult("random dual distributions are primal-feasible and >= optimum", feas_ok, detail))
    return out


def suite_certificates(max_n: int = 14, with_lp: bool = True) -> list[CheckResult]:
    out = []
    feas_ok = clause_ok = sandwich_ok = mono_ok = True
    detail_f = detail_c = detail_s = detail_m = ""
    variant_notes = []
    checked = 0
    for n in range(1, max_n + 1):
        for denom_pow, num in ((3, 1), (2, 1), (3, 3), (1, 1)):
            if n < denom_pow:
                continue
            m = num << (n - denom_pow)
            lp_cache: dict[int, Fraction] = {}
            for r in range(1, n + 1):
                q = BoundQuery(n, r, m)
                cf = dual_bound_closed_form(q)
                for k in certificate_candidates(q):
                    cert = dual_certificate(q, k)
                    checked += 1
                    if not cert.feasible:
                        feas_ok, detail_f = False, f"infeasible cert at {q}, k={k}"
                    if cert.objective != cert.clause_value:
                        clause_ok, detail_c = False, f"objective != clause at {q}, k={k}"
                if with_lp:
                    if r not in lp_cache:
                        lp_cache[r] = solve_exact(build_primal(q)).value
                    opt = lp_cache[r]
                    if cf.value is not None and opt < cf.value:
                        sandwich_ok, detail_s = False, f"LP {opt} < closed form {cf.value} at {q}"
                    if r < n:
                        qn = BoundQuery(n, r + 1, m)
                        if r + 1 not in lp_cache:
                            lp_cache[r + 1] = solve_exact(build_primal(qn)).value
                        if opt < lp_cache[r + 1]:
                            mono_ok, detail_m = False, f"radius monotonicity fails at {q}"
                if cf.case == "odd_large" and cf.k_star is not None:
                    var = odd_large_alternative_certificate(q, cf.k_star)
                    if not var.feasible or var.objective != cf.value:
                        variant_notes.append(
                            f"(n={n},r={r},M={m},k={cf.k_star}): solved form obj={cf.value}, "
                            f"variant feasible={var.feasible} obj={var.objective}"
                        )
    out.append(CheckResult(f"certificate feasibility ({checked} vectors), n<={max_n}", feas_ok, detail_f))
    out.append(CheckResult("certificate objective equals its closed-form clause", clause_ok, detail_c))
    if with_lp:
        out.append(CheckResult("LP optimum >= closed-form value", sandwich_ok, detail_s))
        out.append(CheckResult("LP optimum nonincreasing in the radius", mono_ok, detail_m))
    if variant_notes:
        shown = "; ".join(variant_notes[:3]) + (" ..." if len(variant_notes) > 3 else "")
        out.append(
            CheckResult(
                f"NOTE large-odd-radius variant scaling differs in {len(variant_notes)} cases "
                "(reported, not failed)",
                True,
                shown,
            )
        )
    return out


def suite_stability(max_n: int = 10, count: int = 40) -> list[CheckResult]:
    out = []
    codes = _random_codes(max_n, count)
    spec_ok = prop_ok = orth_ok = sym_ok = bil_ok = True
    detail = ""
    rng = np.random.default_rng(SEED + 1)
    for c in codes:
        spec = fourier_weights(c)
        for r in range(c.n + 1):
            if stab_sphere(c, r).value != stab_spectral(spec, sphere_noise(r)).value:
                spec_ok, detail = False, f"sphere mismatch n={c.n} r={r}"
            if stab_ball(c, r).value != stab_spectral(spec, ball_noise(r)).value:
                spec_ok, detail = False, f"ball mismatch n={c.n} r={r}"
        for beta in (Fraction(1, 3), Fraction(2, 7)):
            if stab_iid(c, beta).value != stab_spectral(spec, iid_noise(beta)).value:
                spec_ok, detail = False, f"iid mismatch n={c.n} beta={beta}"
        for r in range(c.n + 1):
            try:
                ball_stability_cdf_identity(c, r)
            except ArithmeticError as e:
                prop_ok, detail = False, str(e)
        ev, od = even_part(c), odd_part(c)
        for r in range(0, c.n + 1, 2):
            if cross_stability(ev, od, sphere_noise(r)) != 0:
                orth_ok, detail = False, f"orthogonality n={c.n} r={r}"
        model = ball_noise(int(rng.integers(0, c.n + 1)))
        if cross_stability(ev, od, model) != cross_stability(od, ev, model):
            sym_ok, detail = False, f"symmetry n={c.n}"
        if c.size:
            if (
                cross_stability(ev, c, model)
                != cross_stability(ev, ev, model) + cross_stability(ev, od, model)
            ):
                bil_ok, detail = False, f"bilinearity n={c.n}"
    out.append(CheckResult(f"spectral == combinatorial on {count} random codes", spec_ok, detail))
    out.append(CheckResult("ball stability == rescaled distance CDF", prop_ok, detail))
    out.append(CheckResult("even/odd cross stability vanishes at even radii", orth_ok, detail))
    out.append(CheckResult("cross stability is symmetric", sym_ok, detail))
    out.append(CheckResult("cross stability is bilinear over disjoint unions", bil_ok, detail))

    # subcube closed forms against honest constructions
    sub_ok = True
    detail = ""
    for n in range(2, min(max_n, 10) + 1):
        for k in range(n + 1):
            cube = subcube(n, k)
            from .lpbound import subcube_values

            for r in range(n + 1):
                vals = subcube_values(n, k, r)
                if stab_ball(cube, r).value != vals.ball:
                    sub_ok, detail = False, f"subcube ball n={n} k={k} r={r}"
                if stab_sphere(cube, r).value != vals.sphere:
                    sub_ok, detail = False, f"subcube sphere n={n} k={k} r={r}"
                if k >= 1:
                    half = even_part(subcube(n, k - 1))
                    if stab_sphere(half, r).value != vals.even_part_sphere:
                        sub_ok, detail = False, f"even-part sphere n={n} k={k} r={r}"
    out.append(CheckResult("closed-form subcube/even-part values match constructions", sub_ok, detail))
    return out


SUITES = {
    "krawtchouk": suite_krawtchouk,
    "macwilliams": suite_macwilliams,
    "duality": suite_duality,
    "certificates": suite_certificates,
    "stability": suite_stability,
}

DEFAULT_MAX_N = {
    "krawtchouk": 24,
    "macwilliams": 12,
    "duality": 10,
    "certificates": 14,
    "stability": 10,
}


def run_suite(name: str, max_n: int | None = None) -> list[CheckResult]:
    if name == "all":
        results = []
        for key in SUITES:
            results.extend(run_suite(key, max_n))
        return results
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    limit = max_n if max_n is not None else DEFAULT_MAX_N[name]
    return SUITES[name](limit)
