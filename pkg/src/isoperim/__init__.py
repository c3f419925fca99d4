"""Exact edge-isoperimetric and noise-stability bounds on hypercube powers.

Computes, certifies, and cross-verifies: closed-form LP bounds on
ball-noise stability, exact rational LP optima with dual certificates,
hypercontractivity and exponent bounds, values of explicit constructions,
and brute-force ground truth at desk scale.
"""

from .exactmath import binom, binom_cum, binary_entropy, relative_entropy
from .hypercube import (
    Code,
    DistanceDistribution,
    DualDistribution,
    FourierSpectrum,
    cdf_distance,
    distance_distribution,
    dual_distribution,
    edge_counts,
    even_part,
    fourier_weights,
    hamming_ball,
    hamming_sphere,
    lex_segment,
    macwilliams_forward,
    macwilliams_inverse,
    odd_part,
    product_extend,
    random_code,
    subcube,
)
from .krawtchouk import (
    KrawtchoukTable,
    check_asym_dominance,
    check_value_dominance,
    krawtchouk,
    krawtchouk_cumulative,
    noise_eigenvalue,
    table,
)
from .lpbound import (
    BoundQuery,
    asymptotic_upper_bound,
    build_dual,
    build_primal,
    dual_bound_closed_form,
    dual_certificate,
    lp_upper_bound,
    solve_both,
    subcube_values,
)
from .oracle import (
    BudgetExceededError,
    OracleResult,
    exhaustive_max_stability,
    verify_bound_vs_oracle,
)
from .simplex import LpSolution, RationalLp, solve_exact
from .stability import (
    NoiseModel,
    StabilityValue,
    ball_noise,
    cross_stability,
    iid_noise,
    sphere_noise,
    stab_ball,
    stab_iid,
    stab_spectral,
    stab_sphere,
    tail_weight,
)
from .asymptotics import (
    ball_sphere_ratio_report,
    gaussian_quadrant,
    hypercontractivity_bounds,
    iid_stability_exponent,
    product_limit_report,
    small_set_bound,
)

__version__ = "0.1.0"
