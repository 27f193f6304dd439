"""Exact Hilbert-depth computations for Koszul syzygy modules.

The package computes the standard-graded Hilbert depth of the syzygy modules
of the residue field over a polynomial ring, builds and verifies the
multigraded upper-range decompositions (including Stanley upgrades via hook
assignments), and evaluates the two large-n asymptotic regimes.
"""

__version__ = "0.1.0"

from .asymptotics import (
    GammaSolution,
    RegimeAPrediction,
    alpha_crit,
    f_base,
    gamma_curve,
    j_min_estimate,
    predict_regimeA,
    quotient_ratio,
    solve_gamma,
)
from .depth import (
    DepthResult,
    PositivityReport,
    bound_lower,
    bound_upper,
    closed_form,
    coeff_sum1,
    coeff_sum2,
    hdepth_std,
    hdepth_via_oracle,
    positivity,
)
from .exact import BinomialProvider, UniLaurent, binomial, expand_quotient, numerator_std
from .koszul import (
    HookAssignment,
    boundary_squared_zero,
    generic_rank,
    koszul_generator,
    search_hooks,
    union_chain_criterion,
    verify_stanley,
)
from .multigraded import (
    Decomposition,
    HilbertPiece,
    Matching,
    SqfPoly,
    build_upper_decomposition,
    hdepth_multi_upper,
    level_injection,
    numerator_multi,
    verify_hilbert_decomposition,
)

__all__ = [
    "BinomialProvider",
    "Decomposition",
    "DepthResult",
    "GammaSolution",
    "HilbertPiece",
    "HookAssignment",
    "Matching",
    "PositivityReport",
    "RegimeAPrediction",
    "SqfPoly",
    "UniLaurent",
    "alpha_crit",
    "binomial",
    "bound_lower",
    "bound_upper",
    "boundary_squared_zero",
    "build_upper_decomposition",
    "closed_form",
    "coeff_sum1",
    "coeff_sum2",
    "expand_quotient",
    "f_base",
    "gamma_curve",
    "generic_rank",
    "hdepth_multi_upper",
    "hdepth_std",
    "hdepth_via_oracle",
    "j_min_estimate",
    "koszul_generator",
    "level_injection",
    "numerator_multi",
    "numerator_std",
    "positivity",
    "predict_regimeA",
    "quotient_ratio",
    "search_hooks",
    "solve_gamma",
    "union_chain_criterion",
    "verify_hilbert_decomposition",
    "verify_stanley",
]
