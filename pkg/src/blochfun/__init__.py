"""Numerical toolkit for truncated area functionals on the Bloch space.

Computes Bloch seminorms and the sharp coefficient bounds B_n, searches
for extremals of the weighted functionals sum k^t |b_k|^2 over the unit
ball, builds the explicit counterexample families for t < 1, and verifies
the associated inequalities at desk scale.
"""

__version__ = "0.1.0"

from .poly import (
    Coefficients,
    evaluate,
    derivative,
    mobius_recenter,
    marty_first_order,
    mobius_map,
    mobius_deriv,
    load_coefficients,
    save_coefficients,
)
from .norm import (
    NormResult,
    NormConvergenceError,
    coefficient_bound_Bn,
    bn_array,
    bn_strictly_increasing,
    attainment_radius,
    seminorm,
    seminorm_general,
    seminorm_radial,
)
from .functionals import (
    FunctionalSpec,
    functional_value,
    crude_bound,
    ratio_to_conjectured,
    parseval_margin,
    weight_reduction_check,
)
from .search import (
    SearchConfig,
    SearchResult,
    rayleigh_objective,
    gauge_normalize,
    search_extremal,
    brute_force_oracle,
    lemma_perturbation,
    lemma_bound_check,
    marty_residual,
)
from .constructions import (
    CounterexampleReport,
    Example42Report,
    threshold_N,
    counterexample_function,
    counterexample_verify,
    hmax_closed_form,
    example42_build,
    example42_verify,
    u_value,
)

__all__ = [
    "__version__",
    "Coefficients", "evaluate", "derivative", "mobius_recenter",
    "marty_first_order", "mobius_map", "mobius_deriv",
    "load_coefficients", "save_coefficients",
    "NormResult", "NormConvergenceError", "coefficient_bound_Bn",
    "bn_array", "bn_strictly_increasing", "attainment_radius",
    "seminorm", "seminorm_general", "seminorm_radial",
    "FunctionalSpec", "functional_value", "crude_bound",
    "ratio_to_conjectured", "parseval_margin", "weight_reduction_check",
    "SearchConfig", "SearchResult", "rayleigh_objective", "gauge_normalize",
    "search_extremal", "brute_force_oracle", "lemma_perturbation",
    "lemma_bound_check", "marty_residual",
    "CounterexampleReport", "Example42Report", "threshold_N",
    "counterexample_function", "counterexample_verify", "hmax_closed_form",
    "example42_build", "example42_verify", "u_value",
]
