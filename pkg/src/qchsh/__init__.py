"""CHSH expectation bounds and maximization for two-qudit states."""

from .bounds import (
    TSIRELSON,
    BoundsReport,
    chsh_bounds,
    ghz_chsh_maximum,
    ghz_correlation_matrix,
    horodecki_two_qubit,
    top_two_gram_eigenvalues,
)
from .correlation import (
    ChshSettings,
    CorrelationMatrix,
    chsh_expectation_direct,
    chsh_expectation_from_correlations,
    chsh_operator,
    correlation_matrix,
)
from .numerics import (
    EigenDecomposition,
    hermitian_eigendecomposition,
    operator_norm,
    tensor_product,
    trace_inner_product,
)
from .optimizer import (
    SeesawConfig,
    SeesawResult,
    closed_form_party_update,
    ghz_optimal_settings,
    optimal_mixing_angle,
    random_search_max,
    seesaw_maximize,
    traceless_linear_max,
)
from .representation import (
    GellMannBasis,
    TracelessObservable,
    build_gellmann_basis,
    expand_observable,
    is_admissible,
    kernel_class,
    max_admissible_norm,
    observable_from_coefficients,
    project_to_admissible,
)
from .states import (
    TwoQuditState,
    ghz_state,
    load_state_file,
    random_two_qudit_state,
    state_to_json_dict,
    validate_state,
)

__all__ = [
    "TSIRELSON",
    "BoundsReport",
    "ChshSettings",
    "CorrelationMatrix",
    "EigenDecomposition",
    "GellMannBasis",
    "SeesawConfig",
    "SeesawResult",
    "TracelessObservable",
    "TwoQuditState",
    "build_gellmann_basis",
    "chsh_bounds",
    "chsh_expectation_direct",
    "chsh_expectation_from_correlations",
    "chsh_operator",
    "closed_form_party_update",
    "correlation_matrix",
    "expand_observable",
    "ghz_chsh_maximum",
    "ghz_correlation_matrix",
    "ghz_optimal_settings",
    "ghz_state",
    "hermitian_eigendecomposition",
    "horodecki_two_qubit",
    "is_admissible",
    "kernel_class",
    "load_state_file",
    "max_admissible_norm",
    "observable_from_coefficients",
    "operator_norm",
    "optimal_mixing_angle",
    "project_to_admissible",
    "random_search_max",
    "random_two_qudit_state",
    "seesaw_maximize",
    "state_to_json_dict",
    "tensor_product",
    "top_two_gram_eigenvalues",
    "trace_inner_product",
    "traceless_linear_max",
    "validate_state",
]

__version__ = "0.1.0"
