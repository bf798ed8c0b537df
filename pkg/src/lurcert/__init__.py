"""Entanglement certification for N-level systems via local sum-uncertainty
relations: spin/Stokes operator sets, certified uncertainty bounds, global
bound searches, and bipartite violation certificates."""

from .linalg import (
    DEFAULT_TOLERANCES,
    DimensionMismatchError,
    InvalidParameterError,
    LurcertError,
    NotHermitianError,
    Tolerances,
)
from .spin_ops import (
    OperatorSet,
    SpinQuantum,
    casimir_check,
    spin_components,
    spin_subset,
    stokes_components,
    stokes_subset,
)
from .states import (
    DensityMatrix,
    NotPositiveError,
    PureState,
    StateFormatError,
    StateValidationError,
    TraceNotOneError,
    bell_kets,
    bell_mixture,
    bell_states,
    maximally_mixed,
    min_uncertainty_state_n3,
    random_mixed_state,
    random_product_state,
    random_pure_state,
    read_state,
    singlet_ket,
    singlet_state,
    state_digest,
    state_from_json,
    state_to_json,
    validate,
    white_noise_mixture,
    write_state,
    x_decoherence_mixture,
)
from .uncertainty import (
    CATALOG_KINDS,
    UncertaintyRelation,
    catalog_bound,
    expectation,
    sum_uncertainty,
    variance,
)
from .bound_search import (
    BoundCertification,
    SearchConfig,
    SearchResult,
    brute_force_minimum,
    certify_bound,
    minimize_sum_uncertainty,
)
from .lur import (
    BellMixtureAnalysis,
    DecoherenceAnalysis,
    JointOperatorSet,
    LurCertificate,
    RELATION_KINDS,
    VisibilityRecord,
    VisibilityUncertainties,
    bell_mixture_analysis,
    build_joint,
    certify,
    decoherence_analysis,
    joint_from_catalog,
    joint_from_relations,
    stokes_visibilities,
    visibility_to_uncertainty,
    white_noise_two_component_violation,
    white_noise_violation,
    wootters_concurrence,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLERANCES",
    "DimensionMismatchError",
    "InvalidParameterError",
    "LurcertError",
    "NotHermitianError",
    "Tolerances",
    "OperatorSet",
    "SpinQuantum",
    "casimir_check",
    "spin_components",
    "spin_subset",
    "stokes_components",
    "stokes_subset",
    "DensityMatrix",
    "NotPositiveError",
    "PureState",
    "StateFormatError",
    "StateValidationError",
    "TraceNotOneError",
    "bell_kets",
    "bell_mixture",
    "bell_states",
    "maximally_mixed",
    "min_uncertainty_state_n3",
    "random_mixed_state",
    "random_product_state",
    "random_pure_state",
    "read_state",
    "singlet_ket",
    "singlet_state",
    "state_digest",
    "state_from_json",
    "state_to_json",
    "validate",
    "white_noise_mixture",
    "write_state",
    "x_decoherence_mixture",
    "CATALOG_KINDS",
    "UncertaintyRelation",
    "catalog_bound",
    "expectation",
    "sum_uncertainty",
    "variance",
    "BoundCertification",
    "SearchConfig",
    "SearchResult",
    "brute_force_minimum",
    "certify_bound",
    "minimize_sum_uncertainty",
    "BellMixtureAnalysis",
    "DecoherenceAnalysis",
    "JointOperatorSet",
    "LurCertificate",
    "RELATION_KINDS",
    "VisibilityRecord",
    "VisibilityUncertainties",
    "bell_mixture_analysis",
    "build_joint",
    "certify",
    "decoherence_analysis",
    "joint_from_catalog",
    "joint_from_relations",
    "stokes_visibilities",
    "visibility_to_uncertainty",
    "white_noise_two_component_violation",
    "white_noise_violation",
    "wootters_concurrence",
]
