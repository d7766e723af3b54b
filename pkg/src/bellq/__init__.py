"""Bell-inequality violation and entanglement toolkit for pure qubit states."""

from .bell import (
    BellSettings,
    FullBellSettings,
    MaximizeResult,
    OptimizerConfig,
    expectation_full,
    expectation_restricted,
    full_from_restricted,
    full_leaf,
    full_node,
    maximize,
    optimal_settings_from_spectrum,
    tsirelson_bound,
)
from .errors import (
    BellqError,
    BipartitionError,
    DegenerateFitError,
    DomainError,
    NotApplicableError,
    NotPositiveError,
    NotUnitaryError,
    ShapeError,
    SizeLimitError,
    ZeroStateError,
)
from .pauli import (
    CorrelationTensor,
    correlation_tensor,
    gram_spectrum,
    lemma_bound,
    pauli_expectation,
)
from .qstate import (
    Bipartition,
    DensityMatrix,
    StateVector,
    apply_local_unitary,
    concurrence_pure,
    from_terms,
    generalized_concurrence,
    partial_trace,
    purity,
    random_product_state,
    random_state,
    state_from_json,
    state_to_json,
    von_neumann_entropy,
)
from .theorem import (
    FamilySpec,
    TheoremReport,
    default_sweep,
    f_alpha,
    family_state,
    predicted_spectrum,
    spec_from_json,
    verify,
)
from .wenplaquette import (
    EntropyPoint,
    TorusLattice,
    entropy_points,
    ground_state_6,
    ground_states_4,
    hamiltonian,
    inverse_mapping,
    plaquette_operator,
    report,
    stee_fit,
)
from .qstate import spectrum

__all__ = [name for name in dir() if not name.startswith("_")]
