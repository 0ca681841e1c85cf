"""Information-space diagrams for bipartite quantum states.

Formation and extraction resource curves (information against quantum
communication), decomposition-based bounds, closed-form values for the
Bell-mixture family, and the second-order transition signature in its
susceptibility.
"""

from .curves import (
    ChiSlope,
    ComplementarityCheck,
    CurveKind,
    DegenerateFamilyError,
    InformationCurve,
    PhaseScanResult,
    PointKind,
    ProtocolPoint,
    ScanSample,
    build_lower_envelope,
    chi,
    chord_mix,
    complementarity_check,
    curve_value,
    formation_endpoints,
    phase_scan,
    pure_extraction_line,
)
from .ensembles import (
    AssumedExactValues,
    ComponentCost,
    ComponentCostUnknown,
    Ensemble,
    LocalOrthogonality,
    NotApplicable,
    NotCertifiedOrthogonal,
    ProductBasis,
    ProductBasisResult,
    assumed_exact_values,
    ensemble_average,
    ensemble_from_dict,
    ensemble_to_dict,
    formation_point,
    formation_surplus_bound,
    local_orthogonality_check,
    product_eigenbasis_check,
    reversible_cost_bound,
)
from .families import (
    Classification,
    FamilySpec,
    StateCategory,
    bell_formation_points,
    bell_mixture,
    classically_correlated,
    classify,
    pure_schmidt,
)
from .linalg import (
    DensityOperator,
    EigenConvergenceError,
    NotHermitian,
    NotPositive,
    PureState,
    TraceNotOne,
    ValidationError,
    hermitian_eigensystem,
    partial_trace,
    partial_transpose,
    schmidt_coefficients,
    spectrum_probabilities,
    support_projector,
    tensor_product,
    validate_density,
)
from .measures import (
    MeasureReport,
    bell_mixture_ec,
    binary_entropy,
    concurrence_2q,
    eof_2q,
    information_content,
    local_entropies,
    measure_report,
    pure_state_entanglement,
    shannon_entropy,
    von_neumann_entropy,
)
from .serialize import dump_state, load_state, state_from_dict, state_to_dict
from .tolerances import DEFAULT, Tolerances

__version__ = "0.1.0"
