"""magicnoise: decoherence thresholds for qudit magic-state nonclassicality.

Build odd-prime-dimension Weyl/stabilizer objects, represent states and
channels in exact operator frames (Wigner-type and Kirkwood-Dirac), and
compute the noise levels at which a depolarized magic state stops being a
nonclassicality witness -- in closed form, by linear programming against
the stabilizer polytope, and by numerical search over KD frames.
"""

from .qudit import (
    DEFAULT_TOLERANCES,
    MAGIC_STATE_KINDS,
    SUPPORTED_DIMENSIONS,
    Dimension,
    DimensionMismatchError,
    Operator,
    StabilizerStateSet,
    Tolerances,
    UnsupportedDimensionError,
    WeylIndex,
    clifford_generators,
    computational_basis,
    depolarize,
    fourier_basis,
    fourier_gate,
    magic_state,
    maximally_mixed,
    quadratic_phase_gate,
    random_state,
    random_unitary,
    stabilizer_states,
    stabilizing_weyl_index,
    weyl_operator,
)
from .frames import (
    OVERLAP_FLOOR,
    DegenerateFrameError,
    ExactFrame,
    FrameValidationReport,
    canonical_mub_frame,
    frame_from_unitaries,
    gross_wigner_frame,
    kd_frame,
    phase_point_operators,
    validate_frame,
)
from .representations import (
    Channel,
    OperationalSet,
    QuasiDistribution,
    depolarizing_channel,
    identity_channel,
    is_classical,
    kd_matrix,
    kd_negativity,
    kd_povm,
    kd_sequential,
    negativity_magnitude,
    omega,
    penalty,
    represent_channel,
    represent_effect,
    represent_state,
    standard_operational_set,
    unitary_channel,
)
from .simplex import PhaseOneResult, SimplexError, phase_one
from .optimize import (
    FrameSearchPoint,
    NoThresholdError,
    OptimizerConfig,
    bisect_threshold,
    decode_frame,
    minimize_omega,
    nelder_mead,
    params_from_unitary,
    restart_seed,
    unitary_from_params,
)
from .thresholds import (
    FRAME_FAMILIES,
    PolytopeCertificate,
    ThresholdResult,
    crit_threshold,
    gross_representation_values,
    kd_threshold,
    mub_frame_stabilizer_check,
    polytope_threshold,
    stabilizer_polytope_membership,
    wigner_threshold,
)
from .serialize import (
    distribution_from_dict,
    distribution_to_dict,
    dumps,
    frame_from_dict,
    frame_to_dict,
    jsonable,
    operator_from_dict,
    operator_to_dict,
    result_from_dict,
    result_to_dict,
    scan_csv,
    threshold_trace_csv,
    validation_report_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLERANCES",
    "FRAME_FAMILIES",
    "MAGIC_STATE_KINDS",
    "OVERLAP_FLOOR",
    "SUPPORTED_DIMENSIONS",
    "Channel",
    "DegenerateFrameError",
    "Dimension",
    "DimensionMismatchError",
    "ExactFrame",
    "FrameSearchPoint",
    "FrameValidationReport",
    "NoThresholdError",
    "OperationalSet",
    "Operator",
    "OptimizerConfig",
    "PhaseOneResult",
    "PolytopeCertificate",
    "QuasiDistribution",
    "SimplexError",
    "StabilizerStateSet",
    "ThresholdResult",
    "Tolerances",
    "UnsupportedDimensionError",
    "WeylIndex",
    "bisect_threshold",
    "canonical_mub_frame",
    "clifford_generators",
    "computational_basis",
    "crit_threshold",
    "decode_frame",
    "depolarize",
    "depolarizing_channel",
    "distribution_from_dict",
    "distribution_to_dict",
    "dumps",
    "fourier_basis",
    "fourier_gate",
    "frame_from_dict",
    "frame_from_unitaries",
    "frame_to_dict",
    "gross_representation_values",
    "gross_wigner_frame",
    "identity_channel",
    "is_classical",
    "jsonable",
    "kd_frame",
    "kd_matrix",
    "kd_negativity",
    "kd_povm",
    "kd_sequential",
    "kd_threshold",
    "magic_state",
    "maximally_mixed",
    "minimize_omega",
    "mub_frame_stabilizer_check",
    "negativity_magnitude",
    "nelder_mead",
    "omega",
    "operator_from_dict",
    "operator_to_dict",
    "params_from_unitary",
    "penalty",
    "phase_one",
    "phase_point_operators",
    "polytope_threshold",
    "quadratic_phase_gate",
    "random_state",
    "random_unitary",
    "represent_channel",
    "represent_effect",
    "represent_state",
    "restart_seed",
    "result_from_dict",
    "result_to_dict",
    "scan_csv",
    "stabilizer_polytope_membership",
    "stabilizer_states",
    "stabilizing_weyl_index",
    "standard_operational_set",
    "threshold_trace_csv",
    "unitary_channel",
    "unitary_from_params",
    "validate_frame",
    "validation_report_to_dict",
    "weyl_operator",
    "wigner_threshold",
    "__version__",
]
