"""Quantum observables as normal operators.

Spectral decomposition of normal matrices, Born-rule projective
measurement with seeded sampling, expectation dynamics, and a
complex-outcome CHSH suite with local-hidden-variable and Tsirelson
bound checks.
"""

from .chsh import (
    AuditResult,
    ChshScenario,
    JointDistribution,
    LhvStrategy,
    OutcomeAlphabet,
    TSIRELSON_BOUND,
    TsirelsonResult,
    audit_tsirelson,
    chsh_value,
    correlation_from_joint,
    correlation_matrix,
    enumerate_strategies,
    hermitian_z_squared_residual,
    joint_distribution,
    lhv_max,
    lhv_value,
    optimize_settings,
    phase_relabel,
    quantum_correlation,
    random_scenario,
    tsirelson_check,
    z_operator,
    zdagz_expansion_residual,
)
from .dynamics import (
    Hamiltonian,
    ehrenfest_check,
    evolve,
    heisenberg_comparison,
    heisenberg_rhs,
)
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    DocumentError,
    DuplicateLabels,
    InternalInvariantViolation,
    NormalObsError,
    NotCommuting,
    NotHermitian,
    NotHermitianUnitary,
    NotNormal,
    NotNormalized,
    NotUnimodular,
    ZeroProbabilityBranch,
)
from .linalg import (
    adjoint,
    commutator,
    frobenius_norm,
    hermitian_eig,
    is_hermitian,
    is_unitary,
    matmul,
    operator_norm,
)
from .measurement import (
    MeasurementOutcome,
    MeasurementRecord,
    SpectralDistribution,
    StateVector,
    collapse,
    sample,
    spectral_distribution,
    stationarity_check,
)
from .observables import (
    Observable,
    check_normal,
    commutator_of_parts_norm,
    expectation,
    from_commuting_pair,
    hermitian_parts,
    normality_residual,
    relabel,
    scale_phase,
    spectral_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "AuditResult",
    "ChshScenario",
    "ConvergenceFailure",
    "DimensionMismatch",
    "DocumentError",
    "DuplicateLabels",
    "Hamiltonian",
    "InternalInvariantViolation",
    "JointDistribution",
    "LhvStrategy",
    "MeasurementOutcome",
    "MeasurementRecord",
    "NormalObsError",
    "NotCommuting",
    "NotHermitian",
    "NotHermitianUnitary",
    "NotNormal",
    "NotNormalized",
    "NotUnimodular",
    "Observable",
    "OutcomeAlphabet",
    "SpectralDistribution",
    "StateVector",
    "TSIRELSON_BOUND",
    "TsirelsonResult",
    "ZeroProbabilityBranch",
    "adjoint",
    "audit_tsirelson",
    "check_normal",
    "chsh_value",
    "collapse",
    "commutator",
    "commutator_of_parts_norm",
    "correlation_from_joint",
    "correlation_matrix",
    "ehrenfest_check",
    "enumerate_strategies",
    "evolve",
    "expectation",
    "frobenius_norm",
    "from_commuting_pair",
    "hermitian_eig",
    "hermitian_parts",
    "hermitian_z_squared_residual",
    "heisenberg_comparison",
    "heisenberg_rhs",
    "is_hermitian",
    "is_unitary",
    "joint_distribution",
    "lhv_max",
    "lhv_value",
    "matmul",
    "normality_residual",
    "operator_norm",
    "optimize_settings",
    "phase_relabel",
    "quantum_correlation",
    "random_scenario",
    "relabel",
    "sample",
    "scale_phase",
    "spectral_decompose",
    "spectral_distribution",
    "stationarity_check",
    "tsirelson_check",
    "z_operator",
    "zdagz_expansion_residual",
]
