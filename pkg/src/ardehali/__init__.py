"""Bell-Ardehali operators, their bounds, and certification of maximally violating states."""

from .characterization import (
    CertificationReport,
    LocalUnitaryFactorization,
    RepresentationBasis,
    build_local_unitaries,
    build_representation,
    certify_maximal_violation,
    check_anticommutation,
    extract_phases,
    ghz_form_check,
    pauli_triple_residual,
    reconstruct,
)
from .lhv import DeterministicStrategy, lhv_max, mixed_strategy_value, strategy_value
from .operators import (
    MeasurementSettings,
    ardehali_expectation,
    ardehali_operator,
    canonical_settings,
    chsh_operator,
    classical_bound,
    ghz_state,
    mermin_operator,
    quantum_bound,
    re_im,
    re_square_upper_bound,
    w_state,
)
from .optimizer import OptimizationConfig, OptimizationResult, coefficient_vectors, optimal_state, see_saw
from .qubit import (
    SpinObservable,
    expectation,
    kron,
    max_eigenpair,
    observable_cross,
    observable_inner,
    operator_norm,
    spin_observable,
)

__version__ = "0.1.0"
