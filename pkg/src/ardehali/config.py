"""Numerical tolerances and size limits used throughout the package."""

import os
from dataclasses import dataclass

MAX_QUBITS_ENV = "ARDEHALI_MAX_QUBITS"
DEFAULT_MAX_DENSE_QUBITS = 12
MAX_LHV_QUBITS = 12


@dataclass(frozen=True)
class Tolerances:
    unit_direction: float = 1e-9
    settings_direction: float = 1e-9
    state_norm: float = 1e-10
    state_file_norm: float = 1e-8
    hermitian: float = 1e-10
    expectation_imag: float = 1e-9
    eig_rel_change: float = 1e-12
    eig_residual: float = 1e-10
    eig_max_iter: int = 50_000
    anticommuting_precondition: float = 0.1
    representation_anticommutation: float = 1e-6
    cross_norm: float = 1e-6
    balance: float = 1e-6
    distribution_sum: float = 1e-12


DEFAULT_TOLERANCES = Tolerances()


def max_dense_qubits():
    """Largest qubit count for which dense 2^n x 2^n operators are built.

    Overridable through the ``ARDEHALI_MAX_QUBITS`` environment variable.
    """
    raw = os.environ.get(MAX_QUBITS_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_DENSE_QUBITS
    value = int(raw)
    if value < 1:
        raise ValueError(f"{MAX_QUBITS_ENV} must be a positive integer, got {raw!r}")
    return value
