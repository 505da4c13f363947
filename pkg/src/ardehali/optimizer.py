"""See-saw search over measurement settings for a fixed state.

``<A_n>`` is linear in each single direction vector while the others are
held fixed, so every update ``a_j <- c / |c|`` is an exact maximization and
the value never decreases.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError
from .operators import MeasurementSettings, ardehali_operator, random_settings
from .qubit import PAULIS, apply_product, max_eigenpair, spin_observable, validate_state

ZERO_COEFFICIENT = 1e-14


@dataclass(frozen=True)
class OptimizationConfig:
    restarts: int = 20
    max_sweeps: int = 500
    value_tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be at least 1")
        if not self.value_tol > 0:
            raise ValueError("value_tol must be positive")


@dataclass(eq=False)
class OptimizationResult:
    best_value: float
    best_settings: MeasurementSettings
    sweeps_used: int
    converged: bool
    restart_values: list = field(default_factory=list)

    def to_json(self):
        return {
            "value": self.best_value,
            "settings": self.best_settings.to_json(),
            "sweeps_used": self.sweeps_used,
            "converged": self.converged,
            "restart_values": list(self.restart_values),
        }


def _site_operators(settings):
    ops = [a.matrix + 1j * b.matrix for a, b in settings.pairs[:-1]]
    a, b = settings.pairs[-1]
    ops.append((1 - 1j) * a.matrix - (1 + 1j) * b.matrix)
    return ops


def coefficient_vectors(psi, settings, site):
    """Real 3-vectors ``c``, ``c'`` with ``<A_n> = c . a_site + c' . a'_site``.

    ``site`` is 0-based. The components come from the expectation with the
    site's observable replaced by each Pauli matrix in turn.
    """
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    n = settings.n
    if psi.size != 1 << n:
        raise DimensionMismatchError(f"state of length {psi.size} does not match n={n}")
    if not 0 <= site < n:
        raise ValueError(f"site must lie in 0..{n - 1}, got {site}")
    ops = _site_operators(settings)
    ops[site] = None
    phi = apply_product(psi, ops).reshape(1 << site, 2, -1)
    chi = psi.reshape(1 << site, 2, -1)
    # env[b, a] = sum over the other qubits of phi_b conj(psi_a)
    env = np.einsum("ibk,iak->ba", phi, chi.conj())
    z = np.array([np.trace(P @ env) for P in PAULIS])
    if site < n - 1:
        return z.real, -z.imag
    return ((1 - 1j) * z).real, (-(1 + 1j) * z).real


def _value(c, c_prime, a, b):
    return float(c @ a + c_prime @ b)


def _unit_or_keep(c, previous):
    norm = np.linalg.norm(c)
    if norm <= ZERO_COEFFICIENT:
        return previous
    return c / norm


def see_saw_run(psi, settings, max_sweeps=500, value_tol=1e-10, history=None):
    """Sweep sites ``1..n`` from ``settings`` until a sweep gains less than ``value_tol``.

    Returns ``(value, settings, sweeps, converged)``. If ``history`` is a
    list, the value after every single-direction update is appended to it.
    """
    directions = settings.directions().copy()
    n = settings.n
    current = MeasurementSettings.from_directions(directions)
    value = None
    sweeps = 0
    converged = False
    for sweeps in range(1, max_sweeps + 1):
        start = value
        for site in range(n):
            c, c_prime = coefficient_vectors(psi, current, site)
            a = _unit_or_keep(c, directions[site, 0])
            if history is not None:
                history.append(_value(c, c_prime, directions[site, 0], directions[site, 1]))
                history.append(_value(c, c_prime, a, directions[site, 1]))
            b = _unit_or_keep(c_prime, directions[site, 1])
            directions[site] = (a, b)
            value = _value(c, c_prime, a, b)
            if history is not None:
                history.append(value)
            current = current.with_pair(site, spin_observable(a), spin_observable(b))
        if start is not None and value - start < value_tol:
            converged = True
            break
    return value, current, sweeps, converged


def see_saw(psi, cfg=None):
    """Best settings over seeded random restarts. Ties keep the lowest restart index."""
    cfg = cfg or OptimizationConfig()
    psi, n = validate_state(psi)
    if n < 2:
        raise ValueError("see-saw needs n >= 2")
    best = None
    values = []
    for child in np.random.SeedSequence(cfg.seed).spawn(cfg.restarts):
        rng = np.random.default_rng(child)
        start = random_settings(n, rng)
        value, settings, sweeps, converged = see_saw_run(psi, start, cfg.max_sweeps, cfg.value_tol)
        values.append(value)
        if best is None or value > best.best_value:
            best = OptimizationResult(value, settings, sweeps, converged)
    best.restart_values = values
    return best


def optimal_state(settings, **eig_kwargs):
    """Largest eigenvalue of the Ardehali operator and a state attaining it."""
    return max_eigenpair(ardehali_operator(settings), **eig_kwargs)
