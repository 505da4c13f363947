"""Dense linear algebra over n-qubit spaces.

Qubit 1 is the most significant bit of an amplitude index, so an operator
written ``A_1 A_2 ... A_n`` is ``kron(A_1, kron(A_2, ...))`` and the basis
vector ``|e_1 e_2 ... e_n>`` lives at index ``sum(e_j << (n - j))``.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import DEFAULT_TOLERANCES, max_dense_qubits
from .errors import (
    DimensionMismatchError,
    DimensionOverflowError,
    InvalidStateError,
    NoConvergenceError,
    NonHermitianResultError,
    NonUnitDirectionError,
)

IDENTITY = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


def pauli_vector(v):
    """Return ``v . sigma`` for an arbitrary real 3-vector (no normalization)."""
    x, y, z = (float(c) for c in v)
    return np.array([[z, x - 1j * y], [x + 1j * y, -z]], dtype=complex)


@dataclass(frozen=True, eq=False)
class SpinObservable:
    """A measurement direction on one qubit together with ``direction . sigma``.

    Instances built by :func:`spin_observable` have unit directions. The
    result of :func:`observable_cross` reuses this type with a direction of
    norm ``sqrt(1 - (a, b)^2)``.
    """

    direction: tuple

    @cached_property
    def vector(self):
        return np.array(self.direction, dtype=float)

    @cached_property
    def matrix(self):
        return pauli_vector(self.direction)

    def __neg__(self):
        return SpinObservable(tuple(-c for c in self.direction))

    def __repr__(self):
        x, y, z = self.direction
        return f"SpinObservable(({x:.6g}, {y:.6g}, {z:.6g}))"


def spin_observable(v, tol=DEFAULT_TOLERANCES.unit_direction):
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise NonUnitDirectionError(f"direction must have 3 components, got {v.shape[0]}")
    norm = np.linalg.norm(v)
    if not np.isfinite(norm) or abs(norm - 1.0) > tol:
        raise NonUnitDirectionError(f"direction norm {norm!r} deviates from 1 by more than {tol}")
    return SpinObservable(tuple(float(c) for c in v))


def observable_inner(a, b):
    """Dot product of the two directions, equal to ``trace(A B) / 2``."""
    return float(np.dot(a.vector, b.vector))


def observable_cross(a, b):
    """``(a x b) . sigma``; its direction is not unit unless ``a`` and ``b`` are orthogonal."""
    return SpinObservable(tuple(float(c) for c in np.cross(a.vector, b.vector)))


def num_qubits(dim):
    n = int(dim).bit_length() - 1
    if dim < 1 or 1 << n != dim:
        raise DimensionMismatchError(f"dimension {dim} is not a power of two")
    return n


def check_dense_size(n):
    cap = max_dense_qubits()
    if n > cap:
        raise DimensionOverflowError(
            f"{n} qubits exceeds the dense operator cap of {cap} (set ARDEHALI_MAX_QUBITS to change it)"
        )


def _as_matrix(op):
    if isinstance(op, SpinObservable):
        return op.matrix
    return np.asarray(op, dtype=complex)


def kron(*ops):
    """Tensor product, leftmost factor on the most significant qubits."""
    mats = [_as_matrix(op) for op in ops]
    n = 0
    for m in mats:
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
        n += num_qubits(m.shape[0])
    check_dense_size(n)
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def basis_state(bits):
    """Computational basis vector ``|bits>``; ``bits`` is a string or sequence of 0/1."""
    bits = [int(b) for b in bits]
    index = 0
    for b in bits:
        index = (index << 1) | b
    psi = np.zeros(1 << len(bits), dtype=complex)
    psi[index] = 1.0
    return psi


def validate_state(psi, tol=DEFAULT_TOLERANCES.state_norm):
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    n = num_qubits(psi.size)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise InvalidStateError(f"state norm {norm!r} deviates from 1 by more than {tol}")
    return psi, n


def normalize(psi):
    psi = np.asarray(psi, dtype=complex)
    return psi / np.linalg.norm(psi)


def apply_local(psi, op, site, n):
    """Apply a 2x2 matrix to qubit ``site`` (0-based, qubit 1 is site 0)."""
    tensor = np.asarray(psi, dtype=complex).reshape((2,) * n)
    tensor = np.tensordot(_as_matrix(op), tensor, axes=([1], [site]))
    return np.moveaxis(tensor, 0, site).reshape(-1)


def apply_product(psi, ops):
    """Apply ``ops[0] x ops[1] x ... x ops[n-1]`` without forming the product; ``None`` means identity."""
    n = len(ops)
    for site, op in enumerate(ops):
        if op is not None:
            psi = apply_local(psi, op, site, n)
    return psi


def fidelity(psi, phi):
    return float(abs(np.vdot(psi, phi)) ** 2)


def is_hermitian(H, tol=DEFAULT_TOLERANCES.hermitian):
    H = np.asarray(H)
    scale = max(1.0, float(np.max(np.abs(H))) if H.size else 0.0)
    return float(np.max(np.abs(H - H.conj().T))) <= tol * scale


def expectation(psi, H, tol=DEFAULT_TOLERANCES.expectation_imag):
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    H = np.asarray(H, dtype=complex)
    if H.shape != (psi.size, psi.size):
        raise DimensionMismatchError(f"state of length {psi.size} does not match operator {H.shape}")
    value = np.vdot(psi, H @ psi)
    if abs(value.imag) > tol * max(1.0, abs(value.real)):
        raise NonHermitianResultError(f"expectation has imaginary part {value.imag:.3e}")
    return float(value.real)


def row_sum_bound(H):
    """Cheap upper bound on the spectral norm (largest absolute row sum)."""
    return float(np.max(np.sum(np.abs(H), axis=1)))


def _lanczos_top(H, v, krylov_dim, max_matvecs, target):
    dim = H.shape[0]
    matvecs = 0
    best = None
    while True:
        k = min(krylov_dim, dim)
        Q = np.zeros((dim, k), dtype=complex)
        alpha = np.zeros(k)
        beta = np.zeros(k)
        Q[:, 0] = v
        m = k
        for j in range(k):
            w = H @ Q[:, j]
            matvecs += 1
            alpha[j] = np.vdot(Q[:, j], w).real
            # full reorthogonalization, twice for stability
            for _ in range(2):
                w -= Q[:, : j + 1] @ (Q[:, : j + 1].conj().T @ w)
            if j + 1 < k:
                beta[j] = np.linalg.norm(w)
                if beta[j] <= 1e-14 * max(1.0, abs(alpha[j])):
                    m = j + 1
                    break
                Q[:, j + 1] = w / beta[j]
        T = np.diag(alpha[:m]) + np.diag(beta[: m - 1], 1) + np.diag(beta[: m - 1], -1)
        theta, Y = np.linalg.eigh(T)
        x = Q[:, :m] @ Y[:, -1]
        x /= np.linalg.norm(x)
        Hx = H @ x
        matvecs += 1
        lam = np.vdot(x, Hx).real
        residual = float(np.linalg.norm(Hx - lam * x))
        best = (lam, x, residual, matvecs)
        if residual <= target:
            return best, True
        if matvecs >= max_matvecs:
            return best, False
        v = x


def _power_top(H, v, shift, max_iter, target, rel_change):
    # shift makes the algebraically largest eigenvalue dominant in magnitude
    lam_old = np.inf
    residual = np.inf
    lam = 0.0
    for it in range(1, max_iter + 1):
        w = H @ v
        lam = np.vdot(v, w).real
        residual = float(np.linalg.norm(w - lam * v))
        if residual <= target:
            return (lam, v, residual, it), True
        # a stalled Rayleigh quotient is accepted once the residual meets the 1e-8 |lam| floor
        if abs(lam - lam_old) <= rel_change * max(1.0, abs(lam)) and residual <= 1e-8 * abs(lam):
            return (lam, v, residual, it), True
        lam_old = lam
        v = w + shift * v
        v /= np.linalg.norm(v)
    return (lam, v, residual, max_iter), False


def max_eigenpair(
    H,
    method="lanczos",
    max_iter=DEFAULT_TOLERANCES.eig_max_iter,
    residual_tol=DEFAULT_TOLERANCES.eig_residual,
    rel_change=DEFAULT_TOLERANCES.eig_rel_change,
    krylov_dim=60,
    seed=0,
):
    """Algebraically largest eigenvalue of a Hermitian matrix and a unit eigenvector.

    ``method="lanczos"`` runs restarted Lanczos with full reorthogonalization;
    ``method="power"`` runs power iteration on ``H + c I`` with ``c`` the
    row-sum bound. Both stop once ``||H v - lam v|| <= residual_tol * c``.
    When the top eigenvalue is degenerate any unit vector of that eigenspace
    may be returned.
    """
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {H.shape}")
    dim = H.shape[0]
    shift = row_sum_bound(H)
    if not is_hermitian(H):
        raise NonHermitianResultError("max_eigenpair requires a Hermitian matrix")
    if shift == 0.0:
        v = np.zeros(dim, dtype=complex)
        v[0] = 1.0
        return 0.0, v
    if dim == 1:
        return float(H[0, 0].real), np.ones(1, dtype=complex)

    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    target = residual_tol * shift

    if method == "lanczos":
        (lam, x, residual, iters), ok = _lanczos_top(H, v, krylov_dim, max_iter, target)
    elif method == "power":
        (lam, x, residual, iters), ok = _power_top(H, v, shift, max_iter, target, rel_change)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not ok:
        raise NoConvergenceError(
            f"{method} did not converge after {iters} iterations (residual {residual:.3e})",
            residual=residual,
            iterations=iters,
        )
    return float(lam), x


def operator_norm(H, **kwargs):
    lam_max, _ = max_eigenpair(H, **kwargs)
    lam_min, _ = max_eigenpair(-np.asarray(H), **kwargs)
    return max(abs(lam_max), abs(lam_min))
