"""Certification of maximally violating states.

A state reaching ``<A_n> = 2^{n-1/2}`` forces every site to use
anticommuting observables. In the eigenbasis of ``A''_j = A_j x A'_j`` the
state then has only two nonzero amplitudes, and the local unitaries that
map the GHZ state onto it can be read off directly.

Orientation convention: qubits ``1..n-1`` use the eigenbasis of ``A''_j``
(``|0>_j`` has eigenvalue +1), while qubit ``n`` uses the eigenbasis of
``-A''_n``. With that orientation the maximal eigenvector of the Ardehali
operator is ``a |0...0> + b |1...1>``; in the unflipped ``A''`` basis it
would instead sit on ``|0...0 1>`` and ``|1...1 0>``.
"""

from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import (
    DegenerateCrossError,
    DimensionMismatchError,
    NotAnticommutingError,
    NotBalancedError,
)
from .operators import ardehali_expectation, canonical_settings, ghz_state, quantum_bound
from .qubit import (
    apply_product,
    fidelity,
    observable_cross,
    observable_inner,
    pauli_vector,
    validate_state,
)

TWO_PI = 2 * np.pi

CERTIFIED = "CERTIFIED"
NOT_MAXIMAL = "NOT_MAXIMAL"
CONDITIONS_VIOLATED = "CONDITIONS_VIOLATED"


@dataclass(frozen=True, eq=False)
class RepresentationBasis:
    """Per-qubit basis ``(|0>_j, |1>_j)`` stored as the columns of ``vectors[j]``."""

    vectors: np.ndarray
    alphas: np.ndarray
    orientation: np.ndarray

    @property
    def n(self):
        return len(self.alphas)


@dataclass(frozen=True, eq=False)
class LocalUnitaryFactorization:
    unitaries: np.ndarray
    phi: float
    theta: float

    @property
    def n(self):
        return len(self.unitaries)

    def unitarity_residual(self):
        eye = np.eye(2)
        return max(float(np.max(np.abs(U.conj().T @ U - eye))) for U in self.unitaries)


@dataclass(eq=False)
class CertificationReport:
    verdict: str
    achieved_value: float
    quantum_bound: float
    anticommutation_residuals: list
    ghz_form_leakage: float | None = None
    factorization: LocalUnitaryFactorization | None = None
    fidelity: float | None = None
    settings_flipped: bool = False
    notes: list = field(default_factory=list)

    def to_json(self):
        f = self.factorization
        return {
            "verdict": self.verdict,
            "achieved": self.achieved_value,
            "bound": self.quantum_bound,
            "anticommutation": [float(x) for x in self.anticommutation_residuals],
            "leakage": self.ghz_form_leakage,
            "phases": None if f is None else [f.phi, f.theta],
            "unitaries": None
            if f is None
            else [[[[float(z.real), float(z.imag)] for z in row] for row in U] for U in f.unitaries],
            "settings_flipped": self.settings_flipped,
            "fidelity": self.fidelity,
        }


def _wrap(angle):
    angle = float(angle) % TWO_PI
    return 0.0 if angle >= TWO_PI else angle


def check_anticommutation(settings):
    return np.array([observable_inner(a, b) for a, b in settings.pairs])


def pauli_triple_residual(a, b, tol=DEFAULT_TOLERANCES.anticommuting_precondition):
    """Largest deviation of ``(A, A', A x A')`` from the Pauli multiplication table."""
    x = observable_inner(a, b)
    if abs(x) > tol:
        raise NotAnticommutingError(f"(A, A') = {x:.3g} exceeds {tol}")
    A, B, C = a.matrix, b.matrix, observable_cross(a, b).matrix
    eye = np.eye(2)
    checks = [
        A @ B - 1j * C,
        B @ A + 1j * C,
        B @ C - 1j * A,
        C @ B + 1j * A,
        C @ A - 1j * B,
        A @ C + 1j * B,
        A @ A - eye,
        B @ B - eye,
        C @ C - eye,
    ]
    return max(float(np.linalg.norm(m, 2)) for m in checks)


def _gauge_fix(v):
    # first component of (numerically) largest modulus made real and positive
    mags = np.abs(v)
    k = int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])
    return v * (np.conj(v[k]) / mags[k])


def build_representation(settings, tol=DEFAULT_TOLERANCES.representation_anticommutation):
    n = settings.n
    vectors = np.zeros((n, 2, 2), dtype=complex)
    alphas = np.zeros(n)
    orientation = np.ones(n, dtype=int)
    orientation[-1] = -1
    # |A x A'| = sqrt(1 - x^2), so the norm floor has to follow the anticommutation tolerance
    cross_floor = 1 - max(DEFAULT_TOLERANCES.cross_norm, tol * tol)
    for j, (a, b) in enumerate(settings.pairs):
        x = observable_inner(a, b)
        cross = observable_cross(a, b).vector
        norm = float(np.linalg.norm(cross))
        if norm < cross_floor:
            raise DegenerateCrossError(f"qubit {j + 1}: |A x A'| = {norm:.9f} < 1")
        if abs(x) > tol:
            raise NotAnticommutingError(f"qubit {j + 1}: (A, A') = {x:.3e} exceeds {tol:.3e}")
        M = orientation[j] * pauli_vector(cross / norm)
        _, evecs = np.linalg.eigh(M)
        up = _gauge_fix(evecs[:, 1])
        down = _gauge_fix(evecs[:, 0])
        vectors[j] = np.column_stack([up, down])
        alphas[j] = _wrap(-np.angle(np.vdot(down, a.matrix @ up)))
    return RepresentationBasis(vectors, alphas, orientation)


def representation_residual(settings, basis):
    """Largest deviation from the defining eigen relations of the basis.

    Checks ``s_j A''_j |0> = |0>``, ``s_j A''_j |1> = -|1>``,
    ``A_j |0> = e^{-i alpha_j} |1>`` and ``A'_j |0> = i s_j e^{-i alpha_j} |1>``
    where ``s_j`` is the orientation sign.
    """
    worst = 0.0
    for j, (a, b) in enumerate(settings.pairs):
        zero, one = basis.vectors[j][:, 0], basis.vectors[j][:, 1]
        s = basis.orientation[j]
        C = s * observable_cross(a, b).matrix
        phase = np.exp(-1j * basis.alphas[j])
        for r in (
            C @ zero - zero,
            C @ one + one,
            a.matrix @ zero - phase * one,
            a.matrix @ one - np.conj(phase) * zero,
            b.matrix @ zero - 1j * s * phase * one,
        ):
            worst = max(worst, float(np.linalg.norm(r)))
    return worst


def ghz_form_check(psi, basis):
    """Amplitudes of ``|0...0>`` and ``|1...1>`` in the product basis, and the weight elsewhere."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != 1 << basis.n:
        raise DimensionMismatchError(f"state of length {psi.size} does not match n={basis.n}")
    coeffs = apply_product(psi, [V.conj().T for V in basis.vectors])
    leakage = float(np.sum(np.abs(coeffs[1:-1]) ** 2))
    return complex(coeffs[0]), complex(coeffs[-1]), leakage


def extract_phases(a, b, tol=DEFAULT_TOLERANCES.balance):
    half = sqrt(0.5)
    if abs(abs(a) - half) > tol or abs(abs(b) - half) > tol:
        raise NotBalancedError(f"|a| = {abs(a):.9f}, |b| = {abs(b):.9f}; both must equal 1/sqrt(2)")
    phi = _wrap(np.angle(a / half))
    theta = _wrap(np.angle(-b / half))
    return phi, theta


def build_local_unitaries(basis, phi, theta):
    unitaries = basis.vectors.copy()
    unitaries[0] = unitaries[0] @ np.diag([np.exp(1j * phi), 1.0])
    unitaries[1] = unitaries[1] @ np.diag([1.0, np.exp(1j * theta)])
    return LocalUnitaryFactorization(unitaries, float(phi), float(theta))


def reconstruct(factorization, n=None):
    if n is None:
        n = factorization.n
    if n != factorization.n:
        raise DimensionMismatchError(f"factorization has {factorization.n} unitaries, expected {n}")
    return apply_product(ghz_state(n), list(factorization.unitaries))


def certify_maximal_violation(psi, settings, tol=1e-9):
    """Decide whether ``psi`` attains the quantum bound at ``settings`` and, if so,
    return the local unitaries that produce it from the GHZ state.

    Thresholds: value within ``tol`` (relative), anticommutation within
    ``sqrt(tol)``, leakage within ``tol``, fidelity within ``100 tol``.
    A value near ``-2^{n-1/2}`` is handled by negating the last qubit's pair.
    """
    psi, n = validate_state(psi)
    if n != settings.n:
        raise DimensionMismatchError(f"state has {n} qubits but settings have {settings.n}")
    if n < 2:
        raise ValueError("certification needs n >= 2")
    bound = quantum_bound(n)
    value = ardehali_expectation(psi, settings)
    flipped = False
    if -value >= (1 - tol) * bound:
        settings = settings.flipped_last()
        value = -value
        flipped = True
    residuals = check_anticommutation(settings)
    report = CertificationReport(
        verdict=NOT_MAXIMAL,
        achieved_value=value,
        quantum_bound=bound,
        anticommutation_residuals=residuals.tolist(),
        settings_flipped=flipped,
    )
    if value < (1 - tol) * bound:
        return report
    report.verdict = CONDITIONS_VIOLATED
    limit = sqrt(tol)
    if np.any(np.abs(residuals) > limit):
        report.notes.append(f"anticommutation residual above {limit:.3e}")
        return report
    basis = build_representation(settings, tol=limit)
    a, b, leakage = ghz_form_check(psi, basis)
    report.ghz_form_leakage = leakage
    if leakage > tol:
        report.notes.append(f"GHZ-form leakage {leakage:.3e} above {tol:.3e}")
        return report
    try:
        phi, theta = extract_phases(a, b)
    except NotBalancedError as exc:
        report.notes.append(str(exc))
        return report
    factorization = build_local_unitaries(basis, phi, theta)
    fid = fidelity(reconstruct(factorization, n), psi)
    report.fidelity = fid
    if fid >= 1 - 100 * tol:
        report.verdict = CERTIFIED
        report.factorization = factorization
    else:
        report.notes.append(f"reconstruction fidelity {fid:.12f} too low")
    return report


def random_unitary(rng):
    """Haar-random 2x2 unitary."""
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_local_unitary_ghz(n, rng):
    """A GHZ state rotated by random local unitaries, with the matching rotated canonical settings."""
    unitaries = np.array([random_unitary(rng) for _ in range(n)])
    psi = apply_product(ghz_state(n), list(unitaries))
    return psi, canonical_settings(n).rotated(unitaries), unitaries

