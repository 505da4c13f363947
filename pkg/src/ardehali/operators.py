"""Bell-Ardehali, Bell-CHSH and Bell-Mermin operators, reference states and bounds."""

from dataclasses import dataclass
from itertools import combinations
from math import sqrt

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import DimensionMismatchError, OutOfRangeError
from .qubit import (
    IDENTITY,
    PAULIS,
    apply_product,
    check_dense_size,
    kron,
    observable_cross,
    observable_inner,
    spin_observable,
)

SQRT_HALF = sqrt(0.5)

X_DIRECTION = (1.0, 0.0, 0.0)
Y_DIRECTION = (0.0, 1.0, 0.0)
# 135 and 45 degrees from the x axis, in the x-y plane
ROTATED_A_DIRECTION = (-SQRT_HALF, SQRT_HALF, 0.0)
ROTATED_B_DIRECTION = (SQRT_HALF, SQRT_HALF, 0.0)


@dataclass(frozen=True)
class MeasurementSettings:
    """One pair of spin observables ``(A_j, A'_j)`` per qubit."""

    pairs: tuple

    def __post_init__(self):
        if len(self.pairs) < 1:
            raise ValueError("settings need at least one qubit")

    @property
    def n(self):
        return len(self.pairs)

    @classmethod
    def from_directions(cls, directions, tol=DEFAULT_TOLERANCES.settings_direction):
        directions = np.asarray(directions, dtype=float)
        if directions.ndim != 3 or directions.shape[1:] != (2, 3):
            raise DimensionMismatchError(f"expected directions of shape (n, 2, 3), got {directions.shape}")
        return cls(tuple((spin_observable(a, tol), spin_observable(b, tol)) for a, b in directions))

    def directions(self):
        return np.array([[a.vector, b.vector] for a, b in self.pairs])

    def to_json(self):
        return {"n": self.n, "pairs": self.directions().tolist()}

    @classmethod
    def from_json(cls, data):
        n = int(data["n"])
        pairs = data["pairs"]
        if len(pairs) != n:
            raise DimensionMismatchError(f"settings declare n={n} but list {len(pairs)} pairs")
        return cls.from_directions(pairs)

    def with_pair(self, site, a, b):
        pairs = list(self.pairs)
        pairs[site] = (a, b)
        return MeasurementSettings(tuple(pairs))

    def rotated(self, unitaries):
        """Settings ``U_j A_j U_j^dagger``, ``U_j A'_j U_j^dagger``."""
        if len(unitaries) != self.n:
            raise DimensionMismatchError("one unitary per qubit is required")
        pairs = []
        for U, (a, b) in zip(unitaries, self.pairs):
            U = np.asarray(U, dtype=complex)
            pairs.append(tuple(_direction_of(U @ obs.matrix @ U.conj().T) for obs in (a, b)))
        return MeasurementSettings(tuple(pairs))

    def flipped_last(self):
        """Negate both observables on the last qubit, which negates the Ardehali operator."""
        a, b = self.pairs[-1]
        return self.with_pair(self.n - 1, -a, -b)


def _direction_of(M):
    v = np.array([0.5 * np.trace(P @ M).real for P in PAULIS])
    return spin_observable(v / np.linalg.norm(v))


def canonical_settings(n):
    """Settings of the original inequality: ``(sigma_x, sigma_y)`` on qubits
    ``1..n-1`` and the 135/45 degree pair on qubit ``n``."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    x, y = spin_observable(X_DIRECTION), spin_observable(Y_DIRECTION)
    last = (spin_observable(ROTATED_A_DIRECTION), spin_observable(ROTATED_B_DIRECTION))
    return MeasurementSettings(tuple([(x, y)] * (n - 1) + [last]))


def random_direction(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def random_settings(n, rng):
    return MeasurementSettings.from_directions(
        [[random_direction(rng), random_direction(rng)] for _ in range(n)]
    )


@dataclass(frozen=True, eq=False)
class OperatorPair:
    re: np.ndarray
    im: np.ndarray
    k: int


def re_im(settings, k=None):
    """Real and imaginary parts of ``(A_1 + i A'_1) x ... x (A_k + i A'_k)``."""
    if k is None:
        k = settings.n
    if not 1 <= k <= settings.n:
        raise ValueError(f"k must lie in 1..{settings.n}, got {k}")
    check_dense_size(k)
    a, b = settings.pairs[0]
    re, im = a.matrix, b.matrix
    for a, b in settings.pairs[1:k]:
        re, im = np.kron(re, a.matrix) - np.kron(im, b.matrix), np.kron(im, a.matrix) + np.kron(re, b.matrix)
    return OperatorPair(re, im, k)


def ardehali_operator(settings):
    n = settings.n
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    check_dense_size(n)
    head = re_im(settings, n - 1)
    a, b = settings.pairs[-1]
    return np.kron(head.re, a.matrix - b.matrix) + np.kron(head.im, a.matrix + b.matrix)


def chsh_operator(a, a_prime, b, b_prime):
    return kron(a, b.matrix + b_prime.matrix) + kron(a_prime, b.matrix - b_prime.matrix)


def mermin_operator(settings):
    if settings.n < 2:
        raise ValueError(f"need n >= 2, got {settings.n}")
    return re_im(settings).im


def ardehali_expectation(psi, settings):
    """``<psi|A_n|psi>`` evaluated on the state tensor, without a dense operator.

    Uses ``<A_n> = Re <psi| C_1 x ... x C_{n-1} x D_n |psi>`` with
    ``C_j = A_j + i A'_j`` and ``D_n = (1 - i) A_n - (1 + i) A'_n``.
    """
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != 1 << settings.n:
        raise DimensionMismatchError(f"state of length {psi.size} does not match n={settings.n}")
    ops = [a.matrix + 1j * b.matrix for a, b in settings.pairs[:-1]]
    a, b = settings.pairs[-1]
    ops.append((1 - 1j) * a.matrix - (1 + 1j) * b.matrix)
    return float(np.vdot(psi, apply_product(psi, ops)).real)


# Squared-operator identities. Each builds the square from the cross
# products A''_j = A_j x A'_j rather than from Re/Im, so they serve as
# independent constructions.


def _subset_product_sum(crosses, sizes, n_total=None):
    """Sum over index subsets with size in ``sizes`` of the tensor product of ``crosses`` on the subset."""
    n = len(crosses)
    n_total = n if n_total is None else n_total
    out = np.zeros((1 << n_total, 1 << n_total), dtype=complex)
    for size in sizes:
        for subset in combinations(range(n), size):
            factors = [IDENTITY] * n_total
            for j in subset:
                factors[j] = crosses[j]
            out += kron(*factors)
    return out


def _crosses(settings, count):
    return [observable_cross(a, b).matrix for a, b in settings.pairs[:count]]


def re_square_expansion(settings):
    """``Re_n^2`` as ``2^{n-1}`` times the sum over even subsets of ``A''`` products,
    plus ``2^{n-1} (-1)^{n/2} prod_j (A_j, A'_j)`` for even ``n``."""
    n = settings.n
    check_dense_size(n)
    even = _subset_product_sum(_crosses(settings, n), range(0, n + 1, 2))
    out = 2 ** (n - 1) * even
    if n % 2 == 0:
        x = np.prod([observable_inner(a, b) for a, b in settings.pairs])
        out += 2 ** (n - 1) * (-1) ** (n // 2) * x * np.eye(1 << n)
    return out


def ardehali_square_expansion(settings):
    """``A_n^2`` from odd-subset products of ``A''_1..A''_{n-1}`` against ``A''_n``:

    ``2 (1 - x_n) Re_{n-1}^2 + 2 (1 + x_n) Im_{n-1}^2 - 2^n (sum_odd A''...) A''_n``

    with ``x_n = (A_n, A'_n)``. For anticommuting last-site observables the
    first two terms collapse to ``2 (Re_{n-1}^2 + Im_{n-1}^2)``.
    """
    n = settings.n
    if n < 3:
        raise ValueError("the odd-subset expansion needs n >= 3")
    check_dense_size(n)
    head = re_im(settings, n - 1)
    a, b = settings.pairs[-1]
    x = observable_inner(a, b)
    odd = _subset_product_sum(_crosses(settings, n - 1), range(1, n, 2))
    last_cross = observable_cross(a, b).matrix
    eye = np.eye(2)
    return (
        np.kron(2 * (1 - x) * (head.re @ head.re) + 2 * (1 + x) * (head.im @ head.im), eye)
        - 2**n * np.kron(odd, last_cross)
    )


def ardehali_square_commutator_form(settings):
    """``2 (1 - x_n) Re^2 + 2 (1 + x_n) Im^2 - [Im, Re] [A_n, A'_n]`` over the first ``n-1`` qubits."""
    n = settings.n
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    check_dense_size(n)
    head = re_im(settings, n - 1)
    a, b = settings.pairs[-1]
    x = observable_inner(a, b)
    A, B = a.matrix, b.matrix
    comm_head = head.im @ head.re - head.re @ head.im
    return (
        np.kron(2 * (1 - x) * (head.re @ head.re) + 2 * (1 + x) * (head.im @ head.im), np.eye(2))
        - np.kron(comm_head, A @ B - B @ A)
    )


# Bounds


def quantum_bound(n):
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return 2.0 ** (n - 0.5)


def classical_bound(n):
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return 2.0 ** (n / 2) if n % 2 == 0 else 2.0 ** ((n + 1) / 2)


def quantum_bound_exponent(n):
    """Numerator ``k`` of the exponent ``k/2`` in ``2^{n-1/2}``."""
    return 2 * n - 1


def classical_bound_exponent(n):
    return n if n % 2 == 0 else n + 1


def violation_factor_exponent(n):
    return quantum_bound_exponent(n) - classical_bound_exponent(n)


def half_power_label(k):
    return f"2^{{{k}/2}}"


@dataclass(frozen=True)
class BoundsReport:
    n: int
    classical_bound: float
    quantum_bound: float
    violation_factor: float

    @property
    def labels(self):
        return {
            "classical_bound": half_power_label(classical_bound_exponent(self.n)),
            "quantum_bound": half_power_label(quantum_bound_exponent(self.n)),
            "violation_factor": half_power_label(violation_factor_exponent(self.n)),
        }


def bounds_report(n):
    c, q = classical_bound(n), quantum_bound(n)
    return BoundsReport(n, c, q, q / c)


# States


def ghz_state(n):
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = SQRT_HALF
    psi[-1] = -SQRT_HALF
    return psi


def w_state(n):
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    psi = np.zeros(1 << n, dtype=complex)
    psi[[1 << j for j in range(n)]] = 1 / sqrt(n)
    return psi


def re_square_upper_bound(x):
    """Upper bound on ``||Re_n^2||`` as a function of ``x_j = (A_j, A'_j)``.

    ``x`` has shape ``(..., n)``; the last axis indexes qubits, so whole grids
    evaluate at once. For even ``n`` the value is
    ``2^{n-1} (1 + (-1)^{n/2} prod x + sum_{even |S| >= 2} prod_S sqrt(1 - x^2))``;
    for odd ``n`` the product term is absent and the empty subset contributes 1.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    if n < 1:
        raise ValueError("need at least one coordinate")
    if np.any(np.abs(x) > 1.0) or not np.all(np.isfinite(x)):
        raise OutOfRangeError("every coordinate must lie in [-1, 1]")
    s = np.sqrt(1.0 - x**2)
    # elementary symmetric sums of s over even subset sizes, empty subset included
    even = 0.5 * (np.prod(1 + s, axis=-1) + np.prod(1 - s, axis=-1))
    if n % 2 == 0:
        return 2.0 ** (n - 1) * ((-1) ** (n // 2) * np.prod(x, axis=-1) + even)
    return 2.0 ** (n - 1) * even

