"""Exhaustive deterministic local-hidden-variable evaluation in exact integers.

A deterministic strategy fixes outcomes ``(a_j, a'_j)`` in ``{-1, +1}`` for
every qubit. Its value is ``R (a_n - a'_n) + M (a_n + a'_n)`` where
``R + i M = prod_{j<n} (a_j + i a'_j)``.

Strategies are indexed by ``2n`` bits, qubit 1 most significant; within a
qubit the high bit encodes ``a_j`` and the low bit ``a'_j``, with bit 0
meaning ``+1`` and bit 1 meaning ``-1``.
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, MAX_LHV_QUBITS
from .errors import EnumerationTooLargeError, InvalidDistributionError


@dataclass(frozen=True)
class DeterministicStrategy:
    values: tuple

    def __post_init__(self):
        for pair in self.values:
            if len(pair) != 2 or any(v not in (-1, 1) for v in pair):
                raise ValueError(f"strategy entries must be +1 or -1, got {pair!r}")

    @property
    def n(self):
        return len(self.values)

    @classmethod
    def from_index(cls, index, n):
        values = []
        for j in range(n):
            shift = 2 * (n - 1 - j)
            bits = (index >> shift) & 0b11
            values.append((1 - 2 * (bits >> 1), 1 - 2 * (bits & 1)))
        return cls(tuple(values))

    def index(self):
        out = 0
        for a, b in self.values:
            out = (out << 2) | (((1 - a) // 2) << 1) | ((1 - b) // 2)
        return out


def strategy_value(strategy):
    """Exact integer value of one deterministic strategy."""
    values = strategy.values if isinstance(strategy, DeterministicStrategy) else tuple(strategy)
    re, im = 1, 0
    for a, b in values[:-1]:
        re, im = re * a - im * b, re * b + im * a
    a, b = values[-1]
    return re * (a - b) + im * (a + b)


def _check_size(n):
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if n > MAX_LHV_QUBITS:
        raise EnumerationTooLargeError(
            f"n={n} exceeds the enumeration cap of {MAX_LHV_QUBITS} qubits (4^n strategies)"
        )


_SITE_PAIRS = np.array([[1, 1], [1, -1], [-1, 1], [-1, -1]], dtype=np.int64)


def _head_products(n, fix_first_site):
    """``R + i M`` for every outcome assignment of qubits ``1..n-1``."""
    first = _SITE_PAIRS[:2] if fix_first_site else _SITE_PAIRS
    re = first[:, 0].copy()
    im = first[:, 1].copy()
    a, b = _SITE_PAIRS[:, 0], _SITE_PAIRS[:, 1]
    for _ in range(n - 2):
        re, im = (
            (re[:, None] * a - im[:, None] * b).reshape(-1),
            (re[:, None] * b + im[:, None] * a).reshape(-1),
        )
    return re, im


def _last_site(re, im):
    a, b = _SITE_PAIRS[:, 0], _SITE_PAIRS[:, 1]
    return re[:, None] * (a - b) + im[:, None] * (a + b)


def all_strategy_values(n, fix_first_site=False):
    """Values of all ``4^n`` strategies in index order, as an int64 array.

    With ``fix_first_site`` only strategies with ``a_1 = +1`` are produced;
    negating both outcomes of a qubit negates the value, so ``max |value|``
    is unchanged.
    """
    _check_size(n)
    re, im = _head_products(n, fix_first_site)
    return _last_site(re, im).reshape(-1)


def lhv_max(n, fix_first_site=True, chunk=1 << 20):
    """Largest ``|value|`` over every deterministic strategy, as an exact integer."""
    _check_size(n)
    re, im = _head_products(n, fix_first_site)
    best = 0
    for start in range(0, re.size, chunk):
        block = _last_site(re[start : start + chunk], im[start : start + chunk])
        best = max(best, int(np.max(np.abs(block))))
    return best


def mixed_strategy_value(weights, n=None):
    """Expected value of a probability distribution over strategies.

    ``weights`` is either an array of length ``4^n`` in strategy-index order
    or a mapping from :class:`DeterministicStrategy` to probability.
    """
    tol = DEFAULT_TOLERANCES.distribution_sum
    if isinstance(weights, dict):
        probs = np.array(list(weights.values()), dtype=float)
        _check_distribution(probs, tol)
        return float(sum(p * strategy_value(s) for s, p in weights.items()))
    probs = np.asarray(weights, dtype=float).reshape(-1)
    if n is None:
        n = (probs.size.bit_length() - 1) // 2
    if probs.size != 4**n:
        raise InvalidDistributionError(f"expected {4 ** n} weights for n={n}, got {probs.size}")
    _check_distribution(probs, tol)
    return float(probs @ all_strategy_values(n))


def _check_distribution(probs, tol):
    if np.any(probs < 0) or not np.all(np.isfinite(probs)):
        raise InvalidDistributionError("weights must be finite and nonnegative")
    if abs(probs.sum() - 1.0) > tol:
        raise InvalidDistributionError(f"weights sum to {probs.sum()!r}, not 1")
