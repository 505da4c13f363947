from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ardehali.errors import EnumerationTooLargeError, InvalidDistributionError
from ardehali.lhv import DeterministicStrategy, all_strategy_values, lhv_max, mixed_strategy_value, strategy_value
from ardehali.operators import classical_bound
from oracles import expanded_strategy_value


def strategies(n):
    return st.lists(st.tuples(st.sampled_from([-1, 1]), st.sampled_from([-1, 1])), min_size=n, max_size=n)


class TestStrategyValue:
    def test_all_plus_two_qubits(self):
        assert strategy_value(DeterministicStrategy(((1, 1), (1, 1)))) == 2

    def test_all_plus_three_qubits(self):
        assert strategy_value(DeterministicStrategy(((1, 1),) * 3)) == 4

    def test_mixed_signs_two_qubits(self):
        s = DeterministicStrategy(((1, 1), (-1, 1)))
        assert strategy_value(s) == expanded_strategy_value(s.values) == -2

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_every_strategy_matches_term_expansion(self, n):
        values = all_strategy_values(n)
        for index, assignment in enumerate(product([(1, 1), (1, -1), (-1, 1), (-1, -1)], repeat=n)):
            s = DeterministicStrategy(assignment)
            assert s.index() == index
            assert DeterministicStrategy.from_index(index, n) == s
            assert values[index] == strategy_value(s) == expanded_strategy_value(assignment)

    @given(st.integers(2, 9).flatmap(strategies))
    def test_even_integer(self, values):
        v = strategy_value(DeterministicStrategy(tuple(values)))
        assert isinstance(v, int) and v % 2 == 0

    @given(st.integers(2, 8).flatmap(strategies), st.data())
    def test_site_negation_flips_sign(self, values, data):
        site = data.draw(st.integers(0, len(values) - 1))
        flipped = list(values)
        a, b = flipped[site]
        flipped[site] = (-a, -b)
        assert strategy_value(DeterministicStrategy(tuple(flipped))) == -strategy_value(DeterministicStrategy(tuple(values)))

    def test_rejects_non_unit_entries(self):
        with pytest.raises(ValueError):
            DeterministicStrategy(((1, 0), (1, 1)))


class TestLhvMax:
    @pytest.mark.parametrize("n, expected", [(2, 2), (3, 4), (4, 4)])
    def test_examples(self, n, expected):
        assert lhv_max(n) == expected

    @pytest.mark.parametrize("n", range(2, 11))
    def test_equals_classical_bound(self, n):
        assert lhv_max(n) == classical_bound(n)

    @pytest.mark.parametrize("n", range(2, 10))
    def test_halving_changes_nothing(self, n):
        assert lhv_max(n, fix_first_site=True) == lhv_max(n, fix_first_site=False)
        assert int(np.max(np.abs(all_strategy_values(n)))) == lhv_max(n)

    def test_chunking_changes_nothing(self):
        assert lhv_max(8, chunk=1000) == lhv_max(8)

    def test_cap(self):
        with pytest.raises(EnumerationTooLargeError):
            lhv_max(13)


class TestMixed:
    def test_point_mass(self):
        assert mixed_strategy_value({DeterministicStrategy(((1, 1),) * 3): 1.0}) == 4

    def test_uniform(self):
        assert mixed_strategy_value(np.full(16, 1 / 16)) == pytest.approx(0, abs=1e-15)

    def test_random_distributions_never_beat_deterministic(self, rng):
        bound = lhv_max(3)
        for _ in range(1000):
            w = rng.dirichlet(np.full(64, rng.uniform(0.05, 2)))
            assert abs(mixed_strategy_value(w, 3)) <= bound + 1e-12

    def test_invalid(self):
        with pytest.raises(InvalidDistributionError):
            mixed_strategy_value(np.full(16, 0.1))
        with pytest.raises(InvalidDistributionError):
            mixed_strategy_value(np.r_[-0.5, 1.5, np.zeros(14)])
        with pytest.raises(InvalidDistributionError):
            mixed_strategy_value(np.full(10, 0.1))
