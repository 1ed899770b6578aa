from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ciprng import BitState, ParameterError, ci_run, ci_step, negation, pack_bits
from ciprng.core import negation_run


def one_based(*cells):
    """1-based cell labels as printed in the worked example -> 0-based indices."""
    return [c - 1 for c in cells]


@st.composite
def state_and_strategy(draw, max_len=30):
    n = draw(st.integers(2, 12))
    bits = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    strategy = draw(st.lists(st.integers(0, n - 1), max_size=max_len))
    return BitState(tuple(bits)), strategy


class TestBitState:
    def test_needs_two_cells(self):
        with pytest.raises(ParameterError):
            BitState((1,))

    def test_rejects_non_binary(self):
        with pytest.raises(ParameterError):
            BitState((0, 2))

    def test_from_int_roundtrip(self):
        x = BitState.from_int(20, 5)
        assert x.bits == (1, 0, 1, 0, 0)
        assert int(x) == 20
        assert str(x) == "10100"

    def test_from_int_range(self):
        with pytest.raises(ParameterError):
            BitState.from_int(32, 5)


class TestStep:
    def test_first_worked_transition(self):
        assert ci_step(BitState((1, 0, 1, 0, 0)), 1).bits == (1, 1, 1, 0, 0)

    def test_single_flip(self):
        assert ci_step(BitState((0, 0)), 0).bits == (1, 0)

    @pytest.mark.parametrize("i", [-1, 5])
    def test_out_of_range(self, i):
        with pytest.raises(IndexError):
            ci_step(BitState((0, 0, 0, 0, 0)), i)

    @given(state_and_strategy(max_len=1).filter(lambda t: t[1]))
    def test_involution_and_hamming_one(self, case):
        x, (i,) = case
        y = ci_step(x, i)
        assert sum(a != b for a, b in zip(x.bits, y.bits)) == 1
        assert ci_step(y, i) == x

    def test_explicit_negation_function_agrees(self):
        x = BitState((1, 0, 1, 1))
        for i in range(4):
            assert ci_step(x, i, negation) == ci_step(x, i)

    def test_other_iteration_function(self):
        def all_ones(x):
            return BitState((1,) * x.n_cells)

        x = BitState((0, 0, 1))
        assert ci_step(x, 0, all_ones).bits == (1, 0, 1)
        assert ci_step(x, 2, all_ones).bits == (0, 0, 1)


class TestRun:
    def test_worked_columns(self):
        x4 = ci_run(BitState((1, 0, 1, 0, 0)), one_based(2, 4, 2, 2))
        assert x4.bits == (1, 1, 1, 1, 0)
        x9 = ci_run(x4, one_based(5, 1, 1, 5, 5))
        assert x9.bits == (1, 1, 1, 1, 1)
        x13 = ci_run(x9, one_based(3, 2, 3, 3))
        assert x13.bits == (1, 0, 0, 1, 1)

    def test_empty_strategy(self):
        x = BitState((0, 1, 1))
        assert ci_run(x, []) == x

    @given(state_and_strategy())
    def test_replayed_strategy_is_identity(self, case):
        x, s = case
        assert ci_run(ci_run(x, s), s) == x

    def test_depends_only_on_index_parity(self):
        # brute force: every strategy of length <= 4 on N <= 4 cells, all start states
        for n in range(2, 5):
            for x_bits in product((0, 1), repeat=n):
                x = BitState(x_bits)
                for length in range(5):
                    for s in product(range(n), repeat=length):
                        parity = [s.count(i) % 2 for i in range(n)]
                        expected = tuple(b ^ p for b, p in zip(x_bits, parity))
                        assert ci_run(x, s).bits == expected

    @given(state_and_strategy(max_len=60))
    def test_vectorized_run_matches_fold(self, case):
        x, s = case
        got = negation_run(np.array(x.bits), s)
        assert tuple(got.tolist()) == ci_run(x, s).bits

    def test_vectorized_run_range_check(self):
        with pytest.raises(IndexError):
            negation_run(np.zeros(4), [4])


class TestPack:
    @pytest.mark.parametrize("bits, value", [((1, 0, 1, 0, 0), 20), ((1, 1, 1, 1, 1), 31),
                                             ((0, 0, 0, 0, 0), 0), ((0, 1), 1)])
    def test_values(self, bits, value):
        assert pack_bits(BitState(bits)) == value

    @given(st.integers(2, 70).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2 ** n - 1))))
    def test_from_int_inverse(self, case):
        n, v = case
        assert pack_bits(BitState.from_int(v, n)) == v
