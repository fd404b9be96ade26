"""Digit statistics: forced marker frequency and the balance identity."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sadicsets import (
    BlockSequence,
    DigitString,
    NotAMemberError,
    RangeError,
    block_alphabet,
    block_encode,
    digit_frequencies,
    normal_candidate_exists,
    normality_dimension_bounds,
    structural_identity_residual,
    structural_zero_frequency,
    uniform_stream_zero_frequency,
)


class TestForcedFrequencies:
    @pytest.mark.parametrize(
        "s,value",
        [(3, Fraction(1, 3)), (4, Fraction(3, 4)), (5, Fraction(6, 5))],
    )
    def test_structural_values(self, s, value):
        assert structural_zero_frequency(s) == value

    def test_closed_form(self):
        for s in range(3, 12):
            assert structural_zero_frequency(s) == Fraction(
                (s - 2) * (s - 1), 2 * s
            )

    def test_uniform_stream_values(self):
        assert uniform_stream_zero_frequency(3) == Fraction(1, 3)
        assert uniform_stream_zero_frequency(4) == Fraction(1, 2)

    def test_rejects_small_base(self):
        with pytest.raises(RangeError):
            structural_zero_frequency(2)

    def test_dichotomy(self):
        assert normal_candidate_exists(3).exists
        for s in range(4, 11):
            v = normal_candidate_exists(s)
            assert not v.exists
            assert v.forced_zero != Fraction(1, s)


class TestDigitFrequencies:
    def test_periodic_word_balance(self):
        # 021 repeated forever has every digit at exactly 1/3
        d = DigitString(3, (), (0, 2, 1))
        prof = digit_frequencies(d, 3000)
        assert prof.freqs == (Fraction(1, 3),) * 3

    def test_partial_cycle_counts(self):
        d = DigitString(3, (), (0, 2, 1))
        prof = digit_frequencies(d, 4)
        assert prof.counts == (2, 1, 1)

    def test_finite_exhaustion(self):
        from sadicsets import InsufficientDigitsError

        with pytest.raises(InsufficientDigitsError):
            digit_frequencies(DigitString(3, (0, 1)), 5)

    def test_rejects_zero_length(self):
        with pytest.raises(RangeError):
            digit_frequencies(DigitString(3, (), (1,)), 0)

    @given(st.integers(3, 7), st.data())
    @settings(deadline=None, max_examples=30)
    def test_frequencies_sum_to_one(self, s, data):
        period = tuple(
            data.draw(
                st.lists(st.integers(0, s - 1), min_size=1, max_size=6)
            )
        )
        prof = digit_frequencies(DigitString(s, (), period), 100)
        assert sum(prof.freqs) == 1
        assert len(prof.freqs) == s


class TestBalanceIdentity:
    def test_zero_at_boundaries(self):
        b = BlockSequence(3, 0, (1, 2, 2, 1), None)
        d = block_encode(b)
        rep = structural_identity_residual(d, 0, b.digit_length)
        assert rep.at_boundary
        assert rep.residual == 0

    def test_nonzero_mid_block(self):
        # cutting inside a marker run leaves pending markers unmatched
        d = DigitString(3, (0, 2, 0, 2))
        rep = structural_identity_residual(d, 0, 3)
        assert not rep.at_boundary
        assert rep.pending_run == 1
        assert rep.residual == 1

    def test_rejects_non_members(self):
        with pytest.raises(NotAMemberError):
            structural_identity_residual(DigitString(3, (0, 0, 1)), 0, 3)

    @given(st.integers(3, 7), st.data())
    @settings(deadline=None, max_examples=40)
    def test_identity_at_every_boundary(self, s, data):
        u = data.draw(st.integers(0, s - 1), label="u")
        alphabet = list(block_alphabet(s, u))
        blocks = tuple(
            data.draw(
                st.lists(st.sampled_from(alphabet), min_size=1, max_size=8),
                label="blocks",
            )
        )
        b = BlockSequence(s, u, blocks, None)
        d = block_encode(b)
        cut = 0
        for c in blocks:
            cut += c
            rep = structural_identity_residual(d, u, cut)
            assert rep.at_boundary
            assert rep.residual == 0


class TestDimensionBounds:
    def test_ordered_pair(self):
        lo, hi = normality_dimension_bounds()
        assert 0.21 < lo.alpha < 0.2104
        assert 0.438 < hi.alpha < 0.4381
        assert lo.alpha < hi.alpha


class TestLongStream:
    def test_thirty_thousand_digit_run(self):
        # words 021/102 both contain one of each digit, so any mix is
        # exactly balanced at multiples of three
        rng = random.Random(7)
        words = [(0, 2, 1), (1, 0, 2)]
        digits = []
        for _ in range(10000):
            digits.extend(rng.choice(words))
        d = DigitString(3, tuple(digits))
        prof = digit_frequencies(d, 30000)
        assert prof.freqs == (Fraction(1, 3),) * 3
        assert "00" not in "".join(map(str, digits))
