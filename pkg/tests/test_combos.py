"""Finite-word alphabets, their set extrema, and prefix cylinders."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sadicsets import (
    ComboAlphabet,
    InvalidDigitError,
    WordError,
    combo_cylinder,
    comboset_extrema,
    enumerate_prefixes,
    induced_alphabet,
    set_extrema,
    sprime3_alphabet,
    tilde_alphabet,
)


class TestAlphabets:
    def test_sprime3_words(self):
        a = sprime3_alphabet()
        assert a.s == 3
        assert set(a.combos) == {(0, 2, 1), (1, 0, 2)}

    def test_tilde_three(self):
        a = tilde_alphabet(3)
        assert set(a.combos) == {(1,), (0, 2), (1, 2)}

    @pytest.mark.parametrize(
        "s,count,lengths",
        [
            (3, 3, {1: 1, 2: 2}),
            (4, 7, {1: 1, 2: 3, 3: 3}),
            (5, 13, {1: 1, 2: 4, 3: 4, 4: 4}),
        ],
    )
    def test_tilde_census(self, s, count, lengths):
        a = tilde_alphabet(s)
        assert a.m == count == s * s - 3 * s + 3
        assert a.length_counts == lengths

    def test_induced_matches_block_words(self):
        a = induced_alphabet(3, 0)
        assert set(a.combos) == {(1,), (0, 2)}

    def test_string_and_list_words_agree(self):
        assert ComboAlphabet(3, ("021",)) == ComboAlphabet(3, ([0, 2, 1],))

    def test_rejects_duplicates(self):
        with pytest.raises(WordError):
            ComboAlphabet(3, ("01", "01"))

    def test_rejects_digit_out_of_base(self):
        with pytest.raises(InvalidDigitError):
            ComboAlphabet(3, ("03",))

    def test_prefix_freedom(self):
        assert sprime3_alphabet().is_prefix_free()
        assert not ComboAlphabet(3, ("0", "01")).is_prefix_free()

    def test_json_roundtrip(self):
        a = tilde_alphabet(4)
        assert ComboAlphabet.from_json(a.to_json()) == a


class TestExtrema:
    def test_sprime3(self):
        e = comboset_extrema(sprime3_alphabet())
        assert (e.inf, e.sup) == (Fraction(7, 26), Fraction(11, 26))
        assert e.arg_inf == (0, 2, 1)
        assert e.arg_sup == (1, 0, 2)

    def test_tilde_three(self):
        e = comboset_extrema(tilde_alphabet(3))
        assert (e.inf, e.sup) == (Fraction(1, 4), Fraction(5, 8))

    def test_tilde_four(self):
        e = comboset_extrema(tilde_alphabet(4))
        assert (e.inf, e.sup) == (Fraction(1, 21), Fraction(14, 15))

    def test_deeper_audit_passes(self):
        e = comboset_extrema(sprime3_alphabet(), audit_digits=12)
        assert (e.inf, e.sup) == (Fraction(7, 26), Fraction(11, 26))

    @pytest.mark.parametrize("s", range(3, 9))
    def test_matches_marker_sets(self, s):
        for u in range(s):
            e = comboset_extrema(induced_alphabet(s, u))
            assert (e.inf, e.sup) == set_extrema(s, u)

    def test_brute_force_agreement(self):
        # depth-10 prefix values bracket the true extrema within 3**-10
        a = sprime3_alphabet()
        e = comboset_extrema(a)
        vals = [h for h, _ in enumerate_prefixes(a, 10)]
        lo = min(h[0] for h in vals)
        hi = max(h[1] for h in vals)
        assert lo == e.inf  # frontier hulls start at the true inf
        assert hi == e.sup


class TestComboCylinder:
    def test_single_word_base(self):
        c = combo_cylinder(sprime3_alphabet(), [(0, 2, 1)])
        assert c.diameter == Fraction(2, 351)
        assert c.total_digits == 3

    def test_string_base(self):
        c = combo_cylinder(sprime3_alphabet(), ["021", "102"])
        assert c.total_digits == 6

    def test_rejects_foreign_word(self):
        with pytest.raises(WordError):
            combo_cylinder(sprime3_alphabet(), [(0, 1)])

    def test_nesting(self):
        a = tilde_alphabet(3)
        outer = combo_cylinder(a, [(1, 2)])
        inner = combo_cylinder(a, [(1, 2), (0, 2)])
        assert outer.inf <= inner.inf <= inner.sup <= outer.sup

    def test_scaling(self):
        a = sprime3_alphabet()
        outer = combo_cylinder(a, [])
        inner = combo_cylinder(a, [(0, 2, 1)])
        assert inner.diameter * 27 == outer.diameter


class TestEnumeratePrefixes:
    def test_sprime3_window_counts(self):
        # words have length 3, so depth 6 captures exactly the 4 two-word
        # prefixes and depth 3 the 2 one-word prefixes
        assert len(enumerate_prefixes(sprime3_alphabet(), 6)) == 4
        assert len(enumerate_prefixes(sprime3_alphabet(), 3)) == 2

    def test_mixed_length_window(self):
        a = tilde_alphabet(3)
        pre = enumerate_prefixes(a, 4)
        totals = {sum(len(w) for w in p) for _, p in pre}
        assert totals == {3, 4}

    def test_hulls_sorted_and_disjoint(self):
        hulls = [h for h, _ in enumerate_prefixes(induced_alphabet(3, 0), 10)]
        for (lo1, hi1), (lo2, hi2) in zip(hulls, hulls[1:]):
            assert lo1 <= lo2
            assert hi1 < lo2  # marker-0 frontier hulls never touch

    @given(st.integers(3, 6), st.integers(6, 10))
    @settings(deadline=None, max_examples=20)
    def test_every_stream_has_one_frontier_prefix(self, s, depth):
        a = induced_alphabet(s, 0)
        pre = enumerate_prefixes(a, depth)
        # prefix totals all land in the window (depth - max word, depth]
        for _, p in pre:
            total = sum(len(w) for w in p)
            assert depth - a.max_len < total <= depth
            # minimality: the parent prefix had not yet entered the window
            assert total - len(p[-1]) <= depth - a.max_len
