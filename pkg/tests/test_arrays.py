from math import comb

import pytest
from hypothesis import given

from ffmzv.algebra import MultiPoly, Var, subst_theta
from ffmzv.arrays import (
    EMPTY, ArrayCombo, ArrayParseError, WeightedSubset, array_format, array_parse,
    binom_mod_p, binom_ws, char_eval, delta_coeff, unit_sum,
)

from conftest import FIELDS, theta_polys, weighted_subsets

F3 = FIELDS[3]


class TestWeightedSubset:
    def test_multiset_ops(self):
        S = WeightedSubset.from_mapping({1: 2, 3: 1})
        assert S.card == 3 and S.support == (1, 3) and not S.is_plain()
        assert S.difference(WeightedSubset.of(1)) == WeightedSubset.of(1, 3)
        with pytest.raises(ValueError):
            S.difference(WeightedSubset.of(2))
        assert not EMPTY and EMPTY.card == 0

    @given(weighted_subsets((1, 2, 3)), weighted_subsets((1, 2, 3)))
    def test_union_is_commutative(self, S, G):
        U = S.union(G)
        assert U == G.union(S)
        assert U.card == S.card + G.card
        assert U.contains(S) and U.difference(S) == G

    @given(weighted_subsets((1, 2, 3)))
    def test_subsets(self, S):
        subs = S.subsets()
        assert subs[0] == EMPTY and subs[-1] == S
        cards = [J.card for J in subs]
        assert cards == sorted(cards)

    def test_variables(self):
        assert WeightedSubset.of(2, 1).variables() == [Var("t", 1), Var("t", 2)]


def test_lucas_matches_comb():
    for p in (2, 3, 5, 7):
        for n in range(60):
            for k in range(-1, n + 2):
                expect = comb(n, k) % p if 0 <= k <= n else 0
                assert binom_mod_p(n, k, p) == expect


def test_binom_ws_is_product():
    S = WeightedSubset.from_mapping({1: 3, 2: 2})
    J = WeightedSubset.from_mapping({1: 1, 2: 2})
    assert binom_ws(F3, S, J) == F3(comb(3, 1) * comb(2, 2))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_unit_sum(q):
    F = FIELDS[q]
    for n in range(3 * q):
        direct = F.zero()
        for u in F.units():
            direct = direct + u**n
        assert unit_sum(F, n) == direct
        assert unit_sum(F, n) == (F(-1) if n > 0 and n % (q - 1) == 0 else F.zero() if n > 0 else F(q - 1))


@given(weighted_subsets(), theta_polys(F3, 3))
def test_char_eval_is_substitution(S, a):
    """chi_S(a) = prod over n in S of a(t_n), each with its multiplicity."""
    expect = MultiPoly.const(F3, 1)
    for n in S.support:
        expect = expect * subst_theta(a, Var("t", n)) ** S.multiplicity(n)
    assert char_eval(S, a) == expect


def test_delta_coefficients():
    assert delta_coeff(F3, EMPTY, EMPTY, 3, 1) == F3(-1)


class TestParsing:
    @pytest.mark.parametrize("text", ["({1}|1)", "({1,2}|2)({}|1)", "({1^2,2}|3)({2}|1)", "()"])
    def test_roundtrip(self, text):
        A = array_parse(text)
        assert array_format(A) == text
        assert array_parse(array_format(A)) == A

    def test_repeated_indices(self):
        assert array_parse("({1,1,2}|3)") == array_parse("({1^2,2}|3)")

    def test_whitespace(self):
        assert array_parse(" ( {1, 2} | 2 ) ( {} | 1 ) ") == array_parse("({1,2}|2)({}|1)")

    @pytest.mark.parametrize("text", ["({1}|0)", "({1}|1", "({0}|1)", "{1}|1", "({1}|1)x", "({a}|1)"])
    def test_errors(self, text):
        with pytest.raises(ArrayParseError):
            array_parse(text)

    def test_properties(self):
        A = array_parse("({1,2}|2)({}|1)({1}|3)")
        assert A.depth == 3 and A.weight == 6
        assert A.type == WeightedSubset.from_mapping({1: 2, 2: 1})
        assert A.head == (WeightedSubset.of(1, 2), 2)
        assert A.tail == array_parse("({}|1)({1}|3)")


def test_combo_algebra():
    A, B = array_parse("({1}|1)"), array_parse("({}|2)")
    c = ArrayCombo.single(F3, A) + ArrayCombo.single(F3, B).scale(F3(2))
    assert len(c - c) == 0
    assert c.get(B) == F3(2)
    assert str(c) == "2*({}|2) + 1*({1}|1)"
    assert ArrayCombo.single(F3, A, 3) == ArrayCombo(F3)


@given(theta_polys(F3, 2), theta_polys(F3, 2))
def test_char_multiplicative(a, b):
    S = WeightedSubset.from_mapping({1: 2, 2: 1})
    assert char_eval(S, a * b) == char_eval(S, a) * char_eval(S, b)
