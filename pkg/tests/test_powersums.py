import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffmzv.algebra import RatFunc, Var
from ffmzv.arrays import EMPTY, AdmissibleArray, WeightedSubset, array_parse
from ffmzv.carlitz import b_poly, ell, sd_via_genfun
from ffmzv.harness import _enumerate_tuples, dagger_bridge_rhs
from ffmzv.powersums import (
    coefficient_valuations, dagger_lt, dagger_powersum, dagger_valuation_bound, powersum_brute,
    powersum_brute_lt, powersum_depth1_fast, powersum_depth1_gp, powersum_fast, powersum_fast_lt,
    powersum_lt, valuation_bound,
)

from conftest import FIELDS, plain_arrays

F2, F3 = FIELDS[2], FIELDS[3]
EMPTY_ARRAY = AdmissibleArray(())


@given(plain_arrays(3), st.integers(0, 2))
def test_brute_matches_tuple_enumeration(A, d):
    assert powersum_brute(F3, A, d) == _enumerate_tuples(F3, A, d)


@given(plain_arrays(3), st.integers(0, 3))
def test_fast_matches_brute(A, d):
    assert powersum_fast(F3, A, d) == powersum_brute(F3, A, d)
    assert powersum_fast_lt(F3, A, d) == powersum_brute_lt(F3, A, d)


@given(plain_arrays(2), st.integers(0, 3))
def test_fast_matches_brute_q2(A, d):
    assert powersum_fast(F2, A, d) == powersum_brute(F2, A, d)


@given(plain_arrays(3), st.integers(0, 3))
def test_valuation_bound(A, d):
    vals = coefficient_valuations(powersum_brute(F3, A, d)).values()
    assert all(v >= valuation_bound(F3, A, d) for v in vals)


def test_valuation_bound_is_not_the_naive_head_count():
    # the head slot ({1}|2) in degree one has valuation 3, below q*s - |Sigma| = 5
    A = array_parse("({1}|2)")
    assert min(coefficient_valuations(powersum_brute(F3, A, 1)).values()) == 3


def test_depth_constraints():
    A = array_parse("({}|1)({}|1)({}|1)")
    assert powersum_brute(F3, A, 1).is_zero()
    assert not powersum_brute(F3, A, 2).is_zero()
    assert powersum_brute(F3, EMPTY_ARRAY, 0) == RatFunc.const(F3, 1)
    assert powersum_brute(F3, EMPTY_ARRAY, 2).is_zero()
    with pytest.raises(ValueError):
        powersum_brute(F3, A, -1)


def test_lt_dispatch():
    A = array_parse("({1}|2)")
    assert powersum_lt(F3, A, 3, "fast") == powersum_lt(F3, A, 3, "brute")
    with pytest.raises(ValueError):
        powersum_lt(F3, A, 3, "other")


def test_depth_one_closed_form():
    S = WeightedSubset.of(1)
    t1 = Var("t", 1)
    for d in range(5):
        assert powersum_depth1_fast(F3, S, 1, d) == RatFunc(b_poly(F3, d, t1)) / RatFunc(ell(F3, d))


def test_fast_needs_plain_small_types():
    with pytest.raises(ValueError):
        powersum_depth1_fast(F3, WeightedSubset.from_mapping({1: 2}), 1, 1)
    with pytest.raises(ValueError):
        powersum_fast(F2, array_parse("({1,2}|1)"), 1)
    # brute force has no such restriction
    assert not powersum_brute(F2, array_parse("({1,2}|1)"), 1).is_zero()


class TestGP:
    def test_differs_for_two_variables(self):
        S = WeightedSubset.of(1, 2)
        A = AdmissibleArray(((S, 2),))
        for d in (1, 2, 3):
            assert powersum_depth1_gp(F3, S, 2, d) != powersum_brute(F3, A, d)

    def test_agrees_without_variables(self):
        for s in range(1, 6):
            for d in range(4):
                assert powersum_depth1_gp(F3, EMPTY, s, d) == sd_via_genfun(F3, d, s)

    def test_documented_as_incorrect(self):
        assert "KNOWN-INCORRECT" in powersum_depth1_gp.__doc__


class TestDagger:
    @given(plain_arrays(3, 2, 4), st.integers(0, 3))
    def test_lt_is_prefix_sum(self, A, d):
        total = RatFunc.const(F3, 0)
        for k in range(d):
            total = total + dagger_powersum(F3, A, k)
        assert dagger_lt(F3, A, d) == total

    def test_depth_one(self):
        S = WeightedSubset.of(1, 2)
        t1, t2 = Var("t", 1), Var("t", 2)
        for s in range(1, 5):
            for d in range(4):
                expect = sd_via_genfun(F3, d, s) * RatFunc(b_poly(F3, d, t1) * b_poly(F3, d, t2))
                assert dagger_powersum(F3, AdmissibleArray(((S, s),)), d) == expect

    def test_untwisted_agrees_with_classical(self):
        A = array_parse("({}|2)({}|1)")
        for d in range(4):
            assert dagger_powersum(F3, A, d) == powersum_brute(F3, A, d)

    @pytest.mark.parametrize("S", [(1,), (1, 2)])
    def test_bridge(self, S):
        W = WeightedSubset.of(*S)
        for n in range(1, 9):
            for d in range(4):
                assert powersum_brute(F3, AdmissibleArray(((W, n),)), d) == dagger_bridge_rhs(F3, W, n, d)

    def test_type_too_large(self):
        with pytest.raises(ValueError):
            dagger_powersum(F3, array_parse("({1,2,3}|1)"), 1)

    @given(plain_arrays(3, 2, 4), st.integers(0, 3))
    def test_valuation_bound(self, A, d):
        vals = coefficient_valuations(dagger_powersum(F3, A, d)).values()
        assert all(v >= dagger_valuation_bound(F3, A, d) for v in vals)
