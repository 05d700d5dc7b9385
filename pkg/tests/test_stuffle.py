import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffmzv.arrays import EMPTY, AdmissibleArray, ArrayCombo, WeightedSubset, array_parse
from ffmzv.harness import _combo_value
from ffmzv.powersums import dagger_lt, dagger_powersum, powersum_brute, powersum_brute_lt
from ffmzv.series import zeta_value
from ffmzv.stuffle import Mode, dagger_stuffle, stuffle_depth1, stuffle_product, zeta_product_expand

from conftest import FIELDS, plain_arrays, weighted_subsets

F2, F3 = FIELDS[2], FIELDS[3]


def product(F, A, B, d, mode):
    if mode is Mode.DD:
        return powersum_brute(F, A, d) * powersum_brute(F, B, d)
    if mode is Mode.D_LT:
        return powersum_brute(F, A, d) * powersum_brute_lt(F, B, d)
    return powersum_brute_lt(F, A, d) * powersum_brute_lt(F, B, d)


@given(weighted_subsets(), st.integers(1, 3), weighted_subsets(), st.integers(1, 3), st.integers(0, 3))
def test_depth_one_product(S, s, G, t, d):
    combo = stuffle_depth1(F3, S, s, G, t)
    lhs = powersum_brute(F3, AdmissibleArray(((S, s),)), d) * powersum_brute(F3, AdmissibleArray(((G, t),)), d)
    assert lhs == _combo_value(F3, combo, d)


@given(plain_arrays(3, 2, 4), plain_arrays(3, 2, 4), st.sampled_from(list(Mode)), st.integers(0, 3))
def test_products_all_modes(A, B, mode, d):
    combo = stuffle_product(F3, A, B, mode)
    assert product(F3, A, B, d, mode) == _combo_value(F3, combo, d, lt=mode is Mode.LT_LT)


@given(plain_arrays(2, 2, 4), plain_arrays(2, 2, 4), st.sampled_from(list(Mode)), st.integers(0, 3))
def test_products_q2(A, B, mode, d):
    combo = stuffle_product(F2, A, B, mode)
    assert product(F2, A, B, d, mode) == _combo_value(F2, combo, d, lt=mode is Mode.LT_LT)


def test_classical_depth_one_example():
    # ({}|1)*({}|1) = ({}|2) + 2 * sum of depth-two terms with Delta coefficients
    combo = stuffle_depth1(F3, EMPTY, 1, EMPTY, 1)
    assert combo.get(array_parse("({}|2)")) == F3(1)
    for d in range(4):
        assert _combo_value(F3, combo, d) == powersum_brute(F3, array_parse("({}|1)"), d) ** 2


def test_weights_are_preserved():
    A, B = array_parse("({1}|2)({}|1)"), array_parse("({2}|1)")
    for C, _ in stuffle_product(F3, A, B).items():
        assert C.weight == A.weight + B.weight
        assert C.type == A.type.union(B.type)


def test_mode_strings():
    A, B = array_parse("({1}|1)"), array_parse("({}|2)")
    assert stuffle_product(F3, A, B, "D_LT") == stuffle_product(F3, A, B, Mode.D_LT)
    with pytest.raises(ValueError):
        stuffle_product(F3, A, B, "XX")


def test_empty_array_is_unit():
    B = array_parse("({1}|2)({}|1)")
    for mode in Mode:
        assert stuffle_product(F3, AdmissibleArray(()), B, mode) == ArrayCombo.single(F3, B)
        assert stuffle_product(F3, B, AdmissibleArray(()), mode) == ArrayCombo.single(F3, B)


def test_invalid_exponent():
    with pytest.raises(ValueError):
        stuffle_depth1(F3, EMPTY, 0, EMPTY, 1)


@given(plain_arrays(3, 2, 3), plain_arrays(3, 2, 3), st.sampled_from(list(Mode)), st.integers(0, 3))
def test_dagger_products(A, B, mode, d):
    if A.type.union(B.type).card >= 3:
        with pytest.raises(ValueError):
            dagger_stuffle(F3, A, B, mode)
        return
    combo = dagger_stuffle(F3, A, B, mode)
    if mode is Mode.DD:
        lhs = dagger_powersum(F3, A, d) * dagger_powersum(F3, B, d)
    elif mode is Mode.D_LT:
        lhs = dagger_powersum(F3, A, d) * dagger_lt(F3, B, d)
    else:
        lhs = dagger_lt(F3, A, d) * dagger_lt(F3, B, d)
    assert lhs == _combo_value(F3, combo, d, lt=mode is Mode.LT_LT, dagger=True)


@pytest.mark.parametrize("S,s,G,t", [((), 1, (), 1), ((1,), 1, (), 2), ((1,), 2, (2,), 1), ((), 3, (1,), 1)])
def test_zeta_level_product(S, s, G, t):
    N = 30
    S, G = WeightedSubset.of(*S), WeightedSubset.of(*G)
    lhs = zeta_value(F3, AdmissibleArray(((S, s),)), N) * zeta_value(F3, AdmissibleArray(((G, t),)), N)
    rhs = None
    for C, c in zeta_product_expand(F3, S, s, G, t).items():
        z = zeta_value(F3, C, N).scale(c)
        rhs = z if rhs is None else rhs + z
    diff = lhs - rhs
    assert diff.is_zero_to_prec() and diff.residual_valuation() > N
