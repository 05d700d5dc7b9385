import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffmzv.algebra import RatFunc
from ffmzv.arrays import array_parse
from ffmzv.carlitz import D, goss_zeta_int
from ffmzv.gmaps import (
    D_tuple, SymCoeff, TrivialMZV, e_map, ev_map, evaluation_matrix, f_map, g_map, image_check, kernel_basis,
    nonzero_tuples, phi, phi_linear, random_symcoeff, random_trivial, trivial_eval,
)
from ffmzv.series import lambda_value

from conftest import FIELDS

F3 = FIELDS[3]
N = 30
SIGMAS = [(1,), (1, 2)]


def trivials(sigma, terms=3, bound=2):
    return st.integers(0, 2**32 - 1).map(lambda seed: random_trivial(F3, sigma, random.Random(seed), terms, bound))


def symcoeffs():
    return st.integers(0, 2**32 - 1).map(lambda seed: random_symcoeff(F3, random.Random(seed)))


class TestSymCoeff:
    def test_ring(self):
        Z = SymCoeff.Z(F3)
        x = Z * Z + 1
        assert x.degree == 2 and x.low_degree == 0
        assert (x - x).is_zero()
        assert (Z * 2).coefficient(1) == RatFunc.const(F3, 2)
        assert str(SymCoeff.Z(F3, 2, 2)) == "2*Z^2"
        with pytest.raises(ValueError):
            SymCoeff.Z(F3, -1)

    @given(symcoeffs(), symcoeffs(), symcoeffs())
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    def test_divisibility(self):
        Z = SymCoeff.Z(F3)
        assert (Z * Z + Z * Z * Z).divisible_by_Z(2)
        assert not (Z + Z * Z).divisible_by_Z(2)

    def test_numeric_substitutes_zeta_one(self):
        Z = SymCoeff.Z(F3)
        assert (Z.numeric(N) - goss_zeta_int(F3, 1, N)).is_zero_to_prec()
        z2 = (Z * Z).numeric(N)
        assert (z2 - goss_zeta_int(F3, 1, N) * goss_zeta_int(F3, 1, N)).is_zero_to_prec()


class TestTrivialMZV:
    def test_validation(self):
        with pytest.raises(ValueError):
            TrivialMZV(F3, (1, 2, 3))
        with pytest.raises(ValueError):
            TrivialMZV(F3, (1, 1))
        with pytest.raises(ValueError):
            TrivialMZV.eta(F3, (1,), (0, 1))

    @given(trivials((1, 2)))
    def test_evaluation_reads_coefficients(self, f):
        for j in nonzero_tuples(2, 2) + [(0, 0)]:
            assert trivial_eval(f, j) == f.coeffs.get(j, SymCoeff(F3))

    def test_str(self):
        assert str(phi(F3, (1,), (1,))) == "(2*Z^2) * eta[0] + (θ^3 + 2*θ) * eta[1]"


class TestMaps:
    @pytest.mark.parametrize("sigma,k", [((1,), (0,)), ((1,), (1,)), ((1,), (2,)), ((1, 2), (1, 0)), ((1, 2), (0, 1))])
    def test_g_of_eta(self, sigma, k):
        expect = SymCoeff.Z(F3, sum(3**x for x in k)) / RatFunc(D_tuple(F3, k))
        assert g_map(TrivialMZV.eta(F3, sigma, k)) == expect

    @given(trivials((1,), 2, 2))
    def test_g_matches_ev_of_e(self, f):
        diff = ev_map(e_map(f, 5, N)) - g_map(f, "numeric", N)
        assert diff.is_zero_to_prec()

    @given(trivials((1, 2), 2, 1))
    def test_g_matches_ev_of_e_two_variables(self, f):
        diff = ev_map(e_map(f, 4, N)) - g_map(f, "numeric", N)
        assert diff.is_zero_to_prec()

    @given(trivials((1, 2)), trivials((1, 2)), symcoeffs())
    def test_g_is_linear(self, f, h, c):
        assert g_map(f + h.scale(c)) == g_map(f) + g_map(h) * c

    @pytest.mark.parametrize("sigma,k", [((1,), (0,)), ((1,), (1,)), ((1, 2), (1, 1))])
    def test_f_equals_e(self, sigma, k):
        f = TrivialMZV.eta(F3, sigma, k)
        assert (f_map(f, 3).numeric(N) - e_map(f, 3, N)).is_zero_to_prec()

    def test_f_of_eta0_is_lambda(self):
        f = TrivialMZV.eta(F3, (1,), (0,))
        lam = lambda_value(F3, array_parse("({1}|1)"), N)
        assert (f_map(f, 4).numeric(N) - lam).is_zero_to_prec()
        assert (ev_map(lam) - goss_zeta_int(F3, 1, N)).is_zero_to_prec()
        assert (ev_map(f_map(f, 4), "numeric", N) - goss_zeta_int(F3, 1, N)).is_zero_to_prec()

    def test_xseries_json(self):
        x = f_map(TrivialMZV.eta(F3, (1,), (1,)), 2)
        js = x.to_json()
        assert js["sigma"] == [1] and js["i_max"] == 2 and js["terms"]


class TestKernel:
    @pytest.mark.parametrize("sigma", SIGMAS)
    def test_basis_in_kernel(self, sigma):
        for j in nonzero_tuples(len(sigma), 3):
            f = kernel_basis(F3, sigma, j)
            assert g_map(f).is_zero()
            assert g_map(f, "numeric", N).is_zero_to_prec()

    @given(st.dictionaries(st.sampled_from(nonzero_tuples(2, 2)), symcoeffs(), min_size=1, max_size=4))
    def test_linear_combinations(self, a):
        f = phi_linear(F3, (1, 2), a)
        assert g_map(f).is_zero()
        for j in nonzero_tuples(2, 2):
            assert trivial_eval(f, j) == a.get(j, SymCoeff(F3)) * D_tuple(F3, j)

    def test_literal_exponent(self):
        for j in nonzero_tuples(1, 2):
            assert kernel_basis(F3, (1,), j, "literal") == phi(F3, (1,), j)
        for j in nonzero_tuples(2, 2):
            assert not g_map(kernel_basis(F3, (1, 2), j, "literal")).is_zero()

    def test_zero_tuple_rejected(self):
        with pytest.raises(ValueError):
            phi(F3, (1,), (0,))

    @pytest.mark.parametrize("sigma", SIGMAS)
    def test_rank(self, sigma):
        rows_j, cols, rows, rank = evaluation_matrix(F3, sigma, 2)
        assert rank == len(rows_j)

    def test_single_variable_element(self):
        f = phi(F3, (1,), (1,))
        assert trivial_eval(f, (1,)) == SymCoeff.const(F3, D(F3, 1))
        assert trivial_eval(f, (0,)) == -SymCoeff.Z(F3, 2)


class TestImage:
    @given(trivials((1, 2)))
    def test_divisible(self, f):
        assert g_map(f).divisible_by_Z(2)

    def test_image_check(self):
        rng = random.Random(0)
        samples = [random_trivial(F3, (1,), rng) for _ in range(5)]
        rep = image_check(F3, (1,), samples, N)
        assert rep["ok"] and rep["generator_ok"]
