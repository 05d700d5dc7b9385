import itertools

import pytest
from hypothesis import given

from ffmzv.algebra import (
    GF, MultiPoly, RatFunc, ThetaPoly, Var, lower_enum, monic_enum, mono_mul, subst_theta,
)

from conftest import FIELDS, nonzero_theta_polys, theta_polys


def naive_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def coeff_ints(a: ThetaPoly):
    return [int(c) for c in a.coeffs()]


def strip(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


class TestField:
    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
    def test_order_and_units(self, q):
        F = GF.of_order(q)
        assert F.q == q
        assert len(F.elements()) == q and len(set(F.elements())) == q
        assert len(F.units()) == q - 1
        # the unit group is cyclic
        assert any(len({g**k for k in range(q - 1)}) == q - 1 for g in F.units())
        assert F.generator() ** q == F.generator()

    def test_gf4_table(self):
        F = GF.of_order(4)
        x = F.from_code(2)
        assert x * x == F.from_code(3)
        assert x * F.from_code(3) == F.one()
        assert x + x == F.zero()

    @pytest.mark.parametrize("q", [4, 9])
    def test_axioms_exhaustive(self, q):
        F = GF.of_order(q)
        E = F.elements()
        for a, b in itertools.product(E, repeat=2):
            assert a + b == b + a and a * b == b * a
            if b:
                assert (a / b) * b == a
        for a, b, c in itertools.product(E, repeat=3):
            assert a * (b + c) == a * b + a * c

    def test_frobenius_is_additive(self):
        F = GF.of_order(9)
        for a, b in itertools.product(F.elements(), repeat=2):
            assert (a + b) ** 3 == a**3 + b**3

    @pytest.mark.parametrize("q", [1, 6, 10, 12])
    def test_bad_order(self, q):
        with pytest.raises(ValueError):
            GF.of_order(q)

    def test_bad_modulus(self):
        with pytest.raises(ValueError):
            GF.of_order(4, (1, 0, 1))  # x^2 + 1 = (x + 1)^2 over F_2
        F = GF.of_order(9, (2, 2, 1))
        assert F.modulus == (2, 2, 1)

    def test_division_by_zero(self):
        F = FIELDS[3]
        with pytest.raises(ZeroDivisionError):
            F.one() / F.zero()


class TestThetaPoly:
    @given(theta_polys(FIELDS[5]), theta_polys(FIELDS[5]))
    def test_mul_matches_schoolbook(self, a, b):
        prod = a * b
        if a.is_zero() or b.is_zero():
            assert prod.is_zero()
        else:
            assert coeff_ints(prod) == strip(naive_mul(coeff_ints(a), coeff_ints(b), 5))

    @given(theta_polys(FIELDS[3]), nonzero_theta_polys(FIELDS[3]))
    def test_divmod(self, a, b):
        qt, r = divmod(a, b)
        assert qt * b + r == a
        assert r.is_zero() or r.degree < b.degree

    @given(theta_polys(FIELDS[4]), theta_polys(FIELDS[4]), theta_polys(FIELDS[4]))
    def test_ring_laws(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a - a == ThetaPoly.const(a.field, 0)

    @given(theta_polys(FIELDS[3], 3))
    def test_frobenius(self, a):
        assert a.frobenius() == a**3

    def test_monic_enum_counts(self):
        for q, F in FIELDS.items():
            for d in range(4):
                ms = monic_enum(F, d)
                assert len(ms) == q**d and len(set(ms)) == q**d
                assert all(m.is_monic() and m.degree == d for m in ms)
                assert len(lower_enum(F, d)) == q**d

    def test_str(self):
        F = FIELDS[3]
        assert str(ThetaPoly.from_coeffs(F, [0, 2, 0, 1])) == "θ^3 + 2*θ"
        assert str(ThetaPoly.const(F, 0)) == "0"


class TestMultiPoly:
    def test_var_arithmetic(self):
        F = FIELDS[3]
        t1 = MultiPoly.var(F, Var("t", 1))
        th = MultiPoly.theta(F)
        x = (t1 - th) * (t1 + th)
        assert x == t1**2 - th**2
        assert x.degree_in(Var("t", 1)) == 2
        assert x.subs(Var("t", 1), ThetaPoly.theta(F)).is_zero()

    def test_subst_theta(self):
        F = FIELDS[3]
        a = ThetaPoly.from_coeffs(F, [1, 1, 1])
        P = subst_theta(a, Var("t", 2))
        assert P.subs(Var("t", 2), ThetaPoly.monomial(F, 1)) == MultiPoly.const(F, 1) + MultiPoly.theta(F) + \
            MultiPoly.theta(F) ** 2

    def test_mono_mul_merges(self):
        a = ((Var("t", 1), 1),)
        b = ((Var("t", 1), 2), (Var("t", 2), 1))
        assert mono_mul(a, b) == ((Var("t", 1), 3), (Var("t", 2), 1))

    def test_str(self):
        F = FIELDS[3]
        t1 = MultiPoly.var(F, Var("t", 1))
        assert str(t1 * 2 + MultiPoly.theta(F)) in ("2*t_1 + θ", "θ + 2*t_1")


class TestRatFunc:
    @given(nonzero_theta_polys(FIELDS[3], 3), nonzero_theta_polys(FIELDS[3], 3), nonzero_theta_polys(FIELDS[3], 3))
    def test_field_laws(self, a, b, c):
        x, y = RatFunc(a, b), RatFunc(b, c)
        assert x * y == RatFunc(a, c)
        assert (x + y) - y == x
        assert x * x.inv() == RatFunc.const(a.field, 1)

    @given(nonzero_theta_polys(FIELDS[5], 3), nonzero_theta_polys(FIELDS[5], 3))
    def test_canonical_form(self, a, b):
        x, y = RatFunc(a * b, b * b), RatFunc(a, b)
        assert x == y and hash(x) == hash(y)
        assert str(x) == str(y)

    def test_multivariate(self):
        F = FIELDS[3]
        X, Y = RatFunc.var(F, Var("X", 1)), RatFunc.var(F, Var("X", 2))
        lhs = RatFunc.const(F, 1) / (X * Y)
        rhs = (RatFunc.const(F, 1) / X + RatFunc.const(F, 1) / Y) / (X + Y)
        assert lhs == rhs

    def test_subs_rational(self):
        F = FIELDS[3]
        t = RatFunc.var(F, Var("t", 1))
        x = (t + RatFunc.const(F, 1)) / (t - RatFunc(ThetaPoly.theta(F)))
        v = x.eval_theta_power(Var("t", 1), 3)
        th = ThetaPoly.theta(F)
        assert v == RatFunc(th**3 + ThetaPoly.const(F, 1), th**3 - th)

    def test_pole(self):
        F = FIELDS[3]
        with pytest.raises(ZeroDivisionError):
            RatFunc.const(F, 1) / RatFunc.const(F, 0)
        t = RatFunc.var(F, Var("t", 1))
        x = RatFunc.const(F, 1) / (t - RatFunc(ThetaPoly.theta(F)))
        with pytest.raises(ZeroDivisionError):
            x.eval_theta_power(Var("t", 1), 1)

    def test_str(self):
        F = FIELDS[3]
        th = ThetaPoly.theta(F)
        assert str(RatFunc(ThetaPoly.const(F, 1), th**3 - th)) == "1/(θ^3 + 2*θ)"
