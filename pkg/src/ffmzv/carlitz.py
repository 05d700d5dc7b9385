"""
Carlitz-type constants and polynomials: ell_d, D_d, b_d(t), the interpolation
polynomial E_d(x), the partial sums P_d(t, x) and their coefficients
Q_{d,k}(t), power sums S_d(n) through the generating function of E_d, and
Goss zeta values at integers.
"""

from __future__ import annotations

import enum
import functools

from .algebra import GF, MultiPoly, RatFunc, ThetaPoly, Var, monic_enum, lower_enum, subst_theta
from .arrays import WeightedSubset, char_eval
from .laurent import Laurent


@functools.lru_cache(maxsize=None)
def ell(F: GF, d: int) -> ThetaPoly:
    """prod_{i=1}^{d} (theta - theta^{q^i})."""
    th = ThetaPoly.theta(F)
    out = ThetaPoly.const(F, 1)
    for i in range(1, d + 1):
        out = out * (th - ThetaPoly.monomial(F, F.q**i))
    return out


@functools.lru_cache(maxsize=None)
def D(F: GF, d: int) -> ThetaPoly:
    """prod_{i=0}^{d-1} (theta^{q^d} - theta^{q^i})."""
    top = ThetaPoly.monomial(F, F.q**d)
    out = ThetaPoly.const(F, 1)
    for i in range(d):
        out = out * (top - ThetaPoly.monomial(F, F.q**i))
    return out


def deg_ell(q: int, d: int) -> int:
    return (q ** (d + 1) - q) // (q - 1)


def deg_b(q: int, d: int) -> int:
    return (q**d - 1) // (q - 1)


@functools.lru_cache(maxsize=None)
def b_poly(F: GF, d: int, v: Var = Var("t", 1)) -> MultiPoly:
    """prod_{i=0}^{d-1} (v - theta^{q^i})."""
    tv = MultiPoly.var(F, v)
    out = MultiPoly.const(F, 1)
    for i in range(d):
        out = out * (tv - ThetaPoly.monomial(F, F.q**i))
    return out


@functools.lru_cache(maxsize=None)
def b_of(F: GF, d: int, S: WeightedSubset) -> MultiPoly:
    """prod_n b_d(t_n)^{sigma_n}."""
    out = MultiPoly.const(F, 1)
    for n, s in S.items:
        out = out * b_poly(F, d, Var("t", n)) ** s
    return out


# ---------------------------------------------------------------------------
# polynomials in a formal variable x


class XPoly:
    """A polynomial in x with RatFunc coefficients, stored sparsely by exponent."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: dict | None = None):
        self.field = field
        self.coeffs = {k: c for k, c in (coeffs or {}).items() if not c.is_zero()}

    @classmethod
    def x(cls, F: GF) -> "XPoly":
        return cls(F, {1: RatFunc.const(F, 1)})

    @classmethod
    def const(cls, F: GF, c) -> "XPoly":
        if not isinstance(c, RatFunc):
            c = RatFunc(c) if not isinstance(c, int) else RatFunc.const(F, c)
        return cls(F, {0: c})

    @property
    def degree(self):
        return max(self.coeffs) if self.coeffs else -1

    def coefficient(self, k: int) -> RatFunc:
        c = self.coeffs.get(k)
        return c if c is not None else RatFunc.const(self.field, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _coerce(self, other):
        if isinstance(other, XPoly):
            return other
        return XPoly.const(self.field, other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.coeffs)
        for k, c in o.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return XPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return XPoly(self.field, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if not isinstance(other, XPoly):
            if not isinstance(other, RatFunc):
                other = RatFunc.const(self.field, other) if isinstance(other, int) else RatFunc(other)
            return XPoly(self.field, {k: c * other for k, c in self.coeffs.items()})
        out: dict = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                p = c1 * c2
                out[k] = out[k] + p if k in out else p
        return XPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "XPoly":
        out = XPoly.const(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def truncate(self, n: int) -> "XPoly":
        """Reduce modulo x^n."""
        return XPoly(self.field, {k: c for k, c in self.coeffs.items() if k < n})

    def __call__(self, value):
        """Evaluate by Horner's rule at a RatFunc, ThetaPoly, MultiPoly or XPoly."""
        if not isinstance(value, (XPoly, RatFunc)):
            value = RatFunc.const(self.field, value) if isinstance(value, int) else RatFunc(value)
        acc = XPoly(self.field) if isinstance(value, XPoly) else RatFunc.const(self.field, 0)
        for k in range(self.degree, -1, -1):
            acc = acc * value + self.coefficient(k)
        return acc

    def shift(self, c) -> "XPoly":
        """The polynomial P(x + c)."""
        return self(XPoly.x(self.field) + c)

    def div_linear(self, a) -> tuple["XPoly", RatFunc]:
        """Synthetic division by (x - a): returns (quotient, remainder)."""
        if not isinstance(a, RatFunc):
            a = RatFunc(a)
        n = self.degree
        if n < 0:
            return XPoly(self.field), RatFunc.const(self.field, 0)
        quo: dict = {}
        carry = self.coefficient(n)
        for k in range(n - 1, -1, -1):
            quo[k] = carry
            carry = self.coefficient(k) + carry * a
        return XPoly(self.field, quo), carry

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            other = self._coerce(other)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)

    __hash__ = None

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({self.coeffs[k]})*x^{k}" for k in sorted(self.coeffs, reverse=True))


class EForm(enum.Enum):
    PRODUCT = "product"
    SUM = "sum"


@functools.lru_cache(maxsize=None)
def e_poly(F: GF, d: int, form: EForm = EForm.SUM) -> XPoly:
    """The interpolation polynomial E_d(x) in product or sum form."""
    form = EForm(form)
    if form is EForm.SUM:
        q = F.q
        terms = {}
        for k in range(d + 1):
            terms[q**k] = RatFunc(ThetaPoly.const(F, 1), D(F, k) * ell(F, d - k) ** (q**k))
        return XPoly(F, terms)
    # build prod (x + a) with polynomial coefficients, then divide by D_d
    coeffs = [ThetaPoly.const(F, 1)]
    for a in lower_enum(F, d):
        new = [ThetaPoly.const(F, 0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            new[k + 1] = new[k + 1] + c
            new[k] = new[k] + c * a
        coeffs = new
    Dd = D(F, d)
    return XPoly(F, {k: RatFunc(c, Dd) for k, c in enumerate(coeffs)})


@functools.lru_cache(maxsize=None)
def p_poly(F: GF, d: int, v: Var = Var("t", 1)) -> XPoly:
    """P_d(v, x) = sum_{j<d} b_j(v) E_j(x)."""
    if d < 1:
        raise ValueError("P_d requires d >= 1")
    out = XPoly(F)
    for j in range(d):
        out = out + e_poly(F, j) * RatFunc(b_poly(F, j, v))
    return out


@functools.lru_cache(maxsize=None)
def q_coeff(F: GF, d: int, k: int, v: Var = Var("t", 1)) -> RatFunc:
    """Q_{d,k}(v), the coefficient of x^{q^k} in P_d(v, x)."""
    if not 0 <= k < d:
        raise ValueError(f"Q_{{d,k}} needs 0 <= k < d, got d={d}, k={k}")
    q = F.q
    out = RatFunc.const(F, 0)
    for j in range(k, d):
        out = out + RatFunc(b_poly(F, j, v), D(F, k) * ell(F, j - k) ** (q**k))
    return out


# ---------------------------------------------------------------------------
# power sums of Carlitz type


@functools.lru_cache(maxsize=None)
def _genfun_coeff(F: GF, d: int, k: int) -> RatFunc:
    """Coefficient of x^k in 1/(1 - E_d(x))."""
    if k == 0:
        return RatFunc.const(F, 1)
    E = e_poly(F, d)
    out = RatFunc.const(F, 0)
    for e, c in E.coeffs.items():
        if e <= k:
            out = out + c * _genfun_coeff(F, d, k - e)
    return out


def sd_via_genfun(F: GF, d: int, n: int) -> RatFunc:
    """S_d(n) = sum over monic a of degree d of a^{-n}, read off the generating function of E_d."""
    if d < 0 or n < 1:
        raise ValueError("need d >= 0 and n >= 1")
    for k in range(n):  # fill the cache bottom-up to keep recursion shallow
        _genfun_coeff(F, d, k)
    return _genfun_coeff(F, d, n - 1) / RatFunc(ell(F, d))


def sd_brute(F: GF, d: int, n: int) -> RatFunc:
    """S_d(n) by enumerating A+(d); n may be any integer."""
    if n <= 0:
        return RatFunc(sd_negative(F, d, -n))
    P = ThetaPoly.const(F, 1)
    mons = monic_enum(F, d)
    for a in mons:
        P = P * a
    num = ThetaPoly.const(F, 0)
    for a in mons:
        num = num + P.exact_div(a) ** n
    return RatFunc(num, P**n)


@functools.lru_cache(maxsize=None)
def sd_negative(F: GF, d: int, m: int) -> ThetaPoly:
    """sum of a^m over the monic a of degree d."""
    if d < 0 or m < 0:
        raise ValueError("need d, m >= 0")
    out = ThetaPoly.const(F, 0)
    for a in monic_enum(F, d):
        out = out + a**m
    return out


def digit_sum(m: int, q: int) -> int:
    s = 0
    while m:
        s += m % q
        m //= q
    return s


def goss_zeta_int(F: GF, n: int, N: int = 30):
    """
    Goss zeta at an integer.

    For n > 0 a Laurent series tracking exponents >= -N. For n <= 0 the exact
    polynomial sum_d S_d(n), which is finite.
    """
    if n > 0:
        if N < 1:
            raise ValueError("precision must be positive")
        total = RatFunc.const(F, 0)
        d = 0
        while deg_ell(F.q, d) <= N:
            total = total + sd_via_genfun(F, d, n)
            d += 1
        return Laurent.from_ratfunc(total, N)
    if n == 0:
        return ThetaPoly.const(F, 1)
    m = -n
    stop = digit_sum(m, F.q) // (F.q - 1) + 1
    total = ThetaPoly.const(F, 0)
    for d in range(stop + 1):
        total = total + sd_negative(F, d, m)
    for d in (stop + 1, stop + 2):
        if not sd_negative(F, d, m).is_zero():
            raise ArithmeticError(f"S_{d}({n}) is nonzero beyond the digit-sum bound")
    return total


def zeta_degree_cutoff(F: GF, N: int) -> int:
    """Least d with deg ell_d > N."""
    d = 0
    while deg_ell(F.q, d) <= N:
        d += 1
    return d


# ---------------------------------------------------------------------------
# Perkins' identity


def perkins_sides(F: GF, d: int, J: WeightedSubset) -> tuple[XPoly, XPoly]:
    """Both sides of sum_{a in A_<(d)} chi_J(a) ell_d E_d(x-a)/(x-a) = prod_{j in J} P_d(t_j, x)."""
    if d < 1:
        raise ValueError("need d >= 1")
    if not J.is_plain() or J.card >= F.q:
        raise ValueError("J must be a plain set with |J| < q")
    E = e_poly(F, d)
    ld = RatFunc(ell(F, d))
    lhs = XPoly(F)
    for a in lower_enum(F, d):
        shifted = E.shift(RatFunc(-a))
        quo, rem = shifted.div_linear(RatFunc(a))
        if not rem.is_zero():
            raise ArithmeticError("E_d(x - a) does not vanish at x = a")
        lhs = lhs + quo * (RatFunc(char_eval(J, a)) * ld)
    rhs = XPoly.const(F, 1)
    for n in J.support:
        rhs = rhs * p_poly(F, d, Var("t", n))
    return lhs, rhs


def perkins_check(F: GF, d: int, J: WeightedSubset) -> bool:
    lhs, rhs = perkins_sides(F, d, J)
    return lhs == rhs


def chi_theta_power(F: GF, d: int, v: Var) -> MultiPoly:
    """chi_v(theta^d) = v^d."""
    return subst_theta(ThetaPoly.monomial(F, d), v)


__all__ = [
    "ell", "D", "b_poly", "b_of", "deg_ell", "deg_b", "XPoly", "EForm", "e_poly", "p_poly",
    "q_coeff", "sd_via_genfun", "sd_brute", "sd_negative", "goss_zeta_int", "perkins_check",
    "perkins_sides", "zeta_degree_cutoff", "digit_sum",
]
