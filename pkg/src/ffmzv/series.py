"""
Precision-certified truncations of the infinite objects: zeta values,
polylogarithms, dagger zeta values and the eta functions.

Every series here is a sum over degrees d of exact per-degree values in
K[t_1, ...]. A ``DegreeSeries`` couples the per-degree term with a lower
bound on the valuation of its coefficients, which decides where to stop.
Per-degree values are summed exactly and embedded into K_inf only once.
Evaluation at t_n = theta^(q^i) substitutes into each exact per-degree value
before summing, never into already truncated coefficients.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable

from .algebra import (
    GF, ONE_MONO, FqElem, Monomial, RatFunc, ThetaPoly, Var,
    mono_mul, mono_pow, mono_sort_key, mono_str,
)
from .arrays import AdmissibleArray, WeightedSubset
from .carlitz import D, b_poly, deg_b, deg_ell, goss_zeta_int, sd_via_genfun, zeta_degree_cutoff
from .laurent import Laurent
from .powersums import (
    _dagger, _check_dagger, powersum_brute, powersum_depth1_fast, powersum_fast,
)


class DivergenceError(ArithmeticError):
    """No certified truncation degree exists for the requested evaluation."""


DEFAULT_PREC = 30
MAX_DEGREE = 12


# ---------------------------------------------------------------------------
# truncated elements of the Tate algebra


class TateElem:
    """
    A finitely supported map monomial -> Laurent.

    ``N`` is the requested precision and ``achieved`` the certified one: every
    coefficient, including those of absent monomials, is known for exponents
    >= -achieved.
    """

    __slots__ = ("field", "terms", "N", "achieved", "type")

    def __init__(self, field: GF, terms: dict | None = None, N: int = DEFAULT_PREC,
                 achieved: int | None = None, type: WeightedSubset | None = None):
        self.field = field
        self.N = N
        self.achieved = N if achieved is None else achieved
        self.type = type
        floor = -self.achieved - 1
        clean = {}
        for m, c in (terms or {}).items():
            c = c.truncate(floor)
            if not c.is_zero_to_prec():
                clean[m] = c
        self.terms = clean

    @classmethod
    def from_exact(cls, x: RatFunc, N: int, achieved: int | None = None, type=None) -> "TateElem":
        """Embed an exact value whose denominator involves theta only."""
        prec = N if achieved is None else achieved
        terms = {m: Laurent.from_ratfunc(c, prec) for m, c in x.coefficients().items()}
        return cls(x.field, terms, N, prec, type)

    @classmethod
    def const(cls, F: GF, c, N: int = DEFAULT_PREC) -> "TateElem":
        return cls.from_exact(RatFunc.const(F, c) if not isinstance(c, RatFunc) else c, N)

    @property
    def floor(self) -> int:
        return -self.achieved - 1

    def coefficient(self, m: Monomial) -> Laurent:
        return self.terms.get(m, Laurent.zero(self.field, self.floor))

    def monomials(self) -> list:
        return sorted(self.terms, key=mono_sort_key)

    def is_zero_to_prec(self) -> bool:
        return not self.terms

    def residual_valuation(self):
        """Least valuation among nonzero tracked terms, else the certified floor."""
        if not self.terms:
            return self.achieved + 1
        return min(c.residual_valuation() for c in self.terms.values())

    def _min_valuation(self):
        vals = [c.valuation for c in self.terms.values()]
        return min(vals) if vals else math.inf

    def _combine(self, other) -> dict:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return out

    def __add__(self, other):
        if not isinstance(other, TateElem):
            return NotImplemented
        achieved = min(self.achieved, other.achieved)
        return TateElem(self.field, self._combine(other), min(self.N, other.N), achieved,
                        _merge_type(self.type, other.type))

    def __neg__(self):
        return TateElem(self.field, {m: -c for m, c in self.terms.items()}, self.N, self.achieved, self.type)

    def __sub__(self, other):
        if not isinstance(other, TateElem):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "TateElem":
        c = c if isinstance(c, FqElem) else self.field(c)
        return TateElem(self.field, {m: v.scale(c) for m, v in self.terms.items()}, self.N, self.achieved, self.type)

    def __mul__(self, other):
        if isinstance(other, (int, FqElem)):
            return self.scale(other)
        if not isinstance(other, TateElem):
            return NotImplemented
        # an unknown tail of one factor meets every coefficient of the other
        va, vb = self._min_valuation(), other._min_valuation()
        achieved = min(self.achieved + min(vb, 0) if vb != math.inf else self.achieved,
                       other.achieved + min(va, 0) if va != math.inf else other.achieved)
        out: dict = {}
        for (ma, ca), (mb, cb) in itertools.product(self.terms.items(), other.terms.items()):
            m = mono_mul(ma, mb)
            prod = ca * cb
            out[m] = out[m] + prod if m in out else prod
        return TateElem(self.field, out, min(self.N, other.N), achieved, _merge_type(self.type, other.type))

    __rmul__ = __mul__

    def frobenius(self, k: int = 1) -> "TateElem":
        """Raise to the power Q = q^k: coefficients twisted, monomials and floors scaled."""
        Q = self.field.q**k
        terms = {mono_pow(m, Q): c.frobenius(k) for m, c in self.terms.items()}
        achieved = (self.achieved + 1) * Q - 1
        return TateElem(self.field, terms, self.N * Q, achieved, self.type)

    def agrees_with(self, other: "TateElem") -> bool:
        return (self - other).is_zero_to_prec()

    def sum_coefficients(self) -> Laurent:
        """Specialize every auxiliary variable to 1."""
        total = Laurent.zero(self.field, self.floor)
        for c in self.terms.values():
            total = total + c
        return total

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "achieved": self.achieved,
            "terms": [{"monomial": mono_str(m), "laurent": self.terms[m].to_json()} for m in self.monomials()],
        }

    def __str__(self):
        if not self.terms:
            return f"O(θ^({self.floor}))"
        parts = []
        for m in self.monomials():
            ms = mono_str(m)
            body = str(self.terms[m])
            parts.append(body if m == ONE_MONO else f"[{ms}]*({body})")
        return "\n".join(parts)

    def __repr__(self):
        return f"TateElem(N={self.N}, achieved={self.achieved}, {len(self.terms)} terms)"


def _merge_type(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a.union(b)


# ---------------------------------------------------------------------------
# series given degree by degree


@dataclass
class DegreeSeries:
    """
    sum_d term(d), with a certified valuation profile.

    The coefficients of term(d) have valuation at least
    ``offset + max(linear*d, (q^d - 1)(q - card)/(q - 1))`` (the exponential
    part only counts when card < q) and degree in each variable v at most
    ``tdeg[v][0]*d + tdeg[v][1]``.
    """

    field: GF
    term: Callable[[int], RatFunc]
    variables: tuple
    offset: int = 0
    card: int | None = 0
    linear: int = 0
    tdeg: dict = dc_field(default_factory=dict)
    type: WeightedSubset | None = None

    def _exp_part(self, d: int):
        q = self.field.q
        if self.card is None or self.card >= q:
            return None
        return self.offset + (q**d - 1) * (q - self.card) // (q - 1)

    def bound(self, d: int):
        parts = [self.offset + self.linear * d]
        e = self._exp_part(d)
        if e is not None:
            parts.append(e)
        return max(parts)

    def _loss(self, Qs: dict, d: int) -> tuple[int, int]:
        slope = sum(Q * self.tdeg.get(v, (0, 0))[0] for v, Q in Qs.items())
        shift = sum(Q * self.tdeg.get(v, (0, 0))[1] for v, Q in Qs.items())
        return slope, slope * d + shift

    def cutoff(self, N: int, Qs: dict | None = None, max_degree: int = MAX_DEGREE) -> int:
        """
        Least d such that every degree >= d is certified to have coefficient
        valuation > N after substituting t_v -> theta^Qs[v].
        """
        q = self.field.q
        Qs = Qs or {}
        worst = None
        for d in range(max_degree + 1):
            slope, loss = self._loss(Qs, d)
            e = self._exp_part(d)
            if e is not None and e - loss > N and q**d * (q - self.card) >= slope:
                return d
            if self.offset + self.linear * d - loss > N and self.linear >= slope:
                return d
            worst = (d, max(self.bound(d) - loss, self.offset + self.linear * d - loss))
        d, v = worst
        raise DivergenceError(
            f"no certified cutoff up to degree {d}: the valuation bound there is {v}, not above {N}"
        )

    def exact_sum(self, dmax: int) -> RatFunc:
        total = RatFunc.const(self.field, 0)
        for d in range(dmax):
            total = total + self.term(d)
        return total

    def truncate(self, N: int = DEFAULT_PREC, max_degree: int = MAX_DEGREE, dmax: int | None = None) -> TateElem:
        """Sum below the certified cutoff, or below ``dmax`` with the precision that degree certifies."""
        if dmax is None:
            dmax = self.cutoff(N, max_degree=max_degree)
            return TateElem.from_exact(self.exact_sum(dmax), N, type=self.type)
        # the bound is nondecreasing in d, so degree dmax bounds every omitted term
        achieved = min(N, self.bound(dmax) - 1)
        return TateElem.from_exact(self.exact_sum(dmax), N, achieved, type=self.type)

    def evaluate(self, points: dict, N: int = DEFAULT_PREC, max_degree: int = MAX_DEGREE) -> Laurent:
        """Substitute v -> theta^points[v] degree by degree, sum, then embed."""
        Qs = {v: e for v, e in points.items()}
        dmax = self.cutoff(N, Qs, max_degree)
        F = self.field
        total = RatFunc.const(F, 0)
        for d in range(dmax):
            x = self.term(d)
            for v, e in Qs.items():
                x = x.subs(v, ThetaPoly.monomial(F, e))
            total = total + x
        if not total.is_theta_only():
            raise ValueError("evaluation left free variables: " + ", ".join(map(str, total.variables())))
        return Laurent.from_ratfunc(total, N)


def _type_tdeg(A: AdmissibleArray) -> dict:
    return {Var("t", n): (A.type.multiplicity(n), 0) for n in A.type.support}


def _fast_ok(F: GF, A: AdmissibleArray) -> bool:
    return all(S.is_plain() and S.card < F.q for S, _ in A)


def zeta_series(F: GF, A: AdmissibleArray, method: str = "auto") -> DegreeSeries:
    """The degree-by-degree form of zeta_A(A)."""
    if method == "auto":
        method = "fast" if _fast_ok(F, A) else "brute"
    if method == "fast":
        term = functools.partial(powersum_fast, F, A)
    elif method == "brute":
        term = functools.partial(powersum_brute, F, A)
    else:
        raise ValueError(f"unknown method {method!r}")
    variables = tuple(Var("t", n) for n in A.type.support)
    if not A:
        return DegreeSeries(F, term, variables, offset=0, card=None, linear=0, type=A.type)
    S, s = A.head
    return DegreeSeries(F, term, variables, offset=0, card=S.card, linear=s, tdeg=_type_tdeg(A), type=A.type)


def zeta_value(F: GF, A: AdmissibleArray, N: int = DEFAULT_PREC, method: str = "auto",
               max_degree: int = MAX_DEGREE, dmax: int | None = None) -> TateElem:
    """
    zeta_A(A) truncated at precision N.

    The sum runs over d below the least degree whose valuation bound exceeds N;
    ``method`` selects the per-degree route (``brute``, ``fast`` or ``auto``).
    An explicit ``dmax`` sums d < dmax and lowers the achieved precision if needed.
    """
    if not A:
        return TateElem.const(F, 1, N)
    return zeta_series(F, A, method).truncate(N, max_degree, dmax)


def zeta_cutoff(F: GF, A: AdmissibleArray, N: int = DEFAULT_PREC) -> int:
    """Number of degrees summed by zeta_value."""
    if not A:
        return 1
    return zeta_series(F, A).cutoff(N)


# ---------------------------------------------------------------------------
# polylogarithms


def _flag_monomial(F: GF, A: AdmissibleArray, flag) -> Monomial:
    m = ONE_MONO
    for (S, _), d in zip(A, flag):
        for n, sigma in S.items:
            m = mono_mul(m, ((Var("X", n), sigma * F.q**d),))
    return m


def lambda_coefficients(F: GF, A: AdmissibleArray, dlimit: int) -> dict:
    """Exact X-coefficients of lambda_A(A) over flags d_1 > ... > d_r >= 0 with d_1 < dlimit."""
    out: dict = {}
    for flag in itertools.combinations(range(dlimit - 1, -1, -1), A.depth):
        c = RatFunc.const(F, 1)
        for (_, s), d in zip(A, flag):
            c = c * sd_via_genfun(F, d, s)
        m = _flag_monomial(F, A, flag)
        out[m] = out[m] + c if m in out else c
    return {m: c for m, c in out.items() if not c.is_zero()}


def lambda_value(F: GF, A: AdmissibleArray, N: int = DEFAULT_PREC, dmax: int | None = None) -> TateElem:
    """
    lambda_A(A) truncated at precision N.

    Every omitted flag has d_1 >= dmax and a coefficient of valuation at least
    deg ell_{dmax}; by default dmax is the least degree with deg ell > N. An
    override lowers the certified precision accordingly.
    """
    if not A:
        return TateElem.const(F, 1, N)
    if dmax is None:
        dmax = zeta_degree_cutoff(F, N)
    achieved = min(N, deg_ell(F.q, dmax) - 1)
    coeffs = lambda_coefficients(F, A, dmax)
    terms = {m: Laurent.from_ratfunc(c, achieved) for m, c in coeffs.items()}
    return TateElem(F, terms, N, achieved, A.type)


# ---------------------------------------------------------------------------
# dagger zeta values


def dagger_series(F: GF, A: AdmissibleArray) -> DegreeSeries:
    _check_dagger(F, A)
    term = functools.partial(_dagger, F, A)
    variables = tuple(Var("t", n) for n in A.type.support)
    if not A:
        return DegreeSeries(F, term, variables, card=None)
    S, _ = A.head
    # head factor S_d(s_1) b_d(Sigma_1): valuation >= deg ell_d - |Sigma_1| deg b_d
    return DegreeSeries(F, term, variables, card=S.card, tdeg=_type_tdeg(A), type=A.type)


def dagger_zeta(F: GF, A: AdmissibleArray, N: int = DEFAULT_PREC) -> TateElem:
    """zeta^dagger(A) truncated at precision N; needs |type(A)| < q."""
    if not A:
        return TateElem.const(F, 1, N)
    return dagger_series(F, A).truncate(N)


# ---------------------------------------------------------------------------
# eta functions


@dataclass
class EtaValue:
    """eta_k(t) = b_k(t) zeta_A(t; q^k) / D_k, truncated and degree by degree."""

    k: int
    var: Var
    value: TateElem
    series: DegreeSeries

    def evaluate(self, i: int, N: int | None = None) -> Laurent:
        return tate_eval(self.series.field, self, (i,), self.value.N if N is None else N)


def eta_series_degrees(F: GF, k: int, n: int = 1) -> DegreeSeries:
    v = Var("t", n)
    S = WeightedSubset.of(n)
    bk = RatFunc(b_poly(F, k, v))
    Dk = RatFunc(D(F, k))

    def term(d: int) -> RatFunc:
        return bk * powersum_depth1_fast(F, S, F.q**k, d) / Dk

    # S_d({n}; q^k) loses at most deg b_d against deg ell_d, b_k costs deg b_k
    # and 1/D_k gains k q^k
    offset = k * F.q**k - deg_b(F.q, k)
    return DegreeSeries(F, term, (v,), offset=offset, card=1, tdeg={v: (1, k)}, type=S)


def eta_series(F: GF, k: int, N: int = DEFAULT_PREC, n: int = 1) -> EtaValue:
    if k < 0:
        raise ValueError("k must be non-negative")
    ser = eta_series_degrees(F, k, n)
    return EtaValue(k, Var("t", n), ser.truncate(N), ser)


def eta_eval(F: GF, k: int, i: int) -> RatFunc:
    """eta_k(theta^(q^i)) computed exactly."""
    if k < 0 or i < 0:
        raise ValueError("k and i must be non-negative")
    q = F.q
    b = b_poly(F, k, Var("t", 1)).subs(Var("t", 1), ThetaPoly.monomial(F, q**i)).theta_part()
    if i < k:
        # theta^(q^i) is a root of b_k
        if not b.is_zero():
            raise ArithmeticError("b_k does not vanish at a root")
        return RatFunc.const(F, 0)
    z = goss_zeta_int(F, q**k - q**i)
    return RatFunc(b * z) / RatFunc(D(F, k))


def special_zeta_array(F: GF, k: int, n: int = 1) -> AdmissibleArray:
    """({n}|1), (∅|q-1), (∅|(q-1)q), ..., (∅|(q-1)q^(k-1))."""
    q = F.q
    slots = [(WeightedSubset.of(n), 1)] + [(WeightedSubset(()), (q - 1) * q**j) for j in range(k)]
    return AdmissibleArray(tuple(slots))


def special_zeta_check(F: GF, k: int, N: int = DEFAULT_PREC) -> tuple[bool, object]:
    """
    Compare (-1)^k eta_k(t) with the zeta value of special_zeta_array(k).

    Returns (agree, residual valuation of the difference).
    """
    lhs = eta_series(F, k, N).value.scale((-1) ** k)
    rhs = zeta_value(F, special_zeta_array(F, k), N)
    diff = lhs - rhs
    return diff.is_zero_to_prec(), diff.residual_valuation()


# ---------------------------------------------------------------------------
# evaluation at t = theta^(q^i)


def tate_eval(F: GF, obj, i_tuple, N: int = DEFAULT_PREC, method: str = "auto") -> Laurent:
    """
    Evaluate at t_n = theta^(q^(i_n)), the variables taken in increasing order.

    ``obj`` is an AdmissibleArray (its zeta value), an EtaValue or a
    DegreeSeries. For eta_k at i > k the exact negative zeta route is used.
    """
    i_tuple = tuple(i_tuple)
    if isinstance(obj, EtaValue):
        (i,) = i_tuple
        if i > obj.k:
            return Laurent.from_ratfunc(eta_eval(F, obj.k, i), N)
        ser = obj.series
    elif isinstance(obj, AdmissibleArray):
        ser = zeta_series(F, obj, method)
    elif isinstance(obj, DegreeSeries):
        ser = obj
    else:
        raise TypeError(f"cannot evaluate {type(obj).__name__}")
    if len(i_tuple) != len(ser.variables):
        raise ValueError(f"expected {len(ser.variables)} evaluation indices, got {len(i_tuple)}")
    points = {v: F.q**i for v, i in zip(ser.variables, i_tuple)}
    return ser.evaluate(points, N)


__all__ = [
    "TateElem", "DegreeSeries", "EtaValue", "DivergenceError", "zeta_series", "zeta_value", "zeta_cutoff",
    "lambda_coefficients", "lambda_value", "dagger_series", "dagger_zeta", "eta_series", "eta_series_degrees", "eta_eval",
    "special_zeta_array", "special_zeta_check", "tate_eval",
]
