"""
Per-degree power sums S_d(A) and S_{<d}(A) of admissible arrays.

Three routes are provided:

* ``powersum_brute`` enumerates the monic polynomials of each degree;
* ``powersum_fast`` peels off the head slot, S_d(A) = S_d(Sigma_1; s_1) S_{<d}(tail),
  and computes depth-one slices by the closed form in ``powersum_depth1_fast``;
* ``dagger_powersum`` builds the dagger variant from Carlitz power sums and b_d.

Values are RatFuncs whose denominators involve theta only.
"""

from __future__ import annotations

import functools
import itertools

from .algebra import GF, MultiPoly, RatFunc, ThetaPoly, Var, monic_enum
from .arrays import EMPTY, AdmissibleArray, WeightedSubset, char_eval
from .carlitz import b_of, deg_b, deg_ell, q_coeff, sd_via_genfun


def _zero(F: GF) -> RatFunc:
    return RatFunc.const(F, 0)


def _one(F: GF) -> RatFunc:
    return RatFunc.const(F, 1)


# ---------------------------------------------------------------------------
# enumeration


@functools.lru_cache(maxsize=None)
def _monic_product(F: GF, d: int) -> ThetaPoly:
    out = ThetaPoly.const(F, 1)
    for a in monic_enum(F, d):
        out = out * a
    return out


@functools.lru_cache(maxsize=None)
def slice_brute(F: GF, S: WeightedSubset, s: int, d: int) -> RatFunc:
    """S_d(S; s) = sum over monic a of degree d of chi_S(a)/a^s, by enumeration."""
    P = _monic_product(F, d)
    acc: dict = {}
    for a in monic_enum(F, d):
        cof = P.exact_div(a) ** s
        for m, c in char_eval(S, a).terms.items():
            term = (c * cof).raw
            acc[m] = acc[m] + term if m in acc else term
    num = MultiPoly(F, {m: ThetaPoly(F, r) for m, r in acc.items()})
    return RatFunc(num, P**s)


@functools.lru_cache(maxsize=None)
def powersum_brute(F: GF, A: AdmissibleArray, d: int) -> RatFunc:
    """Sum over monic a_1, ..., a_r with d = deg a_1 > ... > deg a_r of prod chi_i(a_i)/a_i^{s_i}."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    if not A:
        return _one(F) if d == 0 else _zero(F)
    S, s = A.head
    if A.depth - 1 > d:
        return _zero(F)
    head = slice_brute(F, S, s, d)
    if A.depth == 1:
        return head
    return head * powersum_brute_lt(F, A.tail, d)


@functools.lru_cache(maxsize=None)
def powersum_brute_lt(F: GF, A: AdmissibleArray, d: int) -> RatFunc:
    if d <= 0:
        return _zero(F)
    return powersum_brute_lt(F, A, d - 1) + powersum_brute(F, A, d - 1)


def powersum_lt(F: GF, A: AdmissibleArray, d: int, method: str = "brute") -> RatFunc:
    """S_{<d}(A) = sum_{k<d} S_k(A)."""
    if method == "brute":
        return powersum_brute_lt(F, A, d)
    if method == "fast":
        return powersum_fast_lt(F, A, d)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# closed forms for depth one


def _check_plain(F: GF, S: WeightedSubset):
    if not S.is_plain() or S.card >= F.q:
        raise ValueError(f"closed form needs a plain set of size < q, got {S}")


def _q_or_zero(F: GF, d: int, k: int, v: Var) -> RatFunc:
    return q_coeff(F, d, k, v) if k < d else _zero(F)


@functools.lru_cache(maxsize=None)
def powersum_depth1_fast(F: GF, S: WeightedSubset, s: int, d: int) -> RatFunc:
    r"""
    S_d(S; s) from Carlitz power sums, the coefficients Q_{d,k} and b_d.

    For every split S = I + J with I nonempty and every 0 <= k_i < d with
    m = s - sum q^{k_i} >= 1 the term S_d(m) prod_{i in I} Q_{d,k_i}(t_i) b_d(J)
    is added to S_d(s) b_d(S).
    """
    _check_plain(F, S)
    if s < 1 or d < 0:
        raise ValueError("need s >= 1 and d >= 0")
    q = F.q
    out = sd_via_genfun(F, d, s) * RatFunc(b_of(F, d, S))
    for I in S.subsets():
        if not I:
            continue
        J = S.difference(I)
        bJ = RatFunc(b_of(F, d, J))
        for ks in itertools.product(range(d), repeat=I.card):
            m = s - sum(q**k for k in ks)
            if m < 1:
                continue
            term = sd_via_genfun(F, d, m) * bJ
            for n, k in zip(I.support, ks):
                term = term * q_coeff(F, d, k, Var("t", n))
            out = out + term
    return out


@functools.lru_cache(maxsize=None)
def powersum_depth1_gp(F: GF, S: WeightedSubset, s: int, d: int) -> RatFunc:
    r"""
    KNOWN-INCORRECT, for comparison only.

    The earlier published variant: sign (-1)^{|I|}, I ranging over nonempty
    proper subsets, k_i bounded only by positivity of the remaining exponent
    (with Q_{d,k} = 0 for k >= d) and no b_d(J) factor. It disagrees with the
    true power sum as soon as S has two elements. Never used by any
    computational path of this package.
    """
    _check_plain(F, S)
    q = F.q
    out = sd_via_genfun(F, d, s) * RatFunc(b_of(F, d, S))
    for I in S.subsets():
        if not I or I == S:
            continue
        sign = -1 if I.card % 2 else 1
        kmax = 0
        while q ** (kmax + 1) < s:
            kmax += 1
        for ks in itertools.product(range(kmax + 1), repeat=I.card):
            m = s - sum(q**k for k in ks)
            if m < 1:
                continue
            term = sd_via_genfun(F, d, m)
            for n, k in zip(I.support, ks):
                term = term * _q_or_zero(F, d, k, Var("t", n))
            out = out + term * sign
    return out


# ---------------------------------------------------------------------------
# recursion in depth


def _check_fast(F: GF, A: AdmissibleArray):
    for S, _ in A:
        _check_plain(F, S)


@functools.lru_cache(maxsize=None)
def powersum_fast(F: GF, A: AdmissibleArray, d: int) -> RatFunc:
    """S_d(A) = S_d(Sigma_1; s_1) * S_{<d}(tail) with closed-form depth-one slices."""
    _check_fast(F, A)
    if not A:
        return _one(F) if d == 0 else _zero(F)
    if A.depth - 1 > d:
        return _zero(F)
    S, s = A.head
    head = powersum_depth1_fast(F, S, s, d)
    if A.depth == 1:
        return head
    return head * powersum_fast_lt(F, A.tail, d)


@functools.lru_cache(maxsize=None)
def powersum_fast_lt(F: GF, A: AdmissibleArray, d: int) -> RatFunc:
    if d <= 0:
        return _zero(F)
    return powersum_fast_lt(F, A, d - 1) + powersum_fast(F, A, d - 1)


# ---------------------------------------------------------------------------
# dagger power sums


def _check_dagger(F: GF, A: AdmissibleArray):
    if A.type.card >= F.q:
        raise ValueError(f"dagger power sums need |type| < q, got {A.type}")


@functools.lru_cache(maxsize=None)
def dagger_slot(F: GF, S: WeightedSubset, s: int, d: int) -> RatFunc:
    """S_d(s) b_d(S)."""
    return sd_via_genfun(F, d, s) * RatFunc(b_of(F, d, S))


def dagger_powersum(F: GF, A: AdmissibleArray, d: int) -> RatFunc:
    """Sum over degree flags d = d_1 > ... > d_r >= 0 of prod S_{d_i}(s_i) b_{d_i}(Sigma_i)."""
    _check_dagger(F, A)
    return _dagger(F, A, d)


def dagger_lt(F: GF, A: AdmissibleArray, d: int) -> RatFunc:
    _check_dagger(F, A)
    out = _zero(F)
    for k in range(d):
        out = out + _dagger(F, A, k)
    return out


@functools.lru_cache(maxsize=None)
def _dagger(F: GF, A: AdmissibleArray, d: int) -> RatFunc:
    if not A:
        return _one(F) if d == 0 else _zero(F)
    out = _zero(F)
    for flag in itertools.combinations(range(d - 1, -1, -1), A.depth - 1):
        term = _one(F)
        for (S, s), di in zip(A, (d,) + flag):
            term = term * dagger_slot(F, S, s, di)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# certified valuations


def valuation_bound(F: GF, A: AdmissibleArray, d: int):
    """
    A lower bound for v_inf of every t-coefficient of S_d(A).

    Each term chi(a)/a^s contributes at least s*d. When the head type has
    c = |Sigma_1| < q elements the closed form gives the sharper bound
    (q^d - 1)(q - c)/(q - 1), because S_d(m) has valuation at least
    deg ell_d, every Q_{d,k} has nonnegative valuation and each b_d factor
    costs at most deg b_d. The tail factor S_{<d} has nonnegative valuation.
    """
    q = F.q
    if not A:
        return 0 if d == 0 else float("inf")
    S, s = A.head
    bound = s * d
    c = S.card
    if c < q:
        bound = max(bound, deg_ell(q, d) - c * deg_b(q, d))
    return bound


def dagger_valuation_bound(F: GF, A: AdmissibleArray, d: int):
    """Same bound for S^dagger_d(A): its head slot is S_d(s_1) b_d(Sigma_1)."""
    if not A:
        return 0 if d == 0 else float("inf")
    S, s = A.head
    return deg_ell(F.q, d) - S.card * deg_b(F.q, d)


def coefficient_valuations(x: RatFunc) -> dict:
    """v_inf of each t-coefficient of a RatFunc with theta-only denominator."""
    den = x.theta_den()
    return {m: den.degree - c.degree for m, c in x.num.terms.items()}


__all__ = [
    "powersum_brute", "powersum_brute_lt", "powersum_lt", "slice_brute", "powersum_depth1_fast",
    "powersum_depth1_gp", "powersum_fast", "powersum_fast_lt", "dagger_powersum", "dagger_lt",
    "dagger_slot", "valuation_bound", "dagger_valuation_bound", "coefficient_valuations", "EMPTY",
]
