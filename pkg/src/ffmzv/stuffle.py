"""
Sum-shuffle expansions of products of power sums and zeta values.

A product of two power sums of the same degree, of a power sum and a prefix
sum, or of two prefix sums is rewritten as an F_q-combination of single
power sums whose coefficients do not depend on the degree. Three modes
select which product is meant:

``DD``     S_d(A) * S_d(B)     = sum c_C S_d(C)
``D_LT``   S_d(A) * S_{<d}(B)  = sum c_C S_d(C)
``LT_LT``  S_{<d}(A) * S_{<d}(B) = sum c_C S_{<d}(C)

The empty array acts as the unit: a product with it returns the other
argument. For prefix sums this holds in every degree d >= 1; for DD and D_LT
it is the zeta-level convention only.
"""

from __future__ import annotations

import enum
import functools

from .algebra import GF
from .arrays import EMPTY, AdmissibleArray, ArrayCombo, Delta_coeff, WeightedSubset


class Mode(enum.Enum):
    DD = "DD"
    D_LT = "D_LT"
    LT_LT = "LT_LT"


def stuffle_depth1(F: GF, S: WeightedSubset, s: int, G: WeightedSubset, t: int) -> ArrayCombo:
    """S_d(S; s) S_d(G; t) as a combination of depth-one and depth-two arrays."""
    if s < 1 or t < 1:
        raise ValueError("exponents must be positive")
    U = S.union(G)
    terms = ArrayCombo.single(F, AdmissibleArray(((U, s + t),)))
    for own, exp in ((G, t), (S, s)):
        for J in own.subsets():
            I = U.difference(J)
            for j in range(1, s + t):
                c = Delta_coeff(F, own, J, j, exp)
                if c:
                    terms = terms.add_term(AdmissibleArray(((I, s + t - j), (J, j))), c)
    return terms


def _dagger_depth1(F: GF, S: WeightedSubset, s: int, G: WeightedSubset, t: int) -> ArrayCombo:
    # b_d(S) b_d(G) = b_d(S + G) depends on the shared top degree only, so the
    # merged type rides on the leading slot of every classical term
    U = S.union(G)
    classical = stuffle_depth1(F, EMPTY, s, EMPTY, t)
    return classical.map_arrays(lambda C: AdmissibleArray(((U, C.slots[0][1]),) + C.slots[1:]))


def _prepend(combo: ArrayCombo, S: WeightedSubset, s: int) -> ArrayCombo:
    return combo.map_arrays(lambda C: C.prepend(S, s))


@functools.lru_cache(maxsize=None)
def _product(F: GF, A: AdmissibleArray, B: AdmissibleArray, mode: Mode, dagger: bool) -> ArrayCombo:
    if not A:
        return ArrayCombo.single(F, B)
    if not B:
        return ArrayCombo.single(F, A)
    if mode is Mode.DD:
        (S, s), (G, t) = A.head, B.head
        rule = _dagger_depth1 if dagger else stuffle_depth1
        rest = _product(F, A.tail, B.tail, Mode.LT_LT, dagger)
        out = ArrayCombo(F)
        for C, c in rule(F, S, s, G, t).items():
            inner = ArrayCombo(F)
            for R, r in rest.items():
                inner = inner + _product(F, C.tail, R, Mode.LT_LT, dagger).scale(r)
            out = out + _prepend(inner, *C.head).scale(c)
        return out
    if mode is Mode.D_LT:
        return _prepend(_product(F, A.tail, B, Mode.LT_LT, dagger), *A.head)
    return (
        _product(F, A, B, Mode.DD, dagger)
        + _product(F, A, B, Mode.D_LT, dagger)
        + _product(F, B, A, Mode.D_LT, dagger)
    )


def stuffle_product(F: GF, A: AdmissibleArray, B: AdmissibleArray, mode: Mode | str = Mode.DD) -> ArrayCombo:
    """Degree-independent expansion of the product selected by ``mode``."""
    return _product(F, A, B, Mode(mode), False)


def dagger_stuffle(F: GF, A: AdmissibleArray, B: AdmissibleArray, mode: Mode | str = Mode.DD) -> ArrayCombo:
    """The same expansion for dagger power sums; needs |type(A) + type(B)| < q."""
    if A.type.union(B.type).card >= F.q:
        raise ValueError("dagger products need |type(A) + type(B)| < q")
    return _product(F, A, B, Mode(mode), True)


def zeta_product_expand(F: GF, S: WeightedSubset, s: int, G: WeightedSubset, t: int) -> ArrayCombo:
    """zeta(S; s) zeta(G; t) as a combination of zeta values."""
    out = stuffle_depth1(F, S, s, G, t)
    out = out + ArrayCombo.single(F, AdmissibleArray(((S, s), (G, t))))
    out = out + ArrayCombo.single(F, AdmissibleArray(((G, t), (S, s))))
    return out
