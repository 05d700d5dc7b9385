"""
Truncated Laurent series in 1/theta with a hard precision floor.

A value is ``sum_{e > floor} c_e theta^e + O(theta^floor)``: every exponent
at or below ``floor`` is unknown. Internally the tracked coefficients are a
FLINT polynomial in y = 1/theta, with the coefficient of y^k standing for
theta^(top - k).
"""

from __future__ import annotations

import math

from .algebra import GF, FqElem, RatFunc, ThetaPoly, elem_str


class PrecisionError(ArithmeticError):
    """Inversion of a series whose tracked coefficients all vanish."""


class Laurent:
    __slots__ = ("field", "top", "floor", "_c")

    def __init__(self, field: GF, top: int, floor: int, raw):
        self.field = field
        self.top = top
        self.floor = floor
        self._c = raw
        self._normalize()

    def _normalize(self):
        length = self.top - self.floor
        if length <= 0:
            self.top, self._c = self.floor + 1, self.field.poly_ctx([])
            return
        c = self._c.truncate(length) if self._c.degree() >= length else self._c
        if c.is_zero():
            self.top, self._c = self.floor + 1, c
            return
        coeffs = c.coeffs()
        k = 0
        while coeffs[k].is_zero():
            k += 1
        if k:
            c = c.right_shift(k)
            self.top -= k
        self._c = c

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, F: GF, floor: int) -> "Laurent":
        return cls(F, floor + 1, floor, F.poly_ctx([]))

    @classmethod
    def from_thetapoly(cls, a: ThetaPoly, prec: int) -> "Laurent":
        return cls.from_ratfunc(RatFunc(a), prec)

    @classmethod
    def from_ratfunc(cls, x: RatFunc, prec: int) -> "Laurent":
        """Expansion of an element of K, tracking every exponent >= -prec."""
        F = x.field
        if not x.is_theta_only():
            raise ValueError("only elements of K embed into K_inf")
        floor = -prec - 1
        if x.is_zero():
            return cls.zero(F, floor)
        n, d = x.theta_num(), x.theta_den()
        top = n.degree - d.degree
        length = top - floor
        if length <= 0:
            return cls.zero(F, floor)
        rn = n.raw.reverse()
        rd = d.raw.reverse()
        series = rn.mul_low(rd.inverse_series_trunc(length), length)
        return cls(F, top, floor, series)

    # accessors ----------------------------------------------------------

    def is_zero_to_prec(self) -> bool:
        return self._c.is_zero()

    @property
    def valuation(self):
        """v_inf of the leading tracked term; +inf when nothing nonzero is tracked."""
        return math.inf if self._c.is_zero() else -self.top

    def residual_valuation(self):
        """v_inf of the first nonzero tracked term, else the valuation guaranteed by the floor."""
        return -self.top if not self._c.is_zero() else -self.floor

    @property
    def lead_exponent(self) -> int:
        """Exponent of the leading nonzero term, or the floor for a zero series."""
        return self.floor if self._c.is_zero() else self.top

    def coefficient(self, e: int) -> FqElem:
        if e <= self.floor:
            raise PrecisionError(f"exponent {e} is below the precision floor {self.floor}")
        F = self.field
        if e > self.top:
            return F.zero()
        k = self.top - e
        cs = self._c.coeffs()
        return FqElem(F, F.code_of(cs[k])) if k < len(cs) else F.zero()

    def terms(self) -> list[tuple[int, FqElem]]:
        """Nonzero tracked terms as (exponent, coefficient), exponents descending."""
        F = self.field
        out = []
        for k, c in enumerate(self._c.coeffs()):
            if not c.is_zero():
                out.append((self.top - k, FqElem(F, F.code_of(c))))
        return out

    def truncate(self, floor: int) -> "Laurent":
        """Forget every exponent <= floor (only ever lowers precision)."""
        if floor <= self.floor:
            return self
        return Laurent(self.field, self.top, floor, self._c)

    # arithmetic ---------------------------------------------------------

    def _aligned(self, top: int, length: int):
        shift = top - self.top
        c = self._c.left_shift(shift) if shift > 0 else self._c
        return c.truncate(length) if c.degree() >= length else c

    def __add__(self, other):
        if not isinstance(other, Laurent):
            return NotImplemented
        floor = max(self.floor, other.floor)
        top = max(self.top, other.top, floor + 1)
        length = top - floor
        c = self._aligned(top, length) + other._aligned(top, length)
        return Laurent(self.field, top, floor, c)

    def __neg__(self):
        return Laurent(self.field, self.top, self.floor, -self._c)

    def __sub__(self, other):
        if not isinstance(other, Laurent):
            return NotImplemented
        return self + (-other)

    def scale(self, c: FqElem) -> "Laurent":
        return Laurent(self.field, self.top, self.floor, self._c * c.raw)

    def __mul__(self, other):
        if isinstance(other, FqElem):
            return self.scale(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        ta, tb = self.lead_exponent, other.lead_exponent
        floor = max(self.floor + tb, other.floor + ta)
        if self._c.is_zero() or other._c.is_zero():
            return Laurent.zero(self.field, floor)
        top = ta + tb
        length = top - floor
        if length <= 0:
            return Laurent.zero(self.field, floor)
        return Laurent(self.field, top, floor, self._c.mul_low(other._c, length))

    def inv(self) -> "Laurent":
        if self._c.is_zero():
            raise PrecisionError("cannot invert a series with no nonzero tracked term")
        length = self.top - self.floor
        return Laurent(self.field, -self.top, self.floor - 2 * self.top, self._c.inverse_series_trunc(length))

    def __truediv__(self, other):
        if not isinstance(other, Laurent):
            return NotImplemented
        return self * other.inv()

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            return self.inv() ** (-n)
        if n == 0:
            return Laurent(self.field, 0, self.floor - self.lead_exponent, self.field.poly_ctx([1]))
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, k: int = 1) -> "Laurent":
        """Raise to the power Q = q^k by twisting coefficients and scaling exponents."""
        F = self.field
        Q = F.q**k
        if self._c.is_zero():
            return Laurent.zero(F, self.floor * Q)
        ctx = F.poly_ctx
        out = [F.raw_elements[0]] * ((len(self._c.coeffs()) - 1) * Q + 1)
        for i, c in enumerate(self._c.coeffs()):
            out[i * Q] = c**Q
        # the unknown tail sum_{e<=floor} c_e theta^e becomes sum c_e^Q theta^{eQ}
        return Laurent(F, self.top * Q, self.floor * Q, ctx(out))

    # comparison and serialization --------------------------------------

    def agrees_with(self, other: "Laurent") -> bool:
        return (self - other).is_zero_to_prec()

    def __eq__(self, other):
        if not isinstance(other, Laurent):
            return NotImplemented
        return (self.field, self.top, self.floor) == (other.field, other.top, other.floor) and self._c == other._c

    def __hash__(self):
        return hash((self.top, self.floor, self._c))

    def to_json(self) -> dict:
        F = self.field
        length = self.top - self.floor
        cs = [F.code_of(c) for c in self._c.coeffs()]
        cs += [0] * (length - len(cs))
        return {"top": self.top, "floor": self.floor, "coeffs": cs}

    @classmethod
    def from_json(cls, F: GF, data: dict) -> "Laurent":
        raw = F.poly_ctx([F.raw_elements[c] for c in data["coeffs"]])
        return cls(F, data["top"], data["floor"], raw)

    def __str__(self):
        parts = []
        for e, c in self.terms():
            cs = elem_str(c)
            if e == 0:
                parts.append(cs)
            else:
                mon = "θ" if e == 1 else f"θ^{e}" if e > 0 else f"θ^({e})"
                parts.append(mon if cs == "1" else f"{cs}*{mon}")
        parts.append(f"O(θ^({self.floor}))" if self.floor < 0 else f"O(θ^{self.floor})")
        return " + ".join(parts)

    def __repr__(self):
        return f"Laurent({self})"


def from_ratfunc(x: RatFunc, prec: int) -> Laurent:
    return Laurent.from_ratfunc(x, prec)


def is_zero_to_prec(x: Laurent) -> bool:
    return x.is_zero_to_prec()


def residual_valuation(x: Laurent):
    return x.residual_valuation()
