"""
Exact arithmetic over F_q, F_q[theta], multivariate polynomials in theta and
auxiliary variables, and rational functions.

Univariate theta-polynomials are backed by FLINT (``fq_default_poly``).
Multivariate polynomials are sparse dicts mapping a monomial in the auxiliary
variables to its theta-polynomial coefficient, so every multivariate object
is a polynomial over F_q[theta].

EXAMPLES::

    >>> F = GF(3)
    >>> th = ThetaPoly.theta(F)
    >>> t1 = MultiPoly.var(F, Var("t", 1))
    >>> x = RatFunc(t1 - th, th - th**3)
    >>> x.subs(Var("t", 1), th**3) == RatFunc(th**3 - th, th - th**3)
    True
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field

import ctypes

import flint

NEG_INF = -math.inf
"""Degree of the zero polynomial."""

FAMILIES = ("t", "X", "T")


class PoleError(ZeroDivisionError):
    """A denominator vanished identically after substitution."""


def _pin(obj):
    # python-flint 0.9 may free a context before polynomials that still use it
    # when both sit in a garbage-collected cycle (e.g. inside an lru_cache);
    # contexts are tiny, so keep them alive for the life of the process.
    ctypes.pythonapi.Py_IncRef(ctypes.py_object(obj))
    return obj


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class GF:
    r"""
    The finite field F_q with q = p^m.

    ``modulus`` lists the coefficients (lowest first) of a monic irreducible
    polynomial of degree m over F_p. Elements are encoded by the integer
    ``sum c_i p^i`` of their coordinates in the basis 1, x, ..., x^{m-1}, so
    the prime subfield is encoded by 0, ..., p-1.

    When m > 1 and no modulus is given, the lexicographically first monic
    irreducible polynomial is used.
    """

    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = None
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise ValueError("extension degree must be at least 1")
        if self.m == 1:
            object.__setattr__(self, "modulus", None)
            return
        R = flint.fmpz_mod_poly_ctx(self.p)
        if self.modulus is None:
            for tail in itertools.product(range(self.p), repeat=self.m):
                cand = tuple(reversed(tail)) + (1,)
                if R(list(cand)).is_irreducible():
                    object.__setattr__(self, "modulus", cand)
                    break
        mod = tuple(int(c) % self.p for c in self.modulus)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {self.m}")
        if not R(list(mod)).is_irreducible():
            raise ValueError(f"modulus {mod} is not irreducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @classmethod
    def of_order(cls, q: int, modulus=None) -> "GF":
        """Field with ``q`` elements; ``q`` must be a prime power."""
        for p in range(2, q + 1):
            if q % p == 0:
                break
        else:
            raise ValueError(f"{q} is not a prime power")
        m, r = 0, q
        while r % p == 0:
            r //= p
            m += 1
        if r != 1 or not _is_prime(p):
            raise ValueError(f"{q} is not a prime power")
        return cls(p, m, tuple(modulus) if modulus is not None else None)

    @property
    def q(self) -> int:
        return self.p**self.m

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    # flint plumbing -----------------------------------------------------

    @property
    def ctx(self):
        c = self._cache.get("ctx")
        if c is None:
            if self.m == 1:
                c = flint.fq_default_ctx(self.p, 1)
            else:
                M = _pin(flint.fmpz_mod_poly_ctx(self.p))
                c = flint.fq_default_ctx(self.p, self.m, var="x", modulus=M(list(self.modulus)))
            self._cache["ctx"] = _pin(c)
        return c

    @property
    def poly_ctx(self):
        c = self._cache.get("poly_ctx")
        if c is None:
            c = flint.fq_default_poly_ctx(self.ctx)
            self._cache["poly_ctx"] = _pin(c)
        return c

    @property
    def raw_elements(self) -> list:
        """FLINT elements indexed by their integer encoding."""
        e = self._cache.get("elems")
        if e is None:
            p = self.p
            e = []
            for code in range(self.q):
                digits = [(code // p**i) % p for i in range(self.m)]
                e.append(self.ctx(digits))
            self._cache["elems"] = e
            self._cache["codes"] = {x: i for i, x in enumerate(e)}
        return e

    def code_of(self, raw) -> int:
        self.raw_elements
        return self._cache["codes"][raw]

    def __call__(self, n) -> "FqElem":
        """The image of an integer in the prime subfield."""
        if isinstance(n, FqElem):
            return n
        return FqElem(self, int(n) % self.p)

    def elements(self) -> list["FqElem"]:
        return [FqElem(self, c) for c in range(self.q)]

    def units(self) -> list["FqElem"]:
        return [FqElem(self, c) for c in range(1, self.q)]

    def from_code(self, code: int) -> "FqElem":
        """Element with the given integer encoding (any code in range(q))."""
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FqElem(self, code)

    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    def one(self) -> "FqElem":
        return FqElem(self, 1)

    def generator(self) -> "FqElem":
        """The class of x in F_p[x]/(modulus); equals 1 when m = 1."""
        return FqElem(self, self.p if self.m > 1 else 1)


class FqElem:
    """An element of F_q, stored by its integer encoding."""

    __slots__ = ("field", "code")

    def __init__(self, field: GF, code: int):
        self.field = field
        self.code = code

    @property
    def raw(self):
        return self.field.raw_elements[self.code]

    def _wrap(self, raw) -> "FqElem":
        return FqElem(self.field, self.field.code_of(raw))

    def _coerce(self, other) -> "FqElem":
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return FqElem(self.field, other % self.field.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.raw + o.raw)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.raw)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.raw - o.raw)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.raw * o.raw)

    __rmul__ = __mul__

    def inv(self) -> "FqElem":
        if self.code == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self._wrap(self.raw ** -1)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        if self.code == 0:
            return FqElem(self.field, 1 if n == 0 else 0)
        return self._wrap(self.raw ** (n % (self.field.q - 1)))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash(self.code)

    def __int__(self):
        return self.code

    def __repr__(self):
        return str(self.code)


def fq_add(x: FqElem, y: FqElem) -> FqElem:
    return x + y


def fq_mul(x: FqElem, y: FqElem) -> FqElem:
    return x * y


def fq_inv(x: FqElem) -> FqElem:
    return x.inv()


def fq_pow(x: FqElem, n: int) -> FqElem:
    return x**n


def elem_str(c: FqElem) -> str:
    """Coefficient text: the integer code for prime fields, a polynomial in x otherwise."""
    F = c.field
    if F.m == 1:
        return str(c.code)
    digits = [(c.code // F.p**i) % F.p for i in range(F.m)]
    parts = []
    for i in reversed(range(F.m)):
        d = digits[i]
        if d == 0:
            continue
        if i == 0:
            parts.append(str(d))
        else:
            mon = "x" if i == 1 else f"x^{i}"
            parts.append(mon if d == 1 else f"{d}*{mon}")
    return "(" + " + ".join(parts) + ")" if len(parts) > 1 else (parts[0] if parts else "0")


# ---------------------------------------------------------------------------
# F_q[theta]


class ThetaPoly:
    """A polynomial in theta over F_q (an element of A)."""

    __slots__ = ("field", "raw")

    def __init__(self, field: GF, raw):
        self.field = field
        self.raw = raw

    @classmethod
    def from_coeffs(cls, F: GF, coeffs) -> "ThetaPoly":
        """Build from coefficients listed lowest degree first (ints or FqElem)."""
        els = F.raw_elements
        raw = [els[c.code] if isinstance(c, FqElem) else els[c % F.p] for c in coeffs]
        return cls(F, F.poly_ctx(raw))

    @classmethod
    def const(cls, F: GF, c) -> "ThetaPoly":
        return cls.from_coeffs(F, [c])

    @classmethod
    def theta(cls, F: GF) -> "ThetaPoly":
        return cls.from_coeffs(F, [0, 1])

    @classmethod
    def monomial(cls, F: GF, e: int, c=1) -> "ThetaPoly":
        return cls.from_coeffs(F, [0] * e + [c])

    @property
    def degree(self):
        d = self.raw.degree()
        return NEG_INF if d < 0 else d

    def coeffs(self) -> list[FqElem]:
        F = self.field
        return [FqElem(F, F.code_of(c)) for c in self.raw.coeffs()]

    def leading(self) -> FqElem:
        if self.is_zero():
            return self.field.zero()
        return FqElem(self.field, self.field.code_of(self.raw.leading_coefficient()))

    def is_zero(self) -> bool:
        return self.raw.is_zero()

    def is_one(self) -> bool:
        return self.raw.is_one()

    def is_monic(self) -> bool:
        return not self.is_zero() and self.leading() == 1

    def _coerce(self, other):
        if isinstance(other, ThetaPoly):
            return other.raw
        if isinstance(other, FqElem):
            return self.field.poly_ctx([other.raw])
        if isinstance(other, int):
            return self.field.poly_ctx([self.field.raw_elements[other % self.field.p]])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ThetaPoly(self.field, self.raw + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ThetaPoly(self.field, self.raw - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ThetaPoly(self.field, o - self.raw)

    def __neg__(self):
        return ThetaPoly(self.field, -self.raw)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ThetaPoly(self.field, self.raw * o)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        return ThetaPoly(self.field, self.raw**n)

    def __divmod__(self, other):
        o = self._coerce(other)
        qq, rr = divmod(self.raw, o)
        return ThetaPoly(self.field, qq), ThetaPoly(self.field, rr)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "ThetaPoly":
        o = self._coerce(other)
        return ThetaPoly(self.field, self.raw.exact_division(o))

    def divides(self, other: "ThetaPoly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other.raw % self.raw).is_zero()

    def gcd(self, other: "ThetaPoly") -> "ThetaPoly":
        return ThetaPoly(self.field, self.raw.gcd(other.raw))

    def monic(self) -> "ThetaPoly":
        return ThetaPoly(self.field, self.raw.monic())

    def scale(self, c: FqElem) -> "ThetaPoly":
        return ThetaPoly(self.field, self.raw * c.raw)

    def frobenius(self, k: int = 1) -> "ThetaPoly":
        """The polynomial raised to the power q^k."""
        return self ** (self.field.q**k)

    def __call__(self, x):
        """Evaluate at an FqElem or compose with another ThetaPoly."""
        if isinstance(x, ThetaPoly):
            return ThetaPoly(self.field, self.raw.compose(x.raw))
        if isinstance(x, FqElem):
            return FqElem(self.field, self.field.code_of(self.raw(x.raw)))
        raise TypeError(f"cannot evaluate at {type(x).__name__}")

    def __eq__(self, other):
        if isinstance(other, ThetaPoly):
            return self.field == other.field and self.raw == other.raw
        if isinstance(other, (int, FqElem)):
            return self.raw == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.raw)

    def __str__(self):
        return _poly_str(self.coeffs(), "θ")

    def __repr__(self):
        return f"ThetaPoly({self})"


def _poly_str(coeffs: list[FqElem], var: str) -> str:
    parts = []
    for e in reversed(range(len(coeffs))):
        c = coeffs[e]
        if not c:
            continue
        cs = elem_str(c)
        if e == 0:
            parts.append(cs)
        else:
            mon = var if e == 1 else f"{var}^{e}"
            parts.append(mon if c == 1 and cs == "1" else f"{cs}*{mon}")
    return " + ".join(parts) if parts else "0"


@functools.lru_cache(maxsize=None)
def monic_enum(F: GF, d: int) -> tuple[ThetaPoly, ...]:
    """All monic polynomials of degree d, ordered lexicographically by (a_{d-1}, ..., a_0)."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    out = []
    for tail in itertools.product(range(F.q), repeat=d):
        coeffs = [F.from_code(c) for c in reversed(tail)] + [F.one()]
        out.append(ThetaPoly.from_coeffs(F, coeffs))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def lower_enum(F: GF, d: int) -> tuple[ThetaPoly, ...]:
    """All q^d polynomials of degree < d, zero included."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    out = []
    for tail in itertools.product(range(F.q), repeat=d):
        out.append(ThetaPoly.from_coeffs(F, [F.from_code(c) for c in reversed(tail)]))
    return tuple(out)


# ---------------------------------------------------------------------------
# auxiliary variables and monomials


@functools.total_ordering
@dataclass(frozen=True)
class Var:
    """An auxiliary indeterminate t_n, X_n or T_n."""

    family: str
    index: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown variable family {self.family!r}")
        if self.index < 1:
            raise ValueError("variable index must be at least 1")

    @property
    def key(self):
        return (FAMILIES.index(self.family), self.index)

    def __lt__(self, other):
        return self.key < other.key

    def __str__(self):
        return f"{self.family}_{self.index}"


def t(n: int) -> Var:
    return Var("t", n)


def X(n: int) -> Var:
    return Var("X", n)


def T(n: int) -> Var:
    return Var("T", n)


Monomial = tuple  # sorted tuple of (Var, exponent) pairs with positive exponents
ONE_MONO: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_pow(a: Monomial, n: int) -> Monomial:
    return tuple((v, e * n) for v, e in a) if n else ()


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def mono_str(a: Monomial) -> str:
    return "*".join(f"{v}" if e == 1 else f"{v}^{e}" for v, e in a) or "1"


def mono_key(a: Monomial, variables: list[Var]):
    d = dict(a)
    return tuple(d.get(v, 0) for v in variables)


def mono_sort_key(a: Monomial):
    """Canonical graded lexicographic key, largest monomial last."""
    return (mono_degree(a), tuple((-v.key[0], -v.key[1], e) for v, e in a))


# ---------------------------------------------------------------------------
# polynomials over F_q[theta] in auxiliary variables


class MultiPoly:
    """A polynomial in auxiliary variables with ThetaPoly coefficients."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: GF, terms: dict | None = None, _clean=False):
        self.field = field
        if terms is None:
            terms = {}
        elif not _clean:
            terms = {m: c for m, c in terms.items() if not c.is_zero()}
        self.terms = terms
        self._hash = None

    @classmethod
    def const(cls, F: GF, c) -> "MultiPoly":
        if not isinstance(c, ThetaPoly):
            c = ThetaPoly.const(F, c)
        return cls(F, {ONE_MONO: c})

    @classmethod
    def var(cls, F: GF, v: Var, e: int = 1) -> "MultiPoly":
        return cls(F, {((v, e),) if e else (): ThetaPoly.const(F, 1)}, _clean=True)

    @classmethod
    def theta(cls, F: GF) -> "MultiPoly":
        return cls.const(F, ThetaPoly.theta(F))

    def is_zero(self) -> bool:
        return not self.terms

    def is_theta_only(self) -> bool:
        return all(m == ONE_MONO for m in self.terms)

    def theta_part(self) -> ThetaPoly:
        """The coefficient of the empty monomial."""
        c = self.terms.get(ONE_MONO)
        return c if c is not None else ThetaPoly.const(self.field, 0)

    def coefficient(self, mono: Monomial) -> ThetaPoly:
        c = self.terms.get(mono)
        return c if c is not None else ThetaPoly.const(self.field, 0)

    def variables(self) -> list[Var]:
        vs = set()
        for m in self.terms:
            vs.update(v for v, _ in m)
        return sorted(vs)

    def degree_in(self, v: Var):
        if not self.terms:
            return NEG_INF
        return max(dict(m).get(v, 0) for m in self.terms)

    def theta_degree(self):
        if not self.terms:
            return NEG_INF
        return max(c.degree for c in self.terms.values())

    def content(self) -> ThetaPoly:
        """Monic gcd of all theta-coefficients (zero for the zero polynomial)."""
        g = None
        for c in self.terms.values():
            g = c.monic() if g is None else g.gcd(c)
            if g.is_one():
                break
        return g if g is not None else ThetaPoly.const(self.field, 0)

    def leading(self) -> FqElem:
        """Leading F_q coefficient under grlex with theta > t_1 > ... > X_1 > ... > T_1 > ..."""
        if not self.terms:
            return self.field.zero()
        variables = self.variables()

        def key(item):
            m, c = item
            return (c.degree + mono_degree(m), c.degree, mono_key(m, variables))

        return max(self.terms.items(), key=key)[1].leading()

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (ThetaPoly, FqElem, int)):
            return MultiPoly.const(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        terms = dict(self.terms)
        for m, c in o.terms.items():
            old = terms.get(m)
            if old is None:
                terms[m] = c
            else:
                s = old + c
                if s.is_zero():
                    del terms[m]
                else:
                    terms[m] = s
        return MultiPoly(self.field, terms, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.field, {m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if len(o.terms) == 1 and ONE_MONO in o.terms:
            return self.scale(o.terms[ONE_MONO])
        if len(self.terms) == 1 and ONE_MONO in self.terms:
            return o.scale(self.terms[ONE_MONO])
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = mono_mul(m1, m2)
                prod = c1.raw * c2.raw
                old = acc.get(m)
                acc[m] = prod if old is None else old + prod
        F = self.field
        return MultiPoly(F, {m: ThetaPoly(F, r) for m, r in acc.items() if not r.is_zero()}, _clean=True)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        if isinstance(c, FqElem):
            c = ThetaPoly.const(self.field, c)
        if c.is_zero():
            return MultiPoly(self.field)
        if c.is_one():
            return self
        return MultiPoly(self.field, {m: v * c for m, v in self.terms.items()}, _clean=True)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div_theta(self, g: ThetaPoly) -> "MultiPoly":
        if g.is_one():
            return self
        return MultiPoly(self.field, {m: c.exact_div(g) for m, c in self.terms.items()}, _clean=True)

    def subs(self, v: Var, value) -> "MultiPoly":
        """Substitute the variable v by a MultiPoly (or ThetaPoly / constant)."""
        value = self._coerce(value)
        out = MultiPoly(self.field)
        powers: dict[int, MultiPoly] = {}
        rest: dict = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.pop(v, 0)
            rest.setdefault(e, []).append((tuple(sorted(d.items())), c))
        for e, items in rest.items():
            part = MultiPoly(self.field, dict(items), _clean=True)
            if e:
                if e not in powers:
                    powers[e] = value**e
                part = part * powers[e]
            out = out + part
        return out

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.field, {m: fn(c) for m, c in self.terms.items()})

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, MultiPoly) else other
        if o is NotImplemented:
            return NotImplemented
        return self.field == o.field and self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self) -> list:
        """Terms in canonical order, largest monomial first."""
        return sorted(self.terms.items(), key=lambda mc: mono_sort_key(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if m == ONE_MONO:
                parts.append(str(c) if len(self.terms) == 1 or _is_single_term(c) else f"({c})")
            elif c.is_one():
                parts.append(mono_str(m))
            else:
                cs = str(c)
                parts.append(f"{cs}*{mono_str(m)}" if _is_single_term(c) else f"({cs})*{mono_str(m)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self})"


def _is_single_term(c: ThetaPoly) -> bool:
    return sum(1 for x in c.raw.coeffs() if not x.is_zero()) == 1


def _wrap(s: str) -> str:
    return s if all(ch not in s for ch in " +-") else f"({s})"


def subst_theta(a: ThetaPoly, v: Var) -> MultiPoly:
    """The polynomial a read in the variable v instead of theta."""
    F = a.field
    terms = {}
    for e, c in enumerate(a.coeffs()):
        if c:
            terms[((v, e),) if e else ()] = ThetaPoly.const(F, c)
    return MultiPoly(F, terms, _clean=True)


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """
    A quotient num/den of MultiPolys.

    The denominator is normalized to have leading coefficient 1. When the
    denominator involves theta only, the common theta-content of numerator
    and denominator is also removed; that makes the representation unique
    in this case, so equality and hashing are structural. Otherwise equality
    is decided by cross-multiplication.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, num, den=1, _normalized=False):
        if not isinstance(num, MultiPoly):
            F = num.field if isinstance(num, (ThetaPoly, FqElem)) else None
            if F is None:
                F = den.field
            num = MultiPoly.const(F, num)
        F = num.field
        if not isinstance(den, MultiPoly):
            den = MultiPoly.const(F, den)
        self.field = F
        if _normalized:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, MultiPoly.const(F, 1)
            return
        if den.is_theta_only():
            d = den.theta_part()
            g = num.content().gcd(d)
            if not g.is_one():
                num = num.exact_div_theta(g)
                d = d.exact_div(g)
            lc = d.leading()
            if lc != 1:
                inv = lc.inv()
                d = d.scale(inv)
                num = num.scale(inv)
            den = MultiPoly(F, {ONE_MONO: d}, _clean=True)
        else:
            lc = den.leading()
            if lc != 1:
                inv = lc.inv()
                den = den.scale(inv)
                num = num.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def const(cls, F: GF, c) -> "RatFunc":
        return cls(MultiPoly.const(F, c))

    @classmethod
    def var(cls, F: GF, v: Var) -> "RatFunc":
        return cls(MultiPoly.var(F, v))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_theta_only(self) -> bool:
        return self.num.is_theta_only() and self.den.is_theta_only()

    def has_theta_denominator(self) -> bool:
        return self.den.is_theta_only()

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (MultiPoly, ThetaPoly, FqElem, int)):
            if isinstance(other, int):
                other = MultiPoly.const(self.field, other)
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        if self.den.is_theta_only() and o.den.is_theta_only():
            d1, d2 = self.den.theta_part(), o.den.theta_part()
            if d1 == d2:
                return RatFunc(self.num + o.num, self.den)
            g = d1.gcd(d2)
            c1, c2 = d2.exact_div(g), d1.exact_div(g)
            num = self.num.scale(c1) + o.num.scale(c2)
            return RatFunc(num, d1 * c1)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return RatFunc(MultiPoly(self.field))
        if self.den.is_theta_only() and o.den.is_theta_only():
            # cross-cancel contents against the opposite denominators
            d1, d2 = self.den.theta_part(), o.den.theta_part()
            n1, n2 = self.num, o.num
            g1 = n1.content().gcd(d2)
            g2 = n2.content().gcd(d1)
            if not g1.is_one():
                n1, d2 = n1.exact_div_theta(g1), d2.exact_div(g1)
            if not g2.is_one():
                n2, d1 = n2.exact_div_theta(g2), d1.exact_div(g2)
            return RatFunc(n1 * n2, MultiPoly(self.field, {ONE_MONO: d1 * d2}, _clean=True))
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def subs(self, v: Var, value) -> "RatFunc":
        """Substitute v by a polynomial value; raises PoleError if the denominator vanishes."""
        if isinstance(value, RatFunc):
            # clear the value's denominator: num(v=a/b) = b^-deg * hom(num)
            return self._subs_rational(v, value)
        den = self.den.subs(v, value)
        if den.is_zero():
            raise PoleError(f"denominator vanishes at {v} := {value}")
        return RatFunc(self.num.subs(v, value), den)

    def _subs_rational(self, v: Var, value: "RatFunc") -> "RatFunc":
        def hom(P: MultiPoly, deg: int) -> MultiPoly:
            out = MultiPoly(self.field)
            for m, c in P.terms.items():
                dd = dict(m)
                e = dd.pop(v, 0)
                rest = MultiPoly(self.field, {tuple(sorted(dd.items())): c}, _clean=True)
                out = out + rest * value.num**e * value.den ** (deg - e)
            return out

        dn, dd = self.num.degree_in(v), self.den.degree_in(v)
        dn = 0 if dn == NEG_INF else dn
        dd = 0 if dd == NEG_INF else dd
        den = hom(self.den, dd)
        if den.is_zero():
            raise PoleError(f"denominator vanishes at {v} := {value}")
        num = hom(self.num, dn)
        shift = dd - dn
        if shift > 0:
            num = num * value.den**shift
        elif shift < 0:
            den = den * value.den ** (-shift)
        return RatFunc(num, den)

    def eval_theta_power(self, v: Var, e: int) -> "RatFunc":
        return self.subs(v, ThetaPoly.monomial(self.field, e))

    def variables(self) -> list[Var]:
        return sorted(set(self.num.variables()) | set(self.den.variables()))

    def coefficients(self) -> dict:
        """For a theta-only denominator: monomial -> K-coefficient."""
        if not self.den.is_theta_only():
            raise ValueError("denominator involves auxiliary variables")
        d = self.den.theta_part()
        return {m: RatFunc(MultiPoly(self.field, {ONE_MONO: c}, _clean=True), d) for m, c in self.num.terms.items()}

    def theta_num(self) -> ThetaPoly:
        if not self.is_theta_only():
            raise ValueError("not an element of K")
        return self.num.theta_part()

    def theta_den(self) -> ThetaPoly:
        if not self.den.is_theta_only():
            raise ValueError("denominator involves auxiliary variables")
        return self.den.theta_part()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den.is_theta_only() and o.den.is_theta_only():
            return self.num == o.num and self.den == o.den
        return ratfunc_eq(self, o)

    def __hash__(self):
        if self.den.is_theta_only():
            return hash((self.num, self.den))
        return hash("RatFunc with non-theta denominator")

    def __str__(self):
        if self.den == MultiPoly.const(self.field, 1):
            return str(self.num)
        return f"{_wrap(str(self.num))}/{_wrap(str(self.den))}"

    def __repr__(self):
        return f"RatFunc({self})"


def ratfunc_eq(x: RatFunc, y: RatFunc) -> bool:
    """Equality by cross-multiplication."""
    return x.num * y.den == y.num * x.den


def ratfunc_eval_theta_power(x: RatFunc, v: Var, e: int) -> RatFunc:
    return x.eval_theta_power(v, e)


def K(F: GF, x) -> RatFunc:
    """Coerce a ThetaPoly, FqElem or int into the fraction field."""
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, int):
        return RatFunc.const(F, x)
    return RatFunc(x)
