"""
Finite weighted subsets, characters, admissible arrays and their F_q-linear
combinations, plus the combinatorial coefficients used by the product rules.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass

from .algebra import GF, FqElem, MultiPoly, ThetaPoly, Var, subst_theta


class ArrayParseError(ValueError):
    pass


def _merge(pairs) -> dict:
    d: dict = {}
    for n, s in pairs:
        d[n] = d.get(n, 0) + s
    return d


@functools.total_ordering
@dataclass(frozen=True)
class WeightedSubset:
    """
    A finitely supported multiplicity function n -> sigma_n on positive integers.

    ``items`` holds the pairs (n, sigma_n) with sigma_n > 0, sorted by n.
    """

    items: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for n, s in self.items:
            if n < 1 or s < 1:
                raise ValueError(f"invalid weighted subset entry {(n, s)}")
        object.__setattr__(self, "items", tuple(sorted(_merge(self.items).items())))

    @classmethod
    def of(cls, *indices: int) -> "WeightedSubset":
        """Repeated indices add multiplicity."""
        return cls(tuple(sorted(_merge((n, 1) for n in indices).items())))

    @classmethod
    def from_mapping(cls, mapping: dict) -> "WeightedSubset":
        return cls(tuple(sorted((n, s) for n, s in mapping.items() if s)))

    @property
    def card(self) -> int:
        return sum(s for _, s in self.items)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.items)

    def is_plain(self) -> bool:
        return all(s == 1 for _, s in self.items)

    def multiplicity(self, n: int) -> int:
        return dict(self.items).get(n, 0)

    def __bool__(self):
        return bool(self.items)

    def union(self, other: "WeightedSubset") -> "WeightedSubset":
        return WeightedSubset(tuple(sorted(_merge(self.items + other.items).items())))

    __or__ = union

    def contains(self, other: "WeightedSubset") -> bool:
        mine = dict(self.items)
        return all(mine.get(n, 0) >= s for n, s in other.items)

    def difference(self, other: "WeightedSubset") -> "WeightedSubset":
        """Sigma - J for J contained in Sigma."""
        if not self.contains(other):
            raise ValueError(f"{other} is not contained in {self}")
        d = dict(self.items)
        for n, s in other.items:
            d[n] -= s
        return WeightedSubset.from_mapping(d)

    def subsets(self) -> list["WeightedSubset"]:
        """All J with j_n <= sigma_n, by cardinality then lexicographic in (index, multiplicity)."""
        ranges = [range(s + 1) for _, s in self.items]
        out = []
        for mults in itertools.product(*ranges):
            out.append(WeightedSubset(tuple((n, m) for (n, _), m in zip(self.items, mults) if m)))
        return sorted(out, key=lambda J: (J.card, J.items))

    def variables(self) -> list[Var]:
        return [Var("t", n) for n in self.support]

    def __lt__(self, other):
        return self.items < other.items

    def __str__(self):
        return "{" + ",".join(str(n) if s == 1 else f"{n}^{s}" for n, s in self.items) + "}"

    def __repr__(self):
        return f"WeightedSubset({self})"


EMPTY = WeightedSubset()


def ws_union(S: WeightedSubset, G: WeightedSubset) -> WeightedSubset:
    return S.union(G)


def ws_subsets(S: WeightedSubset) -> list[WeightedSubset]:
    return S.subsets()


def ws_card(S: WeightedSubset) -> int:
    return S.card


# ---------------------------------------------------------------------------
# coefficients


@functools.lru_cache(maxsize=None)
def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or n < 0 or k > n:
        return 0
    r = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        num = den = 1
        for i in range(b):
            num *= a - i
            den *= i + 1
        r = r * (num // den) % p
        n //= p
        k //= p
    return r


def binom_ws(F: GF, S: WeightedSubset, J: WeightedSubset) -> FqElem:
    """prod_n C(sigma_n, j_n) in the prime field."""
    if not S.contains(J):
        raise ValueError(f"{J} is not contained in {S}")
    r = 1
    for n, s in S.items:
        r = r * binom_mod_p(s, J.multiplicity(n), F.p) % F.p
    return F(r)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def delta_coeff(F: GF, S: WeightedSubset, J: WeightedSubset, j: int, s: int) -> FqElem:
    """(-1)^{|J|+s} C(S,J) C(j-1,s-1)."""
    if j < 1 or s < 1:
        raise ValueError("j and s must be positive")
    return binom_ws(F, S, J) * (_sign(J.card + s) * binom_mod_p(j - 1, s - 1, F.p))


def Delta_coeff(F: GF, S: WeightedSubset, J: WeightedSubset, j: int, s: int) -> FqElem:
    """(-1)^{|J|+s-1} C(S,J) C(j-1,s-1) when |J| = j mod (q-1), else 0."""
    if j < 1 or s < 1:
        raise ValueError("j and s must be positive")
    if not S.contains(J):
        raise ValueError(f"{J} is not contained in {S}")
    if (J.card - j) % (F.q - 1):
        return F.zero()
    return binom_ws(F, S, J) * (_sign(J.card + s - 1) * binom_mod_p(j - 1, s - 1, F.p))


def unit_sum(F: GF, n: int) -> FqElem:
    """sum of alpha^n over the units of F_q: -1 if (q-1) divides n, else 0."""
    return F(-1) if n % (F.q - 1) == 0 else F.zero()


def char_eval(S: WeightedSubset, a: ThetaPoly) -> MultiPoly:
    """prod_n a(t_n)^{sigma_n}."""
    out = MultiPoly.const(a.field, 1)
    for n, s in S.items:
        out = out * subst_theta(a, Var("t", n)) ** s
    return out


# ---------------------------------------------------------------------------
# admissible arrays


@dataclass(frozen=True)
class AdmissibleArray:
    """A sequence of (Sigma_i, s_i) with every s_i >= 1; the empty array is allowed."""

    slots: tuple[tuple[WeightedSubset, int], ...] = ()

    def __post_init__(self):
        for S, s in self.slots:
            if not isinstance(S, WeightedSubset) or not isinstance(s, int) or s < 1:
                raise ValueError(f"inadmissible slot ({S}|{s})")

    @classmethod
    def of(cls, *slots) -> "AdmissibleArray":
        """Build from (Sigma, s) pairs where Sigma may be a WeightedSubset or an iterable of indices."""
        out = []
        for S, s in slots:
            if not isinstance(S, WeightedSubset):
                S = WeightedSubset.of(*S)
            out.append((S, s))
        return cls(tuple(out))

    @property
    def depth(self) -> int:
        return len(self.slots)

    @property
    def weight(self) -> int:
        return sum(s for _, s in self.slots)

    @property
    def type(self) -> WeightedSubset:
        out = EMPTY
        for S, _ in self.slots:
            out = out.union(S)
        return out

    @property
    def head(self) -> tuple[WeightedSubset, int]:
        return self.slots[0]

    @property
    def tail(self) -> "AdmissibleArray":
        return AdmissibleArray(self.slots[1:])

    def prepend(self, S: WeightedSubset, s: int) -> "AdmissibleArray":
        return AdmissibleArray(((S, s),) + self.slots)

    def __bool__(self):
        return bool(self.slots)

    def __len__(self):
        return len(self.slots)

    def __iter__(self):
        return iter(self.slots)

    @property
    def sort_key(self):
        return (self.depth, tuple((S.items, s) for S, s in self.slots))

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        return array_format(self)

    def __repr__(self):
        return f"AdmissibleArray({array_format(self)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def array_parse(text: str) -> AdmissibleArray:
    """
    Parse ``({1}|1)({}|2)`` style text. ``()`` or the empty string is the empty array.

    EXAMPLES::

        >>> array_parse("({1^2,3}|4)").slots[0][0].items
        ((1, 2), (3, 1))
    """
    tokens = [(m.group(1), m.group(2), m.start()) for m in _TOKEN.finditer(text) if m.group(0).strip()]
    if not tokens or [t[1] for t in tokens] == ["(", ")"]:
        return AdmissibleArray()
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    def expect(ch):
        nonlocal pos
        num, sym, at = peek()
        if sym != ch:
            found = num if num is not None else (sym or "end of input")
            raise ArrayParseError(f"expected {ch!r} at position {at}, found {found!r}")
        pos += 1

    def integer():
        nonlocal pos
        num, sym, at = peek()
        if num is None:
            raise ArrayParseError(f"expected an integer at position {at}, found {sym or 'end of input'!r}")
        pos += 1
        return int(num), at

    slots = []
    while pos < len(tokens):
        expect("(")
        expect("{")
        mult: dict = {}
        if peek()[1] != "}":
            while True:
                n, at = integer()
                if n < 1:
                    raise ArrayParseError(f"index {n} at position {at} must be positive")
                e = 1
                if peek()[1] == "^":
                    pos += 1
                    e, at = integer()
                    if e < 1:
                        raise ArrayParseError(f"multiplicity {e} at position {at} must be positive")
                mult[n] = mult.get(n, 0) + e
                if peek()[1] == ",":
                    pos += 1
                    continue
                break
        expect("}")
        expect("|")
        s, at = integer()
        if s < 1:
            raise ArrayParseError(f"exponent {s} at position {at} must be at least 1")
        expect(")")
        slots.append((WeightedSubset.from_mapping(mult), s))
    return AdmissibleArray(tuple(slots))


def array_format(A: AdmissibleArray) -> str:
    if not A.slots:
        return "()"
    return "".join(f"({S}|{s})" for S, s in A.slots)


# ---------------------------------------------------------------------------
# formal combinations


class ArrayCombo:
    """A finitely supported map AdmissibleArray -> F_q; zero coefficients are dropped."""

    __slots__ = ("field", "terms")

    def __init__(self, field: GF, terms: dict | None = None):
        self.field = field
        self.terms = {A: c for A, c in (terms or {}).items() if c}

    @classmethod
    def single(cls, F: GF, A: AdmissibleArray, c=1) -> "ArrayCombo":
        return cls(F, {A: F(c) if isinstance(c, int) else c})

    def add_term(self, A: AdmissibleArray, c: FqElem) -> "ArrayCombo":
        return self + ArrayCombo(self.field, {A: c})

    def __add__(self, other: "ArrayCombo") -> "ArrayCombo":
        terms = dict(self.terms)
        for A, c in other.terms.items():
            terms[A] = terms[A] + c if A in terms else c
        return ArrayCombo(self.field, terms)

    def __neg__(self):
        return ArrayCombo(self.field, {A: -c for A, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: FqElem) -> "ArrayCombo":
        return ArrayCombo(self.field, {A: c * v for A, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(self.field(c) if isinstance(c, int) else c)

    def map_arrays(self, fn) -> "ArrayCombo":
        """Apply fn to every array, merging coefficients of coinciding images."""
        out: dict = {}
        for A, c in self.terms.items():
            B = fn(A)
            out[B] = out[B] + c if B in out else c
        return ArrayCombo(self.field, out)

    def items(self):
        return sorted(self.terms.items(), key=lambda ac: ac[0].sort_key)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.items())

    def get(self, A: AdmissibleArray) -> FqElem:
        return self.terms.get(A, self.field.zero())

    def __eq__(self, other):
        if not isinstance(other, ArrayCombo):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_json(self) -> list:
        return [{"coeff": c.code, "array": array_format(A)} for A, c in self.items()]

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{array_format(A)}" for A, c in self.items())

    def __repr__(self):
        return f"ArrayCombo({self})"
