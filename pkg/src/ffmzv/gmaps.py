"""
Trivial multiple zeta values in the eta basis and the maps F, E, ev and G.

A ``SymCoeff`` is a polynomial in a formal symbol Z over K; Z stands for the
Carlitz zeta value zeta_A(1), which is substituted only in numeric mode. A
``TrivialMZV`` of type Sigma = {r_1 < ... < r_m} is a finite sum
sum_k c_k eta_k with eta_k = prod_r eta_{k_r}(t_r). By the Kronecker property
its value at t_r = theta^(q^(j_r)) is exactly c_j.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .algebra import GF, ONE_MONO, Monomial, RatFunc, ThetaPoly, Var, mono_mul, mono_sort_key, mono_str
from .arrays import AdmissibleArray, WeightedSubset
from .carlitz import D, ell, goss_zeta_int
from .laurent import Laurent
from .series import DEFAULT_PREC, TateElem, lambda_value


# ---------------------------------------------------------------------------
# K[Z]


class SymCoeff:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: dict | None = None):
        self.field = field
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if not c.is_zero()}

    @classmethod
    def const(cls, F: GF, c) -> "SymCoeff":
        c = c if isinstance(c, RatFunc) else RatFunc(c) if isinstance(c, ThetaPoly) else RatFunc.const(F, c)
        return cls(F, {0: c})

    @classmethod
    def Z(cls, F: GF, e: int = 1, c=1) -> "SymCoeff":
        if e < 0:
            raise ValueError("negative power of Z")
        return cls(F, {e: SymCoeff.const(F, c).coefficient(0)})

    def _coerce(self, other):
        if isinstance(other, SymCoeff):
            return other
        if isinstance(other, (int, RatFunc, ThetaPoly)):
            return SymCoeff.const(self.field, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        return max(self.coeffs, default=-1)

    @property
    def low_degree(self):
        """Exponent of the lowest Z power present; -1 for zero."""
        return min(self.coeffs, default=-1)

    def coefficient(self, e: int) -> RatFunc:
        return self.coeffs.get(e, RatFunc.const(self.field, 0))

    def divisible_by_Z(self, n: int) -> bool:
        """Divisibility by Z^n in K[Z]."""
        return all(e >= n for e in self.coeffs)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return SymCoeff(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return SymCoeff(self.field, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out: dict = {}
        for (ea, ca), (eb, cb) in itertools.product(self.coeffs.items(), o.coeffs.items()):
            e = ea + eb
            out[e] = out[e] + ca * cb if e in out else ca * cb
        return SymCoeff(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero element of K."""
        if isinstance(other, (int, ThetaPoly)):
            other = SymCoeff.const(self.field, other).coefficient(0)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return SymCoeff(self.field, {e: c / other for e, c in self.coeffs.items()})

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items(), key=lambda it: it[0])))

    def numeric(self, N: int = DEFAULT_PREC) -> Laurent:
        """Substitute Z := zeta_A(1) and track exponents >= -N."""
        F = self.field
        if self.is_zero():
            return Laurent.zero(F, -N - 1)
        # positive powers of theta in a coefficient eat into the precision of Z^e
        slack = max(0, max(c.theta_num().degree - c.theta_den().degree for c in self.coeffs.values()))
        prec = N + slack
        z = goss_zeta_int(F, 1, prec)
        total = Laurent.zero(F, -prec - 1)
        for e, c in self.coeffs.items():
            total = total + Laurent.from_ratfunc(c, prec) * z**e
        return total.truncate(-N - 1)

    def valuation_bound(self):
        """Lower bound for v_inf of the numeric value (v(zeta_A(1)) = 0)."""
        if self.is_zero():
            return float("inf")
        return min(c.theta_den().degree - c.theta_num().degree for c in self.coeffs.values())

    def to_json(self) -> dict:
        return {str(e): str(self.coeffs[e]) for e in sorted(self.coeffs)}

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = str(self.coeffs[e])
            z = "" if e == 0 else "Z" if e == 1 else f"Z^{e}"
            if not z:
                parts.append(c)
            elif c == "1":
                parts.append(z)
            else:
                parts.append(f"{c}*{z}" if all(ch not in c for ch in " +") else f"({c})*{z}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SymCoeff({self})"


def _sym(F: GF, c) -> SymCoeff:
    return c if isinstance(c, SymCoeff) else SymCoeff.const(F, c)


def D_tuple(F: GF, j) -> ThetaPoly:
    out = ThetaPoly.const(F, 1)
    for k in j:
        out = out * D(F, k)
    return out


# ---------------------------------------------------------------------------
# trivial multiple zeta values


class TrivialMZV:
    """sum_k c_k eta_k over tuples k indexed by the sorted elements of sigma."""

    __slots__ = ("field", "sigma", "coeffs")

    def __init__(self, field: GF, sigma, coeffs: dict | None = None):
        sigma = tuple(sorted(sigma))
        if len(set(sigma)) != len(sigma) or any(n < 1 for n in sigma):
            raise ValueError("sigma must be a set of positive integers")
        if len(sigma) >= field.q:
            raise ValueError(f"need |sigma| < q, got |sigma| = {len(sigma)} and q = {field.q}")
        self.field = field
        self.sigma = sigma
        clean = {}
        for k, c in (coeffs or {}).items():
            k = tuple(k)
            if len(k) != len(sigma) or any(x < 0 for x in k):
                raise ValueError(f"bad eta index {k} for sigma {sigma}")
            c = _sym(field, c)
            if not c.is_zero():
                clean[k] = c
        self.coeffs = clean

    @classmethod
    def eta(cls, F: GF, sigma, k, c=1) -> "TrivialMZV":
        return cls(F, sigma, {tuple(k): c})

    @property
    def zero_index(self) -> tuple:
        return (0,) * len(self.sigma)

    def support(self) -> list:
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "TrivialMZV"):
        if self.sigma != other.sigma or self.field != other.field:
            raise ValueError("trivial MZVs of different types")

    def __add__(self, other):
        if not isinstance(other, TrivialMZV):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return TrivialMZV(self.field, self.sigma, out)

    def __neg__(self):
        return TrivialMZV(self.field, self.sigma, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TrivialMZV":
        c = _sym(self.field, c)
        return TrivialMZV(self.field, self.sigma, {k: v * c for k, v in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, TrivialMZV):
            return NotImplemented
        return self.sigma == other.sigma and (self - other).is_zero()

    def __hash__(self):
        return hash((self.sigma, tuple(self.support())))

    def to_json(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "terms": [{"eta": list(k), "coeff": self.coeffs[k].to_json()} for k in self.support()],
        }

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({self.coeffs[k]}) * eta[{','.join(map(str, k))}]" for k in self.support())

    def __repr__(self):
        return f"TrivialMZV({self})"


def trivial_eval(f: TrivialMZV, j) -> SymCoeff:
    """f(theta^(q^j)) = c_j."""
    j = tuple(j)
    if len(j) != len(f.sigma):
        raise ValueError("evaluation point has the wrong length")
    return f.coeffs.get(j, SymCoeff(f.field))


# ---------------------------------------------------------------------------
# the maps F, E, ev and G


@dataclass
class XSeries:
    """Exact X-coefficients of F(f) for exponent towers i with entries <= i_max."""

    field: GF
    sigma: tuple
    coeffs: dict
    i_max: int
    achieved: int | float

    def monomials(self) -> list:
        return sorted(self.coeffs, key=mono_sort_key)

    def numeric(self, N: int = DEFAULT_PREC) -> TateElem:
        return TateElem(self.field, {m: c.numeric(N) for m, c in self.coeffs.items()}, N)

    def to_json(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "i_max": self.i_max,
            "achieved": self.achieved,
            "terms": [{"monomial": mono_str(m), "coeff": self.coeffs[m].to_json()} for m in self.monomials()],
        }

    def __str__(self):
        if not self.coeffs:
            return "0"
        return "\n".join(f"[{mono_str(m)}]*({self.coeffs[m]})" for m in self.monomials())


def _x_monomial(F: GF, sigma, i) -> Monomial:
    m = ONE_MONO
    for r, e in zip(sigma, i):
        m = mono_mul(m, ((Var("X", r), F.q**e),))
    return m


def _truncation_precision(f: TrivialMZV, i_max: int):
    """Valuation bound for every coefficient of F(f) with some i_r > i_max."""
    F = f.field
    best = float("inf")
    for j, c in f.coeffs.items():
        base = c.valuation_bound() + D_tuple(F, j).degree
        for jr in j:
            gap = max(0, i_max + 1 - jr)
            best = min(best, base + F.q**jr * ell(F, gap).degree)
    return best


def f_map(f: TrivialMZV, i_max: int = 4) -> XSeries:
    """
    F(f) = sum_i sum_{j <= i} f(theta^(q^j)) / (D_j ell_{i-j}^(q^j)) X^(q^i),
    exactly, for every tower i with entries <= i_max.
    """
    F = f.field
    m = len(f.sigma)
    out: dict = {}
    for i in itertools.product(range(i_max + 1), repeat=m):
        total = SymCoeff(F)
        for j, c in f.coeffs.items():
            if any(jr > ir for jr, ir in zip(j, i)):
                continue
            den = D_tuple(F, j)
            for jr, ir in zip(j, i):
                den = den * ell(F, ir - jr) ** (F.q**jr)
            total = total + c / RatFunc(den)
        if not total.is_zero():
            out[_x_monomial(F, f.sigma, i)] = total
    return XSeries(F, f.sigma, out, i_max, _truncation_precision(f, i_max))


def _within(F: GF, m: Monomial, i_max: int) -> bool:
    return all(e <= F.q**i_max for _, e in m)


def e_map(f: TrivialMZV, i_max: int = 4, N: int = DEFAULT_PREC) -> TateElem:
    """
    E(f) = sum_i f(theta^(q^i)) / D_i prod_r lambda({r}; 1)^(q^(i_r)), numerically.

    The powers of lambda are Frobenius twists of its truncated coefficients;
    monomials with an X-exponent above q^i_max are dropped.
    """
    F = f.field
    lams = {r: lambda_value(F, AdmissibleArray(((WeightedSubset.of(r), 1),)), N) for r in f.sigma}
    total = TateElem(F, {}, N)
    for i, c in f.coeffs.items():
        term = TateElem(F, {ONE_MONO: (c / RatFunc(D_tuple(F, i))).numeric(N)}, N)
        for r, ir in zip(f.sigma, i):
            term = term * lams[r].frobenius(ir)
        total = total + term
    kept = {m: v for m, v in total.terms.items() if _within(F, m, i_max)}
    return TateElem(F, kept, N, min(total.achieved, N))


def ev_map(x, mode: str = "symbolic", N: int = DEFAULT_PREC):
    """
    Specialize every X to 1.

    An XSeries gives a SymCoeff (symbolic) or a Laurent (numeric), the latter
    certified down to the truncation precision of the X-towers. A TateElem
    always gives a Laurent.
    """
    if isinstance(x, TateElem):
        return x.sum_coefficients()
    total = SymCoeff(x.field)
    for c in x.coeffs.values():
        total = total + c
    if mode == "symbolic":
        return total
    if mode == "numeric":
        prec = N if x.achieved == float("inf") else min(N, int(x.achieved) - 1)
        return total.numeric(prec)
    raise ValueError(f"unknown mode {mode!r}")


def g_map(f: TrivialMZV, mode: str = "symbolic", N: int = DEFAULT_PREC):
    """G(f) = sum_j Z^(sum_r q^(j_r)) f(theta^(q^j)) / D_j."""
    F = f.field
    total = SymCoeff(F)
    for j, c in f.coeffs.items():
        total = total + SymCoeff.Z(F, sum(F.q**jr for jr in j)) * c / RatFunc(D_tuple(F, j))
    if mode == "symbolic":
        return total
    if mode == "numeric":
        return total.numeric(N)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# the kernel of G


def _check_nonzero(j):
    if not any(j):
        raise ValueError("the zero tuple does not index a kernel generator")


def phi(F: GF, sigma, j) -> TrivialMZV:
    """Image of prod_r T_r^(q^(j_r) - 1): -Z^(sum (q^(j_r) - 1)) eta_0 + D_j eta_j."""
    j = tuple(j)
    _check_nonzero(j)
    sigma = tuple(sorted(sigma))
    zero = (0,) * len(sigma)
    e = sum(F.q**jr - 1 for jr in j)
    return TrivialMZV(F, sigma, {zero: -SymCoeff.Z(F, e), j: SymCoeff.const(F, D_tuple(F, j))})


def phi_linear(F: GF, sigma, a: dict) -> TrivialMZV:
    """Extend phi linearly over K[Z]: a maps nonzero tuples j to coefficients."""
    out = TrivialMZV(F, sigma)
    for j, c in a.items():
        out = out + phi(F, sigma, j).scale(c)
    return out


def kernel_basis(F: GF, sigma, j, exponent: str = "phi") -> TrivialMZV:
    """
    The free basis element of ker G attached to the nonzero tuple j.

    ``exponent="phi"`` uses Z^(sum q^(j_r) - |sigma|), which makes the element
    equal to phi(j). ``exponent="literal"`` uses Z^(sum q^(j_r) - 1); the two
    agree only when |sigma| = 1, and only the first lies in the kernel in general.
    """
    j = tuple(j)
    _check_nonzero(j)
    sigma = tuple(sorted(sigma))
    total = sum(F.q**jr for jr in j)
    if exponent == "phi":
        e = total - len(sigma)
    elif exponent == "literal":
        e = total - 1
    else:
        raise ValueError(f"unknown exponent convention {exponent!r}")
    zero = (0,) * len(sigma)
    return TrivialMZV(F, sigma, {zero: -SymCoeff.Z(F, e), j: SymCoeff.const(F, D_tuple(F, j))})


def nonzero_tuples(m: int, bound: int) -> list:
    return [j for j in itertools.product(range(bound + 1), repeat=m) if any(j)]


def _symcoeff_rank(rows: list) -> int:
    """Rank over K(Z) by fraction-free elimination."""
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if not rows[r][col].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            c = rows[r][col]
            if not c.is_zero():
                rows[r] = [p * x - c * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def evaluation_matrix(F: GF, sigma, bound: int, exponent: str = "phi", include_zero: bool = True):
    """
    Rows: kernel basis elements for nonzero j with entries <= bound.
    Columns: evaluation points theta^(q^j'), the zero tuple first if requested.
    Returns (row tuples, column tuples, matrix of SymCoeffs, rank).
    """
    m = len(tuple(sigma))
    js = nonzero_tuples(m, bound)
    cols = ([(0,) * m] if include_zero else []) + js
    rows = [[trivial_eval(kernel_basis(F, sigma, j, exponent), c) for c in cols] for j in js]
    return js, cols, rows, _symcoeff_rank(rows)


def random_symcoeff(F: GF, rng: random.Random, zdeg: int = 2, tdeg: int = 2) -> SymCoeff:
    out = SymCoeff(F)
    for e in range(zdeg + 1):
        if rng.random() < 0.5:
            continue
        cs = [rng.randrange(F.q) for _ in range(tdeg + 1)]
        out = out + SymCoeff.Z(F, e) * ThetaPoly.from_coeffs(F, cs)
    return out if not out.is_zero() else SymCoeff.const(F, 1)


def random_trivial(F: GF, sigma, rng: random.Random, terms: int = 3, bound: int = 2) -> TrivialMZV:
    m = len(tuple(sigma))
    idx = list(itertools.product(range(bound + 1), repeat=m))
    f = TrivialMZV(F, sigma)
    for k in rng.sample(idx, min(terms, len(idx))):
        f = f + TrivialMZV.eta(F, sigma, k, random_symcoeff(F, rng))
    return f


def image_check(F: GF, sigma, samples: list, N: int = DEFAULT_PREC) -> dict:
    """
    Check that G(eta_0) = Z^|sigma| and that Z^|sigma| divides G(f) for each sample.
    """
    sigma = tuple(sorted(sigma))
    m = len(sigma)
    gen = g_map(TrivialMZV.eta(F, sigma, (0,) * m))
    results = []
    for f in samples:
        g = g_map(f)
        results.append({"f": str(f), "g": str(g), "divisible": g.divisible_by_Z(m)})
    return {
        "generator_ok": gen == SymCoeff.Z(F, m),
        "samples": results,
        "ok": gen == SymCoeff.Z(F, m) and all(r["divisible"] for r in results),
    }


__all__ = [
    "SymCoeff", "TrivialMZV", "XSeries", "D_tuple", "trivial_eval", "f_map", "e_map", "ev_map", "g_map",
    "phi", "phi_linear", "kernel_basis", "nonzero_tuples", "evaluation_matrix", "random_symcoeff",
    "random_trivial", "image_check",
]
