"""
Verification suites.

Each suite runs a family of exact or precision-certified checks and returns
``CheckResult`` records. A check id has the form ``<suite>.<statement>`` or
``<suite>.<statement>[params]``; the statement part is drawn from
``MANIFEST``, and a meta-test asserts that ``run_suite("all")`` covers every
manifest entry.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
import zlib
from dataclasses import dataclass
from typing import Callable

from . import __version__
from .algebra import GF, MultiPoly, RatFunc, ThetaPoly, Var, lower_enum, monic_enum, subst_theta
from .arrays import (
    EMPTY, AdmissibleArray, ArrayCombo, WeightedSubset, binom_mod_p, binom_ws, char_eval, delta_coeff,
    unit_sum,
)
from .carlitz import (
    D, EForm, XPoly, b_of, b_poly, deg_ell, e_poly, ell, goss_zeta_int, p_poly, perkins_check,
    q_coeff, sd_brute, sd_negative, sd_via_genfun,
)
from .gmaps import (
    D_tuple, SymCoeff, TrivialMZV, e_map, ev_map, evaluation_matrix, f_map, g_map, kernel_basis,
    nonzero_tuples, phi, phi_linear, random_symcoeff, random_trivial, trivial_eval,
)
from .laurent import Laurent
from .powersums import (
    coefficient_valuations, dagger_lt, dagger_powersum, powersum_brute, powersum_brute_lt,
    powersum_depth1_fast, powersum_depth1_gp, powersum_fast, valuation_bound,
)
from .series import (
    dagger_zeta, eta_eval, eta_series, lambda_coefficients, lambda_value, special_zeta_array,
    special_zeta_check, tate_eval, zeta_value,
)
from .stuffle import Mode, dagger_stuffle, stuffle_depth1, stuffle_product, zeta_product_expand


PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"
EXACT, PRECISION = "EXACT", "PRECISION"


@dataclass
class CheckResult:
    check_id: str
    params: dict
    status: str
    mode: str = EXACT
    residual_valuation: float = math.inf
    runtime_ms: int = 0
    detail: str = ""

    def to_json(self, timings: bool = False) -> dict:
        rv = self.residual_valuation
        out = {
            "check_id": self.check_id,
            "params": self.params,
            "status": self.status,
            "mode": self.mode,
            "residual_valuation": "inf" if rv == math.inf else rv,
        }
        if timings:
            out["runtime_ms"] = self.runtime_ms
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Config:
    q: int = 3
    modulus: tuple | None = None
    N: int = 30
    dmax: int = 3
    seed: int = 0

    def field(self) -> GF:
        return GF.of_order(self.q, self.modulus)


# Statement labels each suite must cover. Keys are suite names.
MANIFEST: dict[str, tuple[str, ...]] = {
    "character": (
        "constants", "weighted-union", "weighted-subsets", "binomial-lucas", "unit-sum",
        "character-sum-rule", "character-multiplicative", "character-scalar", "character-union",
    ),
    "partial-fractions": ("two-term-partial-fractions", "pointwise-sum-shuffle", "delta-coefficients"),
    "stuffle": (
        "depth-one-product", "power-sum-products", "zeta-product", "two-variable-decomposition",
        "empty-array-unit",
    ),
    "ed": ("e-forms-agree", "e-linear", "e-vanishes-below-degree", "e-at-theta-power"),
    "genfun": (
        "generating-function-inverse", "genfun-matches-enumeration", "small-exponent-power-sums",
        "p-at-theta-power", "q-coefficient-extraction", "q-zero-closed-form", "negative-zeta",
    ),
    "perkins": ("perkins-identity",),
    "explicit-formula": (
        "fast-equals-brute", "untwisted-power-sums", "head-tail-recursion", "depth-one-closed-forms",
        "valuation-bound",
    ),
    "gp-compare": ("corrected-equals-brute", "corrected-term-by-term", "gp-differs", "gp-literal-form",
                   "gp-small-types"),
    "dagger": ("dagger-bridge", "dagger-products", "dagger-matches-zeta", "dagger-depth-one"),
    "eta": ("eta-kronecker", "special-zeta", "eta-series-evaluation", "eta-generators", "zeta-at-theta"),
    "fe-maps": ("f-equals-e", "f-of-eta0-is-lambda", "ev-lambda-is-zeta1", "lambda-coefficients",
                "g-formula"),
    "kernel": ("kernel-symbolic", "kernel-numeric", "kernel-via-f", "kernel-rank", "phi-injective",
               "permuted-example", "single-variable-example", "basis-normalization", "not-injective"),
    "image": ("image-generator", "image-divisible", "image-eta-monomials"),
}

SUITES = tuple(MANIFEST)


def _rng(cfg: Config, suite: str) -> random.Random:
    return random.Random(cfg.seed * 1_000_003 + zlib.crc32(suite.encode()))


class _Collector:
    def __init__(self, suite: str):
        self.suite = suite
        self.results: list[CheckResult] = []

    def check(self, statement: str, params: dict, fn: Callable, mode: str = EXACT, tag: str = ""):
        """Run fn() -> bool, or (bool, residual valuation), or (bool, residual, detail)."""
        cid = f"{self.suite}.{statement}" + (f"[{tag}]" if tag else "")
        start = time.perf_counter()
        detail = ""
        try:
            out = fn()
        except Exception as exc:  # a crashing check is a failing check
            out = (False, 0, f"{type(exc).__name__}: {exc}")
        if isinstance(out, tuple):
            ok, rv = out[0], out[1]
            detail = out[2] if len(out) > 2 else ""
        else:
            ok, rv = out, math.inf
        if mode == EXACT and ok:
            rv = math.inf
        ms = int((time.perf_counter() - start) * 1000)
        self.results.append(CheckResult(cid, params, PASS if ok else FAIL, mode, rv, ms, detail))

    def skip(self, statement: str, params: dict, reason: str, tag: str = ""):
        cid = f"{self.suite}.{statement}" + (f"[{tag}]" if tag else "")
        self.results.append(CheckResult(cid, params, SKIP, EXACT, math.inf, 0, reason))


# ---------------------------------------------------------------------------
# random objects


def random_theta(F: GF, rng: random.Random, deg: int = 3) -> ThetaPoly:
    return ThetaPoly.from_coeffs(F, [rng.randrange(F.q) for _ in range(deg + 1)])


def random_weighted(rng: random.Random, support=(1, 2), mult: int = 2) -> WeightedSubset:
    return WeightedSubset.from_mapping({n: rng.randint(0, mult) for n in support})


def random_plain_array(F: GF, rng: random.Random, max_depth: int = 3, max_weight: int = 5,
                       max_type: int | None = None) -> AdmissibleArray:
    max_type = F.q - 1 if max_type is None else max_type
    depth = rng.randint(1, max_depth)
    weight = rng.randint(depth, max(depth, max_weight))
    cuts = sorted(rng.sample(range(1, weight), depth - 1)) if depth > 1 else []
    exps = [b - a for a, b in zip([0] + cuts, cuts + [weight])]
    pool = [1, 2]
    rng.shuffle(pool)
    pool = pool[:max_type]
    slots = []
    for s in exps:
        idx = [n for n in pool if rng.random() < 0.4]
        pool = [n for n in pool if n not in idx]
        slots.append((WeightedSubset.of(*idx), s))
    return AdmissibleArray(tuple(slots))


def _combo_value(F: GF, combo: ArrayCombo, d: int, lt: bool = False, dagger: bool = False) -> RatFunc:
    out = RatFunc.const(F, 0)
    for C, c in combo.items():
        if dagger:
            v = dagger_lt(F, C, d) if lt else dagger_powersum(F, C, d)
        else:
            v = powersum_brute_lt(F, C, d) if lt else powersum_brute(F, C, d)
        out = out + v * RatFunc.const(F, c)
    return out


def _plain_sets(F: GF, universe=(1, 2)) -> list[WeightedSubset]:
    out = []
    for r in range(len(universe) + 1):
        for c in itertools.combinations(universe, r):
            if r < F.q:
                out.append(WeightedSubset.of(*c))
    return out


# ---------------------------------------------------------------------------
# suites


def suite_character(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("character")
    rng = _rng(cfg, "character")
    q, p = F.q, F.p

    def constants():
        for d in range(5):
            if ell(F, d).degree != deg_ell(q, d) or D(F, d).degree != d * q**d:
                return False
            if b_poly(F, d).degree_in(Var("t", 1)) != (d if d else -math.inf) and d:
                return False
        return ell(F, 0).is_one() and D(F, 0).is_one() and b_poly(F, 0) == MultiPoly.const(F, 1)

    col.check("constants", {"d_max": 4}, constants)

    def union():
        S = WeightedSubset.of(1, 2).union(WeightedSubset.of(2))
        return S.multiplicity(1) == 1 and S.multiplicity(2) == 2 and S.card == 3

    col.check("weighted-union", {}, union)

    def subsets():
        for _ in range(20):
            S = random_weighted(rng, (1, 2, 3))
            subs = S.subsets()
            expect = math.prod(S.multiplicity(n) + 1 for n in S.support)
            if len(subs) != expect or len(set(subs)) != expect or not all(S.contains(J) for J in subs):
                return False
        return True

    col.check("weighted-subsets", {"samples": 20}, subsets)

    def lucas():
        for pp in (2, 3, 5):
            row = [1]
            for n in range(13):
                if any(binom_mod_p(n, k, pp) != row[k] % pp for k in range(n + 1)):
                    return False
                row = [1] + [row[k] + row[k + 1] for k in range(n)] + [1]
        return True

    col.check("binomial-lucas", {"primes": [2, 3, 5], "n_max": 12}, lucas)

    def units():
        for n in range(31):
            total = F.zero()
            for a in F.units():
                total = total + a**n
            if total != unit_sum(F, n):
                return False
        return True

    col.check("unit-sum", {"q": q, "n_max": 30}, units)

    pairs = [(random_theta(F, rng), random_theta(F, rng), random_weighted(rng), random_weighted(rng))
             for _ in range(50)]

    def sum_rule():
        for a, b, S, _ in pairs:
            rhs = MultiPoly(F)
            for J in S.subsets():
                I = S.difference(J)
                c = binom_ws(F, S, J)
                rhs = rhs + (char_eval(I, a) * char_eval(J, b)).scale(c)
            if char_eval(S, a + b) != rhs:
                return False
        return True

    def mult():
        return all(char_eval(S, a * b) == char_eval(S, a) * char_eval(S, b) for a, b, S, _ in pairs)

    def scalar():
        for a, _, S, _ in pairs:
            for alpha in F.elements():
                lhs = char_eval(S, a.scale(alpha))
                if lhs != char_eval(S, a).scale(alpha**S.card if S.card else F.one()):
                    return False
        return True

    def union_rule():
        return all(char_eval(S, a) * char_eval(G, a) == char_eval(S.union(G), a) for a, _, S, G in pairs)

    params = {"samples": 50, "deg": 3, "mult": 2}
    col.check("character-sum-rule", params, sum_rule)
    col.check("character-multiplicative", params, mult)
    col.check("character-scalar", params, scalar)
    col.check("character-union", params, union_rule)
    return col.results


def suite_partial_fractions(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("partial-fractions")
    rng = _rng(cfg, "partial-fractions")
    p = F.p
    Xv, Yv = Var("X", 1), Var("X", 2)
    X, Y = RatFunc.var(F, Xv), RatFunc.var(F, Yv)

    def two_term():
        for s, t in itertools.product(range(1, 5), repeat=2):
            rhs = RatFunc.const(F, 0)
            for i in range(1, s + t):
                j = s + t - i
                c1, c2 = binom_mod_p(j - 1, t - 1, p), binom_mod_p(j - 1, s - 1, p)
                if c1:
                    rhs = rhs + RatFunc.const(F, c1) / (X**i * (X + Y) ** j)
                if c2:
                    rhs = rhs + RatFunc.const(F, c2) / (Y**i * (X + Y) ** j)
            if rhs != RatFunc.const(F, 1) / (X**s * Y**t):
                return False
        return True

    col.check("two-term-partial-fractions", {"s_max": 4, "t_max": 4}, two_term)

    def pointwise():
        for _ in range(20):
            a = random_theta(F, rng, 2)
            b = random_theta(F, rng, 2)
            if a == b or a.is_zero() or b.is_zero():
                b = a + ThetaPoly.const(F, 1)
                if b.is_zero() or a.is_zero():
                    continue
            S, G = random_weighted(rng), random_weighted(rng)
            s, t = rng.randint(1, 3), rng.randint(1, 3)
            lhs = RatFunc(char_eval(S, a) * char_eval(G, b)) / RatFunc(a**s * b**t)
            rhs = RatFunc.const(F, 0)
            U = S.union(G)
            for own, exp, x, y in ((G, t, a, b), (S, s, b, a)):
                for J in own.subsets():
                    I = U.difference(J)
                    for j in range(1, s + t):
                        i = s + t - j
                        c = delta_coeff(F, own, J, j, exp)
                        if c:
                            num = char_eval(I, x) * char_eval(J, x - y)
                            rhs = rhs + RatFunc(num.scale(c)) / RatFunc(x**i * (x - y) ** j)
            if lhs != rhs:
                return False
        return True

    col.check("pointwise-sum-shuffle", {"samples": 20}, pointwise)

    def deltas():
        e = WeightedSubset(())
        ok = delta_coeff(F, e, e, 3, 1) == F(-1)
        if F.q == 3:
            from .arrays import Delta_coeff
            ok = ok and Delta_coeff(F, e, e, 2, 1) == F(1) and Delta_coeff(F, e, e, 3, 1) == F(0)
        return ok

    col.check("delta-coefficients", {}, deltas)
    return col.results


def suite_stuffle(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("stuffle")
    rng = _rng(cfg, "stuffle")
    q = F.q
    pool = [WeightedSubset(()), WeightedSubset.of(1), WeightedSubset.of(2), WeightedSubset.of(1, 2),
            WeightedSubset.from_mapping({1: 2}), WeightedSubset.from_mapping({2: 2})]

    def depth_one():
        bad = []
        for S, G in itertools.product(pool, repeat=2):
            for s in range(1, 6):
                for t in range(1, 7 - s):
                    combo = stuffle_depth1(F, S, s, G, t)
                    for d in range(5):
                        lhs = powersum_brute(F, AdmissibleArray(((S, s),)), d) * \
                            powersum_brute(F, AdmissibleArray(((G, t),)), d)
                        if lhs != _combo_value(F, combo, d):
                            bad.append((str(S), s, str(G), t, d))
        return not bad, math.inf, f"failures: {bad[:3]}" if bad else ""

    col.check("depth-one-product", {"types": 6, "s+t_max": 6, "d_max": 4}, depth_one)

    def modes():
        bad = []
        for _ in range(20):
            A = random_plain_array(F, rng, 2, 3, max_type=2)
            B = random_plain_array(F, rng, 2, 3, max_type=2)
            for mode in Mode:
                combo = stuffle_product(F, A, B, mode)
                for d in range(5):
                    if mode is Mode.DD:
                        lhs = powersum_brute(F, A, d) * powersum_brute(F, B, d)
                    elif mode is Mode.D_LT:
                        lhs = powersum_brute(F, A, d) * powersum_brute_lt(F, B, d)
                    else:
                        lhs = powersum_brute_lt(F, A, d) * powersum_brute_lt(F, B, d)
                    if lhs != _combo_value(F, combo, d, lt=mode is Mode.LT_LT):
                        bad.append((str(A), str(B), mode.value, d))
        return not bad, math.inf, f"failures: {bad[:3]}" if bad else ""

    col.check("power-sum-products", {"pairs": 20, "d_max": 4}, modes)

    def zeta_level():
        worst = math.inf
        sets = _plain_sets(F)
        tried = 0
        while tried < 10:
            S, G = rng.choice(sets), rng.choice(sets)
            if S.union(G).card >= q or not S.union(G).is_plain():
                continue
            s, t = rng.randint(1, 3), rng.randint(1, 3)
            tried += 1
            A, B = AdmissibleArray(((S, s),)), AdmissibleArray(((G, t),))
            lhs = zeta_value(F, A, cfg.N) * zeta_value(F, B, cfg.N)
            rhs = None
            for C, c in zeta_product_expand(F, S, s, G, t).items():
                z = zeta_value(F, C, cfg.N).scale(c)
                rhs = z if rhs is None else rhs + z
            diff = lhs - rhs
            if not diff.is_zero_to_prec():
                return False, diff.residual_valuation()
            worst = min(worst, diff.residual_valuation())
        return True, worst

    col.check("zeta-product", {"pairs": 10, "N": cfg.N}, zeta_level, mode=PRECISION)

    if q > 2:
        def decomposition():
            one, two = WeightedSubset.of(1), WeightedSubset.of(2)
            for d in range(cfg.dmax + 1):
                lhs = powersum_brute(F, AdmissibleArray(((WeightedSubset.of(1, 2), 2),)), d)
                rhs = (powersum_brute(F, AdmissibleArray(((one, 1),)), d)
                       * powersum_brute(F, AdmissibleArray(((two, 1),)), d)
                       + powersum_brute(F, AdmissibleArray(((two, 1), (one, 1))), d)
                       + powersum_brute(F, AdmissibleArray(((one, 1), (two, 1))), d))
                if lhs != rhs:
                    return False
            return True

        col.check("two-variable-decomposition", {"d_max": cfg.dmax}, decomposition)
    else:
        col.skip("two-variable-decomposition", {}, "needs |{1,2}| < q")

    def empty_unit():
        B = AdmissibleArray(((WeightedSubset.of(1), 2),))
        ok = all(stuffle_product(F, EMPTY, B, m) == ArrayCombo.single(F, B) for m in Mode)
        # as a per-degree statement the unit law holds for prefix sums in degree >= 1
        for d in range(1, 4):
            lhs = powersum_brute_lt(F, EMPTY, d) * powersum_brute_lt(F, B, d)
            ok = ok and lhs == powersum_brute_lt(F, B, d)
        return ok

    col.check("empty-array-unit", {}, empty_unit)
    return col.results


def suite_ed(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("ed")
    q = F.q

    def forms():
        return all(e_poly(F, d, EForm.PRODUCT) == e_poly(F, d, EForm.SUM) for d in range(5))

    col.check("e-forms-agree", {"d_max": 4}, forms)

    def linear():
        for d in range(4):
            E = e_poly(F, d)
            if any(k != q ** round(math.log(k, q)) for k in E.coeffs):
                return False
            x, y = XPoly.x(F), XPoly.x(F) * RatFunc.var(F, Var("T", 1))
            if E(x + y) != E(x) + E(y):
                return False
            for alpha in F.elements():
                c = RatFunc(ThetaPoly.const(F, alpha))
                if E(x * c) != E(x) * c:
                    return False
        return True

    col.check("e-linear", {"d_max": 3}, linear)

    def vanish():
        return all(e_poly(F, d)(RatFunc(a)).is_zero() for d in range(1, 4) for a in lower_enum(F, d))

    col.check("e-vanishes-below-degree", {"d_max": 3}, vanish)

    def at_theta():
        one = RatFunc.const(F, 1)
        return all(e_poly(F, d)(RatFunc(ThetaPoly.monomial(F, d))) == one for d in range(5))

    col.check("e-at-theta-power", {"d_max": 4}, at_theta)
    return col.results


def suite_genfun(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("genfun")
    q = F.q
    t1 = Var("t", 1)

    def inverse():
        n0 = 8
        for d in range(4):
            series = XPoly(F, {n: sd_via_genfun(F, d, n + 1) for n in range(n0 + 1)})
            lhs = ((XPoly.const(F, 1) - e_poly(F, d)) * RatFunc(ell(F, d)) * series).truncate(n0 + 1)
            if lhs != XPoly.const(F, 1):
                return False
        return True

    col.check("generating-function-inverse", {"d_max": 3, "order": 9}, inverse)

    def enumeration():
        return all(sd_via_genfun(F, d, n) == sd_brute(F, d, n) for d in range(4) for n in range(1, 7))

    col.check("genfun-matches-enumeration", {"d_max": 3, "n_max": 6}, enumeration)

    def small():
        return all(sd_via_genfun(F, d, s) == RatFunc(ThetaPoly.const(F, 1), ell(F, d) ** s)
                   for d in range(5) for s in range(1, q + 1))

    col.check("small-exponent-power-sums", {"d_max": 4}, small)

    def p_values():
        for d in range(1, 5):
            lhs = p_poly(F, d, t1)(RatFunc(ThetaPoly.monomial(F, d)))
            rhs = RatFunc(subst_theta(ThetaPoly.monomial(F, d), t1) - b_poly(F, d, t1))
            if lhs != rhs:
                return False
        return p_poly(F, 1, t1) == XPoly.x(F) and p_poly(F, 2, t1)(RatFunc.const(F, 0)).is_zero()

    col.check("p-at-theta-power", {"d_max": 4}, p_values)

    def extraction():
        for d in range(1, 5):
            P = p_poly(F, d, t1)
            if any(k != q ** round(math.log(k, q)) for k in P.coeffs):
                return False
            if any(P.coefficient(q**k) != q_coeff(F, d, k, t1) for k in range(d)):
                return False
        return q_coeff(F, 1, 0, t1) == RatFunc.const(F, 1)

    col.check("q-coefficient-extraction", {"d_max": 4}, extraction)

    def q_zero():
        tv = MultiPoly.var(F, t1)
        for d in range(1, 6):
            closed = RatFunc(b_poly(F, d, t1)) / (RatFunc(ell(F, d - 1)) * RatFunc(tv - MultiPoly.theta(F)))
            if q_coeff(F, d, 0, t1) != closed:
                return False
            partial = RatFunc.const(F, 0)
            for j in range(d):
                partial = partial + RatFunc(b_poly(F, j, t1)) / RatFunc(ell(F, j))
            if partial != closed:
                return False
        return True

    col.check("q-zero-closed-form", {"d_max": 5}, q_zero)

    def negative():
        ok = goss_zeta_int(F, 0).is_one()
        for m in range(q - 1, 4 * (q - 1) + 1, q - 1):
            ok = ok and goss_zeta_int(F, -m).is_zero()
        ok = ok and all(sd_negative(F, d, 0).is_zero() for d in range(1, 4))
        return ok

    col.check("negative-zeta", {"multiples": 4}, negative)
    return col.results


def suite_perkins(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("perkins")
    # full enumeration over degree-3 monics is slow for q > 3
    top = 3 if F.q <= 3 else 2
    for J in _plain_sets(F):
        for d in range(1, top + 1):
            col.check("perkins-identity", {"d": d, "J": str(J)}, lambda d=d, J=J: perkins_check(F, d, J),
                      tag=f"d={d},J={J}")
    return col.results


def _all_plain_arrays(F: GF, max_depth: int, max_weight: int) -> list[AdmissibleArray]:
    out = []
    sets = [S for S in _plain_sets(F)]
    for depth in range(1, max_depth + 1):
        for exps in itertools.product(range(1, max_weight + 1), repeat=depth):
            if sum(exps) > max_weight:
                continue
            for types in itertools.product(sets, repeat=depth):
                U = WeightedSubset(())
                for S in types:
                    U = U.union(S)
                if not U.is_plain() or U.card >= F.q:
                    continue
                out.append(AdmissibleArray(tuple(zip(types, exps))))
    return out


def _enumerate_tuples(F: GF, A: AdmissibleArray, d: int) -> RatFunc:
    """Direct sum over tuples of monic polynomials with strictly decreasing degrees."""
    total = RatFunc.const(F, 0)
    for degs in itertools.combinations(range(d - 1, -1, -1), A.depth - 1):
        for polys in itertools.product(*(monic_enum(F, e) for e in (d,) + degs)):
            term = RatFunc.const(F, 1)
            for (S, s), a in zip(A, polys):
                term = term * RatFunc(char_eval(S, a)) / RatFunc(a**s)
            total = total + term
    return total


def suite_explicit_formula(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("explicit-formula")
    rng = _rng(cfg, "explicit-formula")
    dmax = cfg.dmax
    arrays = _all_plain_arrays(F, 3, 6)

    def three_way():
        bad = [(str(A), d) for A in arrays for d in range(dmax + 1)
               if powersum_fast(F, A, d) != powersum_brute(F, A, d)]
        return not bad, math.inf, f"{len(bad)} failures, e.g. {bad[:3]}" if bad else ""

    col.check("fast-equals-brute", {"arrays": len(arrays), "d_max": dmax}, three_way)

    def untwisted():
        for exps in [(1,), (2,), (1, 1), (2, 1), (3, 2, 1)]:
            A = AdmissibleArray(tuple((WeightedSubset(()), s) for s in exps))
            for d in range(dmax + 1):
                expect = RatFunc.const(F, 0)
                for degs in itertools.combinations(range(d - 1, -1, -1), len(exps) - 1):
                    term = RatFunc.const(F, 1)
                    for s, e in zip(exps, (d,) + degs):
                        term = term * sd_via_genfun(F, e, s)
                    expect = expect + term
                if powersum_brute(F, A, d) != expect:
                    return False
        return True

    col.check("untwisted-power-sums", {"d_max": dmax}, untwisted)

    def recursion():
        for _ in range(8):
            A = random_plain_array(F, rng, 2, 4)
            for d in range(3):
                if _enumerate_tuples(F, A, d) != powersum_brute(F, A, d):
                    return False
        return True

    col.check("head-tail-recursion", {"arrays": 8, "d_max": 2}, recursion)

    def closed_forms():
        t1 = Var("t", 1)
        A = AdmissibleArray(((WeightedSubset.of(1), 1),))
        tv = RatFunc(MultiPoly.var(F, t1) - MultiPoly.theta(F))
        for d in range(5):
            if powersum_brute(F, A, d) != RatFunc(b_poly(F, d, t1)) / RatFunc(ell(F, d)):
                return False
            if d >= 1:
                lt = RatFunc(b_poly(F, d, t1)) / (RatFunc(ell(F, d - 1)) * tv)
                if powersum_brute_lt(F, A, d) != lt:
                    return False
        return True

    col.check("depth-one-closed-forms", {"d_max": 4}, closed_forms)

    def bound():
        bad = []
        for A in arrays:
            for d in range(dmax + 1):
                vals = coefficient_valuations(powersum_brute(F, A, d)).values()
                if vals and min(vals) < valuation_bound(F, A, d):
                    bad.append((str(A), d))
        return not bad, math.inf, f"violations: {bad[:3]}" if bad else ""

    col.check("valuation-bound", {"arrays": len(arrays), "d_max": dmax}, bound)
    return col.results


def _corrected_terms(F: GF, d: int) -> list[RatFunc]:
    t1, t2 = Var("t", 1), Var("t", 2)
    b1, b2 = RatFunc(b_poly(F, d, t1)), RatFunc(b_poly(F, d, t2))
    L, L1 = RatFunc(ell(F, d)), RatFunc(ell(F, d - 1))
    x1 = RatFunc(MultiPoly.var(F, t1) - MultiPoly.theta(F))
    x2 = RatFunc(MultiPoly.var(F, t2) - MultiPoly.theta(F))
    return [b1 * b2 / L**2, b1 * b2 / (L * L1 * x1), b1 * b2 / (L * L1 * x2)]


def _gp_literal_terms(F: GF, d: int) -> list[RatFunc]:
    t1, t2 = Var("t", 1), Var("t", 2)
    b1, b2 = RatFunc(b_poly(F, d, t1)), RatFunc(b_poly(F, d, t2))
    L, L1 = RatFunc(ell(F, d)), RatFunc(ell(F, d - 1))
    x1 = RatFunc(MultiPoly.var(F, t1) - MultiPoly.theta(F))
    x2 = RatFunc(MultiPoly.var(F, t2) - MultiPoly.theta(F))
    return [b1 * b2 / L**2, -(b1 / (L * L1 * x1)), -(b2 / (L * L1 * x2))]


def suite_gp_compare(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("gp-compare")
    S12 = WeightedSubset.of(1, 2)
    if F.q <= 2:
        for st in MANIFEST["gp-compare"][:4]:
            col.skip(st, {}, "needs |{1,2}| < q")
    else:
        A = AdmissibleArray(((S12, 2),))
        for d in (1, 2, 3):
            col.check("corrected-equals-brute", {"d": d},
                      lambda d=d: powersum_depth1_fast(F, S12, 2, d) == powersum_brute(F, A, d), tag=f"d={d}")

            def term_by_term(d=d):
                t1, t2 = Var("t", 1), Var("t", 2)
                ours = [
                    sd_via_genfun(F, d, 2) * RatFunc(b_of(F, d, S12)),
                    sd_via_genfun(F, d, 1) * q_coeff(F, d, 0, t1) * RatFunc(b_poly(F, d, t2)),
                    sd_via_genfun(F, d, 1) * q_coeff(F, d, 0, t2) * RatFunc(b_poly(F, d, t1)),
                ]
                total = ours[0] + ours[1] + ours[2]
                return all(x == y for x, y in zip(ours, _corrected_terms(F, d))) and \
                    total == powersum_depth1_fast(F, S12, 2, d)

            col.check("corrected-term-by-term", {"d": d}, term_by_term, tag=f"d={d}")

            def differs(d=d):
                resid = powersum_depth1_gp(F, S12, 2, d) - powersum_brute(F, A, d)
                # passes when the discrepancy is present
                return not resid.is_zero(), math.inf, f"residual {resid}"

            col.check("gp-differs", {"d": d, "expected": "discrepancy"}, differs, tag=f"d={d}")

            def literal(d=d):
                t = _gp_literal_terms(F, d)
                return powersum_depth1_gp(F, S12, 2, d) == t[0] + t[1] + t[2]

            col.check("gp-literal-form", {"d": d}, literal, tag=f"d={d}")

    def small_types():
        # empty type: the two formulas coincide; one variable: they agree only for s = 1
        E, one = WeightedSubset(()), WeightedSubset.of(1)
        for s in range(1, 7):
            for d in range(cfg.dmax + 1):
                if powersum_depth1_gp(F, E, s, d) != powersum_brute(F, AdmissibleArray(((E, s),)), d):
                    return False
                gp1 = powersum_depth1_gp(F, one, s, d)
                brute1 = powersum_brute(F, AdmissibleArray(((one, s),)), d)
                if (gp1 == brute1) != (s == 1 or d == 0):
                    return False
        return True

    col.check("gp-small-types", {"s_max": 6, "d_max": cfg.dmax}, small_types)
    return col.results


def dagger_bridge_rhs(F: GF, S: WeightedSubset, n: int, d: int) -> RatFunc:
    """sum over J with I + J = S, I nonempty, of S^dagger_d(J; n - sum q^k_i) prod Q_{d,k_i}(t_i), plus S^dagger_d(S; n)."""
    q = F.q
    out = dagger_powersum(F, AdmissibleArray(((S, n),)), d)
    for I in S.subsets():
        if not I:
            continue
        J = S.difference(I)
        for ks in itertools.product(range(d), repeat=I.card):
            m = n - sum(q**k for k in ks)
            if m <= 0:
                continue
            term = dagger_powersum(F, AdmissibleArray(((J, m),)), d)
            for i, k in zip(I.support, ks):
                term = term * q_coeff(F, d, k, Var("t", i))
            out = out + term
    return out


def suite_dagger(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("dagger")
    rng = _rng(cfg, "dagger")
    q = F.q
    sets = [S for S in (WeightedSubset.of(1), WeightedSubset.of(1, 2)) if S.card < q]

    def bridge():
        for S in sets:
            for n in range(1, 9):
                for d in range(cfg.dmax + 1):
                    if powersum_brute(F, AdmissibleArray(((S, n),)), d) != dagger_bridge_rhs(F, S, n, d):
                        return False
        return True

    col.check("dagger-bridge", {"types": [str(S) for S in sets], "n_max": 8, "d_max": cfg.dmax}, bridge)

    def products():
        bad = []
        tried = 0
        while tried < 10:
            A = random_plain_array(F, rng, 2, 3)
            B = random_plain_array(F, rng, 2, 3)
            if A.type.union(B.type).card >= q:
                continue
            tried += 1
            for mode in Mode:
                combo = dagger_stuffle(F, A, B, mode)
                for d in range(5):
                    if mode is Mode.DD:
                        lhs = dagger_powersum(F, A, d) * dagger_powersum(F, B, d)
                    elif mode is Mode.D_LT:
                        lhs = dagger_powersum(F, A, d) * dagger_lt(F, B, d)
                    else:
                        lhs = dagger_lt(F, A, d) * dagger_lt(F, B, d)
                    if lhs != _combo_value(F, combo, d, lt=mode is Mode.LT_LT, dagger=True):
                        bad.append((str(A), str(B), mode.value, d))
        return not bad, math.inf, f"failures: {bad[:3]}" if bad else ""

    col.check("dagger-products", {"pairs": 10, "d_max": 4}, products)

    def matches():
        worst = math.inf
        for _ in range(10):
            A = random_plain_array(F, rng, 3, 5, max_type=0)
            diff = dagger_zeta(F, A, cfg.N) - zeta_value(F, A, cfg.N)
            if not diff.is_zero_to_prec():
                return False, diff.residual_valuation()
            worst = min(worst, diff.residual_valuation())
        A1 = AdmissibleArray(((WeightedSubset.of(1), 1),))
        diff = dagger_zeta(F, A1, cfg.N) - zeta_value(F, A1, cfg.N)
        if not diff.is_zero_to_prec():
            return False, diff.residual_valuation()
        return True, min(worst, diff.residual_valuation())

    col.check("dagger-matches-zeta", {"arrays": 10, "N": cfg.N}, matches, mode=PRECISION)

    def depth_one():
        for S in sets:
            for s in range(1, 5):
                for d in range(4):
                    lhs = dagger_powersum(F, AdmissibleArray(((S, s),)), d)
                    if lhs != sd_via_genfun(F, d, s) * RatFunc(b_of(F, d, S)):
                        return False
        return True

    col.check("dagger-depth-one", {}, depth_one)
    return col.results


def suite_eta(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("eta")
    N = cfg.N

    def kronecker():
        bad = [(k, i) for k in range(4) for i in range(4)
               if eta_eval(F, k, i) != RatFunc.const(F, 1 if i == k else 0)]
        return not bad, math.inf, f"failures {bad}" if bad else ""

    col.check("eta-kronecker", {"k_max": 3, "i_max": 3}, kronecker)

    for k in range(3):
        col.check("special-zeta", {"k": k, "N": N}, lambda k=k: special_zeta_check(F, k, N), mode=PRECISION,
                  tag=f"k={k}")

    def series_eval():
        worst = math.inf
        for k in range(4):
            e = eta_series(F, k, N)
            for i in range(k + 1):
                diff = e.evaluate(i, N) - Laurent.from_ratfunc(eta_eval(F, k, i), N)
                if not diff.is_zero_to_prec():
                    return False, diff.residual_valuation(), f"k={k}, i={i}"
                worst = min(worst, diff.residual_valuation())
        return True, worst

    col.check("eta-series-evaluation", {"k_max": 3, "N": N}, series_eval, mode=PRECISION)

    def generators():
        if F.q <= 2:
            return True, math.inf, "single-variable case only"
        worst = math.inf
        for k1, k2 in [(1, 0), (0, 1), (1, 1)]:
            lhs = eta_series(F, k1, N, 1).value * eta_series(F, k2, N, 2).value
            A1, A2 = special_zeta_array(F, k1, 1), special_zeta_array(F, k2, 2)
            rhs = (zeta_value(F, A1, N) * zeta_value(F, A2, N)).scale((-1) ** (k1 + k2))
            if A1.weight != F.q**k1 or A2.weight != F.q**k2:
                return False, 0, "weight bookkeeping"
            diff = lhs - rhs
            if not diff.is_zero_to_prec():
                return False, diff.residual_valuation()
            worst = min(worst, diff.residual_valuation())
        return True, worst

    col.check("eta-generators", {"N": N}, generators, mode=PRECISION)

    def zeta_theta():
        v = tate_eval(F, AdmissibleArray(((WeightedSubset.of(1), 1),)), (0,), N)
        diff = v - Laurent.from_ratfunc(RatFunc.const(F, 1), N)
        return diff.is_zero_to_prec(), diff.residual_valuation()

    col.check("zeta-at-theta", {"N": N}, zeta_theta, mode=PRECISION)
    return col.results


def _sigmas(F: GF) -> list[tuple]:
    return [s for s in ((1,), (1, 2)) if len(s) < F.q]


def suite_fe_maps(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("fe-maps")
    N = cfg.N
    q = F.q
    cases = [((1,), (0,)), ((1,), (1,)), ((1,), (2,)), ((1, 2), (1, 0)), ((1, 2), (1, 1))]
    for sigma, k in cases:
        if len(sigma) >= q:
            col.skip("f-equals-e", {"sigma": list(sigma), "k": list(k)}, "needs |sigma| < q",
                     tag=f"k={','.join(map(str, k))}")
            continue

        def f_eq_e(sigma=sigma, k=k):
            f = TrivialMZV.eta(F, sigma, k)
            Fx = f_map(f, 3).numeric(N)
            Ex = e_map(f, 3, N)
            worst = math.inf
            for m in set(Fx.terms) | set(Ex.terms):
                diff = Fx.coefficient(m) - Ex.coefficient(m)
                if not diff.is_zero_to_prec():
                    return False, diff.residual_valuation(), f"monomial {m}"
                worst = min(worst, diff.residual_valuation())
            return True, worst

        col.check("f-equals-e", {"sigma": list(sigma), "k": list(k), "i_max": 3, "N": N}, f_eq_e,
                  mode=PRECISION, tag=f"k={','.join(map(str, k))}")

    def f_eta0():
        lam = lambda_value(F, AdmissibleArray(((WeightedSubset.of(1), 1),)), N)
        Fx = f_map(TrivialMZV.eta(F, (1,), (0,)), 4).numeric(N)
        diff = Fx - lam
        return diff.is_zero_to_prec(), diff.residual_valuation()

    col.check("f-of-eta0-is-lambda", {"N": N}, f_eta0, mode=PRECISION)

    def ev_lambda():
        z1 = goss_zeta_int(F, 1, N)
        lam = lambda_value(F, AdmissibleArray(((WeightedSubset.of(1), 1),)), N)
        d1 = ev_map(lam) - z1
        d2 = ev_map(f_map(TrivialMZV.eta(F, (1,), (0,)), 4), "numeric", N) - z1
        return d1.is_zero_to_prec() and d2.is_zero_to_prec(), min(d1.residual_valuation(),
                                                                   d2.residual_valuation())

    col.check("ev-lambda-is-zeta1", {"N": N}, ev_lambda, mode=PRECISION)

    def lam_coeffs():
        A = AdmissibleArray(((WeightedSubset.of(1), 1), (WeightedSubset.of(2), 1)))
        coeffs = lambda_coefficients(F, A, 4)
        for d1 in range(4):
            for d2 in range(d1):
                m = ((Var("X", 1), q**d1), (Var("X", 2), q**d2))
                if coeffs.get(m) != sd_via_genfun(F, d1, 1) * sd_via_genfun(F, d2, 1):
                    return False
        B = AdmissibleArray(((WeightedSubset.of(1), 2), (WeightedSubset(()), 1)))
        coeffs = lambda_coefficients(F, B, 4)
        for d1 in range(4):
            expect = RatFunc.const(F, 0)
            for d2 in range(d1):
                expect = expect + sd_via_genfun(F, d1, 2) * sd_via_genfun(F, d2, 1)
            m = ((Var("X", 1), q**d1),)
            if coeffs.get(m, RatFunc.const(F, 0)) != expect:
                return False
        return True

    col.check("lambda-coefficients", {"d1_max": 3}, lam_coeffs)

    def g_formula():
        rng = _rng(cfg, "fe-maps")
        worst = math.inf
        for sigma in _sigmas(F):
            for _ in range(3):
                f = random_trivial(F, sigma, rng, 2, 1)
                # guard digits: the random coefficients have negative valuation
                diff = ev_map(e_map(f, 5, N + 10)) - g_map(f, "numeric", N + 10)
                if not diff.is_zero_to_prec():
                    return False, diff.residual_valuation(), str(f)
                worst = min(worst, diff.residual_valuation())
        return True, worst

    col.check("g-formula", {"N": N}, g_formula, mode=PRECISION)
    return col.results


def suite_kernel(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("kernel")
    rng = _rng(cfg, "kernel")
    N = cfg.N
    for sigma in _sigmas(F):
        js = nonzero_tuples(len(sigma), 2)
        tag = "sigma=" + ",".join(map(str, sigma))
        par = {"sigma": list(sigma), "j_entries_max": 2}

        def symbolic(sigma=sigma, js=js):
            ok = all(g_map(kernel_basis(F, sigma, j)).is_zero() for j in js)
            rng_local = random.Random(rng.random())
            for _ in range(20):
                a = {j: random_symcoeff(F, rng_local) for j in rng_local.sample(js, min(3, len(js)))}
                ok = ok and g_map(phi_linear(F, sigma, a)).is_zero()
            return ok

        col.check("kernel-symbolic", par, symbolic, tag=tag)

        def numeric(sigma=sigma, js=js):
            worst = math.inf
            for j in js:
                v = g_map(kernel_basis(F, sigma, j), "numeric", N)
                if not v.is_zero_to_prec():
                    return False, v.residual_valuation(), f"j={j}"
                worst = min(worst, v.residual_valuation())
            return True, worst

        col.check("kernel-numeric", dict(par, N=N), numeric, mode=PRECISION, tag=tag)

        def via_f(sigma=sigma, js=js):
            worst = math.inf
            for j in js:
                v = ev_map(f_map(kernel_basis(F, sigma, j), 4), "numeric", N)
                if not v.is_zero_to_prec():
                    return False, v.residual_valuation(), f"j={j}"
                worst = min(worst, v.residual_valuation())
            return True, worst

        col.check("kernel-via-f", dict(par, N=N, i_max=4), via_f, mode=PRECISION, tag=tag)

        def rank(sigma=sigma):
            rows_j, cols, rows, r = evaluation_matrix(F, sigma, 2)
            diag = all(rows[a][cols.index(j)] == SymCoeff.const(F, D_tuple(F, j)) for a, j in enumerate(rows_j))
            off = all(rows[a][cols.index(j2)].is_zero() for a, j in enumerate(rows_j) for j2 in rows_j if j2 != j)
            return r == len(rows_j) and diag and off

        col.check("kernel-rank", par, rank, tag=tag)

        def injective(sigma=sigma, js=js):
            rng_local = random.Random(rng.random())
            for _ in range(20):
                a = {j: random_symcoeff(F, rng_local) for j in rng_local.sample(js, min(3, len(js)))}
                f = phi_linear(F, sigma, a)
                for j in js:
                    expect = a.get(j, SymCoeff(F)) * D_tuple(F, j)
                    if trivial_eval(f, j) != expect:
                        return False
            return True

        col.check("phi-injective", par, injective, tag=tag)

        def normalization(sigma=sigma, js=js):
            for j in js:
                lit = kernel_basis(F, sigma, j, "literal")
                same = lit == phi(F, sigma, j)
                if same != (len(sigma) == 1) or kernel_basis(F, sigma, j) != phi(F, sigma, j):
                    return False
                if g_map(lit).is_zero() != (len(sigma) == 1):
                    return False
            return True

        col.check("basis-normalization", par, normalization, tag=tag)

    if F.q > 2:
        def permuted():
            sigma = (1, 2)
            for j, jp in [((1, 0), (0, 1)), ((2, 0), (0, 2)), ((2, 1), (1, 2))]:
                a = {j: SymCoeff.const(F, 1) / RatFunc(D_tuple(F, j)),
                     jp: -(SymCoeff.const(F, 1) / RatFunc(D_tuple(F, jp)))}
                f = phi_linear(F, sigma, a)
                expect = TrivialMZV.eta(F, sigma, j) - TrivialMZV.eta(F, sigma, jp)
                if f != expect or f.is_zero() or not g_map(f).is_zero():
                    return False
            return True

        col.check("permuted-example", {"sigma": [1, 2]}, permuted)
    else:
        col.skip("permuted-example", {}, "needs |{1,2}| < q")

    def single():
        f = phi(F, (1,), (1,))
        expect = TrivialMZV(F, (1,), {(0,): -SymCoeff.Z(F, F.q - 1), (1,): SymCoeff.const(F, D(F, 1))})
        return f == expect and g_map(f).is_zero()

    col.check("single-variable-example", {"sigma": [1], "j": [1]}, single)

    def not_injective():
        f = kernel_basis(F, (1,), (1,))
        return not f.is_zero() and g_map(f).is_zero() and not trivial_eval(f, (0,)).is_zero()

    col.check("not-injective", {"sigma": [1]}, not_injective)
    return col.results


def suite_image(F: GF, cfg: Config) -> list[CheckResult]:
    col = _Collector("image")
    rng = _rng(cfg, "image")
    for sigma in _sigmas(F):
        m = len(sigma)
        tag = "sigma=" + ",".join(map(str, sigma))
        col.check("image-generator", {"sigma": list(sigma)},
                  lambda sigma=sigma, m=m: g_map(TrivialMZV.eta(F, sigma, (0,) * m)) == SymCoeff.Z(F, m), tag=tag)

        def divisible(sigma=sigma, m=m):
            return all(g_map(random_trivial(F, sigma, rng)).divisible_by_Z(m) for _ in range(20))

        col.check("image-divisible", {"sigma": list(sigma), "samples": 20}, divisible, tag=tag)

        def monomials(sigma=sigma, m=m):
            for k in itertools.product(range(3), repeat=m):
                g = g_map(TrivialMZV.eta(F, sigma, k))
                expect = SymCoeff.Z(F, sum(F.q**x for x in k)) / RatFunc(D_tuple(F, k))
                if g != expect or not g.divisible_by_Z(m):
                    return False
            return True

        col.check("image-eta-monomials", {"sigma": list(sigma)}, monomials, tag=tag)
    return col.results


_RUNNERS = {
    "character": suite_character,
    "partial-fractions": suite_partial_fractions,
    "stuffle": suite_stuffle,
    "ed": suite_ed,
    "genfun": suite_genfun,
    "perkins": suite_perkins,
    "explicit-formula": suite_explicit_formula,
    "gp-compare": suite_gp_compare,
    "dagger": suite_dagger,
    "eta": suite_eta,
    "fe-maps": suite_fe_maps,
    "kernel": suite_kernel,
    "image": suite_image,
}


def run_suite(name: str, cfg: Config | None = None) -> list[CheckResult]:
    """Run one suite, or every suite for ``all``; raises KeyError on unknown names."""
    cfg = cfg or Config()
    F = cfg.field()
    if name == "all":
        out = []
        for n in SUITES:
            out.extend(_RUNNERS[n](F, cfg))
        return out
    if name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return _RUNNERS[name](F, cfg)


def covered_statements(results: list[CheckResult]) -> set[str]:
    return {r.check_id.split("[")[0] for r in results}


def manifest_ids() -> set[str]:
    return {f"{suite}.{st}" for suite, sts in MANIFEST.items() for st in sts}


def make_report(results: list[CheckResult], cfg: Config, timings: bool = False) -> dict:
    return {
        "header": {"q": cfg.q, "N": cfg.N, "seed": cfg.seed, "version": __version__},
        "results": [r.to_json(timings) for r in sorted(results, key=lambda r: r.check_id)],
    }


def report_json(results: list[CheckResult], cfg: Config, timings: bool = False) -> str:
    return json.dumps(make_report(results, cfg, timings), indent=2, sort_keys=False)


def exit_status(results: list[CheckResult]) -> int:
    return 1 if any(r.status == FAIL for r in results) else 0


__all__ = [
    "CheckResult", "Config", "MANIFEST", "SUITES", "run_suite", "make_report", "report_json", "exit_status",
    "covered_statements", "manifest_ids", "dagger_bridge_rhs", "PASS", "FAIL", "SKIP",
]
