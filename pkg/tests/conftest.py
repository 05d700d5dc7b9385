import functools
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ffmzv import algebra, arrays, carlitz, gmaps, laurent, powersums, series, stuffle
from ffmzv.algebra import GF, ThetaPoly
from ffmzv.arrays import AdmissibleArray, WeightedSubset

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def F2():
    return GF.of_order(2)


@pytest.fixture(scope="session")
def F3():
    return GF.of_order(3)


@pytest.fixture(scope="session")
def F4():
    return GF.of_order(4)


@pytest.fixture(scope="session")
def F5():
    return GF.of_order(5)


FIELDS = {q: GF.of_order(q) for q in (2, 3, 4, 5)}


def clear_caches():
    """Drop every memo table so timed checks start cold."""
    for mod in (algebra, arrays, carlitz, gmaps, laurent, powersums, series, stuffle):
        for obj in vars(mod).values():
            if isinstance(obj, functools._lru_cache_wrapper):
                obj.cache_clear()


# strategies


def theta_polys(F: GF, max_deg: int = 4):
    return st.lists(st.integers(0, F.q - 1), min_size=1, max_size=max_deg + 1).map(
        lambda cs: ThetaPoly.from_coeffs(F, cs)
    )


def nonzero_theta_polys(F: GF, max_deg: int = 4):
    return theta_polys(F, max_deg).filter(lambda a: not a.is_zero())


def weighted_subsets(support=(1, 2), mult: int = 2):
    return st.fixed_dictionaries({n: st.integers(0, mult) for n in support}).map(WeightedSubset.from_mapping)


@st.composite
def plain_arrays(draw, q: int, max_depth: int = 3, max_weight: int = 6):
    """Admissible arrays with plain types whose union has fewer than q elements."""
    depth = draw(st.integers(1, max_depth))
    exps = draw(st.lists(st.integers(1, 3), min_size=depth, max_size=depth).filter(lambda e: sum(e) <= max_weight))
    pool = draw(st.permutations([1, 2]))[: q - 1]
    slots = []
    for s in exps:
        take = draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool))) if pool else []
        pool = [n for n in pool if n not in take]
        slots.append((WeightedSubset.of(*take), s))
    return AdmissibleArray(tuple(slots))


# acceptance summary


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion."""
    lines = request.config._acceptance_lines

    class Recorder:
        def __init__(self):
            self.label = None

        def start(self, number, title, limit):
            self.label = (number, title, limit)

    rec = Recorder()
    yield rec
    if rec.label is None:
        return
    number, title, limit = rec.label
    call = getattr(request.node, "rep_call", None)
    ok = call is not None and call.passed
    elapsed = getattr(request.node, "criterion_elapsed", float("nan"))
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f} s, limit {limit} s)"
    lines.append(line)
    sys.stdout.write("\n" + line + "\n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep
