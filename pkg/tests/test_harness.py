import json
import math

import pytest

from ffmzv.harness import (
    FAIL, MANIFEST, PASS, PRECISION, SKIP, SUITES, CheckResult, Config, covered_statements, exit_status,
    make_report, manifest_ids, report_json, run_suite,
)


@pytest.fixture(scope="module")
def all_q3():
    return run_suite("all", Config(q=3))


@pytest.fixture(scope="module")
def all_q2():
    return run_suite("all", Config(q=2))


def test_manifest_is_covered(all_q3):
    missing = manifest_ids() - covered_statements(all_q3)
    assert not missing, sorted(missing)


def test_every_check_belongs_to_the_manifest(all_q3):
    assert covered_statements(all_q3) <= manifest_ids()


def test_all_pass_at_q3(all_q3):
    bad = [r.check_id for r in all_q3 if r.status != PASS]
    assert not bad
    assert exit_status(all_q3) == 0


def test_check_ids_are_unique(all_q3):
    ids = [r.check_id for r in all_q3]
    assert len(ids) == len(set(ids))


def test_residuals(all_q3):
    N = Config().N
    for r in all_q3:
        if r.mode == PRECISION:
            assert r.residual_valuation > N or r.residual_valuation == math.inf
        else:
            assert r.residual_valuation == math.inf


def test_gp_differs_is_expected_fail(all_q3):
    rows = [r for r in all_q3 if r.check_id.startswith("gp-compare.gp-differs")]
    assert rows and all(r.status == PASS and r.params["expected"] == "discrepancy" for r in rows)


def test_q2_skips_carry_reasons(all_q2):
    skips = [r for r in all_q2 if r.status == SKIP]
    assert skips and all(r.detail for r in skips)
    assert not [r for r in all_q2 if r.status == FAIL]


def test_report_is_deterministic():
    cfg = Config(q=3, seed=7)
    a = report_json(run_suite("eta", cfg), cfg)
    b = report_json(run_suite("eta", cfg), cfg)
    assert a == b
    rep = json.loads(a)
    assert rep["header"] == {"q": 3, "N": 30, "seed": 7, "version": rep["header"]["version"]}
    ids = [r["check_id"] for r in rep["results"]]
    assert ids == sorted(ids)
    assert all("runtime_ms" not in r for r in rep["results"])
    assert all("runtime_ms" in r for r in make_report(run_suite("eta", cfg), cfg, timings=True)["results"])


def test_exit_status():
    ok = CheckResult("x.y", {}, PASS)
    assert exit_status([ok, CheckResult("x.z", {}, SKIP)]) == 0
    assert exit_status([ok, CheckResult("x.w", {}, FAIL)]) == 1


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_suite_names():
    assert SUITES == tuple(MANIFEST) and len(SUITES) == 13
