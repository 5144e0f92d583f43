"""Tests for the self-verification suites."""
import pytest

from humbert.errors import HumbertDomainError
from humbert.verification import (
    DEFAULTS,
    SUITES,
    Status,
    VerificationReport,
    counts_suite,
    default_tuple,
    equations_suite,
    model_suite,
    moduli_suite,
    profiles_suite,
    run_suite,
)


def assert_passed(report: VerificationReport):
    assert report.checks
    assert report.passed, [c.to_json() for c in report.failures]


def check(report: VerificationReport, check_id: str):
    (found,) = [c for c in report.checks if c.check_id == check_id]
    return found


def test_report_statuses():
    report = VerificationReport("counts", 4)
    report.add("a", "holds", True)
    report.add("b", "printed form has a sign error", True, erratum=True)
    report.add("c", "broken", False, erratum=True)
    assert [c.status for c in report.checks] == [Status.PASS, Status.ERRATUM, Status.FAIL]
    assert not report.passed
    assert report.to_json()["status"] == "fail"
    assert [c.check_id for c in report.errata] == ["b"]


@pytest.mark.parametrize("n", [4, 5, 6, 7, pytest.param(8, marks=pytest.mark.slow), 9])
def test_counts_suite(n):
    assert_passed(counts_suite(n))


def test_counts_suite_n4_matches_the_printed_census():
    report = counts_suite(4)
    assert check(report, "census.rank_n_minus_2").status is Status.PASS
    assert check(report, "census.pair_family").status is Status.PASS
    assert not report.errata


@pytest.mark.parametrize("n, total", [(5, 30), (6, 91)])
def test_counts_suite_flags_the_printed_free_census(n, total):
    report = counts_suite(n)
    census = check(report, "census.rank_n_minus_2")
    assert census.status is Status.ERRATUM
    assert census.witness["found"] == total
    assert census.witness["printed"] == n * (n + 1) // 2
    assert census.witness["example"] is not None

    family = check(report, "census.pair_family")
    assert family.status is Status.PASS
    assert family.witness["witnessed"] == n * (n + 1) // 2


def test_counts_suite_falls_back_past_the_cap():
    census = check(counts_suite(9), "census.rank_n_minus_2")
    assert census.status is Status.PASS
    assert census.witness["method"] == "constructive"


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8, 9])
def test_profiles_suite(n):
    assert_passed(profiles_suite(n))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_equations_suite(n):
    assert_passed(equations_suite(n, samples=2))


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 8, 9])
def test_equations_suite_large_n(n):
    assert_passed(equations_suite(n, samples=0))


def test_equations_suite_flags_errata_for_n4():
    report = equations_suite(4, samples=0)
    flagged = {c.check_id.split("(")[0] for c in report.errata}
    assert flagged == {"catalog.C5", "catalog.C8", "catalog.C9"}
    images = [c for c in report.checks if c.check_id.startswith("catalog.image_")]
    assert len(images) == 3
    assert all(c.status is Status.PASS for c in images)


@pytest.mark.parametrize("n", [4, 5, pytest.param(6, marks=pytest.mark.slow), 7, 8, 9])
def test_moduli_suite(n):
    assert_passed(moduli_suite(n, samples=1))


def test_moduli_suite_default_samples():
    assert DEFAULTS["samples"] == 20
    assert DEFAULTS["relation_samples"] == 100
    report = moduli_suite(7)
    assert check(report, "moduli.relation.bb").witness["tuples"] == 100


def test_moduli_suite_splits_by_symmetric_subgroup():
    report = moduli_suite(4, samples=1)
    sb = check(report, "moduli.sb_suborbit_count")
    assert sb.status is Status.PASS
    assert sb.witness["count"] == 20
    assert check(report, "moduli.equivalence").status is Status.PASS


@pytest.mark.parametrize("n", [4, 5])
def test_model_suite(n):
    assert_passed(model_suite(n))


def test_run_suite_all():
    report = run_suite("all", 4, samples=1)
    assert report.suite == "all"
    assert {c.check_id.split(".")[0] for c in report.checks} >= {"census", "profile", "equations", "moduli", "model"}
    assert_passed(report)


def test_run_suite_rejects_unknown_names():
    with pytest.raises(HumbertDomainError):
        run_suite("everything", 4)
    with pytest.raises(HumbertDomainError):
        run_suite("counts", 3)


def test_default_tuple():
    assert default_tuple(5).n == 5
    assert "counts" in SUITES
