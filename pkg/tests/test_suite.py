"""Tests for the sweep runner."""

import pytest

from lacunary_harmonic.checks import Status
from lacunary_harmonic.congruences import CHECKS
from lacunary_harmonic.padic_core import PrimeRange
from lacunary_harmonic.suite import Cell, SuiteOptions, evaluate_cell, plan_cells, run_suite

ASSERTED = sorted(check_id for check_id, check in CHECKS.items() if not check.report_only)


@pytest.mark.unit
class TestPlanCells:
    """Tests for cell expansion."""

    def test_scopes(self):
        cells = plan_cells([5, 7], [4, 3], ["t1", "lehmer3", "closed_m10"], SuiteOptions())
        assert cells == [
            Cell("closed_m10"),
            Cell("lehmer3", 5),
            Cell("lehmer3", 7),
            Cell("t1", 5, 3),
            Cell("t1", 5, 4),
            Cell("t1", 7, 3),
            Cell("t1", 7, 4),
        ]

    def test_empty_prime_list(self):
        """No primes means no cells, exact checks included."""
        assert plan_cells([], [3], ["closed_m10", "lehmer3"], SuiteOptions()) == []

    def test_report_only_excluded_by_default(self):
        assert plan_cells([7], [3], ["williams_printed"], SuiteOptions()) == []

    def test_report_only_included_on_request(self):
        options = SuiteOptions(report_only_exceptions=True)
        assert plan_cells([7], [3], ["williams_printed"], options) == [Cell("williams_printed", 7)]

    def test_unknown_check(self):
        with pytest.raises(KeyError):
            plan_cells([5], [3], ["nope"], SuiteOptions())


@pytest.mark.unit
class TestRunSuite:
    """Tests for run_suite."""

    def test_results_sorted_and_counted(self):
        report = run_suite(PrimeRange(5, 13), [3, 4], ["lehmer3", "t1"])
        keys = [result.sort_key() for result in report.results]
        assert keys == sorted(keys)
        assert report.summary.passed == len(report.results) == 4 + 8
        assert not report.failed

    def test_run_metadata(self):
        report = run_suite(PrimeRange(5, 13), [4, 3, 3], ["t1"])
        assert report.run["pmin"] == 5
        assert report.run["pmax"] == 13
        assert report.run["moduli"] == [3, 4]
        assert report.run["checks"] == ["t1"]
        assert isinstance(report.run["version"], str)

    def test_empty_range(self):
        report = run_suite(PrimeRange(24, 28), [3], ["lehmer3", "closed_m10"])
        assert report.results == []
        assert report.summary.as_dict() == {
            "pass": 0,
            "fail": 0,
            "skip": 0,
            "divfail": 0,
            "reported": 0,
        }

    def test_p_dividing_m_skipped(self):
        report = run_suite(PrimeRange(5, 7), [5], ["t1"])
        statuses = {(result.p, result.status) for result in report.results}
        assert statuses == {(5, Status.SKIPPED), (7, Status.PASS)}

    def test_p_dividing_m_included(self):
        options = SuiteOptions(include_p_dividing_m=True)
        report = run_suite(PrimeRange(5, 5), [5], ["t1"], options)
        assert report.results
        assert all(result.report_only for result in report.results)
        assert report.summary.reported == len(report.results)
        assert not report.failed

    def test_report_only_rows_do_not_fail(self):
        options = SuiteOptions(report_only_exceptions=True)
        report = run_suite(PrimeRange(7, 7), [3], ["williams_printed"], options)
        assert [result.status for result in report.results] == [Status.FAIL]
        assert report.summary.reported == 1
        assert not report.failed

    def test_failure_marks_report(self, failing_check):
        report = run_suite(PrimeRange(5, 13), [3], [failing_check.id])
        assert report.failed
        assert report.summary.failed == 4

    def test_divisibility_failure_counted(self, divfail_check):
        report = run_suite(PrimeRange(5, 7), [3], [divfail_check.id])
        assert report.failed
        assert report.summary.divfail == 2

    def test_fail_fast_sequential(self, failing_check):
        options = SuiteOptions(fail_fast=True)
        report = run_suite(PrimeRange(5, 13), [3], [failing_check.id, "lehmer3"], options)
        assert len(report.results) == 1
        assert report.results[0].p == 5

    def test_explain_callback(self):
        lines: list[str] = []
        options = SuiteOptions(explain_callback=lines.append)
        run_suite(PrimeRange(5, 7), [3], ["lehmer3", "firstorder", "t3"], options)
        assert "lehmer3 p=5: 1 pass" in lines
        assert "firstorder p=7 m=3: 3 pass" in lines
        assert "t3 p=5: 1 skipped" in lines
        assert len(lines) == 6

    def test_progress_callback(self):
        seen: list[tuple[int, int]] = []
        options = SuiteOptions(progress_callback=lambda done, total: seen.append((done, total)))
        run_suite(PrimeRange(5, 13), [3], ["lehmer3"], options)
        assert seen == [(1, 4), (2, 4), (3, 4), (4, 4)]

    def test_evaluate_cell(self):
        [result] = evaluate_cell(Cell("lehmer3", 5))
        assert result.status is Status.PASS


@pytest.mark.integration
class TestParallel:
    """Process-pool runs."""

    def test_jobs_do_not_change_report(self):
        args = (PrimeRange(5, 31), [2, 3, 4, 6], ["lehmer3", "t1", "c1e1", "closed_m8"])
        sequential = run_suite(*args, SuiteOptions(jobs=1))
        parallel = run_suite(*args, SuiteOptions(jobs=2))
        assert parallel.results == sequential.results
        assert parallel.summary == sequential.summary

    def test_all_asserted_checks_pass(self):
        """The whole registry over a small range: nothing fails."""
        report = run_suite(PrimeRange(5, 31), range(2, 13), ASSERTED, SuiteOptions(jobs=2))
        assert report.summary.failed == 0
        assert report.summary.divfail == 0
        assert report.summary.passed > 0
        assert not report.failed
