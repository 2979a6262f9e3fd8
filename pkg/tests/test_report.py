"""Tests for report rendering."""

import csv
import io
import json
import re
from typing import Any

import pytest
from rich.console import Console

from lacunary_harmonic.checks import CheckResult, Status, Summary, make_sub
from lacunary_harmonic.padic_core import PrimeRange
from lacunary_harmonic.report import (
    CSV_FIELDS,
    print_table,
    render_json,
    report_to_dict,
    result_to_dict,
    write_csv,
)
from lacunary_harmonic.suite import Report, run_suite


def summary_from_rows(rows: list[dict[str, Any]]) -> dict[str, int]:
    """Recount a parsed JSON report."""
    results = [
        CheckResult(
            check=row["check"],
            p=row["p"],
            m=row["m"],
            status=Status(row["status"]),
            report_only=row["report_only"],
        )
        for row in rows
    ]
    return Summary.from_results(results).as_dict()


@pytest.fixture
def mixed_report() -> Report:
    """A hand-built report with one row of each kind."""
    results = [
        CheckResult("lehmer3", 5, None, (), "25", "13", "13", Status.PASS),
        CheckResult("t1", 5, 5, (), "25", status=Status.SKIPPED, detail="p = 5 divides m = 5"),
        CheckResult("t1", 7, 3, make_sub(r=1, a=2), "49", "3", "4", Status.FAIL),
        CheckResult(
            "williams_printed", 7, None, (), "7", "5", "6", Status.FAIL, report_only=True
        ),
        CheckResult(
            "hp26", 11, None, make_sub(form="merged"), "11",
            status=Status.DIVISIBILITY_FAILURE, detail="not divisible",
        ),
    ]
    return Report(
        results=results,
        summary=Summary.from_results(results),
        run={"pmin": 5, "pmax": 11, "moduli": [3, 5], "checks": ["lehmer3"], "version": "1.0"},
    )


def _render(report: Report, verbose: bool = False) -> str:
    buffer = io.StringIO()
    print_table(report, Console(file=buffer, width=200, no_color=True), verbose=verbose)
    return buffer.getvalue()


@pytest.mark.unit
class TestJson:
    """Tests for JSON output."""

    def test_result_row(self, mixed_report):
        row = result_to_dict(mixed_report.results[2])
        assert row == {
            "check": "t1",
            "p": 7,
            "m": 3,
            "sub": {"r": 1, "a": 2},
            "modulus": "49",
            "lhs": "3",
            "rhs": "4",
            "status": "fail",
            "report_only": False,
        }

    def test_detail_only_when_present(self, mixed_report):
        assert "detail" not in result_to_dict(mixed_report.results[0])
        assert result_to_dict(mixed_report.results[1])["detail"] == "p = 5 divides m = 5"

    def test_document_shape(self, mixed_report):
        document = json.loads(render_json(mixed_report))
        assert set(document) == {"run", "summary", "results"}
        assert document["summary"] == {
            "pass": 1,
            "fail": 1,
            "skip": 1,
            "divfail": 1,
            "reported": 1,
        }
        assert len(document["results"]) == 5
        assert document["results"][4]["status"] == "divisibility-failure"

    def test_summary_recount(self, mixed_report):
        document = report_to_dict(mixed_report)
        assert summary_from_rows(document["results"]) == document["summary"]

    def test_summary_recount_real_run(self):
        report = run_suite(PrimeRange(5, 13), [3, 5], ["t1", "lehmer3"])
        document = json.loads(render_json(report))
        assert summary_from_rows(document["results"]) == document["summary"]

    def test_deterministic(self):
        first = render_json(run_suite(PrimeRange(5, 13), [3], ["c1e1"]))
        second = render_json(run_suite(PrimeRange(5, 13), [3], ["c1e1"]))
        assert first == second


@pytest.mark.unit
class TestCsv:
    """Tests for CSV output."""

    def test_rows(self, mixed_report):
        buffer = io.StringIO()
        write_csv(mixed_report, buffer)
        rows = list(csv.reader(io.StringIO(buffer.getvalue())))
        assert tuple(rows[0]) == CSV_FIELDS
        assert len(rows) == 6
        assert rows[1] == ["lehmer3", "5", "", "", "25", "13", "13", "pass", "false"]
        assert rows[3][3] == "r=1 a=2"
        assert rows[4][-1] == "true"


@pytest.mark.unit
class TestTable:
    """Tests for the rich table."""

    def test_default_lists_failures_only(self, mixed_report):
        output = _render(mixed_report)
        assert "Results" in output
        assert "williams_printed" in output
        assert "report-only" in output
        assert "hp26" in output
        assert "lehmer3" not in output
        assert "Summary" in output
        assert "Divisibility failures" in output

    def test_verbose_lists_everything(self, mixed_report):
        output = _render(mixed_report, verbose=True)
        assert "lehmer3" in output
        assert "divides" in output

    def test_verbose_prints_per_check_counts(self, mixed_report):
        output = _render(mixed_report, verbose=True)
        per_check = output.split("Per-check counts", 1)[1]
        t1_line = next(line for line in per_check.splitlines() if " t1 " in line)
        assert re.findall(r"\d+", t1_line)[1:] == ["0", "1", "1", "0"]

    def test_per_check_counts_hidden_by_default(self, mixed_report):
        assert "Per-check counts" not in _render(mixed_report)

    def test_clean_run_prints_summary_only(self):
        report = run_suite(PrimeRange(5, 7), [3], ["lehmer3"])
        output = _render(report)
        assert "Results" not in output
        assert "Passed" in output
