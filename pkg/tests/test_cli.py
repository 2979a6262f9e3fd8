"""Tests for CLI interface."""

import json
import os
import re

import pytest
from typer.testing import CliRunner

from lacunary_harmonic.cli import app

# Ensure consistent terminal width for Rich formatting across all environments
os.environ.setdefault("COLUMNS", "120")

runner = CliRunner()

# Environment variables for consistent test output across all platforms
TEST_ENV = {
    "COLUMNS": "120",  # Consistent terminal width for Rich formatting
    "NO_COLOR": "1",  # Disable ANSI color codes for reliable string matching
}

# ANSI escape code pattern
ANSI_ESCAPE = re.compile(r"\x1b\[[0-9;]*m")


def strip_ansi(text: str) -> str:
    """Remove ANSI escape codes from text."""
    return ANSI_ESCAPE.sub("", text)


def invoke(*args: str, env=None):
    return runner.invoke(app, list(args), env={**TEST_ENV, **(env or {})})


@pytest.mark.unit
class TestTopLevel:
    """Tests for --help and --version."""

    def test_help(self):
        result = invoke("--help")
        assert result.exit_code == 0
        output = strip_ansi(result.stdout.lower())
        assert "lacunary harmonic" in output
        assert "verify" in output
        assert "compute" in output
        assert "list" in output

    def test_version(self):
        result = invoke("--version")
        assert result.exit_code == 0
        assert "lacunary-harmonic version" in result.stdout

    def test_verify_help(self):
        result = invoke("verify", "--help")
        assert result.exit_code == 0
        output = strip_ansi(result.stdout)
        for flag in ("--checks", "--pmin", "--pmax", "--moduli", "--jobs", "--format"):
            assert flag in output


@pytest.mark.unit
class TestList:
    """Tests for the list command."""

    def test_table(self):
        result = invoke("list")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        lehmer3 = next(line for line in lines if line.startswith("lehmer3 "))
        assert "mod p^2" in lehmer3
        assert "p >= 5" in lehmer3
        assert any("[report-only]" in line for line in lines)

    def test_json(self):
        result = invoke("list", "--format", "json")
        assert result.exit_code == 0
        rows = json.loads(result.stdout)
        by_id = {row["id"]: row for row in rows}
        assert by_id["t1"]["scope"] == "modular"
        assert by_id["lehmer2"]["modulus"] == "p"
        assert by_id["closed_m10"]["modulus"] == "exact"
        assert by_id["williams_printed"]["report_only"] is True

    def test_csv_rejected(self):
        result = invoke("list", "--format", "csv")
        assert result.exit_code == 2


@pytest.mark.unit
class TestVerify:
    """Tests for the verify command."""

    def test_json_report(self):
        result = invoke("verify", "--checks", "lehmer3", "--pmin", "5", "--pmax", "13", "-f", "json")
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["summary"]["pass"] == 4
        assert document["run"]["checks"] == ["lehmer3"]
        assert [row["p"] for row in document["results"]] == [5, 7, 11, 13]

    def test_csv_report(self):
        result = invoke(
            "verify", "--checks", "t1", "--pmin", "5", "--pmax", "7", "--moduli", "3,4", "-f", "csv"
        )
        assert result.exit_code == 0
        lines = result.stdout.strip().splitlines()
        assert lines[0] == "check,p,m,sub,modulus,lhs,rhs,status,report_only"
        assert len(lines) == 5
        assert lines[1].startswith("t1,5,3,")

    def test_table_report(self):
        result = invoke("verify", "--checks", "lehmer3", "--pmin", "5", "--pmax", "13")
        assert result.exit_code == 0
        output = strip_ansi(result.stdout)
        assert "Summary" in output
        assert "Passed" in output

    def test_p_dividing_m_is_skipped(self):
        result = invoke(
            "verify", "--checks", "t1", "--pmin", "5", "--pmax", "5", "--moduli", "5", "-f", "json"
        )
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["summary"]["skip"] == 1
        assert document["results"][0]["detail"] == "p = 5 divides m = 5"

    def test_report_only_failures_exit_zero(self):
        result = invoke(
            "verify",
            "--checks",
            "williams_printed",
            "--pmin",
            "7",
            "--pmax",
            "7",
            "--report-only-exceptions",
            "-f",
            "json",
        )
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["summary"]["reported"] == 1
        assert document["results"][0]["status"] == "fail"

    def test_failure_exits_one(self, failing_check):
        result = invoke("verify", "--checks", failing_check.id, "--pmin", "5", "--pmax", "7", "-f", "json")
        assert result.exit_code == 1
        assert json.loads(result.stdout)["summary"]["fail"] == 2

    def test_fail_fast(self, failing_check):
        result = invoke(
            "verify", "--checks", failing_check.id, "--pmin", "5", "--pmax", "31",
            "--fail-fast", "-f", "json",
        )
        assert result.exit_code == 1
        assert len(json.loads(result.stdout)["results"]) == 1

    def test_divisibility_failure_exits_one(self, divfail_check):
        result = invoke("verify", "--checks", divfail_check.id, "--pmin", "5", "--pmax", "5")
        assert result.exit_code == 1
        assert "divisibility-failure" in strip_ansi(result.stdout)

    def test_exclude(self):
        result = invoke(
            "verify", "--checks", "lehmer3", "--pmin", "5", "--pmax", "13",
            "--exclude", "7,11", "-f", "json",
        )
        assert result.exit_code == 0
        assert [row["p"] for row in json.loads(result.stdout)["results"]] == [5, 13]

    def test_empty_prime_range(self):
        result = invoke("verify", "--checks", "lehmer3,closed_m10", "--pmin", "24", "--pmax", "28", "-f", "json")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["results"] == []

    def test_unknown_check(self):
        result = invoke("verify", "--checks", "nope")
        assert result.exit_code == 2

    def test_reversed_range(self):
        result = invoke("verify", "--checks", "lehmer3", "--pmin", "10", "--pmax", "9")
        assert result.exit_code == 2

    def test_bad_moduli(self):
        result = invoke("verify", "--checks", "t1", "--moduli", "4..2")
        assert result.exit_code == 2

    def test_bad_jobs_env(self):
        result = invoke("verify", "--checks", "lehmer3", env={"LACUNARY_HARMONIC_JOBS": "many"})
        assert result.exit_code == 2

    def test_config_preset(self, tmp_path):
        preset = tmp_path / "sweep.yaml"
        preset.write_text("checks: [lehmer3]\npmin: 5\npmax: 7\nformat: json\n")
        result = invoke("verify", "--config", str(preset))
        assert result.exit_code == 0
        assert json.loads(result.stdout)["summary"]["pass"] == 2

    def test_flags_override_preset(self, tmp_path):
        preset = tmp_path / "sweep.yaml"
        preset.write_text("checks: [lehmer3]\npmin: 5\npmax: 7\nformat: json\n")
        result = invoke("verify", "--config", str(preset), "--pmax", "13")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["summary"]["pass"] == 4

    def test_missing_preset(self, tmp_path):
        result = invoke("verify", "--config", str(tmp_path / "missing.yaml"))
        assert result.exit_code == 2

    def test_explain(self):
        result = invoke("verify", "--checks", "lehmer3", "--pmin", "5", "--pmax", "7", "--explain")
        assert result.exit_code == 0
        assert "EXPLAIN: lehmer3 p=5: 1 pass" in result.output

    def test_progress_disabled_for_pipes(self):
        result = invoke("verify", "--checks", "lehmer3", "--pmin", "5", "--pmax", "7", "--progress", "-f", "json")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["summary"]["pass"] == 2


@pytest.mark.unit
class TestCompute:
    """Tests for the compute command."""

    @pytest.mark.parametrize(
        "args,expected",
        [
            (["H", "--r", "5", "--m", "3", "--p", "5", "--e", "2"], "13 (mod 25)"),
            (["H", "--r", "1", "--m", "3", "--p", "5", "--e", "2"], "20 (mod 25)"),
            (["H", "--r", "1", "--m", "2", "--p", "5", "--n", "4", "--signed"], "2 (mod 5)"),
            (["S", "--r", "2", "--m", "3", "--p", "5"], "3 (mod 5)"),
            (["T", "--r", "2", "--m", "10", "--n", "5"], "10"),
            (["Tstar", "--r", "3", "--m", "5", "--n", "6"], "-20"),
            (["Hexact", "--r", "1", "--m", "2", "--n", "5"], "23/15"),
            (["seq", "--kind", "pell", "--n", "11"], "5741"),
            (["seq", "--kind", "Q", "--n", "6"], "198"),
            (["seq", "--kind", "F", "--n", "7", "--p", "5", "--e", "3"], "13 (mod 125)"),
            (["delta", "--r", "3", "--m", "4", "--p", "7"], "-1"),
            (["closed", "--form", "m10", "--j", "0", "--n", "5"], "10"),
            (["closed", "--form", "m8-class0", "--n", "7"], "35"),
            (["closed", "--form", "diag-m5", "--n", "3"], "-20"),
        ],
    )
    def test_values(self, args, expected):
        result = invoke("compute", *args)
        assert result.exit_code == 0, result.output
        assert result.stdout.strip() == expected

    def test_check(self):
        result = invoke("compute", "check", "--id", "lehmer3", "--p", "5")
        assert result.exit_code == 0
        assert result.stdout.strip() == "lehmer3 p=5: lhs=13 rhs=13 (mod 25) pass"

    def test_check_with_subs(self):
        result = invoke("compute", "check", "--id", "firstorder", "--p", "7", "--m", "3")
        assert result.exit_code == 0
        lines = result.stdout.strip().splitlines()
        assert lines[0].startswith("firstorder p=7 m=3 r=0: ")
        assert len(lines) == 3

    def test_check_skipped(self):
        result = invoke("compute", "check", "--id", "t1", "--p", "5", "--m", "5")
        assert result.exit_code == 0
        assert "skipped (p = 5 divides m = 5)" in result.stdout

    def test_report_only_check_exits_zero(self):
        result = invoke("compute", "check", "--id", "williams_printed", "--p", "7")
        assert result.exit_code == 0
        assert result.stdout.strip().endswith("fail")

    def test_failing_check_exits_one(self, failing_check):
        result = invoke("compute", "check", "--id", failing_check.id, "--p", "7")
        assert result.exit_code == 1

    def test_unknown_check(self):
        result = invoke("compute", "check", "--id", "nope", "--p", "7")
        assert result.exit_code == 2

    def test_unknown_target(self):
        result = invoke("compute", "X")
        assert result.exit_code == 2

    def test_missing_option(self):
        result = invoke("compute", "H", "--r", "1", "--m", "3")
        assert result.exit_code == 2

    @pytest.mark.parametrize("p", ["9", "2"])
    def test_non_prime(self, p):
        result = invoke("compute", "H", "--r", "1", "--m", "3", "--p", p)
        assert result.exit_code == 2

    def test_exponent_out_of_range(self):
        result = invoke("compute", "H", "--r", "1", "--m", "3", "--p", "5", "--e", "7")
        assert result.exit_code == 2

    def test_bound_reaching_p(self):
        result = invoke("compute", "H", "--r", "1", "--m", "3", "--p", "5", "--n", "5")
        assert result.exit_code == 2

    def test_unknown_sequence(self):
        result = invoke("compute", "seq", "--kind", "tribonacci", "--n", "3")
        assert result.exit_code == 2

    def test_closed_needs_index(self):
        result = invoke("compute", "closed", "--form", "m8", "--n", "5")
        assert result.exit_code == 2

    def test_closed_even_n(self):
        result = invoke("compute", "closed", "--form", "m10", "--j", "0", "--n", "4")
        assert result.exit_code == 2
