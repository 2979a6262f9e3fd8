"""Rendering of sweep reports as JSON, CSV or a rich table."""

import csv
import json
from typing import Any, TextIO

from rich.console import Console
from rich.table import Table

from .checks import CheckResult, Status
from .suite import Report

CSV_FIELDS = ("check", "p", "m", "sub", "modulus", "lhs", "rhs", "status", "report_only")

STATUS_STYLES = {
    Status.PASS: "green",
    Status.FAIL: "red",
    Status.SKIPPED: "dim",
    Status.DIVISIBILITY_FAILURE: "magenta",
}


def result_to_dict(result: CheckResult) -> dict[str, Any]:
    """JSON-ready row; residues stay decimal strings."""
    row: dict[str, Any] = {
        "check": result.check,
        "p": result.p,
        "m": result.m,
        "sub": dict(result.sub),
        "modulus": result.modulus,
        "lhs": result.lhs,
        "rhs": result.rhs,
        "status": result.status.value,
        "report_only": result.report_only,
    }
    if result.detail:
        row["detail"] = result.detail
    return row


def report_to_dict(report: Report) -> dict[str, Any]:
    return {
        "run": report.run,
        "summary": report.summary.as_dict(),
        "results": [result_to_dict(result) for result in report.results],
    }


def render_json(report: Report) -> str:
    return json.dumps(report_to_dict(report), indent=2)


def _format_sub(result: CheckResult) -> str:
    return " ".join(f"{name}={value}" for name, value in result.sub)


def write_csv(report: Report, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for result in report.results:
        writer.writerow(
            [
                result.check,
                "" if result.p is None else result.p,
                "" if result.m is None else result.m,
                _format_sub(result),
                result.modulus,
                result.lhs,
                result.rhs,
                result.status.value,
                "true" if result.report_only else "false",
            ]
        )


def print_table(report: Report, console: Console, verbose: bool = False) -> None:
    """
    Print result rows and the summary.

    Only failing and divisibility-failure rows (including report-only ones)
    are listed unless verbose is set.
    """
    rows = [
        result
        for result in report.results
        if verbose or result.status in (Status.FAIL, Status.DIVISIBILITY_FAILURE)
    ]
    if rows:
        table = Table(title="Results", show_header=True, header_style="bold cyan")
        for column in ("Check", "p", "m", "Sub", "Modulus", "LHS", "RHS", "Status"):
            table.add_column(column, no_wrap=column in ("Check", "Status"))
        for result in rows:
            style = STATUS_STYLES[result.status]
            status = result.status.value + (" (report-only)" if result.report_only else "")
            table.add_row(
                result.check,
                "" if result.p is None else str(result.p),
                "" if result.m is None else str(result.m),
                _format_sub(result),
                result.modulus,
                result.lhs or result.detail,
                result.rhs,
                f"[{style}]{status}[/{style}]",
            )
        console.print(table)

    counts = report.summary.as_dict()
    summary = Table(title="Summary", show_header=True, header_style="bold cyan")
    summary.add_column("Metric", style="cyan", no_wrap=True)
    summary.add_column("Value", justify="right", style="green")
    for label, key in (
        ("Passed", "pass"),
        ("Failed", "fail"),
        ("Skipped", "skip"),
        ("Divisibility failures", "divfail"),
        ("Report-only rows", "reported"),
    ):
        summary.add_row(label, f"{counts[key]:,}")
    console.print(summary)

    if verbose and report.summary.by_check:
        per_check = Table(title="Per-check counts", show_header=True, header_style="bold cyan")
        per_check.add_column("Check", style="cyan", no_wrap=True)
        for status in Status:
            per_check.add_column(status.value, justify="right")
        for check in sorted(report.summary.by_check):
            row = report.summary.by_check[check]
            per_check.add_row(check, *(f"{row[status.value]:,}" for status in Status))
        console.print(per_check)
