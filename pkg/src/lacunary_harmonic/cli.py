"""Command-line interface for lacunary-harmonic."""

import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Optional

import typer
from rich.console import Console
from rich.progress import (
    BarColumn,
    Progress,
    SpinnerColumn,
    TaskProgressColumn,
    TextColumn,
)

from . import __version__
from .checks import Status
from .closed_forms import ClosedFormId, closed_T_m8, closed_T_m10, closed_Tstar_diag
from .config import (
    ConfigError,
    OutputFormat,
    RunConfig,
    default_jobs,
    load_run_config,
    parse_checks,
    parse_exclude,
    parse_moduli,
)
from .congruences import CHECKS, list_checks, run_check
from .lacunary import (
    ClassSpec,
    binomial_lacunary,
    delta,
    harmonic_double,
    harmonic_exact,
    harmonic_lacunary,
)
from .padic_core import DivisibilityError, PrimeRange, Residue, ResidueError, make_residue
from .report import print_table, render_json, write_csv
from .sequences import KINDS_BY_NAME, seq_exact, seq_mod
from .suite import Report, SuiteOptions, run_suite

app = typer.Typer(
    name="lacunary-harmonic",
    help="Verify Lehmer-type congruences for lacunary harmonic sums",
    context_settings={"help_option_names": ["-h", "--help"]},
    add_completion=False,
)

console = Console(stderr=True)  # Diagnostics to stderr; reports go to stdout

COMPUTE_TARGETS = ("H", "S", "T", "Tstar", "seq", "check", "delta", "closed", "Hexact")

KIND_ALIASES = {
    "fibonacci": "F",
    "lucas": "L",
    "pell": "P",
    "pell-lucas": "Q",
    "pelllucas": "Q",
}


def version_callback(value: bool) -> None:
    """Print version and exit if --version flag is provided."""
    if value:
        typer.echo(f"lacunary-harmonic version {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: Optional[bool] = typer.Option(
        None,
        "--version",
        "-v",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit",
    ),
) -> None:
    """
    Exact-arithmetic verification of lacunary harmonic congruences.

    \b
    Quick Start:
        lacunary-harmonic verify --checks lehmer3 --pmin 5 --pmax 97
        lacunary-harmonic compute H --r 5 --m 3 --p 5 --e 2
        lacunary-harmonic list
    """


def _print_explain(message: str) -> None:
    print(f"EXPLAIN: {message}", file=sys.stderr)


def _build_config(
    config_file: Optional[Path],
    checks: Optional[str],
    pmin: Optional[int],
    pmax: Optional[int],
    moduli: Optional[str],
    exclude: Optional[str],
    output_format: Optional[OutputFormat],
    jobs: Optional[int],
    include_p_dividing_m: bool,
    fail_fast: bool,
    report_only_exceptions: bool,
    verbose: bool,
) -> RunConfig:
    """Merge preset file, environment and flags; flags win.

    Raises:
        typer.BadParameter: If any value is invalid
    """
    try:
        base = load_run_config(config_file) if config_file else RunConfig(jobs=default_jobs())
        updates: dict[str, Any] = {}
        if checks is not None:
            updates["checks"] = parse_checks(checks, set(CHECKS))
        if pmin is not None:
            updates["pmin"] = pmin
        if pmax is not None:
            updates["pmax"] = pmax
        if moduli is not None:
            updates["moduli"] = parse_moduli(moduli)
        if exclude is not None:
            updates["exclude"] = parse_exclude(exclude)
        if output_format is not None:
            updates["output_format"] = output_format
        if jobs is not None:
            updates["jobs"] = jobs
        for flag, value in (
            ("include_p_dividing_m", include_p_dividing_m),
            ("fail_fast", fail_fast),
            ("report_only_exceptions", report_only_exceptions),
            ("verbose", verbose),
        ):
            if value:
                updates[flag] = True
        config = replace(base, **updates)
    except ConfigError as e:
        raise typer.BadParameter(str(e)) from e

    if config.checks is not None:
        unknown = [check_id for check_id in config.checks if check_id not in CHECKS]
        if unknown:
            raise typer.BadParameter(f"Unknown check: {', '.join(unknown)}")
    return config


def _run(config: RunConfig, explain: bool, progress: bool) -> Report:
    check_ids = list(config.checks) if config.checks is not None else sorted(CHECKS)
    prime_range = PrimeRange(config.pmin, config.pmax, config.exclude)
    options = SuiteOptions(
        jobs=config.jobs,
        include_p_dividing_m=config.include_p_dividing_m,
        fail_fast=config.fail_fast,
        report_only_exceptions=config.report_only_exceptions,
        explain_callback=_print_explain if explain else None,
    )

    # Disable progress if outputting to a pipe
    if not (progress and sys.stdout.isatty()):
        return run_suite(prime_range, config.moduli, check_ids, options)

    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TaskProgressColumn(),
        console=console,
        transient=True,
    ) as progress_bar:
        task = progress_bar.add_task("Verifying...", total=None)

        def update_progress(done: int, total: int) -> None:
            progress_bar.update(
                task,
                completed=done,
                total=total,
                description=f"Verifying... ({done}/{total} cells)",
            )

        options.progress_callback = update_progress
        return run_suite(prime_range, config.moduli, check_ids, options)


@app.command()
def verify(
    # Selection
    checks: Optional[str] = typer.Option(
        None,
        "--checks",
        "-c",
        help="Comma-separated check ids, or 'all' (default: all)",
        rich_help_panel="Selection",
    ),
    pmin: Optional[int] = typer.Option(
        None, "--pmin", help="Smallest prime to test (default: 5)", rich_help_panel="Selection"
    ),
    pmax: Optional[int] = typer.Option(
        None, "--pmax", help="Largest prime to test (default: 97)", rich_help_panel="Selection"
    ),
    moduli: Optional[str] = typer.Option(
        None,
        "--moduli",
        "-m",
        help="Moduli as '2..12' or '2,3,5' (default: 2..12)",
        rich_help_panel="Selection",
    ),
    exclude: Optional[str] = typer.Option(
        None, "--exclude", help="Comma-separated primes to skip", rich_help_panel="Selection"
    ),
    config_file: Optional[Path] = typer.Option(
        None,
        "--config",
        help="YAML run preset; explicit flags override it",
        rich_help_panel="Selection",
        exists=True,
        dir_okay=False,
    ),
    # Behavior
    include_p_dividing_m: bool = typer.Option(
        False,
        "--include-p-dividing-m",
        help="Evaluate cells with p | m as report-only rows instead of skipping them",
        rich_help_panel="Behavior",
    ),
    fail_fast: bool = typer.Option(
        False, "--fail-fast", help="Stop after the first failing cell", rich_help_panel="Behavior"
    ),
    report_only_exceptions: bool = typer.Option(
        False,
        "--report-only-exceptions",
        help="Also run report-only checks (printed forms that do not hold)",
        rich_help_panel="Behavior",
    ),
    jobs: Optional[int] = typer.Option(
        None,
        "--jobs",
        "-j",
        help="Worker processes (default: $LACUNARY_HARMONIC_JOBS or 1)",
        rich_help_panel="Behavior",
    ),
    # Output
    output_format: Optional[OutputFormat] = typer.Option(
        None,
        "--format",
        "-f",
        help="Report format: table (default), json or csv",
        rich_help_panel="Output",
        case_sensitive=False,
    ),
    verbose: bool = typer.Option(
        False, "--verbose", help="List every row in table output", rich_help_panel="Output"
    ),
    # StdErr Control
    progress: bool = typer.Option(
        False,
        "--progress",
        "-p",
        help="Show progress indicator (auto-disabled for pipes)",
        rich_help_panel="StdErr Control",
    ),
    explain: bool = typer.Option(
        False,
        "--explain",
        "-e",
        help="Print one line per evaluated cell to stderr",
        rich_help_panel="StdErr Control",
    ),
) -> None:
    """
    Sweep checks over a prime range and a set of moduli.

    Exits 0 when no asserted row fails, 1 on any failure or divisibility
    failure, 2 on usage errors.

    \b
    Examples:
        lacunary-harmonic verify --checks lehmer3 --pmin 5 --pmax 97
        lacunary-harmonic verify --checks t1,t2 --moduli 2..12 --jobs 4
        lacunary-harmonic verify --format json > report.json
    """
    config = _build_config(
        config_file,
        checks,
        pmin,
        pmax,
        moduli,
        exclude,
        output_format,
        jobs,
        include_p_dividing_m,
        fail_fast,
        report_only_exceptions,
        verbose,
    )

    try:
        report = _run(config, explain, progress)
    except KeyboardInterrupt:
        console.print("\n[yellow]Interrupted by user[/yellow]")
        raise typer.Exit(1) from None
    except Exception as e:
        console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(1) from e

    if config.output_format is OutputFormat.JSON:
        print(render_json(report))
    elif config.output_format is OutputFormat.CSV:
        write_csv(report, sys.stdout)
    else:
        print_table(report, Console(), verbose=config.verbose)

    if report.failed:
        raise typer.Exit(1)


def _require(**params: Optional[object]) -> None:
    missing = [f"--{name.replace('_', '-')}" for name, value in params.items() if value is None]
    if missing:
        raise typer.BadParameter(f"missing {', '.join(missing)}")


def _format_residue(value: Residue) -> str:
    return f"{value.value} (mod {value.modulus})"


def _closed_value(form_text: str, j: Optional[int], n: int) -> int:
    if form_text in ("m10", "m8"):
        _require(j=j)
        assert j is not None
        return closed_T_m10(j, n) if form_text == "m10" else closed_T_m8(j, n)
    try:
        form = ClosedFormId(form_text)
    except ValueError as e:
        raise typer.BadParameter(f"unknown closed form: {form_text}") from e
    if form.value.startswith(("m10-class", "m8-class")):
        index = int(form.value.rsplit("class", 1)[1])
        return closed_T_m10(index, n) if form.value.startswith("m10") else closed_T_m8(index, n)
    return closed_Tstar_diag(form, n)


def _compute_check(check_id: Optional[str], p: Optional[int], m: Optional[int]) -> bool:
    """Print the rows of one check; True if any asserted row failed."""
    _require(id=check_id)
    assert check_id is not None
    try:
        results = run_check(check_id, p=p, m=m)
    except KeyError as e:
        raise typer.BadParameter(str(e.args[0])) from e
    failed = False
    for result in results:
        where = " ".join(
            part
            for part in (
                f"p={result.p}" if result.p is not None else "",
                f"m={result.m}" if result.m is not None else "",
                " ".join(f"{name}={value}" for name, value in result.sub),
            )
            if part
        )
        if result.status is Status.SKIPPED:
            typer.echo(f"{result.check} {where}: skipped ({result.detail})")
        elif result.status is Status.DIVISIBILITY_FAILURE:
            typer.echo(f"{result.check} {where}: divisibility-failure ({result.detail})")
        else:
            modulus = "exact" if result.modulus == "exact" else f"mod {result.modulus}"
            typer.echo(
                f"{result.check} {where}: lhs={result.lhs} rhs={result.rhs} "
                f"({modulus}) {result.status.value}"
            )
        failed = failed or result.failed
    return failed


@app.command()
def compute(
    what: str = typer.Argument(..., help=f"Quantity: {', '.join(COMPUTE_TARGETS)}"),
    r: Optional[int] = typer.Option(None, "--r", help="Residue class r"),
    m: Optional[int] = typer.Option(None, "--m", help="Class modulus m"),
    n: Optional[int] = typer.Option(None, "--n", help="Bound or index n (H defaults to p-1)"),
    p: Optional[int] = typer.Option(None, "--p", help="Odd prime p"),
    e: int = typer.Option(1, "--e", help="Exponent e of the modulus p^e"),
    kind: Optional[str] = typer.Option(None, "--kind", help="Sequence: F, L, P, Q or a name"),
    signed: bool = typer.Option(False, "--signed", help="Alternating variant (H)"),
    check_id: Optional[str] = typer.Option(None, "--id", help="Check id (compute check)"),
    j: Optional[int] = typer.Option(None, "--j", help="Expression index (compute closed)"),
    form: Optional[str] = typer.Option(
        None, "--form", help="Closed form: m10, m8, m10-class0.., diag-m5, ..."
    ),
) -> None:
    """
    Compute one quantity and print it.

    Residues print as "value (mod p^e)"; exact values print as integers.

    \b
    Examples:
        lacunary-harmonic compute H --r 5 --m 3 --p 5 --e 2      # 13 (mod 25)
        lacunary-harmonic compute T --r 2 --m 10 --n 5           # 10
        lacunary-harmonic compute seq --kind pell --n 11         # 5741
        lacunary-harmonic compute check --id lehmer3 --p 5
    """
    if what not in COMPUTE_TARGETS:
        raise typer.BadParameter(f"WHAT must be one of {', '.join(COMPUTE_TARGETS)}, got '{what}'")

    try:
        if p is not None and what != "delta":
            make_residue(0, p, e)
        if what in ("H", "S"):
            _require(r=r, m=m, p=p)
            assert r is not None and m is not None and p is not None
            spec = ClassSpec(r, m, p - 1 if n is None else n)
            if what == "H":
                value = harmonic_lacunary(spec, p, e, signed=signed)
            else:
                value = harmonic_double(spec, p, e)
            typer.echo(_format_residue(value))
        elif what in ("T", "Tstar"):
            _require(r=r, m=m, n=n)
            assert r is not None and m is not None and n is not None
            typer.echo(str(binomial_lacunary(ClassSpec(r, m, n), signed=what == "Tstar")))
        elif what == "Hexact":
            _require(r=r, m=m, n=n)
            assert r is not None and m is not None and n is not None
            typer.echo(str(harmonic_exact(ClassSpec(r, m, n))))
        elif what == "seq":
            _require(kind=kind, n=n)
            assert kind is not None and n is not None
            name = KIND_ALIASES.get(kind.lower(), kind.upper())
            if name not in KINDS_BY_NAME:
                raise typer.BadParameter(f"unknown sequence kind: {kind}")
            if p is None:
                typer.echo(str(seq_exact(KINDS_BY_NAME[name], n)))
            else:
                typer.echo(_format_residue(seq_mod(KINDS_BY_NAME[name], n, p, e)))
        elif what == "delta":
            _require(r=r, m=m, p=p)
            assert r is not None and m is not None and p is not None
            typer.echo(str(delta(r, m, p)))
        elif what == "closed":
            _require(form=form, n=n)
            assert form is not None and n is not None
            typer.echo(str(_closed_value(form, j, n)))
        elif _compute_check(check_id, p, m):
            raise typer.Exit(1)
    except DivisibilityError as err:
        console.print(f"[red]Divisibility failure:[/red] {err}")
        raise typer.Exit(1) from err
    except (ResidueError, ValueError) as err:
        raise typer.BadParameter(str(err)) from err


@app.command("list")
def list_command(
    output_format: OutputFormat = typer.Option(
        OutputFormat.TABLE,
        "--format",
        "-f",
        help="table (default) or json",
        case_sensitive=False,
    ),
) -> None:
    """List registered checks with their modulus and hypotheses."""
    checks = list_checks()
    if output_format is OutputFormat.JSON:
        rows = [
            {
                "id": check.id,
                "description": check.description,
                "modulus": check.modulus_label,
                "applicability": check.applicability,
                "scope": check.scope.value,
                "report_only": check.report_only,
            }
            for check in checks
        ]
        print(json.dumps(rows, indent=2))
        return
    if output_format is OutputFormat.CSV:
        raise typer.BadParameter("list supports table or json")
    for check in checks:
        modulus = "exact" if check.modulus is None else f"mod {check.modulus_label}"
        marker = "  [report-only]" if check.report_only else ""
        typer.echo(
            f"{check.id:<24} {modulus:<8} {check.applicability:<36} {check.description}{marker}"
        )


if __name__ == "__main__":
    app()
