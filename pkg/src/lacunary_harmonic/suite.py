"""Sweep runner: evaluates registry checks over a prime range and a set of moduli."""

from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .checks import CheckResult, Scope, Status, Summary
from .congruences import get_check, run_check
from .padic_core import PrimeRange, primes_in_range


@dataclass(frozen=True)
class Cell:
    """One unit of work: a check at a prime and modulus (None where unused)."""

    check_id: str
    p: Optional[int] = None
    m: Optional[int] = None


@dataclass
class SuiteOptions:
    """Knobs for run_suite.

    Attributes:
        jobs: Worker processes; 1 evaluates in-process
        include_p_dividing_m: Evaluate p | m cells as report-only instead of skipping
        fail_fast: Stop scheduling after the first failing cell
        report_only_exceptions: Also run report-only checks
        explain_callback: Receives one line per evaluated cell
        progress_callback: Receives (cells done, cells total)
    """

    jobs: int = 1
    include_p_dividing_m: bool = False
    fail_fast: bool = False
    report_only_exceptions: bool = False
    explain_callback: Optional[Callable[[str], None]] = None
    progress_callback: Optional[Callable[[int, int], None]] = None


@dataclass
class Report:
    """Sorted results of a sweep with their summary and run metadata."""

    results: list[CheckResult]
    summary: Summary
    run: dict[str, Any] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return any(result.failed for result in self.results)


def plan_cells(
    primes: list[int], moduli: Iterable[int], check_ids: Iterable[str], options: SuiteOptions
) -> list[Cell]:
    """
    Expand a sweep into cells in deterministic order.

    An empty prime list yields no cells at all, exact checks included.

    Raises:
        KeyError: For an unknown check id
    """
    if not primes:
        return []
    ordered_moduli = sorted(set(moduli))
    cells: list[Cell] = []
    for check_id in sorted(set(check_ids)):
        check = get_check(check_id)
        if check.report_only and not options.report_only_exceptions:
            continue
        if check.scope is Scope.EXACT:
            cells.append(Cell(check_id))
        elif check.scope is Scope.PRIME:
            cells.extend(Cell(check_id, p) for p in primes)
        else:
            cells.extend(Cell(check_id, p, m) for p in primes for m in ordered_moduli)
    return cells


def evaluate_cell(cell: Cell, include_p_dividing_m: bool = False) -> list[CheckResult]:
    """Worker entry point; module-level so it pickles for process pools."""
    return run_check(
        cell.check_id, p=cell.p, m=cell.m, include_p_dividing_m=include_p_dividing_m
    )


def _describe(cell: Cell, results: list[CheckResult]) -> str:
    counts = {status: 0 for status in Status}
    for result in results:
        counts[result.status] += 1
    where = [f"p={cell.p}"] if cell.p is not None else []
    if cell.m is not None:
        where.append(f"m={cell.m}")
    location = " ".join(where) if where else "exact"
    tally = ", ".join(f"{n} {status.value}" for status, n in counts.items() if n)
    return f"{cell.check_id} {location}: {tally or 'no rows'}"


def run_suite(
    prime_range: PrimeRange,
    moduli: Iterable[int],
    check_ids: Iterable[str],
    options: Optional[SuiteOptions] = None,
) -> Report:
    """
    Run checks over every prime in a range and every modulus in a set.

    Results are sorted by (check, p, m, sub-parameters), so the report does
    not depend on jobs or completion order. With fail_fast and jobs > 1 the
    set of cells that finished before cancellation can vary.

    Args:
        prime_range: Primes to sweep
        moduli: Values of m for modular checks
        check_ids: Registry ids to run
        options: Runner options (defaults: sequential, no report-only checks)

    Returns:
        Report with sorted results and summary counts
    """
    options = options or SuiteOptions()
    moduli = sorted(set(moduli))
    check_ids = sorted(set(check_ids))
    cells = plan_cells(primes_in_range(prime_range), moduli, check_ids, options)
    total = len(cells)
    results: list[CheckResult] = []
    done = 0

    def record(cell: Cell, cell_results: list[CheckResult]) -> bool:
        nonlocal done
        done += 1
        results.extend(cell_results)
        if options.explain_callback:
            options.explain_callback(_describe(cell, cell_results))
        if options.progress_callback:
            options.progress_callback(done, total)
        return options.fail_fast and any(result.failed for result in cell_results)

    if options.jobs <= 1 or total <= 1:
        for cell in cells:
            if record(cell, evaluate_cell(cell, options.include_p_dividing_m)):
                break
    else:
        with ProcessPoolExecutor(max_workers=options.jobs) as executor:
            futures = {
                executor.submit(evaluate_cell, cell, options.include_p_dividing_m): cell
                for cell in cells
            }
            for future in as_completed(futures):
                if record(futures[future], future.result()):
                    executor.shutdown(wait=False, cancel_futures=True)
                    break

    results.sort(key=CheckResult.sort_key)
    from . import __version__

    run = {
        "pmin": prime_range.lo,
        "pmax": prime_range.hi,
        "moduli": moduli,
        "checks": check_ids,
        "version": __version__,
    }
    return Report(results=results, summary=Summary.from_results(results), run=run)
