"""Data types shared by the check registry and the suite runner."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Optional, Union

from .padic_core import Residue

SubValue = Union[int, str]
Sub = tuple[tuple[str, SubValue], ...]
Value = Union[Residue, int, tuple[int, ...]]

# p and m are None for exact-scope checks
Predicate = Callable[[Any, Any], bool]
SubsFactory = Callable[[Any, Any], list[Sub]]
Evaluator = Callable[[Any, Any, dict[str, SubValue]], tuple[Value, Value]]


class Scope(Enum):
    """What a check is indexed by."""

    PRIME = "prime"  # one cell per prime p
    MODULAR = "modular"  # one cell per (p, m)
    EXACT = "exact"  # a single cell, independent of the prime range


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"
    DIVISIBILITY_FAILURE = "divisibility-failure"


@dataclass(frozen=True)
class CheckDef:
    """
    Metadata and evaluator for one congruence or identity.

    Attributes:
        id: Unique registry key
        description: One-line statement of what is compared
        modulus: Exponent e of the modulus p^e, or None for exact identities
        applicability: Human-readable hypothesis, e.g. "p > 3"
        scope: Whether cells are per prime, per (prime, m), or a single exact cell
        applies: Predicate over (p, m); never called for EXACT checks
        subs: Sub-parameter combinations of one cell
        evaluate: Computes (lhs, rhs) for one sub-parameter combination
        report_only: Results are recorded but never fail a run
    """

    id: str
    description: str
    modulus: Optional[int]
    applicability: str
    scope: Scope
    applies: Predicate
    subs: SubsFactory
    evaluate: Evaluator
    report_only: bool = False

    @property
    def modulus_label(self) -> str:
        if self.modulus is None:
            return "exact"
        return "p" if self.modulus == 1 else f"p^{self.modulus}"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check at one (p, m, sub) cell."""

    check: str
    p: Optional[int]
    m: Optional[int]
    sub: Sub = ()
    modulus: str = "exact"
    lhs: str = ""
    rhs: str = ""
    status: Status = Status.SKIPPED
    report_only: bool = False
    detail: str = ""

    def sort_key(self) -> tuple[str, int, int, tuple[tuple[str, int, int, str], ...]]:
        sub_key = tuple(
            (name, 0, value, "") if isinstance(value, int) else (name, 1, 0, value)
            for name, value in self.sub
        )
        return (
            self.check,
            -1 if self.p is None else self.p,
            -1 if self.m is None else self.m,
            sub_key,
        )

    @property
    def failed(self) -> bool:
        return not self.report_only and self.status in (
            Status.FAIL,
            Status.DIVISIBILITY_FAILURE,
        )


def format_value(value: Value) -> str:
    """Canonical decimal text of a compared value."""
    if isinstance(value, tuple):
        return "(" + ", ".join(str(v) for v in value) + ")"
    return str(value)


def make_sub(**params: SubValue) -> Sub:
    """Sub-parameter tuple in keyword order."""
    return tuple(params.items())


@dataclass
class Summary:
    """Counts over a result list; report-only rows are counted apart."""

    passed: int = 0
    failed: int = 0
    skipped: int = 0
    divfail: int = 0
    reported: int = 0
    by_check: dict[str, dict[str, int]] = field(default_factory=dict)

    @classmethod
    def from_results(cls, results: list[CheckResult]) -> "Summary":
        summary = cls()
        for result in results:
            per_check = summary.by_check.setdefault(
                result.check, {status.value: 0 for status in Status}
            )
            per_check[result.status.value] += 1
            if result.report_only:
                summary.reported += 1
            elif result.status is Status.PASS:
                summary.passed += 1
            elif result.status is Status.FAIL:
                summary.failed += 1
            elif result.status is Status.SKIPPED:
                summary.skipped += 1
            else:
                summary.divfail += 1
        return summary

    def as_dict(self) -> dict[str, int]:
        return {
            "pass": self.passed,
            "fail": self.failed,
            "skip": self.skipped,
            "divfail": self.divfail,
            "reported": self.reported,
        }
