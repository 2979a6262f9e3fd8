"""Pytest configuration and shared fixtures."""

from collections.abc import Iterator
from typing import Callable

import pytest

from lacunary_harmonic import congruences
from lacunary_harmonic.checks import CheckDef, Scope
from lacunary_harmonic.padic_core import NotDivisibleError, make_residue


def _always_failing(p, m, sub):
    return make_residue(1, p, 1), make_residue(2, p, 1)


def _never_divisible(p, m, sub):
    raise NotDivisibleError(f"not divisible: {p} does not divide 1")


@pytest.fixture
def register_check(monkeypatch) -> Iterator[Callable[[CheckDef], CheckDef]]:
    """Temporarily add a check to the registry (sequential runs only)."""

    def register(check: CheckDef) -> CheckDef:
        monkeypatch.setitem(congruences.CHECKS, check.id, check)
        return check

    yield register


@pytest.fixture
def failing_check(register_check) -> CheckDef:
    """An asserted prime-scope check whose sides never agree."""
    return register_check(
        CheckDef(
            "always_fails",
            "1 = 2",
            1,
            "p >= 3",
            Scope.PRIME,
            lambda p, m: True,
            lambda p, m: [()],
            _always_failing,
        )
    )


@pytest.fixture
def divfail_check(register_check) -> CheckDef:
    """An asserted prime-scope check whose evaluation hits a non-divisible numerator."""
    return register_check(
        CheckDef(
            "never_divisible",
            "1/p",
            1,
            "p >= 3",
            Scope.PRIME,
            lambda p, m: True,
            lambda p, m: [()],
            _never_divisible,
        )
    )


@pytest.fixture(autouse=True)
def clear_jobs_env(monkeypatch):
    """Keep a developer's LACUNARY_HARMONIC_JOBS from leaking into tests."""
    monkeypatch.delenv("LACUNARY_HARMONIC_JOBS", raising=False)
