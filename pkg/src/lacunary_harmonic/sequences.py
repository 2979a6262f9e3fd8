"""Fibonacci/Lucas and Pell/Pell-Lucas numbers, exact and modulo p^e.

Both families are Lucas sequences with Q = -1:

    U_0 = 0, U_1 = 1, U_{n+2} = P*U_{n+1} + U_n
    V_n = 2*U_{n+1} - P*U_n

with P = 1 (F_n, L_n) or P = 2 (P_n, Q_n).
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .padic_core import Residue, make_residue

# Desk-scale cap on exact iteration
DEFAULT_EXACT_CAP = 10**6


class CapExceededError(ValueError):
    """Raised when an index exceeds a configured evaluation cap."""

    pass


class Family(Enum):
    FIBONACCI = 1
    PELL = 2

    @property
    def p_param(self) -> int:
        return self.value


class Branch(Enum):
    U = "U"
    V = "V"


@dataclass(frozen=True)
class LucasKind:
    """One of F, L, P, Q selected by family and branch."""

    family: Family
    branch: Branch

    @property
    def name(self) -> str:
        return {
            (Family.FIBONACCI, Branch.U): "F",
            (Family.FIBONACCI, Branch.V): "L",
            (Family.PELL, Branch.U): "P",
            (Family.PELL, Branch.V): "Q",
        }[(self.family, self.branch)]


FIBONACCI = LucasKind(Family.FIBONACCI, Branch.U)
LUCAS = LucasKind(Family.FIBONACCI, Branch.V)
PELL = LucasKind(Family.PELL, Branch.U)
PELL_LUCAS = LucasKind(Family.PELL, Branch.V)

KINDS_BY_NAME = {kind.name: kind for kind in (FIBONACCI, LUCAS, PELL, PELL_LUCAS)}


def seq_exact(kind: LucasKind, n: int, cap: int = DEFAULT_EXACT_CAP) -> int:
    """
    Exact n-th term by iterating the recurrence.

    Args:
        kind: Sequence to evaluate
        n: Non-negative index
        cap: Largest index accepted

    Returns:
        The term as a Python integer

    Raises:
        ValueError: If n is negative
        CapExceededError: If n > cap
    """
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    if n > cap:
        raise CapExceededError(f"index {n} exceeds cap {cap}")
    p_param = kind.family.p_param
    if kind.branch is Branch.U:
        a, b = 0, 1
    else:
        a, b = 2, p_param
    for _ in range(n):
        a, b = b, p_param * b + a
    return a


@lru_cache(maxsize=8)
def seq_exact_terms(kind: LucasKind, count: int) -> tuple[int, ...]:
    """First count exact terms (indices 0..count-1) in one pass."""
    if count > DEFAULT_EXACT_CAP:
        raise CapExceededError(f"term count {count} exceeds cap {DEFAULT_EXACT_CAP}")
    p_param = kind.family.p_param
    a, b = (0, 1) if kind.branch is Branch.U else (2, p_param)
    terms = []
    for _ in range(count):
        terms.append(a)
        a, b = b, p_param * b + a
    return tuple(terms)


def _doubling(n: int, p_param: int, modulus: int) -> tuple[int, int]:
    """(U_n, U_{n+1}) mod modulus by fast doubling."""
    a, b = 0, 1  # (U_k, U_{k+1}) with k = 0
    for bit in bin(n)[2:]:
        # U_{2k} = U_k * V_k, U_{2k+1} = U_{k+1}^2 + U_k^2
        even = a * (2 * b - p_param * a) % modulus
        odd = (a * a + b * b) % modulus
        if bit == "1":
            a, b = odd, (p_param * odd + even) % modulus
        else:
            a, b = even, odd
    return a, b


def seq_mod(kind: LucasKind, n: int, p: int, e: int) -> Residue:
    """
    n-th term modulo p^e in O(log n) steps.

    Args:
        kind: Sequence to evaluate
        n: Non-negative index
        p: Odd prime
        e: Exponent

    Returns:
        The term as a residue mod p^e
    """
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    modulus = p**e
    p_param = kind.family.p_param
    u_n, u_next = _doubling(n, p_param, modulus)
    if kind.branch is Branch.U:
        return make_residue(u_n, p, e)
    return make_residue(2 * u_next - p_param * u_n, p, e)
