"""Closed-form evaluations of lacunary binomial sums.

Covers the mod-10 forms in Fibonacci/Lucas numbers, the mod-8 forms in
Pell/Pell-Lucas numbers, and the diagonal T* identities derived from them.
Each form is returned as an exact integer; a numerator that is not divisible
by its stated denominator raises NonIntegralClosedFormError.
"""

from enum import Enum

from .padic_core import DivisibilityError
from .sequences import FIBONACCI, LUCAS, PELL, PELL_LUCAS, seq_exact


class NonIntegralClosedFormError(DivisibilityError):
    """Raised when a closed-form numerator is not divisible by its denominator."""

    pass


class ClosedFormId(Enum):
    M10_CLASS0 = "m10-class0"
    M10_CLASS1 = "m10-class1"
    M10_CLASS2 = "m10-class2"
    M10_CLASS3 = "m10-class3"
    M10_CLASS4 = "m10-class4"
    M8_CLASS0 = "m8-class0"
    M8_CLASS1 = "m8-class1"
    M8_CLASS2 = "m8-class2"
    M8_CLASS3 = "m8-class3"
    DIAG_M5 = "diag-m5"
    DIAG_M8 = "diag-m8"
    DIAG_M8_SHIFT4 = "diag-m8-shift4"
    DIAG_M3 = "diag-m3"
    M2_CLASS0 = "m2-class0"
    M2_CLASS1 = "m2-class1"


# Printed class of expression j is (n + 4j - 1)/2; the fifth mod-10 line is
# printed with (n + 13)/2.
PRINTED_OFFSETS_M10 = (-1, 3, 7, 11, 13)
PRINTED_OFFSETS_M8 = (-1, 3, 7, 11)

# Classes whose direct sums the mod-8 expressions 2 and 3 actually equal.
VERIFIED_OFFSETS_M8 = (-1, 3, 11, 7)


def closed_form_class(offset: int, n: int, m: int) -> int:
    """Residue class (n + offset)/2 mod m used by the lemma tables."""
    return ((n + offset) // 2) % m


def _require_odd(n: int) -> None:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"n must be a positive odd integer, got {n}")


def _divide(numerator: int, denominator: int, label: str) -> int:
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise NonIntegralClosedFormError(
            f"{label}: numerator {numerator} is not divisible by {denominator}"
        )
    return quotient


def closed_T_m10(j: int, n: int) -> int:
    """
    Fibonacci/Lucas expression j of the mod-10 lemma, divided by 10.

    Expressions 0-3 carry the n = 1 vs n = 3 (mod 4) case split; expression 4
    is (2^n - 2L_n)/10.

    Args:
        j: Expression index in 0..4
        n: Positive odd integer

    Raises:
        ValueError: For even n or j out of range
        NonIntegralClosedFormError: If the numerator is not divisible by 10
    """
    _require_odd(n)
    if j == 4:
        return _divide(2**n - 2 * seq_exact(LUCAS, n), 10, f"m10 expression 4 at n={n}")
    if j not in range(4):
        raise ValueError(f"expression index must be in 0..4, got {j}")

    if n % 4 == 1:
        scale, kind = 5 ** ((n + 3) // 4), FIBONACCI
    else:
        scale, kind = 5 ** ((n + 1) // 4), LUCAS
    outer_lucas = seq_exact(LUCAS, n + 1) if j in (0, 3) else -seq_exact(LUCAS, n - 1)
    inner_index = (n + 1) // 2 if j in (0, 3) else (n - 1) // 2
    sign = 1 if j in (0, 1) else -1
    numerator = 2**n + outer_lucas + sign * scale * seq_exact(kind, inner_index)
    return _divide(numerator, 10, f"m10 expression {j} at n={n}")


def closed_T_m8(j: int, n: int) -> int:
    """
    Pell/Pell-Lucas expression j of the mod-8 lemma, divided by 8.

    Args:
        j: Expression index in 0..3
        n: Positive odd integer

    Raises:
        ValueError: For even n or j out of range
        NonIntegralClosedFormError: If the numerator is not divisible by 8
    """
    _require_odd(n)
    if j not in range(4):
        raise ValueError(f"expression index must be in 0..3, got {j}")

    if n % 4 == 1:
        scale, kind = 2 ** ((n + 7) // 4), PELL
    else:
        scale, kind = 2 ** ((n + 1) // 4), PELL_LUCAS
    middle = 2 ** ((n + 1) // 2) if j in (0, 3) else -(2 ** ((n + 1) // 2))
    inner_index = (n + 1) // 2 if j in (0, 3) else (n - 1) // 2
    sign = 1 if j in (0, 1) else -1
    numerator = 2**n + middle + sign * scale * seq_exact(kind, inner_index)
    return _divide(numerator, 8, f"m8 expression {j} at n={n}")


def closed_Tstar_diag(form: ClosedFormId, n: int) -> int:
    """
    Diagonal closed forms for T*.

    diag-m5:        T*_{n,5}(2n)   = -2 * 5^((n-1)/2) * F_n         (n odd)
    diag-m8:        T*_{n,8}(2n)   = -2^(2n-3) - 2^(n-2) - 2^((n-1)/2) P_n  (n odd, n >= 3)
    diag-m8-shift4: T*_{n+4,8}(2n) = -2^(2n-3) - 2^(n-2) + 2^((n-1)/2) P_n  (n odd, n >= 3)
    diag-m3:        T*_{p,3}(2p)   = -2 * 3^(p-1)                   (p = n, n >= 5)
    m2-class0/1:    T*_{0,2}(n) = 2^(n-1), T*_{1,2}(n) = -2^(n-1)  (n >= 1)

    Raises:
        ValueError: On parity or range violations, or a non-diagonal form id
    """
    if form is ClosedFormId.DIAG_M5:
        _require_odd(n)
        return -2 * 5 ** ((n - 1) // 2) * seq_exact(FIBONACCI, n)
    if form in (ClosedFormId.DIAG_M8, ClosedFormId.DIAG_M8_SHIFT4):
        _require_odd(n)
        if n < 3:
            raise ValueError(f"{form.value} needs n >= 3, got {n}")
        pell_term = 2 ** ((n - 1) // 2) * seq_exact(PELL, n)
        sign = -1 if form is ClosedFormId.DIAG_M8 else 1
        return -(2 ** (2 * n - 3)) - 2 ** (n - 2) + sign * pell_term
    if form is ClosedFormId.DIAG_M3:
        if n < 5:
            raise ValueError(f"diag-m3 needs n >= 5, got {n}")
        return -2 * 3 ** (n - 1)
    if form in (ClosedFormId.M2_CLASS0, ClosedFormId.M2_CLASS1):
        if n < 1:
            raise ValueError(f"{form.value} needs n >= 1, got {n}")
        value = 2 ** (n - 1)
        return value if form is ClosedFormId.M2_CLASS0 else -value
    raise ValueError(f"{form.value} is not a diagonal form")


def diag_class(form: ClosedFormId, n: int) -> tuple[int, int, int]:
    """(r, m, row) of the direct T* sum a diagonal form evaluates."""
    if form is ClosedFormId.DIAG_M5:
        return n % 5, 5, 2 * n
    if form is ClosedFormId.DIAG_M8:
        return n % 8, 8, 2 * n
    if form is ClosedFormId.DIAG_M8_SHIFT4:
        return (n + 4) % 8, 8, 2 * n
    if form is ClosedFormId.DIAG_M3:
        return n % 3, 3, 2 * n
    if form is ClosedFormId.M2_CLASS0:
        return 0, 2, n
    if form is ClosedFormId.M2_CLASS1:
        return 1, 2, n
    raise ValueError(f"{form.value} is not a diagonal form")
