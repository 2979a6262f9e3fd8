"""
Lacunary harmonic and binomial sums.

H_{r,m}(n) = sum of 1/k over 1 <= k <= n, k = r (mod m)
S_{r,m}(n) = sum over 2 <= k <= n, k = r (mod m), of (1/k) * sum_{j<k} 1/j
T_{r,m}(n) = sum of C(n, k) over 0 <= k <= n, k = r (mod m)
T*_{r,m}(n) = the same sum weighted by (-1)^k

Harmonic-type sums are evaluated directly in Z/p^e (every k <= p - 1 is a
unit); binomial sums are exact integers. harmonic_exact is a rational oracle
for small n.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .padic_core import NonUnitError, Residue, make_residue, unit_inverses
from .sequences import CapExceededError

HARMONIC_EXACT_CAP = 200
BINOMIAL_CAP = 20000


@dataclass(frozen=True)
class ClassSpec:
    """Residue class r mod m with an upper summation bound n.

    r may be any integer (H_{p,m}, H_{2p,5}, H_{-p,5} are all written this
    way) and is stored reduced into [0, m).
    """

    r: int
    m: int
    n: int = 0

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"modulus m must be >= 2, got {self.m}")
        if self.n < 0:
            raise ValueError(f"bound n must be >= 0, got {self.n}")
        object.__setattr__(self, "r", self.r % self.m)

    def members(self, start: int = 1, stop: Optional[int] = None) -> range:
        """Indices start <= k <= stop (default n) with k = r (mod m)."""
        last = self.n if stop is None else stop
        first = start + (self.r - start) % self.m
        return range(first, last + 1, self.m)


class TermKind(Enum):
    RECIPROCAL = "reciprocal"  # 1/k
    ALTERNATING = "alternating"  # (-1)^k/k
    GEOMETRIC = "geometric"  # a^k/k
    ODD_ALTERNATING = "odd-alternating"  # (-1)^k/(2k-1)
    POWER_OF_TWO = "power-of-two"  # 2^k/k


@dataclass(frozen=True)
class SumKind:
    """Term shape of a partial sum; a is the base of a geometric term."""

    term: TermKind
    a: Optional[int] = None

    def __post_init__(self) -> None:
        if (self.a is not None) != (self.term is TermKind.GEOMETRIC):
            raise ValueError("parameter a is required for, and only for, geometric terms")


def delta(r: int, m: int, p: int) -> int:
    """+1 if r = 0, -1 if r = p, 0 otherwise (all mod m)."""
    if m < 2:
        raise ValueError(f"modulus m must be >= 2, got {m}")
    if r % m == 0:
        return 1
    if (r - p) % m == 0:
        return -1
    return 0


def _check_units(n: int, p: int) -> None:
    if n >= p:
        raise NonUnitError(f"non-unit denominator: bound {n} reaches p = {p}")


def harmonic_lacunary(spec: ClassSpec, p: int, e: int, signed: bool = False) -> Residue:
    """
    H_{r,m}(n) in Z/p^e, or the alternating variant sum (-1)^k/k.

    Args:
        spec: Class r mod m and bound n (n <= p - 1)
        p: Odd prime
        e: Exponent
        signed: Weight terms by (-1)^k

    Raises:
        NonUnitError: If n >= p
    """
    _check_units(spec.n, p)
    inverses = unit_inverses(p, e)
    total = 0
    for k in spec.members():
        if signed and k % 2:
            total -= inverses[k]
        else:
            total += inverses[k]
    return make_residue(total, p, e)


def harmonic_double(spec: ClassSpec, p: int, e: int, a: int = 1) -> Residue:
    """
    S_{r,m}(n) in Z/p^e, optionally with weights a^k.

    With a != 1 this is sum a^k/(jk) over 1 <= j < k <= n, k = r (mod m),
    the double sum appearing on the right of the binomial-expansion lemma.
    The inner harmonic prefix is carried as a running sum.
    """
    _check_units(spec.n, p)
    modulus = p**e
    inverses = unit_inverses(p, e)
    total = 0
    prefix = 0  # H_{k-1}
    weight = 1  # a^k
    for k in range(1, spec.n + 1):
        weight = weight * a % modulus
        if k >= 2 and (k - spec.r) % spec.m == 0:
            total += weight * inverses[k] * prefix
        prefix += inverses[k]
    return make_residue(total, p, e)


def harmonic_exact(spec: ClassSpec) -> Fraction:
    """Exact rational H_{r,m}(n), for n <= HARMONIC_EXACT_CAP."""
    if spec.n > HARMONIC_EXACT_CAP:
        raise CapExceededError(f"bound {spec.n} exceeds cap {HARMONIC_EXACT_CAP}")
    return sum((Fraction(1, k) for k in spec.members()), Fraction(0))


@lru_cache(maxsize=16)
def binomial_row(n: int) -> tuple[int, ...]:
    """Row C(n, 0..n) built with C(n, k+1) = C(n, k) * (n - k) / (k + 1)."""
    if n < 0:
        raise ValueError(f"row index must be non-negative, got {n}")
    if n > BINOMIAL_CAP:
        raise CapExceededError(f"row {n} exceeds cap {BINOMIAL_CAP}")
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return tuple(row)


def binomial_lacunary(spec: ClassSpec, signed: bool = False) -> int:
    """
    T_{r,m}(n), or T*_{r,m}(n) when signed, as an exact integer.

    Raises:
        CapExceededError: If n > BINOMIAL_CAP
    """
    row = binomial_row(spec.n)
    if not signed:
        return sum(row[spec.r :: spec.m])
    return sum(-row[k] if k % 2 else row[k] for k in spec.members(start=0))


def weighted_binomial_sum(
    spec: ClassSpec,
    base: int,
    start: int = 0,
    stop: Optional[int] = None,
    modulus: Optional[int] = None,
) -> int:
    """Sum of base^k * C(n, k) over start <= k <= stop (default n) in the class.

    The lemma sums (-a)^k C(p, k) and (-a)^k C(2p, k) use base = -a. The
    result is exact unless a modulus is given, in which case it is reduced.
    """
    row = binomial_row(spec.n)
    indices = spec.members(start=start, stop=stop)
    if modulus is None:
        return sum(base**k * row[k] for k in indices)
    return sum(pow(base, k, modulus) * row[k] for k in indices) % modulus


def sum_terms(
    kind: SumKind,
    bound: int,
    class_filter: Optional[ClassSpec],
    p: int,
    e: int,
) -> Residue:
    """
    Partial sum over 1 <= k <= bound of the selected term shape, in Z/p^e.

    Args:
        kind: Term shape
        bound: Upper summation index
        class_filter: If given, only k = r (mod m) contribute (its n is ignored)
        p: Odd prime
        e: Exponent

    Raises:
        NonUnitError: If some denominator is divisible by p
    """
    modulus = p**e
    if class_filter is None:
        indices = range(1, bound + 1)
    else:
        indices = class_filter.members(start=1, stop=bound)
    total = 0
    for k in indices:
        denominator = 2 * k - 1 if kind.term is TermKind.ODD_ALTERNATING else k
        if denominator % p == 0:
            raise NonUnitError(f"non-unit denominator {denominator} for p = {p}")
        if kind.term in (TermKind.ALTERNATING, TermKind.ODD_ALTERNATING):
            numerator = -1 if k % 2 else 1
        elif kind.term is TermKind.GEOMETRIC:
            numerator = pow(kind.a or 0, k, modulus)
        elif kind.term is TermKind.POWER_OF_TWO:
            numerator = pow(2, k, modulus)
        else:
            numerator = 1
        total += numerator * pow(denominator, -1, modulus)
    return make_residue(total, p, e)
