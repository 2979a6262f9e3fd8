"""
Truncated p-adic arithmetic in Z/p^e.

Every "(mod p^k)" statement checked by this package is evaluated with the
Residue type defined here. The module also provides the Legendre symbol and
prime generation used to drive the verification sweeps.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

from sympy import isprime, primerange
from sympy.functions.combinatorial.numbers import legendre_symbol

# Largest supported exponent; p^3 on a raw quantity plus one exact division
# needs p^4 internally.
MAX_EXPONENT = 6


class ResidueError(ValueError):
    """Raised when a residue is constructed or combined incorrectly."""

    pass


class ModulusMismatchError(ResidueError):
    """Raised when two residues with different (p, e) are combined."""

    pass


class NonUnitError(ResidueError):
    """Raised when an inverse of a multiple of p is requested."""

    pass


class DivisibilityError(ArithmeticError):
    """Raised when a quantity claimed to be divisible is not.

    A divisibility failure is a meaningful outcome for a congruence check
    (it falsifies a claim), so callers catch it and record it as a result.
    """

    pass


class NotDivisibleError(DivisibilityError):
    """Raised when an exact division by p^t is impossible."""

    pass


def _validate_modulus(p: int, e: int) -> None:
    if not isinstance(p, int) or p <= 2 or not isprime(p):
        raise ResidueError(f"p must be an odd prime, got {p!r}")
    if not 1 <= e <= MAX_EXPONENT:
        raise ResidueError(f"exponent must be in [1, {MAX_EXPONENT}], got {e!r}")


@dataclass(frozen=True)
class Residue:
    """An element of Z/p^e stored as its canonical representative."""

    p: int
    e: int
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.p**self.e:
            raise ResidueError(f"value {self.value} is not reduced mod {self.p}^{self.e}")

    @property
    def modulus(self) -> int:
        return int(self.p**self.e)

    def lift(self) -> int:
        """Return the canonical representative in [0, p^e)."""
        return self.value

    def _coerce(self, other: Union["Residue", int]) -> int:
        if isinstance(other, Residue):
            if (other.p, other.e) != (self.p, self.e):
                raise ModulusMismatchError(
                    f"cannot combine residues mod {self.p}^{self.e} and {other.p}^{other.e}"
                )
            return other.value
        if isinstance(other, int):
            return other
        raise TypeError(f"cannot combine Residue with {type(other).__name__}")

    def _wrap(self, value: int) -> "Residue":
        return Residue(self.p, self.e, value % self.modulus)

    def __add__(self, other: Union["Residue", int]) -> "Residue":
        return self._wrap(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: Union["Residue", int]) -> "Residue":
        return self._wrap(self.value - self._coerce(other))

    def __rsub__(self, other: int) -> "Residue":
        return self._wrap(self._coerce(other) - self.value)

    def __mul__(self, other: Union["Residue", int]) -> "Residue":
        return self._wrap(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        return self._wrap(-self.value)

    def __pow__(self, exp: int) -> "Residue":
        return pow_residue(self, exp)

    def times_p(self) -> "Residue":
        """Multiply by p, moving from Z/p^e into Z/p^(e+1).

        p * x mod p^(e+1) depends only on x mod p^e, which is what makes terms
        like p * S or (p/2) * H^2 computable from lower-precision data.
        """
        if self.e >= MAX_EXPONENT:
            raise ResidueError(f"exponent {self.e + 1} exceeds {MAX_EXPONENT}")
        return Residue(self.p, self.e + 1, self.value * self.p)

    def __str__(self) -> str:
        return str(self.value)


def make_residue(v: int, p: int, e: int) -> Residue:
    """
    Reduce an integer into Z/p^e.

    Args:
        v: Any integer (negative inputs wrap)
        p: Odd prime
        e: Exponent in [1, MAX_EXPONENT]

    Returns:
        The residue of v modulo p^e

    Raises:
        ResidueError: If p is not an odd prime or e is out of range
    """
    _validate_modulus(p, e)
    return Residue(p, e, v % p**e)


def inv_unit(x: Residue) -> Residue:
    """
    Invert a unit of Z/p^e.

    Raises:
        NonUnitError: If x is divisible by p
    """
    if x.value % x.p == 0:
        raise NonUnitError(f"non-unit: {x.value} is divisible by {x.p}")
    return Residue(x.p, x.e, pow(x.value, -1, x.modulus))


def pow_residue(base: Residue, exp: int) -> Residue:
    """Raise a residue to a non-negative integer power."""
    if exp < 0:
        raise ResidueError(f"exponent must be non-negative, got {exp}")
    return Residue(base.p, base.e, pow(base.value, exp, base.modulus))


def exact_div_by_p(x: Residue, t: int) -> Residue:
    """
    Divide a residue by p^t exactly, losing t digits of precision.

    Args:
        x: Residue mod p^e
        t: Number of factors of p to remove (1 <= t < e)

    Returns:
        lift(x) / p^t as a residue mod p^(e - t)

    Raises:
        ResidueError: If t is out of range
        NotDivisibleError: If p^t does not divide lift(x)
    """
    if not 1 <= t < x.e:
        raise ResidueError(f"t must satisfy 1 <= t < {x.e}, got {t}")
    scale = x.p**t
    if x.value % scale:
        raise NotDivisibleError(f"not divisible: {x.p}^{t} does not divide {x.value}")
    return Residue(x.p, x.e - t, x.value // scale)


def padic_quotient(numer: int, unit_divisor: int, p: int, t: int, e: int) -> Residue:
    """
    Evaluate numer / (unit_divisor * p^t) in Z/p^e.

    The numerator only matters modulo p^(e+t), so callers may pass it already
    reduced (e.g. built from pow(2, p - 1, p**(e + t))).

    Args:
        numer: Integer numerator, expected divisible by p^t
        unit_divisor: Positive integer coprime to p
        p: Odd prime
        t: Divisibility order claimed for the numerator
        e: Target exponent

    Returns:
        The quotient as a residue mod p^e

    Raises:
        ResidueError: If unit_divisor shares the factor p
        NotDivisibleError: If p^t does not divide numer
    """
    _validate_modulus(p, e)
    if unit_divisor % p == 0:
        raise ResidueError(f"unit shares factor {p}: {unit_divisor}")
    if t < 0 or e + t > MAX_EXPONENT + 1:
        raise ResidueError(f"precision {e}+{t} out of range")
    full = p ** (e + t)
    reduced = numer % full
    scale = p**t
    if reduced % scale:
        raise NotDivisibleError(f"not divisible: {p}^{t} does not divide {numer}")
    modulus = p**e
    quotient = reduced // scale
    return Residue(p, e, quotient * pow(unit_divisor, -1, modulus) % modulus)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, in {-1, 0, 1}."""
    if p == 2:
        raise ValueError("Legendre symbol needs an odd prime, got 2")
    return int(legendre_symbol(a % p, p))


@dataclass(frozen=True)
class PrimeRange:
    """Closed interval [lo, hi] of candidate primes, minus an exclusion set."""

    lo: int
    hi: int
    excluded: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.lo < 1 or self.hi < 1:
            raise ValueError(f"range bounds must be positive, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"empty range: lo={self.lo} > hi={self.hi}")


def primes_in_range(r: PrimeRange) -> list[int]:
    """All primes in [r.lo, r.hi] not in r.excluded, ascending."""
    return [p for p in primerange(r.lo, r.hi + 1) if p not in r.excluded]


@lru_cache(maxsize=32)
def unit_inverses(p: int, e: int) -> tuple[int, ...]:
    """Table of k^-1 mod p^e for 0 <= k < p (index 0 holds 0).

    Every harmonic-type sum in this package runs over k <= p - 1, so one
    table per (p, e) serves all residue classes of a sweep cell.
    """
    modulus = p**e
    return (0,) + tuple(pow(k, -1, modulus) for k in range(1, p))
