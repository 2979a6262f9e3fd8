"""
Registry of executable congruence and identity checks.

Each entry pairs a CheckDef (metadata plus applicability) with an evaluator
that returns (lhs, rhs) for one sub-parameter combination. The left side is
built from the lacunary sums; the right side from p-adic quotients, sequence
terms and closed forms. run_check turns evaluations into CheckResult rows.
"""

from math import comb
from typing import Callable, Optional

from sympy import primerange

from .checks import (
    CheckDef,
    CheckResult,
    Scope,
    Status,
    Sub,
    SubValue,
    Value,
    format_value,
    make_sub,
)
from .closed_forms import (
    PRINTED_OFFSETS_M8,
    PRINTED_OFFSETS_M10,
    VERIFIED_OFFSETS_M8,
    ClosedFormId,
    closed_form_class,
    closed_T_m8,
    closed_T_m10,
    closed_Tstar_diag,
    diag_class,
)
from .lacunary import (
    ClassSpec,
    SumKind,
    TermKind,
    binomial_lacunary,
    delta,
    harmonic_double,
    harmonic_lacunary,
    sum_terms,
    weighted_binomial_sum,
)
from .padic_core import (
    DivisibilityError,
    NonUnitError,
    Residue,
    exact_div_by_p,
    inv_unit,
    legendre,
    make_residue,
    padic_quotient,
    unit_inverses,
)
from .sequences import (
    FIBONACCI,
    LUCAS,
    PELL,
    PELL_LUCAS,
    LucasKind,
    seq_exact_terms,
    seq_mod,
)

# Pairwise comparisons of a chained congruence A = B = C
PAIRS = ("AB", "BC", "AC")

# Exact-scope sweep bounds
LEMMA2_MAX_N = 30
LEMMA2_MAX_M = 10
CLOSED_MAX_N = 99
RELATIONS_MAX_N = 60
RELATIONS_MAX_M = 12
SEQ_MAX_INDEX = 500
DIAG_M3_MAX_P = 499
M2_MAX_N = 60

GEOMETRIC_BASES = range(1, 7)


# ---------------------------------------------------------------------------
# Shared pieces
# ---------------------------------------------------------------------------


def _H(r: int, m: int, p: int, e: int, signed: bool = False) -> Residue:
    return harmonic_lacunary(ClassSpec(r, m, p - 1), p, e, signed=signed)


def _S(r: int, m: int, p: int, e: int) -> Residue:
    return harmonic_double(ClassSpec(r, m, p - 1), p, e)


def _tstar(r: int, m: int, n: int) -> int:
    return binomial_lacunary(ClassSpec(r, m, n), signed=True)


def _over(numer: int, unit: int, p: int, e: int, t: int = 1) -> Residue:
    """numer / (unit * p^t) in Z/p^e."""
    return padic_quotient(numer, unit, p, t, e)


def _fermat_numer(a: int, p: int, precision: int) -> int:
    """a^(p-1) - 1 reduced modulo p^precision."""
    return pow(a, p - 1, p**precision) - 1


def _reciprocal(v: int, p: int, e: int) -> Residue:
    return inv_unit(make_residue(v, p, e))


def _term(kind: LucasKind, n: int, p: int, e: int) -> int:
    return seq_mod(kind, n, p, e).lift()


def _chain(values: dict[str, Value], pair: str) -> tuple[Value, Value]:
    return values[pair[0]], values[pair[1]]


def _odd_range(lo: int, hi: int) -> range:
    return range(lo if lo % 2 else lo + 1, hi + 1, 2)


# ---------------------------------------------------------------------------
# Sub-parameter factories
# ---------------------------------------------------------------------------


def _single(p: Optional[int], m: Optional[int]) -> list[Sub]:
    return [()]


def _residue_classes(p: int, m: int) -> list[Sub]:
    return [make_sub(r=r) for r in range(m)]


def _pairs(p: int, m: Optional[int]) -> list[Sub]:
    return [make_sub(pair=pair) for pair in PAIRS]


def _geometric_subs(p: int, m: int) -> list[Sub]:
    return [make_sub(r=r, a=a) for r in range(m) for a in GEOMETRIC_BASES if a % p]


def _reading_subs(p: int, m: int) -> list[Sub]:
    return [
        make_sub(r=r, a=a, reading=reading)
        for r in range(m)
        for a in GEOMETRIC_BASES
        if a % p
        for reading in ("2p-k", "2-k")
    ]


def _always(p: Optional[int], m: Optional[int]) -> bool:
    return True


def _p_at_least(bound: int) -> Callable[[int, Optional[int]], bool]:
    return lambda p, m: p >= bound


# ---------------------------------------------------------------------------
# Wolstenholme and Lehmer
# ---------------------------------------------------------------------------


def _wolstenholme_sum(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    lhs = sum_terms(SumKind(TermKind.RECIPROCAL), p - 1, None, p, 2)
    return lhs, make_residue(0, p, 2)


def _wolstenholme_binom_subs(p: int, m: None) -> list[Sub]:
    return [make_sub(a=a, b=b) for a in range(1, 5) for b in range(1, a + 1)]


def _wolstenholme_binom(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    a, b = int(sub["a"]), int(sub["b"])
    return make_residue(comb(a * p, b * p), p, 3), make_residue(comb(a, b), p, 3)


def _binom2pp(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    return make_residue(comb(2 * p, p), p, 3), make_residue(2, p, 3)


def _lehmer_half(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    lhs = sum_terms(SumKind(TermKind.RECIPROCAL), (p - 1) // 2, None, p, 2)
    x2 = _fermat_numer(2, p, 3)
    rhs = -_over(pow(2, p, p**3) - 2, 1, p, 2) + _over(x2 * x2, 1, p, 2)
    return lhs, rhs


def _lehmer2(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    x2 = _fermat_numer(2, p, 2)
    rhs = _over(x2, 1, p, 1) - _over(x2 * x2, 2, p, 1)
    return _H(p, 2, p, 1), rhs


def _lehmer3(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    x3 = _fermat_numer(3, p, 3)
    rhs = _over(x3, 2, p, 2) - _over(x3 * x3, 4, p, 2)
    return _H(p, 3, p, 2), rhs


def _lehmer4(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    x2 = _fermat_numer(2, p, 3)
    rhs = _over(3 * x2, 4, p, 2) - _over(3 * x2 * x2, 8, p, 2)
    return _H(p, 4, p, 2), rhs


def _lehmer6(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    x2 = _fermat_numer(2, p, 3)
    x3 = _fermat_numer(3, p, 3)
    rhs = (
        _over(x2, 3, p, 2)
        + _over(x3, 4, p, 2)
        - _over(x2 * x2, 6, p, 2)
        - _over(x3 * x3, 8, p, 2)
    )
    return _H(p, 6, p, 2), rhs


def _fermat_split(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    eps = legendre(2, p)
    modulus = p**2
    lhs = _over(pow(2, p - 1, modulus) - 1, 1, p, 1)
    rhs = _over(2 * eps * (pow(2, (p - 1) // 2, modulus) - eps), 1, p, 1)
    return lhs, rhs


# ---------------------------------------------------------------------------
# First- and second-order congruences for H_{p,m}
# ---------------------------------------------------------------------------


def _firstorder(p: int, m: int, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    r = int(sub["r"])
    rhs = _over(-(_tstar(r, m, p) - delta(r, m, p)), 1, p, 1)
    return _H(r, m, p, 1), rhs


def _h_reflection(p: int, m: int, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    r = int(sub["r"])
    return _H(p - r, m, p, 1), -_H(r, m, p, 1)


def _t1(p: int, m: int, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    single = _tstar(p, m, p)
    double = _tstar(p, m, 2 * p)
    rhs = _over(-(2 * single + 2), 1, p, 2) + _over(double + 2, 4, p, 2)
    return _H(p, m, p, 2), rhs


def _t1_m2(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    modulus = p**3
    rhs = _over(pow(2, p, modulus) - 2, 1, p, 2) - _over(pow(2, 2 * p - 1, modulus) - 2, 4, p, 2)
    return _H(p, 2, p, 2), rhs


def _t2(p: int, m: int, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    double = _tstar(p, m, 2 * p)
    squares = make_residue(0, p, 1)
    for r in range(1, m + 1):
        if (2 * r - p) % m:
            squares += _H(r, m, p, 1) ** 2
    half_p_term = (squares * _reciprocal(2, p, 1)).times_p()
    rhs = -_over(double + 2, 4, p, 2) - half_p_term
    return _H(p, m, p, 2), rhs


def _s_hsq_subs(p: int, m: int) -> list[Sub]:
    return [make_sub(variant="full"), make_sub(variant="restricted")]


def _s_hsq(p: int, m: int, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    restricted = sub["variant"] == "restricted"
    squares = make_residue(0, p, 1)
    for r in range(1, m + 1):
        if restricted and (2 * r - p) % m == 0:
            continue
        squares += _H(r, m, p, 1) ** 2
    return _S(p, m, p, 1), -squares * _reciprocal(4, p, 1)


def _h03_chain(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    values: dict[str, Value] = {
        "A": _H(0, 3, p, 1),
        "B": -_H(p, 3, p, 1),
        "C": _over(_tstar(p, 3, 2 * p) + 2, 4, p, 1),
    }
    return _chain(values, str(sub["pair"]))


# ---------------------------------------------------------------------------
# Binomial expansion lemma and its corollaries
# ---------------------------------------------------------------------------


def _l1e1_general(p: int, m: int, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    r, a = int(sub["r"]), int(sub["a"])
    weighted = weighted_binomial_sum(ClassSpec(r, m, p), -a, start=1, stop=p - 1, modulus=p**3)
    lhs = _over(weighted, 1, p, 2)
    geometric = sum_terms(SumKind(TermKind.GEOMETRIC, a), p - 1, ClassSpec(r, m), p, 2)
    rhs = -geometric + harmonic_double(ClassSpec(r, m, p - 1), p, 1, a).times_p()
    return lhs, rhs


def _doubled_row_sum(r: int, m: int, p: int, a: int) -> Residue:
    """(1/2p) * sum over 1 <= k <= 2p-1, k != p, k = r (mod m) of (-a)^k C(2p, k)."""
    modulus = p**3
    total = weighted_binomial_sum(
        ClassSpec(r, m, 2 * p), -a, start=1, stop=2 * p - 1, modulus=modulus
    )
    if (p - r) % m == 0:
        total -= pow(-a, p, modulus) * comb(2 * p, p)
    return _over(total, 2, p, 2)


def _l1e2_a1(p: int, m: int, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    r = int(sub["r"])
    mirror = 2 * p - r
    rhs = -_H(r, m, p, 2) - _H(mirror, m, p, 2) + (2 * _S(r, m, p, 1) + 2 * _S(mirror, m, p, 1)).times_p()
    return _doubled_row_sum(r, m, p, 1), rhs


def _mirrored_sums(r: int, m: int, p: int, a: int, reading: str) -> tuple[Residue, Residue]:
    """
    The two sums over k = 2p - r (mod m) on the right of the doubled-row lemma.

    Returns (sum a^(2p-k)/k mod p^2, sum w(k) H_{k-1}/k mod p), where the
    weight w(k) is a^(2p-k) or a^(2-k) depending on the reading.
    """
    spec = ClassSpec(2 * p - r, m, p - 1)
    square = p**2
    inverses_sq = unit_inverses(p, 2)
    inverses = unit_inverses(p, 1)
    single = 0
    for k in spec.members():
        single += pow(a, 2 * p - k, square) * inverses_sq[k]
    double = 0
    prefix = 0
    for k in range(1, p):
        if k >= 2 and (k - spec.r) % m == 0:
            exponent = 2 * p - k if reading == "2p-k" else 2 - k
            double += pow(a, exponent, p) * inverses[k] * prefix
        prefix += inverses[k]
    return make_residue(single, p, 2), make_residue(double, p, 1)


def _l1e2_general(p: int, m: int, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    r, a, reading = int(sub["r"]), int(sub["a"]), str(sub["reading"])
    geometric = sum_terms(SumKind(TermKind.GEOMETRIC, a), p - 1, ClassSpec(r, m), p, 2)
    double = harmonic_double(ClassSpec(r, m, p - 1), p, 1, a)
    mirrored_single, mirrored_double = _mirrored_sums(r, m, p, a, reading)
    rhs = -geometric - mirrored_single + (2 * double + 2 * mirrored_double).times_p()
    return _doubled_row_sum(r, m, p, a), rhs


def _c1e1(p: int, m: int, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    r = int(sub["r"])
    rhs = _over(-(_tstar(r, m, p) - delta(r, m, p)), 1, p, 2) + _S(r, m, p, 1).times_p()
    return _H(r, m, p, 2), rhs


def _c1e2(p: int, m: int, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    rhs = _over(-(_tstar(p, m, p) + 1), 1, p, 2) + _S(p, m, p, 1).times_p()
    return _H(p, m, p, 2), rhs


def _c2e1(p: int, m: int, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    rhs = -_over(_tstar(p, m, 2 * p) + 2, 4, p, 2) + (2 * _S(p, m, p, 1)).times_p()
    return _H(p, m, p, 2), rhs


def _c2e2_applies(p: int, m: int) -> bool:
    return p >= 5 and m % 2 == 0 and (p + m // 2) % m != 0


def _c2e2_printed_applies(p: int, m: int) -> bool:
    return p >= 5 and m % 2 == 0 and (p + m // 2) % m == 0


def _c2e2(p: int, m: int, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    r = p + m // 2
    rhs = -_over(_tstar(r, m, 2 * p), 4, p, 2) + (2 * _S(r, m, p, 1)).times_p()
    return _H(r, m, p, 2), rhs


# ---------------------------------------------------------------------------
# Fibonacci / Lucas
# ---------------------------------------------------------------------------


def _t3(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    eps = legendre(5, p)
    modulus = p**3
    f_p = _term(FIBONACCI, p, p, 3)
    f_double = _term(FIBONACCI, 2 * p - eps, p, 3)
    rhs = _over(pow(5, (p - 1) // 2, modulus) * f_p - 1, 1, p, 2) - _over(
        pow(5, p - 1, modulus) * f_double - 1, 4, p, 2
    )
    return _H(p, 5, p, 2), rhs


def _sunsun_f(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    eps = legendre(5, p)
    values: dict[str, Value] = {
        "A": _H(2 * p, 5, p, 1),
        "B": -_H(-p, 5, p, 1),
        "C": -_over(_term(FIBONACCI, p - eps, p, 2), 2, p, 1),
    }
    return _chain(values, str(sub["pair"]))


def _williams_with_bound(p: int, bound: int) -> tuple[Value, Value]:
    eps = legendre(5, p)
    alternating = sum_terms(SumKind(TermKind.ALTERNATING), bound, None, p, 1)
    lhs = alternating * 2 * _reciprocal(5, p, 1)
    return lhs, _over(_term(FIBONACCI, p - eps, p, 2), 1, p, 1)


def _williams(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    return _williams_with_bound(p, 4 * p // 5)


def _williams_printed(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    # k <= 4p/5 - 1
    return _williams_with_bound(p, (4 * p - 5) // 5)


def _remark5_alt(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    eps = legendre(5, p)
    modulus = p**3

    def lucas(n: int) -> int:
        return _term(LUCAS, n, p, 3)

    numer = (
        5 * (pow(2, 4 * p - 1, modulus) - pow(2, 2 * p + 3, modulus))
        + 12 * lucas(4 * p)
        + lucas(4 * p - 4 * eps)
        - 112 * lucas(2 * p)
        - 4 * lucas(2 * p - 2 * eps)
        + 378
    )
    return _H(p, 5, p, 2, signed=True), _over(numer, 400, p, 2)


# ---------------------------------------------------------------------------
# Pell / Pell-Lucas
# ---------------------------------------------------------------------------


def _sun93_pell(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    eps = legendre(2, p)
    odd = sum_terms(SumKind(TermKind.ODD_ALTERNATING), (p + 1) // 4, None, p, 1)
    powers = sum_terms(SumKind(TermKind.POWER_OF_TWO), (p - 1) // 2, None, p, 1)
    values: dict[str, Value] = {
        "A": odd if (p - 1) // 2 % 2 == 0 else -odd,
        "B": -powers * _reciprocal(4, p, 1),
        "C": _over(_term(PELL, p - eps, p, 2), 1, p, 1),
    }
    return _chain(values, str(sub["pair"]))


def _t4(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    eps = legendre(2, p)
    modulus = p**3
    p_p = _term(PELL, p, p, 3)
    p_double = _term(PELL, 2 * p - eps, p, 3)
    first = (
        pow(2, 2 * p - 4, modulus)
        + pow(2, p - 3, modulus)
        + pow(2, (p - 3) // 2, modulus) * p_p
        - 1
    )
    second = (
        pow(2, 4 * p - 6, modulus)
        + pow(2, 2 * p - 4, modulus)
        + pow(2, p - 2, modulus) * p_double
        - 1
    )
    return _H(p, 8, p, 2), _over(first, 1, p, 2) - _over(second, 4, p, 2)


def _hp26_lhs(p: int) -> Residue:
    return _H(p + 2, 8, p, 1) ** 2 + _H(p + 6, 8, p, 1) ** 2


def _hp26_numer(p: int) -> int:
    """2^(p-1) (2^((p-1)/2) - (2/p))^2 + P_{p-(2/p)}^2, reduced mod p^3."""
    eps = legendre(2, p)
    modulus = p**3
    pell = _term(PELL, p - eps, p, 3)
    return pow(2, p - 1, modulus) * (pow(2, (p - 1) // 2, modulus) - eps) ** 2 + pell * pell


def _hp26_split(p: int) -> Residue:
    """Sum over both signs of (bracket / p)^2, the bracket taken mod p^2."""
    eps = legendre(2, p)
    square = p**2
    half = (p - eps) // 2
    if p % 4 == 1:
        # exponents may be negative for small p; pow inverts 2 mod p^2
        half_term = pow(2, (p - 5) // 4, square) * _term(PELL, half, p, 2)
    else:
        half_term = pow(2, (p - 11) // 4, square) * _term(PELL_LUCAS, half, p, 2)
    base = pow(2, p - 3, square) - eps * pow(2, (p - 5) // 2, square)
    total = make_residue(0, p, 1)
    for sign in (1, -1):
        bracket = make_residue(base + sign * half_term, p, 2)
        total += exact_div_by_p(bracket, 1) ** 2
    return total


def _hp26_subs(p: int, m: None) -> list[Sub]:
    return [make_sub(form="merged"), make_sub(form="split")]


def _hp26(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    if sub["form"] == "split":
        return _hp26_lhs(p), _hp26_split(p)
    return _hp26_lhs(p), _over(_hp26_numer(p), 8, p, 1, t=2)


def _hp26_printed(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    return _hp26_lhs(p), _over(_hp26_numer(p), 8, p, 1, t=1)


# (p mod 8, upper half index) -> (sign exponent, power of 2), None meaning 0
def _pell_half_table(p: int) -> dict[tuple[int, bool], Optional[tuple[int, int]]]:
    return {
        (1, False): None,
        (1, True): ((p - 1) // 8, (p - 1) // 4),
        (3, False): ((p - 3) // 8, (p - 3) // 4),
        (3, True): ((p + 5) // 8, (p - 3) // 4),
        (5, False): ((p - 5) // 8, (p - 1) // 4),
        (5, True): None,
        (7, False): ((p + 1) // 8, (p - 3) // 4),
        (7, True): ((p + 1) // 8, (p - 3) // 4),
    }


def _pelllucas_half_table(p: int) -> dict[tuple[int, bool], Optional[tuple[int, int]]]:
    return {
        (1, False): ((p - 1) // 8, (p + 3) // 4),
        (1, True): ((p - 1) // 8, (p + 3) // 4),
        (3, False): ((p + 5) // 8, (p + 5) // 4),
        (3, True): None,
        (5, False): ((p + 3) // 8, (p + 3) // 4),
        (5, True): ((p - 5) // 8, (p + 3) // 4),
        (7, False): None,
        (7, True): ((p + 1) // 8, (p + 5) // 4),
    }


def _signed_power(entry: Optional[tuple[int, int]], p: int) -> Residue:
    if entry is None:
        return make_residue(0, p, 1)
    sign_exponent, exponent = entry
    return make_residue((-1) ** sign_exponent * pow(2, exponent, p), p, 1)


def _half_index_subs(p: int, m: None) -> list[Sub]:
    return [make_sub(n=(p - 1) // 2), make_sub(n=(p + 1) // 2)]


def _pell_half(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    n = int(sub["n"])
    expected = _pell_half_table(p)[(p % 8, n > p // 2)]
    return seq_mod(PELL, n, p, 1), _signed_power(expected, p)


def _pelllucas_half(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    n = int(sub["n"])
    expected = _pelllucas_half_table(p)[(p % 8, n > p // 2)]
    return seq_mod(PELL_LUCAS, n, p, 1), _signed_power(expected, p)


def _pelllucas_half_printed(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    n = (p + 1) // 2
    printed = ((p + 1) // 8, (p + 1) // 4)
    return seq_mod(PELL_LUCAS, n, p, 1), _signed_power(printed, p)


def _seq_residues_subs(p: int, m: None) -> list[Sub]:
    return [make_sub(term=term) for term in ("F_p", "F_p-e", "P_p", "P_p-e")]


def _seq_residues(p: int, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    term = str(sub["term"])
    kind, symbol = (FIBONACCI, legendre(5, p)) if term.startswith("F") else (PELL, legendre(2, p))
    if term.endswith("-e"):
        return seq_mod(kind, p - symbol, p, 1), make_residue(0, p, 1)
    return seq_mod(kind, p, p, 1), make_residue(symbol, p, 1)


# ---------------------------------------------------------------------------
# Exact identities
# ---------------------------------------------------------------------------


def _lemma2_subs(p: None, m: None) -> list[Sub]:
    return [
        make_sub(n=n, m=mod, s=s)
        for n in range(1, LEMMA2_MAX_N + 1)
        for mod in range(2, LEMMA2_MAX_M + 1)
        for s in range(mod)
    ]


def _lemma2_identity(p: None, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    n, mod, s = int(sub["n"]), int(sub["m"]), int(sub["s"])
    row = [_tstar(r, mod, n) for r in range(mod)]
    lhs = sum(row[r % mod] * row[(r + s) % mod] for r in range(1, mod + 1))
    rhs = (-1) ** n * _tstar(n + s, mod, 2 * n)
    return lhs, rhs


def _closed_m10_subs(p: None, m: None) -> list[Sub]:
    return [make_sub(n=n, j=j) for n in _odd_range(1, CLOSED_MAX_N) for j in range(4)]


def _closed_m10(p: None, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    n, j = int(sub["n"]), int(sub["j"])
    r = closed_form_class(PRINTED_OFFSETS_M10[j], n, 10)
    return binomial_lacunary(ClassSpec(r, 10, n)), closed_T_m10(j, n)


def _closed_m10_fifth_subs(p: None, m: None) -> list[Sub]:
    return [
        make_sub(n=n, pairing=pairing)
        for n in _odd_range(1, CLOSED_MAX_N)
        for pairing in ("printed", "shifted")
    ]


def _closed_m10_fifth(p: None, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    n = int(sub["n"])
    offset = PRINTED_OFFSETS_M10[4] if sub["pairing"] == "printed" else PRINTED_OFFSETS_M10[4] + 2
    r = closed_form_class(offset, n, 10)
    return binomial_lacunary(ClassSpec(r, 10, n)), closed_T_m10(4, n)


def _closed_m8_subs(p: None, m: None) -> list[Sub]:
    return [make_sub(n=n, j=j) for n in _odd_range(1, CLOSED_MAX_N) for j in range(4)]


def _closed_m8(p: None, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    n, j = int(sub["n"]), int(sub["j"])
    r = closed_form_class(VERIFIED_OFFSETS_M8[j], n, 8)
    return binomial_lacunary(ClassSpec(r, 8, n)), closed_T_m8(j, n)


def _closed_m8_printed_subs(p: None, m: None) -> list[Sub]:
    return [make_sub(n=n, j=j) for n in _odd_range(1, CLOSED_MAX_N) for j in (2, 3)]


def _closed_m8_printed(p: None, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    n, j = int(sub["n"]), int(sub["j"])
    r = closed_form_class(PRINTED_OFFSETS_M8[j], n, 8)
    return binomial_lacunary(ClassSpec(r, 8, n)), closed_T_m8(j, n)


def _tstar_diag_subs(p: None, m: None) -> list[Sub]:
    subs = [make_sub(form=ClosedFormId.DIAG_M5.value, n=n) for n in _odd_range(1, CLOSED_MAX_N)]
    for form in (ClosedFormId.DIAG_M8, ClosedFormId.DIAG_M8_SHIFT4):
        subs += [make_sub(form=form.value, n=n) for n in _odd_range(3, CLOSED_MAX_N)]
    subs += [make_sub(form=ClosedFormId.DIAG_M3.value, n=q) for q in primerange(5, DIAG_M3_MAX_P + 1)]
    for form in (ClosedFormId.M2_CLASS0, ClosedFormId.M2_CLASS1):
        subs += [make_sub(form=form.value, n=n) for n in range(1, M2_MAX_N + 1)]
    return subs


def _tstar_diag(p: None, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    form, n = ClosedFormId(sub["form"]), int(sub["n"])
    r, mod, row = diag_class(form, n)
    return _tstar(r, mod, row), closed_Tstar_diag(form, n)


RELATIONS = ("class-sum", "reflection", "conversion", "pascal")


def _tstar_relations_subs(p: None, m: None) -> list[Sub]:
    return [
        make_sub(relation=relation, n=n, m=mod)
        for relation in RELATIONS
        for n in range(1, RELATIONS_MAX_N + 1)
        for mod in range(2, RELATIONS_MAX_M + 1)
    ]


def _tstar_relations(p: None, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    relation, n, mod = str(sub["relation"]), int(sub["n"]), int(sub["m"])
    signed = tuple(_tstar(r, mod, n) for r in range(mod))
    if relation == "class-sum":
        unsigned = sum(binomial_lacunary(ClassSpec(r, mod, n)) for r in range(mod))
        return (unsigned, sum(signed)), (2**n, 0)
    if relation == "reflection":
        return signed, tuple((-1) ** n * _tstar(n - r, mod, n) for r in range(mod))
    if relation == "conversion":
        if mod % 2 == 0:
            expected = tuple(
                (-1) ** r * binomial_lacunary(ClassSpec(r, mod, n)) for r in range(mod)
            )
        else:
            expected = tuple(
                (-1) ** r
                * (
                    binomial_lacunary(ClassSpec(r, 2 * mod, n))
                    - binomial_lacunary(ClassSpec(mod + r, 2 * mod, n))
                )
                for r in range(mod)
            )
        return signed, expected
    previous = tuple(_tstar(r, mod, n - 1) - _tstar(r - 1, mod, n - 1) for r in range(mod))
    return signed, previous


_SEQ_TERMS = 2 * SEQ_MAX_INDEX + 2


def _seq_identities_subs(p: None, m: None) -> list[Sub]:
    subs = [make_sub(identity="F_2n-1", n=n) for n in range(1, SEQ_MAX_INDEX + 1)]
    subs += [make_sub(identity="Q_n", n=n) for n in range(SEQ_MAX_INDEX + 1)]
    subs += [make_sub(identity="Q_n+1", n=n) for n in range(SEQ_MAX_INDEX + 1)]
    primes = list(primerange(3, SEQ_MAX_INDEX + 1))
    subs += [make_sub(identity="P_2p", n=q) for q in primes]
    subs += [make_sub(identity="PQ_half", n=q) for q in primes]
    subs += [make_sub(identity="F_2p", n=q) for q in primes if q != 5]
    return subs


def _seq_identities(p: None, m: None, sub: dict[str, SubValue]) -> tuple[Value, Value]:
    identity, n = str(sub["identity"]), int(sub["n"])
    fib = seq_exact_terms(FIBONACCI, _SEQ_TERMS)
    pell = seq_exact_terms(PELL, _SEQ_TERMS)
    pell_lucas = seq_exact_terms(PELL_LUCAS, _SEQ_TERMS)
    if identity == "F_2n-1":
        return fib[2 * n - 1], fib[n] ** 2 + fib[n - 1] ** 2
    if identity == "Q_n":
        return pell_lucas[n], 2 * pell[n + 1] - 2 * pell[n]
    if identity == "Q_n+1":
        return pell_lucas[n + 1], 2 * pell[n + 1] + 2 * pell[n]
    if identity == "F_2p":
        eps = legendre(5, n)
        return fib[2 * n - eps], fib[n - eps] ** 2 + fib[n] ** 2
    eps = legendre(2, n)
    if identity == "P_2p":
        return pell[2 * n - eps], pell[n - eps] ** 2 + pell[n] ** 2
    half = (n - eps) // 2
    return pell[half] * pell_lucas[half], pell[n - eps]


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

_DEFS = [
    CheckDef("wolstenholme_sum", "sum 1/k for k < p = 0", 2, "p >= 5",
             Scope.PRIME, _p_at_least(5), _single, _wolstenholme_sum),
    CheckDef("wolstenholme_binom", "C(ap, bp) = C(a, b) for 1 <= b <= a <= 4", 3, "p >= 5",
             Scope.PRIME, _p_at_least(5), _wolstenholme_binom_subs, _wolstenholme_binom),
    CheckDef("binom2pp", "C(2p, p) = 2", 3, "p >= 5",
             Scope.PRIME, _p_at_least(5), _single, _binom2pp),
    CheckDef("lehmer_half", "sum 1/j for j <= (p-1)/2 = -(2^p-2)/p + (2^(p-1)-1)^2/p", 2,
             "p >= 3", Scope.PRIME, _p_at_least(3), _single, _lehmer_half),
    CheckDef("lehmer2", "H_{p,2} = (2^(p-1)-1)/p - (2^(p-1)-1)^2/(2p)", 1, "p >= 5",
             Scope.PRIME, _p_at_least(5), _single, _lehmer2),
    CheckDef("lehmer3", "H_{p,3} = (3^(p-1)-1)/(2p) - (3^(p-1)-1)^2/(4p)", 2, "p >= 5",
             Scope.PRIME, _p_at_least(5), _single, _lehmer3),
    CheckDef("lehmer4", "H_{p,4} = 3(2^(p-1)-1)/(4p) - 3(2^(p-1)-1)^2/(8p)", 2, "p >= 5",
             Scope.PRIME, _p_at_least(5), _single, _lehmer4),
    CheckDef("lehmer6", "H_{p,6} in Fermat quotients of 2 and 3", 2, "p >= 5",
             Scope.PRIME, _p_at_least(5), _single, _lehmer6),
    CheckDef("fermat_split", "(2^(p-1)-1)/p = 2(2/p)(2^((p-1)/2)-(2/p))/p", 1, "p > 3",
             Scope.PRIME, _p_at_least(5), _single, _fermat_split),
    CheckDef("firstorder", "H_{r,m} = -(T*_{r,m}(p) - delta_{r,m}(p))/p, all r", 1,
             "p >= 3, p does not divide m", Scope.MODULAR, _p_at_least(3),
             _residue_classes, _firstorder),
    CheckDef("h_reflection", "H_{p-r,m} = -H_{r,m}, all r", 1, "p >= 3, p does not divide m",
             Scope.MODULAR, _p_at_least(3), _residue_classes, _h_reflection),
    CheckDef("t1", "H_{p,m} = -(2T*_{p,m}(p)+2)/p + (T*_{p,m}(2p)+2)/(4p)", 2,
             "p > 3, p does not divide m", Scope.MODULAR, _p_at_least(5), _single, _t1),
    CheckDef("t1_m2", "H_{p,2} = (2^p-2)/p - (2^(2p-1)-2)/(4p)", 2, "p >= 5",
             Scope.PRIME, _p_at_least(5), _single, _t1_m2),
    CheckDef("t2", "H_{p,m} = -(T*_{p,m}(2p)+2)/(4p) - (p/2) sum H_{r,m}^2 over 2r != p", 2,
             "p > 3, p does not divide m", Scope.MODULAR, _p_at_least(5), _single, _t2),
    CheckDef("s_hsq", "S_{p,m} = -(1/4) sum H_{r,m}^2, full and restricted", 1,
             "p >= 5, p does not divide m", Scope.MODULAR, _p_at_least(5), _s_hsq_subs, _s_hsq),
    CheckDef("h03_chain", "H_{0,3} = -H_{p,3} = (T*_{p,3}(2p)+2)/(4p), pairwise", 1, "p >= 5",
             Scope.PRIME, _p_at_least(5), _pairs, _h03_chain),
    CheckDef("l1e1_general", "(1/p) sum (-a)^k C(p,k) over the class, a = 1..6, all r", 2,
             "p >= 3, p does not divide m or a", Scope.MODULAR, _p_at_least(3),
             _geometric_subs, _l1e1_general),
    CheckDef("l1e2_a1", "(1/2p) sum (-1)^k C(2p,k) over the class, k != p, all r", 2,
             "p > 3, p does not divide m", Scope.MODULAR, _p_at_least(5),
             _residue_classes, _l1e2_a1),
    CheckDef("l1e2_general", "doubled-row lemma for a = 1..6 under both exponent readings", 2,
             "p > 3, p does not divide m or a", Scope.MODULAR, _p_at_least(5),
             _reading_subs, _l1e2_general, report_only=True),
    CheckDef("c1e1", "H_{r,m} = -(T*_{r,m}(p) - delta)/p + p S_{r,m}, all r", 2,
             "p >= 3, p does not divide m", Scope.MODULAR, _p_at_least(3),
             _residue_classes, _c1e1),
    CheckDef("c1e2", "H_{p,m} = -(T*_{p,m}(p)+1)/p + p S_{p,m}", 2,
             "p >= 3, p does not divide m", Scope.MODULAR, _p_at_least(3), _single, _c1e2),
    CheckDef("c2e1", "H_{p,m} = -(T*_{p,m}(2p)+2)/(4p) + 2p S_{p,m}", 2,
             "p >= 5, p does not divide m", Scope.MODULAR, _p_at_least(5), _single, _c2e1),
    CheckDef("c2e2", "H_{p+m/2,m} = -T*_{p+m/2,m}(2p)/(4p) + 2p S_{p+m/2,m}", 2,
             "p >= 5, m even, p + m/2 != 0 mod m", Scope.MODULAR, _c2e2_applies,
             _single, _c2e2),
    CheckDef("c2e2_printed", "c2e2 where the class of p + m/2 is 0 mod m (m = 2)", 2,
             "p >= 5, m even, p + m/2 = 0 mod m", Scope.MODULAR, _c2e2_printed_applies,
             _single, _c2e2, report_only=True),
    CheckDef("t3", "H_{p,5} = (5^((p-1)/2)F_p - 1)/p - (5^(p-1)F_{2p-(5/p)} - 1)/(4p)", 2,
             "p > 5", Scope.PRIME, _p_at_least(7), _single, _t3),
    CheckDef("sunsun_F", "H_{2p,5} = -H_{-p,5} = -F_{p-(5/p)}/(2p), pairwise", 1,
             "p >= 3, p != 5", Scope.PRIME, lambda p, m: p >= 3 and p != 5, _pairs, _sunsun_f),
    CheckDef("williams", "(2/5) sum (-1)^k/k for k <= 4p/5 = F_{p-(5/p)}/p", 1,
             "p >= 3, p != 5", Scope.PRIME, lambda p, m: p >= 3 and p != 5, _single, _williams),
    CheckDef("williams_printed", "(2/5) sum (-1)^k/k for k <= 4p/5 - 1 = F_{p-(5/p)}/p", 1,
             "p >= 3, p != 5", Scope.PRIME, lambda p, m: p >= 3 and p != 5, _single,
             _williams_printed, report_only=True),
    CheckDef("remark5_alt", "sum (-1)^k/k over k = p mod 5 in Lucas numbers /(400p)", 2,
             "p > 5", Scope.PRIME, _p_at_least(7), _single, _remark5_alt),
    CheckDef("sun93_pell", "odd alternating sum = -(1/4) sum 2^k/k = P_{p-(2/p)}/p, pairwise",
             1, "p >= 3", Scope.PRIME, _p_at_least(3), _pairs, _sun93_pell),
    CheckDef("t4", "H_{p,8} in P_p and P_{2p-(2/p)}", 2, "p > 3",
             Scope.PRIME, _p_at_least(5), _single, _t4),
    CheckDef("hp26", "H_{p+2,8}^2 + H_{p+6,8}^2 in Pell numbers, merged and split", 1, "p > 3",
             Scope.PRIME, _p_at_least(5), _hp26_subs, _hp26),
    CheckDef("hp26_printed", "merged hp26 form divided by 8p", 1, "p > 3",
             Scope.PRIME, _p_at_least(5), _single, _hp26_printed, report_only=True),
    CheckDef("pell_half", "P_{(p-1)/2}, P_{(p+1)/2} by p mod 8", 1, "p > 3",
             Scope.PRIME, _p_at_least(5), _half_index_subs, _pell_half),
    CheckDef("pelllucas_half", "Q_{(p-1)/2}, Q_{(p+1)/2} by p mod 8", 1, "p > 3",
             Scope.PRIME, _p_at_least(5), _half_index_subs, _pelllucas_half),
    CheckDef("pelllucas_half_printed", "Q_{(p+1)/2} with exponent (p+1)/4 for p = 7 mod 8", 1,
             "p = 7 mod 8", Scope.PRIME, lambda p, m: p > 3 and p % 8 == 7, _single,
             _pelllucas_half_printed, report_only=True),
    CheckDef("seq_residues", "F_p = (5/p), F_{p-(5/p)} = 0, P_p = (2/p), P_{p-(2/p)} = 0", 1,
             "p >= 3", Scope.PRIME, _p_at_least(3), _seq_residues_subs, _seq_residues),
    CheckDef("lemma2_identity", "sum_r T*_{r,m}(n) T*_{r+s,m}(n) = (-1)^n T*_{n+s,m}(2n)", None,
             f"n <= {LEMMA2_MAX_N}, m <= {LEMMA2_MAX_M}", Scope.EXACT, _always,
             _lemma2_subs, _lemma2_identity),
    CheckDef("closed_m10", "mod-10 Fibonacci/Lucas closed forms, classes 0-3", None,
             f"odd n <= {CLOSED_MAX_N}", Scope.EXACT, _always, _closed_m10_subs, _closed_m10),
    CheckDef("closed_m10_fifth", "10 T(n) = 2^n - 2L_n against classes (n+13)/2 and (n+15)/2",
             None, f"odd n <= {CLOSED_MAX_N}", Scope.EXACT, _always, _closed_m10_fifth_subs,
             _closed_m10_fifth, report_only=True),
    CheckDef("closed_m8", "mod-8 Pell/Pell-Lucas closed forms", None,
             f"odd n <= {CLOSED_MAX_N}", Scope.EXACT, _always, _closed_m8_subs, _closed_m8),
    CheckDef("closed_m8_printed", "mod-8 expressions 2 and 3 against their printed classes",
             None, f"odd n <= {CLOSED_MAX_N}", Scope.EXACT, _always, _closed_m8_printed_subs,
             _closed_m8_printed, report_only=True),
    CheckDef("tstar_diag", "diagonal T* closed forms (m = 5, 8, 3, 2)", None,
             f"odd n <= {CLOSED_MAX_N}", Scope.EXACT, _always, _tstar_diag_subs, _tstar_diag),
    CheckDef("tstar_relations", "class-sum, reflection, conversion and Pascal relations of T*",
             None, f"n <= {RELATIONS_MAX_N}, m <= {RELATIONS_MAX_M}", Scope.EXACT, _always,
             _tstar_relations_subs, _tstar_relations),
    CheckDef("seq_identities", "F_{2n-1}, Q_n, Q_{n+1}, P_{2p-(2/p)}, P_h Q_h identities", None,
             f"indices <= {SEQ_MAX_INDEX}", Scope.EXACT, _always, _seq_identities_subs,
             _seq_identities),
]

CHECKS: dict[str, CheckDef] = {check.id: check for check in _DEFS}


def get_check(check_id: str) -> CheckDef:
    """
    Get a check definition by id.

    Raises:
        KeyError: If the id is not registered
    """
    if check_id not in CHECKS:
        raise KeyError(f"Unknown check: {check_id}")
    return CHECKS[check_id]


def list_checks() -> list[CheckDef]:
    """All registered checks, ordered by id."""
    return sorted(CHECKS.values(), key=lambda check: check.id)


def _matches(sub: Sub, only: Optional[dict[str, SubValue]]) -> bool:
    if not only:
        return True
    params = dict(sub)
    return all(params.get(key) == value for key, value in only.items())


def run_check(
    check_id: str,
    p: Optional[int] = None,
    m: Optional[int] = None,
    only: Optional[dict[str, SubValue]] = None,
    include_p_dividing_m: bool = False,
) -> list[CheckResult]:
    """
    Evaluate one check at one cell.

    Args:
        check_id: Registry id
        p: Prime (ignored for exact checks)
        m: Modulus of the residue classes (modular checks only)
        only: Restrict to sub-parameters with these values, e.g. {"r": 2}
        include_p_dividing_m: Evaluate cells with p | m as report-only rows

    Returns:
        One CheckResult per sub-parameter combination, or a single skipped
        row when the applicability predicate is false

    Raises:
        KeyError: If the id is unknown
        ValueError: If p (or m, for modular checks) is missing
    """
    check = get_check(check_id)
    if check.scope is Scope.EXACT:
        p = m = None
    else:
        if p is None:
            raise ValueError(f"check {check_id} needs a prime p")
        if check.scope is Scope.PRIME:
            m = None
        elif m is None:
            raise ValueError(f"check {check_id} needs a modulus m")

    report_only = check.report_only
    if check.scope is not Scope.EXACT:
        if not check.applies(p, m):
            return [_skipped(check, p, m, f"not applicable: {check.applicability}")]
        if m is not None and p is not None and m % p == 0:
            if not include_p_dividing_m:
                return [_skipped(check, p, m, f"p = {p} divides m = {m}")]
            report_only = True

    modulus = "exact" if check.modulus is None or p is None else str(p**check.modulus)
    results = []
    for sub in check.subs(p, m):
        if not _matches(sub, only):
            continue
        try:
            lhs, rhs = check.evaluate(p, m, dict(sub))
        except (DivisibilityError, NonUnitError) as e:  # p-divisible numerator or denominator
            results.append(
                CheckResult(
                    check=check.id,
                    p=p,
                    m=m,
                    sub=sub,
                    modulus=modulus,
                    status=Status.DIVISIBILITY_FAILURE,
                    report_only=report_only,
                    detail=str(e),
                )
            )
            continue
        results.append(
            CheckResult(
                check=check.id,
                p=p,
                m=m,
                sub=sub,
                modulus=modulus,
                lhs=format_value(lhs),
                rhs=format_value(rhs),
                status=Status.PASS if lhs == rhs else Status.FAIL,
                report_only=report_only,
            )
        )
    return results


def _skipped(check: CheckDef, p: Optional[int], m: Optional[int], reason: str) -> CheckResult:
    modulus = "exact" if check.modulus is None or p is None else str(p**check.modulus)
    return CheckResult(
        check=check.id,
        p=p,
        m=m,
        modulus=modulus,
        status=Status.SKIPPED,
        report_only=check.report_only,
        detail=reason,
    )
