"""The integrality obstruction: signed derangement sums, Stirling numbers of
the second kind, and the alternating sums C_alpha(m) whose sign rules out
non-integer exponents.

Conventions pinned here and cross-checked by tests:

  C_alpha(m) = sum_{j=0}^{m} binom(m,j) * (-1)^(j-1) * (j-1) * (m-j)^alpha

with 0^alpha = 0 for alpha > 0 and 0^0 = 1, so C_2(2) = 4 (only the j = 0
term survives).  For integer alpha = n this equals m!(S(n,m) + S(n,m-1)).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .certreal import DEFAULT_PRECISION, Enclosure, certify_sign, make_context, pow_iv
from .errors import FalsificationError, InternalInconsistencyError
from .perm import permutation_sign

ALT_TRACE_MAX_M = 8


def signed_derangement_sum(k: int) -> int:
    """Sum of permutation signs over all derangements of S(k): (-1)^(k-1)(k-1)."""
    if k < 1:
        raise ValueError("k must be positive")
    return (k - 1) if k % 2 else -(k - 1)


def signed_derangement_sum_bruteforce(k: int) -> int:
    """The same sum by literal enumeration of fixed-point-free permutations."""
    if not 1 <= k <= 9:
        raise ValueError("brute force supported only for 1 <= k <= 9")
    total = 0
    for p in itertools.permutations(range(k)):
        if all(p[i] != i for i in range(k)):
            total += permutation_sign(p)
    return total


def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind, by the explicit alternating formula."""
    if n < 0 or m < 0:
        raise ValueError("indices must be non-negative")
    total = sum((-1) ** j * math.comb(m, j) * (m - j) ** n for j in range(m + 1))
    quo, rem = divmod(total, math.factorial(m))
    if rem:
        raise InternalInconsistencyError(f"S({n},{m}) alternating sum not divisible by m!")
    return quo


def stirling2_recurrence(n: int, m: int) -> int:
    """Independent route: S(n,m) = m*S(n-1,m) + S(n-1,m-1)."""
    if n < 0 or m < 0:
        raise ValueError("indices must be non-negative")
    row = [1] + [0] * m
    for _ in range(n):
        row = [0] + [m_ * row[m_] + row[m_ - 1] for m_ in range(1, m + 1)]
    return row[m]


def c_alpha_direct_integer(n: int, m: int) -> int:
    """The alternating sum at integer exponent n, term by term."""
    total = 0
    for j in range(m + 1):
        coeff = math.comb(m, j) * -((-1) ** j) * (j - 1)
        if coeff:
            total += coeff * (m - j) ** n
    return total


def c_alpha_integer(n: int, m: int) -> int:
    """C_n(m) via both the direct sum and m!(S(n,m)+S(n,m-1)); must agree."""
    if n < 0:
        raise ValueError("exponent must be non-negative")
    if m < 1:
        raise ValueError("m must be positive")
    direct = c_alpha_direct_integer(n, m)
    via_stirling = math.factorial(m) * (stirling2(n, m) + stirling2(n, m - 1))
    if direct != via_stirling:
        raise InternalInconsistencyError(
            f"C_{n}({m}): direct sum {direct} != Stirling route {via_stirling}"
        )
    if direct < 0:
        raise FalsificationError(f"C_{n}({m}) = {direct} < 0 at integer exponent")
    return direct


@dataclass(frozen=True)
class ObstructionReport:
    """Sign-certified value of C_alpha(m)."""

    alpha: Fraction
    m: int
    sign: str  # positive | negative | zero | undetermined
    method: str  # exact | interval
    exact_value: int | None = None
    enclosure: Enclosure | None = None

    @property
    def certified(self) -> bool:
        return self.sign != "undetermined"

    def value_bounds(self) -> tuple:
        if self.method == "exact":
            v = Fraction(self.exact_value)
            return v, v
        return self.enclosure.lo, self.enclosure.hi

    def to_json_dict(self) -> dict:
        lo, hi = self.value_bounds()
        out = {
            "alpha": str(self.alpha),
            "m": self.m,
            "sign": self.sign,
            "method": self.method,
        }
        if self.method == "exact":
            out["value"] = str(self.exact_value)
        else:
            out["value_lo"], out["value_hi"] = self.enclosure.format_pair()
            out["precision_bits"] = self.enclosure.prec
        return out

    def csv_row(self) -> list:
        if self.method == "exact":
            lo = hi = str(self.exact_value)
        else:
            lo, hi = self.enclosure.format_pair()
        return [str(self.alpha), str(self.m), lo, hi, self.sign, self.method]


def _c_alpha_sum_iv(ctx, alpha: Fraction, m: int):
    total = ctx.mpf(0)
    for j in range(m):  # the j = m term is 0^alpha = 0 for alpha > 0
        coeff = math.comb(m, j) * -((-1) ** j) * (j - 1)
        if coeff:
            total += ctx.mpf(coeff) * pow_iv(ctx, m - j, 1, alpha)
    return total


def _c_alpha_enclosure(alpha: Fraction, m: int, prec: int) -> Enclosure:
    ctx = make_context(prec)
    return Enclosure.from_iv(_c_alpha_sum_iv(ctx, alpha, m), prec)


def c_alpha_real(
    alpha: Fraction,
    m: int,
    precision: int = DEFAULT_PRECISION,
    precision_cap: int | None = None,
) -> ObstructionReport:
    """C_alpha(m) for real alpha > 0 with a certified sign.

    Integer-valued alpha is evaluated exactly (the enclosure degenerates to a
    point and the sign may be 'zero').  Otherwise the alternating sum is
    enclosed by interval arithmetic, doubling the working precision until the
    sign is certified or the cap is hit, in which case the report says
    'undetermined' rather than guessing.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if precision < DEFAULT_PRECISION:
        raise ValueError(f"precision must be at least {DEFAULT_PRECISION}")
    if m < 1:
        raise ValueError("m must be positive")
    if alpha.denominator == 1:
        value = c_alpha_integer(int(alpha), m)
        sign = "zero" if value == 0 else ("positive" if value > 0 else "negative")
        return ObstructionReport(alpha, m, sign, "exact", exact_value=value)
    enc, sign = certify_sign(
        lambda p: _c_alpha_enclosure(alpha, m, p), start_prec=precision, cap=precision_cap
    )
    return ObstructionReport(alpha, m, sign, "interval", enclosure=enc)


def signed_fixcount_distribution(m: int) -> list:
    """a[f] = sum of sign(s) over s in S(m) with exactly f fixed points."""
    if not 1 <= m <= ALT_TRACE_MAX_M:
        raise ValueError(f"m must be between 1 and {ALT_TRACE_MAX_M}")
    dist = [0] * (m + 1)
    for p in itertools.permutations(range(m)):
        fixed = sum(1 for i in range(m) if p[i] == i)
        dist[fixed] += permutation_sign(p)
    return dist


def alt_trace_bruteforce(alpha: Fraction, m: int, precision: int = DEFAULT_PRECISION):
    """(1/m!) * sum over S(m) of sign(s) * (|Fix(s)|/m)^alpha by enumeration.

    Exact Fraction for integer alpha; a certified Enclosure otherwise.
    """
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    dist = signed_fixcount_distribution(m)
    fact = math.factorial(m)
    if alpha.denominator == 1:
        a = int(alpha)
        num = sum(coeff * f**a for f, coeff in enumerate(dist) if coeff)
        return Fraction(num, fact * m**a)
    ctx = make_context(precision)
    total = ctx.mpf(0)
    for f, coeff in enumerate(dist):
        if coeff and f > 0:  # 0^alpha = 0 for alpha > 0
            total += ctx.mpf(coeff) * pow_iv(ctx, f, 1, alpha)
    total /= ctx.mpf(fact) * pow_iv(ctx, m, 1, alpha)
    return Enclosure.from_iv(total, precision)


def alt_trace_closed_form(alpha: Fraction, m: int, precision: int = DEFAULT_PRECISION):
    """C_alpha(m) / (m! * m^alpha), the closed form the enumeration must match."""
    alpha = Fraction(alpha)
    fact = math.factorial(m)
    if alpha.denominator == 1:
        return Fraction(c_alpha_integer(int(alpha), m), fact * m ** int(alpha))
    ctx = make_context(precision)
    total = _c_alpha_sum_iv(ctx, alpha, m) / (ctx.mpf(fact) * pow_iv(ctx, m, 1, alpha))
    return Enclosure.from_iv(total, precision)


def noninteger_witness(
    alpha: Fraction,
    integer_distance_threshold: Fraction = Fraction(1, 1 << 20),
    precision: int = DEFAULT_PRECISION,
    precision_cap: int | None = None,
) -> tuple:
    """First m <= floor(alpha)+4 with certified C_alpha(m) < 0.

    Returns (m, ObstructionReport).  Raises FalsificationError if no certified
    negative value exists in the scanned range, carrying all reports.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    nearest = round(alpha)
    if abs(alpha - nearest) <= integer_distance_threshold:
        raise ValueError(f"alpha {alpha} is within {integer_distance_threshold} of an integer")
    reports = []
    for m in range(2, int(alpha) + 5):
        report = c_alpha_real(alpha, m, precision=precision, precision_cap=precision_cap)
        reports.append(report)
        if report.sign == "negative":
            return m, report
    raise FalsificationError(
        f"no certified-negative C_alpha(m) for alpha={alpha} with m <= {int(alpha) + 4}",
        report=reports,
    )
