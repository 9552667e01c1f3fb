"""Certified real evaluation: interval arithmetic with escalating precision.

All non-exact real quantities in this package are computed as rigorous
enclosures [lo, hi] via mpmath's interval context; the endpoints are then
extracted as exact rationals, so downstream sign decisions and comparisons
never depend on a rounding mode or global precision state.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import libmp

DEFAULT_PRECISION = 64
DEFAULT_PRECISION_CAP = 16384
PRECISION_CAP_ENV = "CUBECHAR_PRECISION_CAP"


def precision_cap() -> int:
    raw = os.environ.get(PRECISION_CAP_ENV)
    if raw is None:
        return DEFAULT_PRECISION_CAP
    cap = int(raw)
    if cap < DEFAULT_PRECISION:
        raise ValueError(f"precision cap {cap} below minimum {DEFAULT_PRECISION}")
    return cap


def make_context(prec: int):
    """A fresh interval context; avoids mutating mpmath's global state."""
    ctx = mpmath.ctx_iv.MPIntervalContext()
    ctx.prec = prec
    return ctx


def _endpoint(raw) -> Fraction:
    p, q = libmp.to_rational(raw)
    return Fraction(int(p), int(q))


@dataclass(frozen=True)
class Enclosure:
    """A certified interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction
    prec: int

    @classmethod
    def from_iv(cls, x, prec: int) -> "Enclosure":
        lo_raw, hi_raw = x._mpi_
        return cls(_endpoint(lo_raw), _endpoint(hi_raw), prec)

    @classmethod
    def exact(cls, value, prec: int = 0) -> "Enclosure":
        f = Fraction(value)
        return cls(f, f, prec)

    def sign(self):
        """'positive', 'negative', 'zero', or None when the sign is undecided."""
        if self.hi < 0:
            return "negative"
        if self.lo > 0:
            return "positive"
        if self.lo == 0 == self.hi:
            return "zero"
        return None

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint_float(self) -> float:
        return float((self.lo + self.hi) / 2)

    def format_pair(self, digits: int = 25) -> tuple:
        return (
            fraction_to_decimal(self.lo, digits, round_up=False),
            fraction_to_decimal(self.hi, digits, round_up=True),
        )

    def __str__(self):
        lo, hi = self.format_pair()
        return f"[{lo}, {hi}]"


def fraction_to_decimal(f: Fraction, digits: int, round_up: bool) -> str:
    """Decimal string with `digits` fractional places, rounded outward."""
    sign = "-" if f < 0 else ""
    num, den = abs(f.numerator), f.denominator
    scaled = num * 10**digits
    quo, rem = divmod(scaled, den)
    if rem and (round_up != (f < 0)):
        quo += 1
    text = str(quo).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}" if digits else f"{sign}{text}"


def fraction_iv(ctx, f: Fraction):
    """Enclosure of an arbitrary rational in the given context."""
    return ctx.mpf(f.numerator) / ctx.mpf(f.denominator)


def pow_iv(ctx, base_num: int, base_den: int, exponent: Fraction):
    """(base_num/base_den) ** exponent for base >= 0, exponent > 0."""
    if base_num < 0 or base_den <= 0:
        raise ValueError("base must be non-negative")
    if exponent <= 0:
        raise ValueError("exponent must be positive")
    if base_num == 0:
        return ctx.mpf(0)
    if exponent.denominator == 1:
        e = int(exponent)
        return ctx.mpf(base_num**e) / ctx.mpf(base_den**e)
    base = ctx.mpf(base_num) / ctx.mpf(base_den)
    return ctx.exp(fraction_iv(ctx, exponent) * ctx.log(base))


def certify_sign(evaluate, start_prec: int = DEFAULT_PRECISION, cap=None):
    """Call evaluate(prec) -> Enclosure, doubling prec until the sign is
    certified or the cap is reached.  Returns (enclosure, sign_string)."""
    cap = precision_cap() if cap is None else cap
    prec = min(max(start_prec, 8), cap)
    while True:
        enc = evaluate(prec)
        sign = enc.sign()
        if sign is not None:
            return enc, sign
        if prec >= cap:
            return enc, "undetermined"
        prec = min(2 * prec, cap)
