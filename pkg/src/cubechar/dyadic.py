"""Exact dyadic rationals p / 2**q with arbitrary-precision integer numerators."""

from __future__ import annotations

from fractions import Fraction


class Dyadic:
    """An exact rational whose denominator is a power of two.

    Values are kept canonical: either the numerator is odd or the exponent
    is zero.  Closed under +, -, * and non-negative integer powers.
    """

    __slots__ = ("p", "q")

    def __init__(self, p: int, q: int = 0):
        if q < 0:
            raise ValueError("exponent must be non-negative")
        while q > 0 and p % 2 == 0:
            p //= 2
            q -= 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def from_fraction(cls, f: Fraction) -> "Dyadic":
        den = f.denominator
        q = den.bit_length() - 1
        if den != 1 << q:
            raise ValueError(f"{f} is not a dyadic rational")
        return cls(f.numerator, q)

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, 1 << self.q)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.q >= o.q:
            return Dyadic(self.p + (o.p << (self.q - o.q)), self.q)
        return Dyadic((self.p << (o.q - self.q)) + o.p, o.q)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.p, self.q)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Dyadic(self.p * o.p, self.q + o.q)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        return Dyadic(self.p**n, self.q * n)

    # comparisons --------------------------------------------------------

    def _cmp_key(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Fraction):
                return self.as_fraction(), other
            return None
        return self.p << o.q, o.p << self.q

    def __eq__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] == key[1]

    def __lt__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] < key[1]

    def __le__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] <= key[1]

    def __gt__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] > key[1]

    def __ge__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] >= key[1]

    def __hash__(self):
        return hash(self.as_fraction())

    def __bool__(self):
        return self.p != 0

    def __repr__(self):
        return f"Dyadic({self.p}, {self.q})"

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        return f"{self.p}/{1 << self.q}"


DYADIC_ZERO = Dyadic(0)
DYADIC_ONE = Dyadic(1)


def parse_dyadic(text: str) -> Dyadic:
    """Parse 'p', 'p/d' (d a power of two) or 'p/2^q'."""
    text = text.strip()
    if "/" not in text:
        return Dyadic(int(text))
    num, den = text.split("/", 1)
    den = den.strip()
    if den.startswith("2^"):
        return Dyadic(int(num), int(den[2:]))
    d = int(den)
    q = d.bit_length() - 1
    if d != 1 << q:
        raise ValueError(f"denominator {d} is not a power of two")
    return Dyadic(int(num), q)
