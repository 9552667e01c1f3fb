"""The character family chi_alpha(s) = mu(Fix(s))^alpha and its certificates.

Two value channels, chosen by the exponent:

  * non-negative integer alpha, and the separate infinity case, evaluate to
    exact dyadic rationals (chi_inf is the indicator of the identity);
  * non-integer real alpha evaluates to a symbolic BasePower whose numeric
    enclosure is computed on demand -- equality tests on this channel compare
    the exact dyadic bases, which is equivalent for a fixed positive exponent.

Conventions: 0^0 = 1 (so chi_0 is identically 1), x^inf = 0 for x < 1 and
1^inf = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .certreal import DEFAULT_PRECISION, Enclosure, certify_sign, make_context, pow_iv
from .dyadic import Dyadic
from .errors import PreconditionError
from .perm import (
    CubePermutation,
    compose,
    cycle_string,
    embed_head,
    embed_tail,
    fixed_fraction_of,
    flip_perm,
)
from . import cube

FLOAT_TOLERANCE_BITS = 40


class Alpha:
    """The character exponent: a non-negative rational or infinity.

    Integer and infinity exponents are the classified characters; non-integer
    rationals are candidates kept only to exhibit their positivity failure.
    """

    __slots__ = ("_value",)

    def __init__(self, value):
        if value is not None:
            value = Fraction(value)
            if value < 0:
                raise ValueError("alpha must be non-negative")
        object.__setattr__(self, "_value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Alpha is immutable")

    @classmethod
    def infinity(cls) -> "Alpha":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "Alpha":
        text = text.strip().lower()
        if text in ("inf", "infinity", "oo"):
            return cls.infinity()
        return cls(Fraction(text))

    @property
    def is_infinity(self) -> bool:
        return self._value is None

    @property
    def is_integer(self) -> bool:
        return self._value is not None and self._value.denominator == 1

    @property
    def is_classified(self) -> bool:
        return self.is_infinity or self.is_integer

    @property
    def integer(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer exponent")
        return int(self._value)

    @property
    def fraction(self) -> Fraction:
        if self.is_infinity:
            raise ValueError("infinite exponent has no rational value")
        return self._value

    def __eq__(self, other):
        if not isinstance(other, Alpha):
            return NotImplemented
        return self._value == other._value

    def __hash__(self):
        return hash(self._value)

    def __str__(self):
        return "inf" if self.is_infinity else str(self._value)

    def __repr__(self):
        return f"Alpha({self})"


@dataclass(frozen=True)
class BasePower:
    """The exact symbolic value base**exponent for a dyadic base in [0, 1]."""

    base: Dyadic
    exponent: Fraction

    def __mul__(self, other):
        if not isinstance(other, BasePower) or other.exponent != self.exponent:
            return NotImplemented
        return BasePower(self.base * other.base, self.exponent)

    def enclosure(self, prec: int = DEFAULT_PRECISION) -> Enclosure:
        ctx = make_context(prec)
        iv = pow_iv(ctx, self.base.p, 1 << self.base.q, self.exponent)
        return Enclosure.from_iv(iv, prec)

    def midpoint_float(self) -> float:
        if self.base.p == 0:
            return 0.0
        return math.exp(float(self.exponent) * math.log(float(self.base.as_fraction())))

    def __str__(self):
        return f"({self.base})^({self.exponent})"


def char_power(alpha: Alpha, base: Dyadic):
    """base**alpha in the channel the exponent selects."""
    if alpha.is_infinity:
        return Dyadic(1) if base == 1 else Dyadic(0)
    if alpha.is_integer:
        return base**alpha.integer
    return BasePower(base, alpha.fraction)


def char_eval(alpha: Alpha, s):
    """chi_alpha(s) = mu(Fix(s))^alpha for a dense or product-form permutation."""
    return char_power(alpha, fixed_fraction_of(s))


def _common_level(g1: CubePermutation, g2: CubePermutation):
    level = max(g1.level, g2.level)
    return embed_head(g1, level), embed_head(g2, level)


def centrality_check(alpha: Alpha, g1: CubePermutation, g2: CubePermutation) -> bool:
    """chi_alpha(g1 g2) == chi_alpha(g2 g1); always true since the products
    are conjugate."""
    a, b = _common_level(g1, g2)
    return char_eval(alpha, compose(a, b)) == char_eval(alpha, compose(b, a))


def multiplicativity_check(alpha: Alpha, s1: CubePermutation, s2: CubePermutation) -> bool:
    """chi_alpha(s1 * tail(s2)) == chi_alpha(s1) * chi_alpha(s2), with s2
    embedded on the coordinates after s1's level."""
    n = s1.level
    composite = compose(embed_head(s1, n + s2.level), embed_tail(s2, n))
    return char_eval(alpha, composite) == char_eval(alpha, s1) * char_eval(alpha, s2)


def fixproj_identity_check(
    alpha: Alpha, s: CubePermutation, a: cube.NiceSet, m: int
) -> bool:
    """chi_alpha(s * flip(A, m)) == mu(A)^alpha when A is contained in Fix(s).

    The finite-level shadow of the projection identity pi(s) P^A = P^A.
    """
    a_c = a.canonical()
    level = max(s.level, a_c.level)
    s_l = embed_head(s, level)
    for i in a_c.lift(level).members():
        if s_l.images[i] != i:
            raise PreconditionError("the nice set must be contained in Fix(s)")
    if m <= level:
        raise PreconditionError(f"coordinate {m} must exceed level {level}")
    composite = compose(embed_head(s, m), flip_perm(a_c, m))
    return char_eval(alpha, composite) == char_power(alpha, a.measure())


# ---------------------------------------------------------------------------
# Gram matrices and positive-semidefiniteness certification


@dataclass(frozen=True)
class GramReport:
    alpha: str
    level: int
    elements: tuple
    matrix: tuple  # entries as strings
    verdict: str  # "PSD" | "not PSD"
    method: str
    witness: tuple | None = None
    witness_value: str | None = None

    @property
    def is_psd(self) -> bool:
        return self.verdict == "PSD"

    def to_json_dict(self) -> dict:
        out = {
            "alpha": self.alpha,
            "level": self.level,
            "elements": list(self.elements),
            "matrix": [list(row) for row in self.matrix],
            "verdict": self.verdict,
            "method": self.method,
        }
        if self.witness is not None:
            out["witness"] = list(self.witness)
            out["witness_value"] = self.witness_value
        return out


def psd_check_exact(mat) -> tuple:
    """Exact PSD decision for a symmetric matrix of Fractions.

    Fraction-free in spirit: symmetric elimination over the rationals with
    diagonal pivoting.  Returns (True, None) or (False, witness) where the
    witness v satisfies v^T M v < 0 exactly.
    """
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        neg = next((j for j in range(i, n) if a[j][j] < 0), None)
        if neg is not None:
            return False, tuple(basis[neg])
        piv = next((j for j in range(i, n) if a[j][j] > 0), None)
        if piv is None:
            # remaining diagonal is zero: any nonzero off-diagonal entry
            # yields an indefinite 2x2 block
            for r in range(i, n):
                for c in range(r + 1, n):
                    if a[r][c] != 0:
                        sgn = 1 if a[r][c] < 0 else -1
                        witness = tuple(basis[r][k] + sgn * basis[c][k] for k in range(n))
                        return False, witness
            return True, None
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            for row in a:
                row[i], row[piv] = row[piv], row[i]
            basis[i], basis[piv] = basis[piv], basis[i]
        d = a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] / d
            if f:
                basis[r] = [basis[r][k] - f * basis[i][k] for k in range(n)]
                for c in range(i + 1, n):
                    a[r][c] -= f * a[i][c]
        # clear the pivot row and column only after every row is eliminated
        for r in range(i + 1, n):
            a[r][i] = a[i][r] = Fraction(0)
    return True, None


def quadratic_form(mat, v):
    """v^T M v over exact Fractions."""
    n = len(mat)
    return sum(Fraction(v[i]) * Fraction(mat[i][j]) * Fraction(v[j]) for i in range(n) for j in range(n))


def psd_check_float(mat: np.ndarray, tol_bits: int = FLOAT_TOLERANCE_BITS) -> tuple:
    """(is_psd, witness_or_None, lambda_min) with a relative tolerance."""
    evals, evecs = np.linalg.eigh(mat)
    lam_min = float(evals[0])
    scale = max(1.0, float(abs(evals[-1])))
    if lam_min >= -(2.0**-tol_bits) * scale:
        return True, None, lam_min
    return False, [float(x) for x in evecs[:, 0]], lam_min


def _witness_form_enclosure(bases, coeffs, exponent: Fraction, prec: int) -> Enclosure:
    """Enclosure of sum coeff_b * b^exponent over the grouped base values."""
    ctx = make_context(prec)
    total = ctx.mpf(0)
    for base, coeff in coeffs.items():
        if coeff == 0 or base.p == 0:
            continue
        c = ctx.mpf(coeff.numerator) / ctx.mpf(coeff.denominator)
        total += c * pow_iv(ctx, base.p, 1 << base.q, exponent)
    return Enclosure.from_iv(total, prec)


def gram_matrix(
    alpha: Alpha,
    elements,
    witness_strategy: str = "auto",
    precision: int = DEFAULT_PRECISION,
) -> GramReport:
    """The matrix chi_alpha(g_i g_j^-1) with a PSD certificate.

    Exact elimination decides integer and infinite exponents unconditionally.
    For non-integer exponents the verdict uses floating eigenvalues at
    relative tolerance 2^-40; a "not PSD" verdict is then backed by a witness
    whose quadratic form is re-certified negative by interval arithmetic.
    witness_strategy "signs" forces the permutation-sign vector as the
    witness candidate (the alternating-projection test vector).
    """
    elements = list(elements)
    if not elements:
        raise ValueError("empty element list")
    level = max(g.level for g in elements)
    lifted = [embed_head(g, level) if g.level < level else g for g in elements]
    names = tuple(cycle_string(g) for g in lifted)
    inverses = [g.inverse() for g in lifted]
    n = len(lifted)
    bases = [
        [fixed_fraction_of(compose(lifted[i], inverses[j])) for j in range(n)]
        for i in range(n)
    ]

    if alpha.is_classified:
        values = [[char_power(alpha, bases[i][j]) for j in range(n)] for i in range(n)]
        frac = [[v.as_fraction() for v in row] for row in values]
        ok, witness = psd_check_exact(frac)
        matrix = tuple(tuple(str(v) for v in row) for row in values)
        if ok:
            return GramReport(str(alpha), level, names, matrix, "PSD", "exact")
        value = quadratic_form(frac, witness)
        return GramReport(
            str(alpha),
            level,
            names,
            matrix,
            "not PSD",
            "exact",
            witness=tuple(str(w) for w in witness),
            witness_value=str(value),
        )

    # non-integer channel
    exponent = alpha.fraction
    mid = np.array(
        [[BasePower(bases[i][j], exponent).midpoint_float() for j in range(n)] for i in range(n)]
    )
    matrix = tuple(tuple(repr(float(x)) for x in row) for row in mid)
    method = f"float(tol=2^-{FLOAT_TOLERANCE_BITS})"
    if witness_strategy == "signs":
        candidate = [Fraction(g.sign()) for g in lifted]
    else:
        ok, w, _ = psd_check_float(mid)
        if ok:
            return GramReport(str(alpha), level, names, matrix, "PSD", method)
        candidate = [Fraction(x).limit_denominator(1 << 20) for x in w]

    coeffs: dict = {}
    for i in range(n):
        for j in range(n):
            c = candidate[i] * candidate[j]
            if c:
                coeffs[bases[i][j]] = coeffs.get(bases[i][j], Fraction(0)) + c
    enc, sign = certify_sign(
        lambda p: _witness_form_enclosure(bases, coeffs, exponent, p), start_prec=precision
    )
    if sign == "negative":
        return GramReport(
            str(alpha),
            level,
            names,
            matrix,
            "not PSD",
            method + "+interval-certified",
            witness=tuple(str(c) for c in candidate),
            witness_value=str(enc),
        )
    # certification failed: report what the float check says, witness-free
    ok, _, _ = psd_check_float(mid)
    verdict = "PSD" if ok else "not PSD"
    return GramReport(str(alpha), level, names, matrix, verdict, method)
