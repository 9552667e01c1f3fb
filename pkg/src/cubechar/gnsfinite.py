"""Finite truncations of the diagonal-measure representation.

Level n lives on the 4^n pairs (x, y) in X_n x X_n, every pair carrying
weight 2^-n; the unit vector xi is the indicator of the diagonal, and
<pi(s) xi, xi> recovers mu(Fix(s)) exactly.  Pair (x, y) gets basis index
x | (y << n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .characters import Alpha, char_eval, char_power
from .cube import NiceSet, nice_intersect, nice_product
from .dyadic import Dyadic
from .errors import CapExceededError, InternalInconsistencyError, PreconditionError
from .perm import CubePermutation, compose, compose_tables, embed_head, flip_perm, table_cycle_lengths

#: explicit tensor powers are built densely only up to this many basis points
TENSOR_DIM_CAP_BITS = 14


@dataclass(frozen=True)
class TruncatedRep:
    """The level-n truncation: dimension 4^n, all point weights 2^-n."""

    level: int

    @property
    def dimension(self) -> int:
        return 1 << (2 * self.level)

    def point_index(self, x: int, y: int) -> int:
        return x | (y << self.level)

    def point(self, index: int) -> tuple:
        return index & ((1 << self.level) - 1), index >> self.level

    def weight(self) -> Dyadic:
        return Dyadic(1, self.level)


@dataclass(frozen=True)
class RepMatrix:
    """Sparse 0/1 matrix acting on functions on X_n x X_n: one image per basis point."""

    level: int
    images: tuple

    def apply_to(self, vec):
        out = [0] * len(vec)
        for i, v in enumerate(vec):
            out[self.images[i]] = v
        return out

    def compose(self, other: "RepMatrix") -> "RepMatrix":
        return RepMatrix(self.level, compose_tables(self.images, other.images))

    def order(self) -> int:
        return math.lcm(*table_cycle_lengths(self.images))


def rep_matrix(s: CubePermutation) -> RepMatrix:
    """The permutation matrix moving basis point (x, y) to (s(x), y)."""
    rep = TruncatedRep(s.level)
    images = [0] * rep.dimension
    size = s.size
    for y in range(size):
        off = y << s.level
        for x in range(size):
            images[x | off] = s.images[x] | off
    return RepMatrix(s.level, tuple(images))


def xi_vector(level: int):
    """Indicator of the diagonal, a unit vector for the 2^-n point weights."""
    rep = TruncatedRep(level)
    vec = [0] * rep.dimension
    for x in range(1 << level):
        vec[rep.point_index(x, x)] = 1
    return vec


def weighted_inner(u, v, level: int) -> Dyadic:
    """Inner product with every point weighted 2^-level (integer vectors)."""
    return Dyadic(sum(a * b for a, b in zip(u, v)), level)


def matrix_character(s: CubePermutation) -> Dyadic:
    """<pi(s) xi, xi> computed from the explicit matrix; equals mu(Fix(s))."""
    xi = xi_vector(s.level)
    return weighted_inner(rep_matrix(s).apply_to(xi), xi, s.level)


def tensor_character(s: CubePermutation, k: int, mode: str = "auto") -> Dyadic:
    """<pi^(x)k(s) xi^(x)k, xi^(x)k> = matrix_character(s)^k.

    In "auto" mode the explicit k-fold tensor is built whenever its dimension
    fits the cap and checked against the product formula; "explicit" insists
    on the dense build, "product" skips it.
    """
    if k < 1:
        raise ValueError("tensor power k must be positive")
    product_value = matrix_character(s) ** k
    bits = 2 * s.level * k
    if mode == "product":
        return product_value
    if bits > TENSOR_DIM_CAP_BITS:
        if mode == "explicit":
            raise CapExceededError(
                f"explicit tensor dimension 2^{bits} exceeds cap 2^{TENSOR_DIM_CAP_BITS}"
            )
        return product_value
    base = rep_matrix(s)
    dim = 1 << (2 * s.level)
    total_dim = dim**k
    xi = xi_vector(s.level)
    xi_t = [1] * total_dim
    img_t = [0] * total_dim
    for p in range(total_dim):
        rest, image, shift = p, 0, 1
        for _ in range(k):
            comp = rest % dim
            rest //= dim
            if not xi[comp]:
                xi_t[p] = 0
            image += base.images[comp] * shift
            shift *= dim
        img_t[p] = image
    permuted = [0] * total_dim
    for i, v in enumerate(xi_t):
        permuted[img_t[i]] = v
    explicit = Dyadic(sum(a * b for a, b in zip(permuted, xi_t)), s.level * k)
    if explicit != product_value:
        raise InternalInconsistencyError(
            f"tensor character {explicit} != product formula {product_value}"
        )
    return explicit


def stabilization_scan(
    alpha: Alpha,
    g1: CubePermutation,
    g2: CubePermutation,
    a: NiceSet,
    m_values,
) -> list:
    """chi_alpha(g1^-1 * flip(A, m) * g2) for each m; all values must agree.

    The finite-level witness that the flip images converge weakly: the
    conjugacy class of the product is already independent of m here.
    """
    if g1.level != g2.level:
        raise PreconditionError("g1 and g2 must share a level")
    base_level = g1.level
    a_c = a.canonical()
    m_values = list(m_values)
    if not m_values:
        raise PreconditionError("need at least one coordinate to scan")
    for m in m_values:
        if m <= base_level or m <= a_c.level:
            raise PreconditionError(f"coordinate {m} must exceed both levels")
    values = []
    for m in m_values:
        left = embed_head(g1.inverse(), m)
        right = embed_head(g2, m)
        element = compose(left, compose(flip_perm(a_c, m), right))
        values.append(char_eval(alpha, element))
    return values


def scan_is_constant(values) -> bool:
    return all(v == values[0] for v in values)


@dataclass(frozen=True)
class ProjectionIdentityReport:
    """Exact character-level checks of the projection calculus."""

    alpha: str
    intersection_ok: bool
    intersection_value: str
    product_ok: bool
    product_value: str
    monotone_ok: bool

    @property
    def ok(self) -> bool:
        return self.intersection_ok and self.product_ok and self.monotone_ok

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "intersection": {"ok": self.intersection_ok, "value": self.intersection_value},
            "product": {"ok": self.product_ok, "value": self.product_value},
            "monotone": {"ok": self.monotone_ok},
        }


def projection_identity_checks(
    alpha: Alpha, a: NiceSet, b: NiceSet, c: NiceSet, d: NiceSet
) -> ProjectionIdentityReport:
    """Verify, exactly at the character level:

    (i)   chi(flip(A, m1) flip(B, m2)) = mu(A /\\ B)^alpha     (m1 > m2)
    (ii)  chi(flip(CxDxX, m)) = mu(CxX)^alpha * mu(DxX)^alpha
    (iii) mu(A) <= mu(B) implies value(A) <= value(B)
    """
    a_c, b_c = a.canonical(), b.canonical()
    m2 = max(a_c.level, b_c.level) + 1
    m1 = m2 + 1
    # flip(A, m1) * flip(B, m2): the rightmost factor applies first
    composite = compose(flip_perm(a_c, m1), embed_head(flip_perm(b_c, m2), m1))
    got = char_eval(alpha, composite)
    expected = char_power(alpha, nice_intersect(a, b).measure())
    intersection_ok = got == expected

    prod_set = nice_product(c, d)
    m = prod_set.canonical().level + 1
    got_p = char_eval(alpha, flip_perm(prod_set, m))
    expected_p = char_power(alpha, c.measure()) * char_power(alpha, d.measure())
    product_ok = got_p == expected_p

    small, large = (a, b) if a.measure() <= b.measure() else (b, a)
    va = char_power(alpha, small.measure())
    vb = char_power(alpha, large.measure())
    if alpha.is_classified:
        monotone_ok = va.as_fraction() <= vb.as_fraction()
    else:
        monotone_ok = va.base <= vb.base  # x^alpha is monotone for alpha > 0
    return ProjectionIdentityReport(
        str(alpha),
        intersection_ok,
        str(got),
        product_ok,
        str(got_p),
        monotone_ok,
    )
