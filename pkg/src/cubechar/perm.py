"""Permutations of the level-n cube and the tower structure.

Composition order is function composition throughout: compose(p, q) applies
q first.  Products of cycles written left to right therefore apply right to
left, matching the usual convention (1,2)(2,3) = (1,2,3).

Permutations at different levels are never implicitly compatible; lift with
embed_head (or embed_tail) before combining.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .cube import DEFAULT_LEVEL_CAP, NiceSet, check_level_cap
from .dyadic import Dyadic
from .errors import LevelMismatchError, PreconditionError

# ---------------------------------------------------------------------------
# plain image-table helpers, shared with the small non-cube permutations used
# by the obstruction and appendix modules


def is_permutation_table(images) -> bool:
    n = len(images)
    seen = bytearray(n)
    for v in images:
        if not 0 <= v < n or seen[v]:
            return False
        seen[v] = 1
    return True


def compose_tables(p, q) -> tuple:
    """Image table of p after q (q applies first)."""
    if len(p) != len(q):
        raise LevelMismatchError("tables have different sizes")
    return tuple(p[q[i]] for i in range(len(q)))


def invert_table(p) -> tuple:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def table_cycles(p) -> list:
    """Cycles of an image table, each a tuple starting at its least point."""
    seen = bytearray(len(p))
    cycles = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = 1
        nxt = p[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = 1
            nxt = p[nxt]
        cycles.append(tuple(cyc))
    return cycles


def table_cycle_lengths(p) -> list:
    seen = bytearray(len(p))
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 1
        seen[start] = 1
        nxt = p[start]
        while nxt != start:
            length += 1
            seen[nxt] = 1
            nxt = p[nxt]
        lengths.append(length)
    return lengths


def table_from_cycles(size: int, cycles) -> tuple:
    """Image table of a product of cycles over [0, size), rightmost applied first."""
    images = list(range(size))
    for cyc in cycles:
        step = {cyc[i]: cyc[(i + 1) % len(cyc)] for i in range(len(cyc))}
        images = [images[step.get(x, x)] for x in range(size)]
    return tuple(images)


def permutation_sign(images) -> int:
    """(-1)**(n - number of cycles)."""
    return -1 if (len(images) - len(table_cycle_lengths(images))) % 2 else 1


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths, stored as (length, multiplicity) pairs."""

    counts: tuple

    @classmethod
    def from_lengths(cls, lengths) -> "CycleType":
        tally = {}
        for length in lengths:
            tally[length] = tally.get(length, 0) + 1
        return cls.from_counts(tally)

    @classmethod
    def from_counts(cls, tally: dict) -> "CycleType":
        items = tuple(sorted((k, v) for k, v in tally.items() if v))
        return cls(items)

    def total_points(self) -> int:
        return sum(k * v for k, v in self.counts)

    def scaled(self, factor: int) -> "CycleType":
        return CycleType(tuple((k, v * factor) for k, v in self.counts))

    def multiplicity(self, length: int) -> int:
        for k, v in self.counts:
            if k == length:
                return v
        return 0

    def lengths(self) -> tuple:
        """Expanded multiset; only for small types."""
        out = []
        for k, v in self.counts:
            out.extend([k] * v)
        return tuple(out)

    def __str__(self):
        return " ".join(f"{k}^{v}" if v > 1 else str(k) for k, v in self.counts) or "-"


class CubePermutation:
    """A bijection of X_n stored as a dense image table."""

    __slots__ = ("level", "images")

    def __init__(self, level: int, images):
        check_level_cap(level)
        images = tuple(images)
        if len(images) != 1 << level:
            raise ValueError(f"expected {1 << level} images, got {len(images)}")
        if not is_permutation_table(images):
            raise ValueError("image table is not a bijection")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("CubePermutation is immutable")

    def __call__(self, index: int) -> int:
        return self.images[index]

    def __eq__(self, other):
        if not isinstance(other, CubePermutation):
            return NotImplemented
        return self.level == other.level and self.images == other.images

    def __hash__(self):
        return hash((self.level, self.images))

    def __repr__(self):
        return f"CubePermutation(level={self.level}, {cycle_string(self)})"

    @property
    def size(self) -> int:
        return 1 << self.level

    def inverse(self) -> "CubePermutation":
        return CubePermutation(self.level, invert_table(self.images))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images))

    def sign(self) -> int:
        return permutation_sign(self.images)


def identity(level: int) -> CubePermutation:
    return CubePermutation(level, range(1 << level))


def odometer(level: int) -> CubePermutation:
    """Add one with carry to the right, wrapping at the all-ones word."""
    if level < 1:
        raise ValueError("odometer needs level >= 1")
    size = 1 << level
    return CubePermutation(level, ((i + 1) % size for i in range(size)))


def transposition(level: int, a: int, b: int) -> CubePermutation:
    images = list(range(1 << level))
    images[a], images[b] = images[b], images[a]
    return CubePermutation(level, images)


def from_cycles(level: int, cycles) -> CubePermutation:
    return CubePermutation(level, table_from_cycles(1 << level, cycles))


def random_permutation(level: int, rng) -> CubePermutation:
    images = list(range(1 << level))
    rng.shuffle(images)
    return CubePermutation(level, images)


def all_permutations(level: int):
    """Iterate S(2^level) in lexicographic table order; only sane for level <= 2."""
    for images in itertools.permutations(range(1 << level)):
        yield CubePermutation(level, images)


def compose(p: CubePermutation, q: CubePermutation) -> CubePermutation:
    """(p o q)(x) = p(q(x))."""
    if p.level != q.level:
        raise LevelMismatchError(f"levels {p.level} and {q.level}; lift explicitly first")
    return CubePermutation(p.level, compose_tables(p.images, q.images))


def conjugate(s: CubePermutation, g: CubePermutation) -> CubePermutation:
    """g s g^-1."""
    if s.level != g.level:
        raise LevelMismatchError(f"levels {s.level} and {g.level}; lift explicitly first")
    ginv = invert_table(g.images)
    return CubePermutation(s.level, tuple(g.images[s.images[ginv[i]]] for i in range(s.size)))


def cycle_type(p: CubePermutation) -> CycleType:
    return CycleType.from_lengths(table_cycle_lengths(p.images))


def are_conjugate(p: CubePermutation, q: CubePermutation) -> bool:
    """Conjugacy inside S(2^n): cycle types match (complete invariant)."""
    if p.level != q.level:
        raise LevelMismatchError("compare at a common level")
    return cycle_type(p) == cycle_type(q)


def fixed_set(p: CubePermutation) -> frozenset:
    return frozenset(i for i, v in enumerate(p.images) if v == i)


def fixed_count(p: CubePermutation) -> int:
    return sum(1 for i, v in enumerate(p.images) if v == i)


def fixed_fraction(p: CubePermutation) -> Dyadic:
    return Dyadic(fixed_count(p), p.level)


def uniform_distance(p: CubePermutation, q: CubePermutation) -> Dyadic:
    """Fraction of points the two tables disagree on."""
    if p.level != q.level:
        raise LevelMismatchError("lift to a common level first")
    diff = sum(1 for a, b in zip(p.images, q.images) if a != b)
    return Dyadic(diff, p.level)


def embed_head(p: CubePermutation, target_level: int) -> CubePermutation:
    """Act by p on the first p.level coordinates, identity on the rest."""
    if target_level < p.level:
        raise LevelMismatchError("target level below source level")
    check_level_cap(target_level)
    head_bits = p.level
    mask = (1 << head_bits) - 1
    return CubePermutation(
        target_level,
        (p.images[x & mask] | (x >> head_bits << head_bits) for x in range(1 << target_level)),
    )


def embed_tail(p: CubePermutation, head_levels: int) -> CubePermutation:
    """Act by p on coordinates head_levels+1 .. head_levels+p.level."""
    if head_levels < 0:
        raise ValueError("head_levels must be non-negative")
    level = head_levels + p.level
    check_level_cap(level)
    mask = (1 << head_levels) - 1
    return CubePermutation(
        level,
        ((x & mask) | (p.images[x >> head_levels] << head_levels) for x in range(1 << level)),
    )


def flip_perm(a: NiceSet, m: int) -> CubePermutation:
    """The involution fixing A pointwise and toggling coordinate m off A.

    Requires m to exceed the canonical level of A, so that membership in A
    never depends on the toggled coordinate.
    """
    a = a.canonical()
    if m <= a.level:
        raise PreconditionError(f"coordinate {m} must exceed the set's level {a.level}")
    check_level_cap(m)
    lifted = a.lift(m)
    bit = 1 << (m - 1)
    return CubePermutation(m, (x if lifted.contains(x) else x ^ bit for x in range(1 << m)))


def apply_to_nice(g: CubePermutation, a: NiceSet) -> NiceSet:
    """The image set g(A), at the common level of g and A."""
    level = max(g.level, a.level)
    gl = embed_head(g, level) if g.level < level else g
    al = a.lift(level)
    return NiceSet.from_indices(level, (gl.images[i] for i in al.members()))


# ---------------------------------------------------------------------------
# structured product form for permutations at levels too large to densify


class ProductFormPermutation:
    """A permutation of X_(n+t) given by a head permutation and tail actions.

    Sends (x, y) with x in X_n, y in X_t to (head(x), tails[x](y)).  Supports
    evaluation, composition, inversion, fixed-point and cycle-type queries
    without materialising the 2^(n+t) table.
    """

    __slots__ = ("head", "tail_level", "tails")

    def __init__(self, head: CubePermutation, tail_level: int, tails):
        tails = tuple(tails)
        if len(tails) != head.size:
            raise ValueError("need one tail permutation per head point")
        for t in tails:
            if t.level != tail_level:
                raise LevelMismatchError("all tail actions must live at tail_level")
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "tail_level", tail_level)
        object.__setattr__(self, "tails", tails)

    def __setattr__(self, name, value):
        raise AttributeError("ProductFormPermutation is immutable")

    @property
    def level(self) -> int:
        return self.head.level + self.tail_level

    def apply(self, z: int) -> int:
        n = self.head.level
        x = z & ((1 << n) - 1)
        y = z >> n
        return self.head.images[x] | (self.tails[x].images[y] << n)

    __call__ = apply

    def compose(self, other: "ProductFormPermutation") -> "ProductFormPermutation":
        """self after other."""
        if (self.head.level, self.tail_level) != (other.head.level, other.tail_level):
            raise LevelMismatchError("product forms must share head and tail levels")
        head = compose(self.head, other.head)
        tails = tuple(
            compose(self.tails[other.head.images[x]], other.tails[x])
            for x in range(other.head.size)
        )
        return ProductFormPermutation(head, self.tail_level, tails)

    def inverse(self) -> "ProductFormPermutation":
        hinv = self.head.inverse()
        tails = tuple(self.tails[hinv.images[x]].inverse() for x in range(self.head.size))
        return ProductFormPermutation(hinv, self.tail_level, tails)

    def fiber_fixed_counts(self) -> tuple:
        """For each head point x, the number of y with (x, y) fixed."""
        return tuple(
            fixed_count(self.tails[x]) if self.head.images[x] == x else 0
            for x in range(self.head.size)
        )

    def fixed_point_count(self) -> int:
        return sum(self.fiber_fixed_counts())

    def fixed_fraction(self) -> Dyadic:
        return Dyadic(self.fixed_point_count(), self.level)

    def cycle_type(self) -> CycleType:
        """Cycle type via per-head-cycle return maps; no densification.

        A head cycle (x0 .. x_{k-1}) with return map G = tails[x_{k-1}] o ...
        o tails[x0] contributes, for each G-cycle of length l, one cycle of
        length k*l.
        """
        tally = {}
        for cyc in table_cycles(self.head.images):
            k = len(cyc)
            ret = self.tails[cyc[0]]
            for x in cyc[1:]:
                ret = compose(self.tails[x], ret)
            for length in table_cycle_lengths(ret.images):
                tally[k * length] = tally.get(k * length, 0) + 1
        return CycleType.from_counts(tally)

    def densify(self, level_cap: int = DEFAULT_LEVEL_CAP) -> CubePermutation:
        check_level_cap(self.level, level_cap)
        return CubePermutation(self.level, (self.apply(z) for z in range(1 << self.level)))

    def __repr__(self):
        return (
            f"ProductFormPermutation(head_level={self.head.level},"
            f" tail_level={self.tail_level})"
        )


def fixed_fraction_of(p) -> Dyadic:
    """Fixed fraction of a dense or product-form permutation."""
    if isinstance(p, ProductFormPermutation):
        return p.fixed_fraction()
    return fixed_fraction(p)


def cycle_type_of(p) -> CycleType:
    if isinstance(p, ProductFormPermutation):
        return p.cycle_type()
    return cycle_type(p)


# ---------------------------------------------------------------------------
# text notation

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def cycle_string(p: CubePermutation) -> str:
    """Product of nontrivial cycles over point indices, 'e' for the identity."""
    parts = [
        "(" + " ".join(str(x) for x in cyc) + ")"
        for cyc in table_cycles(p.images)
        if len(cyc) > 1
    ]
    return "".join(parts) if parts else "e"


def table_string(p: CubePermutation) -> str:
    return f"level={p.level}: " + " ".join(str(v) for v in p.images)


def parse_permutation(text: str) -> CubePermutation:
    """Parse 'identity(n)', 'odometer(n)', 'level=n: i0 i1 ...' or
    'level=n: (a b)(c d)' notation ('e' is identity(1))."""
    text = text.strip()
    if text == "e":
        return identity(1)
    m = re.fullmatch(r"(identity|odometer)\((\d+)\)", text)
    if m:
        maker = identity if m.group(1) == "identity" else odometer
        return maker(int(m.group(2)))
    m = re.fullmatch(r"level\s*=\s*(\d+)\s*:\s*(.*)", text, re.DOTALL)
    if not m:
        raise ValueError(f"cannot parse permutation {text!r}")
    level = int(m.group(1))
    body = m.group(2).strip()
    if body.startswith("("):
        cycles = []
        rest = _CYCLE_RE.sub("", body).strip()
        if rest:
            raise ValueError(f"unexpected text {rest!r} in cycle notation")
        for group in _CYCLE_RE.findall(body):
            points = [int(t) for t in re.split(r"[\s,]+", group.strip()) if t]
            if len(points) < 2:
                raise ValueError("cycles need at least two points")
            if len(set(points)) != len(points):
                raise ValueError(f"repeated point in cycle {group!r}")
            cycles.append(tuple(points))
        return from_cycles(level, cycles)
    images = [int(t) for t in body.split()]
    return CubePermutation(level, images)
