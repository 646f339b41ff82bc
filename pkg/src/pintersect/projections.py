"""Coordinate projections, uniform covers and the product-form projection inequality.

A family of graphs becomes a point set: simple graphs as 0/1 tuples over
slots, oriented graphs as 0/1/2 tuples.  All arithmetic is exact integer.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from math import prod
from typing import Iterable, Sequence

from .constructions import Family
from .errors import CapacityError, CoverError, InvalidArgument
from .graphs import Kind, edge_slot, num_slots

FT_GUARD = 10**6


@dataclass(frozen=True)
class PointSet:
    q: int
    m: int
    points: frozenset[tuple[int, ...]]

    def __post_init__(self):
        for p in self.points:
            if len(p) != self.m or any(not 0 <= x < self.q for x in p):
                raise InvalidArgument(f"point {p} is not in [{self.q}]^{self.m}")

    @classmethod
    def of(cls, points: Iterable[Sequence[int]], q: int, m: int | None = None) -> PointSet:
        pts = frozenset(tuple(p) for p in points)
        if m is None:
            if not pts:
                raise InvalidArgument("empty point set needs an explicit arity")
            m = len(next(iter(pts)))
        return cls(q, m, pts)

    @classmethod
    def from_family(cls, family: Family) -> PointSet:
        if family.kind is Kind.ORIENTED:
            return cls.of((g.trits() for g in family.members), 3, num_slots(family.n))
        if family.kind is Kind.SIMPLE:
            m = num_slots(family.n)
            return cls.of((tuple(g.bits >> k & 1 for k in range(m)) for g in family.members), 2, m)
        raise InvalidArgument("point sets are built from simple or oriented families")

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class CoverSpec:
    total_coords: int
    blocks: tuple[tuple[int, ...], ...]
    multiplicity: int

    @classmethod
    def build(cls, blocks: Iterable[Iterable[int]], total_coords: int) -> CoverSpec:
        blocks = tuple(tuple(sorted(set(b))) for b in blocks)
        return cls(total_coords, blocks, uniform_cover_multiplicity(blocks, total_coords))


def project(points: PointSet, coords: Sequence[int]) -> PointSet:
    coords = list(coords)
    if any(not 0 <= c < points.m for c in coords):
        raise InvalidArgument(f"coordinates must lie in [0, {points.m})")
    return PointSet(points.q, len(coords), frozenset(tuple(p[c] for c in coords) for p in points.points))


def star_coords(i: int, n: int) -> list[int]:
    """Slots of the edges at vertex ``i``, ascending."""
    if not 0 <= i < n:
        raise InvalidArgument(f"vertex {i} out of range for n={n}")
    return sorted(edge_slot(i, j, n) for j in range(n) if j != i)


def vertex_deletion_coords(i: int, n: int) -> list[int]:
    """Slots of the edges avoiding vertex ``i``, ascending."""
    own = set(star_coords(i, n))
    return [s for s in range(num_slots(n)) if s not in own]


def star_cover(n: int) -> CoverSpec:
    return CoverSpec.build((star_coords(i, n) for i in range(n)), num_slots(n))


def deletion_cover(n: int) -> CoverSpec:
    return CoverSpec.build((vertex_deletion_coords(i, n) for i in range(n)), num_slots(n))


def agreement(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise InvalidArgument("tuples differ in length")
    return sum(a == b for a, b in zip(u, v))


def uniform_cover_multiplicity(blocks: Iterable[Iterable[int]], total_coords: int) -> int:
    counts = Counter()
    for b in blocks:
        for c in set(b):
            if not 0 <= c < total_coords:
                raise CoverError(f"coordinate {c} outside [0, {total_coords})", c)
            counts[c] += 1
    if total_coords == 0:
        raise CoverError("cover of an empty coordinate set")
    k = counts[0]
    for c in range(total_coords):
        if counts[c] != k:
            raise CoverError(f"coordinate {c} is covered {counts[c]} times, coordinate 0 is covered {k} times", c)
    if k == 0:
        raise CoverError("no coordinate is covered", 0)
    return k


@dataclass(frozen=True)
class ShearerCheck:
    holds: bool
    lhs: int
    rhs: int
    block_sizes: tuple[int, ...]


def shearer_bound_check(points: PointSet, cover: CoverSpec) -> ShearerCheck:
    """Compare |F|^k with the product of the block projection sizes."""
    if cover.total_coords != points.m:
        raise InvalidArgument("cover and point set disagree on the number of coordinates")
    sizes = tuple(len(project(points, b)) for b in cover.blocks)
    lhs = len(points) ** cover.multiplicity
    rhs = prod(sizes)
    return ShearerCheck(lhs <= rhs, lhs, rhs, sizes)


def integer_root(x: int, k: int) -> int:
    """Largest r with r**k <= x."""
    if x < 0 or k < 1:
        raise InvalidArgument("integer_root needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    r = 1 << -(-x.bit_length() // k)  # r**k >= x
    while True:
        s = ((k - 1) * r + x // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def bound_from_projection_caps(cover: CoverSpec, caps: Sequence[int]) -> int:
    """Largest B with B^k <= product of the per-block caps."""
    if len(caps) != len(cover.blocks):
        raise InvalidArgument("need one cap per block")
    return integer_root(prod(caps), cover.multiplicity)


def ft_max_2agree(m: int, q: int = 3, t: int = 2, time_limit: float | None = None) -> tuple[int, list[tuple[int, ...]]]:
    """Largest subset of [q]^m whose points pairwise agree in at least t coordinates.

    Exhaustive maximum-clique search; returns the size and the
    lexicographically smallest optimal set.
    """
    from .clique import CliqueEngine

    if q ** m > FT_GUARD:
        raise CapacityError(f"{q}^{m} points exceeds the brute-force guard {FT_GUARD}")
    pts = list(product(range(q), repeat=m))
    adj = [0] * len(pts)
    for i, j in combinations(range(len(pts)), 2):
        if agreement(pts[i], pts[j]) >= t:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    engine = CliqueEngine(adj, time_limit=time_limit)
    size, _, complete = engine.max_clique()
    if not complete:
        raise TimeoutError("agreement search did not finish")
    best = engine.lexmin_clique(size)
    return size, [pts[i] for i in best]


def check_projected_agreement(family: Family, i: int, t: int = 2) -> bool:
    """All pairs of star projections at ``i`` agree in at least ``t`` coordinates."""
    if family.kind is not Kind.ORIENTED:
        raise InvalidArgument("projected agreement is defined for oriented families")
    coords = star_coords(i, family.n)
    images = [tuple(g.trits()[c] for c in coords) for g in family.members]
    return all(agreement(u, v) >= t for u, v in combinations(images, 2))


def is_cuboid(points: PointSet) -> tuple[bool, list[list[int]]]:
    """Whether the set is the product of its one-coordinate projections; also returns those sides."""
    sides = [sorted({p[c] for p in points.points}) for c in range(points.m)]
    return len(points) == prod(len(s) for s in sides), sides


# --------------------------------------------------------------------------
# the two bound pipelines
# --------------------------------------------------------------------------


@dataclass
class BoundReport:
    kind: str
    n: int
    multiplicity: int
    block_sizes: list[int]
    caps: list[int]
    cap_product: int
    bound: int
    total: int
    observed: list[int] | None = None


def oriented_strong_bound(n: int) -> BoundReport:
    """Star cover of K_n, each star projection capped by the 2-agreement maximum 3^(n-3)."""
    if n < 3:
        raise InvalidArgument("the star pipeline needs n >= 3")
    cover = star_cover(n)
    caps = [3 ** (n - 3)] * n
    return BoundReport(
        kind="oriented",
        n=n,
        multiplicity=cover.multiplicity,
        block_sizes=[len(b) for b in cover.blocks],
        caps=caps,
        cap_product=prod(caps),
        bound=bound_from_projection_caps(cover, caps),
        total=3 ** num_slots(n),
    )


def hamiltonian_bound(n: int) -> BoundReport:
    """Vertex-deletion cover, each K_{n-1} projection capped by the connected-intersecting maximum."""
    if n < 3:
        raise InvalidArgument("the deletion pipeline needs n >= 3")
    cover = deletion_cover(n)
    caps = [2 ** (num_slots(n - 1) - (n - 2))] * n
    return BoundReport(
        kind="simple",
        n=n,
        multiplicity=cover.multiplicity,
        block_sizes=[len(b) for b in cover.blocks],
        caps=caps,
        cap_product=prod(caps),
        bound=bound_from_projection_caps(cover, caps),
        total=2 ** num_slots(n),
    )


def observed_projection_sizes(family: Family, cover: CoverSpec) -> list[int]:
    return list(shearer_bound_check(PointSet.from_family(family), cover).block_sizes)
