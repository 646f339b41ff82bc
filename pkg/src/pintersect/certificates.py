"""Star spans over GF(2), cut verification of span elements, and coset bounds.

Vectors are Python ints: bit k is coordinate k (a slot for simple graphs, an
arc position for directed graphs).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .constructions import Family
from .errors import CapacityError, InvalidArgument
from .graphs import (
    DirectedGraph,
    Kind,
    SimpleGraph,
    _components,
    _reach,
    _simple_adj,
    num_slots,
    out_cut_mask,
)

RANK_GUARD = 24


def star(i: int, n: int) -> SimpleGraph:
    if not 0 <= i < n:
        raise InvalidArgument(f"vertex {i} out of range for n={n}")
    return SimpleGraph.from_edges(n, [(i, j) for j in range(n) if j != i])


def out_star(i: int, n: int) -> DirectedGraph:
    if not 0 <= i < n:
        raise InvalidArgument(f"vertex {i} out of range for n={n}")
    return DirectedGraph.from_arcs(n, [(i, j) for j in range(n) if j != i])


def edge_cut(n: int, subset: Iterable[int]) -> SimpleGraph:
    side = set(subset)
    return SimpleGraph.from_edges(n, [(i, j) for i in side for j in range(n) if j not in side])


@dataclass(frozen=True)
class SubspaceGF2:
    """Row space in reduced row-echelon form; pivots are the highest set bits, descending."""

    ambient_dim: int
    basis: tuple[int, ...]
    generators: tuple[int, ...] = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, v: int) -> int:
        """Canonical coset representative of ``v``."""
        for row in self.basis:
            if v >> (row.bit_length() - 1) & 1:
                v ^= row
        return v

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def elements(self) -> Iterable[int]:
        """All 2^rank elements, Gray-code order starting at 0."""
        v = 0
        yield v
        for k in range(1, 1 << self.rank):
            v ^= self.basis[(k & -k).bit_length() - 1]
            yield v


def span_of(generators: Sequence[int], ambient_dim: int) -> SubspaceGF2:
    pivots: dict[int, int] = {}
    for g in generators:
        if g < 0 or g >> ambient_dim:
            raise InvalidArgument(f"generator wider than ambient dimension {ambient_dim}")
        while g:
            top = g.bit_length() - 1
            if top not in pivots:
                pivots[top] = g
                break
            g ^= pivots[top]
    # ascending pass leaves each pivot column set in exactly one row
    for p in sorted(pivots):
        row = pivots[p]
        for q in pivots:
            if q != p and pivots[q] >> p & 1:
                pivots[q] ^= row
    return SubspaceGF2(ambient_dim, tuple(sorted(pivots.values(), reverse=True)), tuple(generators))


def star_span(n: int, centres: Sequence[int] | None = None) -> SubspaceGF2:
    centres = range(n - 1) if centres is None else centres
    return span_of([star(i, n).bits for i in centres], num_slots(n))


def out_star_span(n: int) -> SubspaceGF2:
    return span_of([out_star(i, n).bits for i in range(n)], 2 * num_slots(n))


@dataclass
class CutCertificate:
    valid: bool
    rank: int
    bound: int
    checked: int
    failing_element: int | None = None
    witnesses: list[tuple[int, int]] | None = None
    shortcut_ok: bool | None = None

    def to_dict(self, n: int, kind: str) -> dict:
        width = num_slots(n) * (1 if kind == "simple" else 2)
        out = {
            "kind": kind,
            "n": n,
            "rank": self.rank,
            "bound": self.bound,
            "valid": self.valid,
            "checked_elements": self.checked,
            "failing_element": None if self.failing_element is None else _digits(self.failing_element, width),
        }
        if self.shortcut_ok is not None:
            out["singleton_shortcut_ok"] = self.shortcut_ok
        if self.witnesses is not None:
            out["witnesses"] = [
                {"element": _digits(h, width), "side": [v for v in range(n) if a >> v & 1]}
                for h, a in self.witnesses
            ]
        return out


def _digits(v: int, width: int) -> str:
    return "".join("1" if v >> k & 1 else "0" for k in range(width))


def _guard(space: SubspaceGF2) -> None:
    if space.rank > RANK_GUARD:
        raise CapacityError(f"span of rank {space.rank} exceeds enumeration guard {RANK_GUARD}")


def verify_undirected_cut_property(space: SubspaceGF2, n: int, witnesses: bool = False) -> CutCertificate:
    """Every nonzero span element must leave K_n minus itself disconnected.

    A witness is the vertex set of the complement's component through vertex 0.
    The failing element reported is the smallest as an integer.
    """
    if space.ambient_dim != num_slots(n):
        raise InvalidArgument("ambient dimension does not match C(n,2)")
    _guard(space)
    full_edges = (1 << num_slots(n)) - 1
    full_vertices = (1 << n) - 1
    found: list[tuple[int, int]] = []
    failing = None
    checked = 0
    for h in space.elements():
        if h == 0:
            continue
        checked += 1
        rest = full_edges & ~h
        if _components(n, rest) == 1:
            failing = h if failing is None else min(failing, h)
        elif witnesses:
            found.append((h, _reach(_simple_adj(n, rest), 0, full_vertices)))
    return CutCertificate(
        valid=failing is None,
        rank=space.rank,
        bound=coset_bound(space.ambient_dim, space),
        checked=checked,
        failing_element=failing,
        witnesses=sorted(found) if witnesses else None,
    )


def first_out_cut(h: int, n: int) -> int | None:
    """Smallest vertex-subset mask A (as an integer) whose full out-cut lies inside ``h``."""
    for a in range(1, (1 << n) - 1):
        need = out_cut_mask(n, a)
        if h & need == need:
            return a
    return None


def verify_directed_cut_property(space: SubspaceGF2, n: int, witnesses: bool = False) -> CutCertificate:
    """Every nonzero span element must contain all arcs leaving some nonempty proper A.

    When the generators are independent out-stars, each element's expansion is
    also checked to contain the singleton out-cut of every star it uses.
    """
    if space.ambient_dim != 2 * num_slots(n):
        raise InvalidArgument("ambient dimension does not match 2*C(n,2)")
    _guard(space)
    failing = None
    found: list[tuple[int, int]] = []
    checked = 0
    for h in space.elements():
        if h == 0:
            continue
        checked += 1
        a = first_out_cut(h, n)
        if a is None:
            failing = h if failing is None else min(failing, h)
        elif witnesses:
            found.append((h, a))
    shortcut = _check_out_star_shortcut(space, n)
    return CutCertificate(
        valid=failing is None,
        rank=space.rank,
        bound=coset_bound(space.ambient_dim, space),
        checked=checked,
        failing_element=failing,
        witnesses=sorted(found) if witnesses else None,
        shortcut_ok=shortcut,
    )


def _check_out_star_shortcut(space: SubspaceGF2, n: int) -> bool | None:
    gens = space.generators
    centres = {out_star(i, n).bits: i for i in range(n)}
    if not gens or len(gens) != space.rank or any(g not in centres for g in gens):
        return None
    if len(gens) > RANK_GUARD:
        raise CapacityError("too many generators to expand")
    idx = [centres[g] for g in gens]
    for choice in product((0, 1), repeat=len(gens)):
        used = [i for i, c in zip(idx, choice) if c]
        if not used:
            continue
        h = 0
        for i, c in zip(gens, choice):
            if c:
                h ^= i
        for i in used:
            need = out_cut_mask(n, 1 << i)
            if h & need != need:
                return False
    return True


def coset_bound(ambient_dim: int, space: SubspaceGF2) -> int:
    """Number of translates of the subspace: a family meeting each at most once is at most this big."""
    return 2 ** (ambient_dim - space.rank)


def verify_coset_disjointness(family: Family, space: SubspaceGF2) -> bool:
    """True iff no two distinct members differ by an element of the subspace."""
    seen = set()
    for g in family.members:
        if g.kind is Kind.ORIENTED:
            raise InvalidArgument("coset check works on simple or directed graphs")
        rep = space.reduce(g.bits)
        if rep in seen:
            return False
        seen.add(rep)
    return True


# --------------------------------------------------------------------------
# GF(3) exploration for oriented graphs: no certificate is claimed here
# --------------------------------------------------------------------------


def span_gf3(generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Reduced row-echelon basis over GF(3) of trit vectors (trit 1 = low->high arc, 2 = reverse)."""
    rows = [list(v) for v in generators if any(v)]
    if not rows:
        return []
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InvalidArgument("generators must share a length")
    rows = [[x % 3 for x in r] for r in rows]
    basis: list[list[int]] = []
    col = 0
    while rows and col < width:
        pivot = next((r for r in rows if r[col]), None)
        if pivot is None:
            col += 1
            continue
        rows.remove(pivot)
        inv = pivot[col]  # 1 and 2 are self-inverse mod 3
        pivot = [(x * inv) % 3 for x in pivot]
        rows = [[(a - r[col] * b) % 3 for a, b in zip(r, pivot)] for r in rows]
        basis = [[(a - r[col] * b) % 3 for a, b in zip(r, pivot)] for r in basis]
        basis.append(pivot)
        rows = [r for r in rows if any(r)]
        col += 1
    return [tuple(r) for r in basis]


def gf3_cut_search(generators: Sequence[Sequence[int]], n: int) -> tuple[bool, tuple[int, ...] | None]:
    """Check whether every nonzero element of the GF(3) span contains a full directed out-cut.

    Returns ``(all_pass, first_failure)``; elements are enumerated by
    coefficient vectors in lexicographic order.
    """
    basis = span_gf3(generators)
    if len(basis) > 15:
        raise CapacityError("GF(3) span too large to enumerate")
    m = num_slots(n)
    for coeffs in product(range(3), repeat=len(basis)):
        if not any(coeffs):
            continue
        vec = tuple(sum(c * b[k] for c, b in zip(coeffs, basis)) % 3 for k in range(m))
        bits = 0
        for k, t in enumerate(vec):
            if t:
                bits |= 1 << (2 * k + (t - 1))
        if first_out_cut(bits, n) is None:
            return False, vec
    return True, None


__all__ = [
    "CutCertificate",
    "SubspaceGF2",
    "coset_bound",
    "edge_cut",
    "first_out_cut",
    "gf3_cut_search",
    "out_star",
    "out_star_span",
    "span_gf3",
    "span_of",
    "star",
    "star_span",
    "verify_coset_disjointness",
    "verify_directed_cut_property",
    "verify_undirected_cut_property",
]
