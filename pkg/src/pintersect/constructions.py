"""Extremal and near-extremal families, with closed-form sizes.

Vertex labels are 0-based: a construction written on {1, ..., n} is
translated by ``v -> v - 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .errors import CapacityError, InvalidArgument, ParseError
from .graphs import (
    DirectedGraph,
    Graph,
    GRAPH_TYPES,
    Kind,
    OrientedGraph,
    PropertySpec,
    SimpleGraph,
    edge_slot,
    graph_key,
    num_slots,
    predicate_on_key,
)

DEFAULT_LIMIT = 1 << 20


@dataclass(frozen=True)
class Family:
    n: int
    kind: Kind
    members: tuple[Graph, ...]

    @classmethod
    def of(cls, members: Iterable[Graph], n: int | None = None, kind: Kind | str | None = None) -> Family:
        """Build a family, dropping duplicates and sorting canonically."""
        members = list(members)
        if members:
            n = members[0].n if n is None else n
            kind = members[0].kind if kind is None else Kind(kind)
        if n is None or kind is None:
            raise InvalidArgument("empty family needs explicit n and kind")
        kind = Kind(kind)
        for g in members:
            if g.n != n or g.kind is not kind:
                raise InvalidArgument("family members must share n and kind")
        unique = {g.to_string(): g for g in members}
        return cls(n, kind, tuple(unique[s] for s in sorted(unique)))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, g):
        return g in set(self.members)

    def strings(self) -> list[str]:
        return [g.to_string() for g in self.members]

    def dumps(self) -> str:
        lines = [f"family n={self.n} kind={self.kind.value} count={len(self)}"]
        lines.extend(self.strings())
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> Family:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("family "):
            raise ParseError("missing family header", 0)
        try:
            fields = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
            n, kind, count = int(fields["n"]), Kind(fields["kind"]), int(fields["count"])
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad family header: {exc}", 0) from None
        body = lines[1:]
        if len(body) != count:
            raise ParseError(f"header says {count} members, found {len(body)}", len(body))
        fam = cls.of((GRAPH_TYPES[kind].from_string(s, n) for s in body), n, kind)
        if fam.strings() != body:
            raise ParseError("members are not in canonical order or repeat", 1)
        return fam


# --------------------------------------------------------------------------
# upsets
# --------------------------------------------------------------------------


def upset_size(h: Graph, universe_kind: Kind | str | None = None) -> int:
    kind = h.kind if universe_kind is None else Kind(universe_kind)
    m = num_slots(h.n)
    if kind is Kind.SIMPLE:
        return 2 ** (m - h.size)
    if kind is Kind.DIRECTED:
        return 2 ** (2 * m - h.size)
    return 3 ** (m - h.size)


def upset_of(h: Graph, universe_kind: Kind | str | None = None, limit: int = DEFAULT_LIMIT) -> Family:
    """All graphs of the universe kind containing ``h`` (oriented arcs with their direction)."""
    kind = h.kind if universe_kind is None else Kind(universe_kind)
    if kind is Kind.DIRECTED and isinstance(h, OrientedGraph):
        h = h.to_directed()
    if kind is not h.kind:
        raise InvalidArgument(f"cannot take a {kind.value} upset of a {h.kind.value} graph")
    size = upset_size(h, kind)
    if size > limit:
        raise CapacityError(f"upset has {size} members, limit {limit}; use upset_size for counting")
    n, m = h.n, num_slots(h.n)
    if kind is Kind.ORIENTED:
        used = h.fwd | h.bwd
        free = [k for k in range(m) if not used >> k & 1]
        members = []
        for choice in itertools.product((0, 1, 2), repeat=len(free)):
            fwd, bwd = h.fwd, h.bwd
            for k, t in zip(free, choice):
                if t == 1:
                    fwd |= 1 << k
                elif t == 2:
                    bwd |= 1 << k
            members.append(OrientedGraph(n, fwd, bwd))
        return Family.of(members, n, kind)
    width = m if kind is Kind.SIMPLE else 2 * m
    free = [k for k in range(width) if not h.bits >> k & 1]
    cls = type(h)
    return Family.of((cls(n, h.bits | _place(free, c)) for c in range(1 << len(free))), n, kind)


def _place(positions: Sequence[int], code: int) -> int:
    out = 0
    for idx, pos in enumerate(positions):
        if code >> idx & 1:
            out |= 1 << pos
    return out


# --------------------------------------------------------------------------
# "all but at most one edge of each block" families
# --------------------------------------------------------------------------


def _slots_of(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    return [edge_slot(i, j, n) for i, j in edges]


def relaxed_family_size(n: int, blocks: Sequence[Sequence[tuple[int, int]]], fixed: Sequence[tuple[int, int]] = ()) -> int:
    used = sum(len(b) for b in blocks) + len(fixed)
    return prod(len(b) + 1 for b in blocks) * 2 ** (num_slots(n) - used)


def relaxed_family(
    n: int,
    blocks: Sequence[Sequence[tuple[int, int]]],
    fixed: Sequence[tuple[int, int]] = (),
    limit: int = DEFAULT_LIMIT,
) -> Family:
    """Simple graphs containing every ``fixed`` edge and all but at most one edge of each block.

    Blocks and fixed edges must be pairwise disjoint.
    """
    block_slots = [_slots_of(n, b) for b in blocks]
    fixed_slots = _slots_of(n, fixed)
    flat = fixed_slots + [s for b in block_slots for s in b]
    if len(set(flat)) != len(flat):
        raise InvalidArgument("blocks and fixed edges must be disjoint")
    size = relaxed_family_size(n, blocks, fixed)
    if size > limit:
        raise CapacityError(f"family has {size} members, limit {limit}")
    base = sum(1 << s for s in fixed_slots)
    free = [k for k in range(num_slots(n)) if k not in set(flat)]
    # each block either keeps everything (None) or drops exactly one slot
    block_options = [[sum(1 << s for s in b)] + [sum(1 << s for s in b if s != d) for d in b] for b in block_slots]
    members = []
    for picks in itertools.product(*block_options):
        core = base | sum(picks)
        members.extend(SimpleGraph(n, core | _place(free, c)) for c in range(1 << len(free)))
    return Family.of(members, n, Kind.SIMPLE)


def _cycle_edges(order: Sequence[int]) -> list[tuple[int, int]]:
    return [(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]


def _check_order(order: Sequence[int] | None, n: int) -> list[int]:
    if n < 3:
        raise InvalidArgument("a Hamilton cycle needs n >= 3")
    order = list(range(n)) if order is None else list(order)
    if sorted(order) != list(range(n)):
        raise InvalidArgument(f"cycle order must be a permutation of 0..{n - 1}")
    return order


def hamilton_cycle_size(n: int) -> int:
    return 2 ** (num_slots(n) - n)


def hamilton_cycle_family(order: Sequence[int] | None, n: int, limit: int = DEFAULT_LIMIT) -> Family:
    """All graphs containing the Hamilton cycle through ``order`` (identity if None)."""
    order = _check_order(order, n)
    return upset_of(SimpleGraph.from_edges(n, _cycle_edges(order)), limit=limit)


def cycle_minus_one_size(n: int) -> int:
    return (n + 1) * 2 ** (num_slots(n) - n)


def cycle_minus_one_family(order: Sequence[int] | None, n: int, limit: int = DEFAULT_LIMIT) -> Family:
    order = _check_order(order, n)
    return relaxed_family(n, [_cycle_edges(order)], limit=limit)


def flower_cycles(cycle_lengths: Sequence[int], n: int) -> list[list[int]]:
    """Vertex orders of the petals: each starts at the shared vertex 0 and uses the next fresh labels."""
    lengths = list(cycle_lengths)
    if not lengths or any(c < 3 for c in lengths):
        raise InvalidArgument("petal lengths must all be >= 3")
    if sum(c - 1 for c in lengths) != n - 1:
        raise InvalidArgument(f"petal lengths {lengths} do not fit n={n}: need sum(len-1) = n-1")
    cycles, nxt = [], 1
    for c in lengths:
        cycles.append([0] + list(range(nxt, nxt + c - 1)))
        nxt += c - 1
    return cycles


def flower_size(cycle_lengths: Sequence[int], n: int) -> int:
    flower_cycles(cycle_lengths, n)
    return prod(c + 1 for c in cycle_lengths) * 2 ** (num_slots(n) - sum(cycle_lengths))


def flower_family(cycle_lengths: Sequence[int], n: int, limit: int = DEFAULT_LIMIT) -> Family:
    """Graphs keeping all but at most one edge of every petal of a flower of cycles."""
    cycles = flower_cycles(cycle_lengths, n)
    return relaxed_family(n, [_cycle_edges(c) for c in cycles], limit=limit)


def balanced_petals(n: int, petals: int) -> list[int] | None:
    """Petal lengths as equal as possible with ``sum(len - 1) = n - 1``; None if impossible."""
    if petals < 1 or n - 1 < 2 * petals:
        return None
    q, r = divmod(n - 1, petals)
    return [q + 1 + (1 if i >= petals - r else 0) for i in range(petals)]


def _noneq_parts(n: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    # 1-based: path 3..n, edge 12, two of {13, 23, 1n}
    fixed = [(v, v + 1) for v in range(2, n - 1)] + [(0, 1)]
    special = [(0, 2), (1, 2), (0, n - 1)]
    return fixed, special


def hamilton_path_noneq_size(n: int) -> int:
    return 2 ** (num_slots(n) - (n - 1))


def hamilton_path_noneq_family(n: int, limit: int = DEFAULT_LIMIT) -> Family:
    """A Hamilton-path-intersecting family of the same size as a spanning-tree upset that is not one.

    Members contain the path 2-3-...-(n-1), the edge 01, and at least two of 02, 12, 0(n-1).
    """
    if n < 4:
        raise InvalidArgument("the construction needs n >= 4")
    fixed, special = _noneq_parts(n)
    return relaxed_family(n, [special], fixed=fixed, limit=limit)


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def directed_cycle(order: Sequence[int], n: int, kind: Kind | str = Kind.DIRECTED) -> Graph:
    arcs = _cycle_edges(list(order))
    if Kind(kind) is Kind.ORIENTED:
        return OrientedGraph.from_arcs(n, arcs)
    return DirectedGraph.from_arcs(n, arcs)


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------


def verify_family(family: Family, prop: PropertySpec) -> tuple[bool, tuple[Graph, Graph] | None]:
    """Check every unordered pair, a member with itself included.

    Returns ``(ok, first_failing_pair)`` with pairs scanned in canonical order.
    """
    pred = predicate_on_key(family.kind, family.n, prop)
    keys = [graph_key(g) for g in family.members]
    for i, a in enumerate(keys):
        for j in range(i, len(keys)):
            if not pred(a & keys[j]):
                return False, (family.members[i], family.members[j])
    return True, None


def construction_for(kind: Kind | str, n: int, prop: PropertySpec, limit: int = DEFAULT_LIMIT) -> Family | None:
    """The standard construction for ``(kind, n, prop)``, if there is one."""
    kind = Kind(kind)
    if kind is Kind.DIRECTED and prop.kind == "strongly-connected":
        if n == 1:
            return Family.of([DirectedGraph(1)])
        if n == 2:
            return upset_of(DirectedGraph.from_arcs(2, [(0, 1), (1, 0)]), limit=limit)
        return upset_of(directed_cycle(range(n), n), limit=limit)
    if kind is Kind.ORIENTED and prop.kind == "strongly-connected":
        if n == 1:
            return Family.of([OrientedGraph(1)])
        if n == 2:
            return None
        return upset_of(directed_cycle(range(n), n, Kind.ORIENTED), limit=limit)
    if kind is not Kind.SIMPLE:
        return None
    if prop.kind == "connected":
        return upset_of(path_graph(n), limit=limit)
    if prop.kind in ("hamiltonian-cycle", "no-cutvertex", "two-edge-connected") and n >= 3:
        return hamilton_cycle_family(None, n, limit=limit)
    if prop.kind == "hamiltonian-path":
        return upset_of(path_graph(n), limit=limit)
    if prop.kind == "at-most-k-components":
        if prop.k >= n:
            return upset_of(SimpleGraph(n), limit=limit)
        if prop.k == 1:
            return upset_of(path_graph(n), limit=limit)
        if n >= 3 and prop.k == 2:
            return cycle_minus_one_family(None, n, limit=limit)
        lengths = balanced_petals(n, prop.k - 1)
        if lengths is not None:
            return flower_family(lengths, n, limit=limit)
    return None
