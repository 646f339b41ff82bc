"""Graph encodings on the vertex set {0, ..., n-1} and the intersection predicates.

Three kinds of graph are supported, all spanning subgraphs of the complete
(di)graph on ``n`` labelled vertices:

* ``SimpleGraph``: one bit per unordered pair.
* ``OrientedGraph``: one trit per unordered pair (0 absent, 1 arc low->high,
  2 arc high->low).
* ``DirectedGraph``: one bit per ordered pair; both arcs of a pair may be present.

Unordered pairs are numbered in colex order, ``slot(i, j) = j*(j-1)/2 + i`` for
``i < j``.  The arc ``u -> v`` of a directed graph sits at position
``2*slot(u, v) + (0 if u < v else 1)``.

Serialization is a digit string in slot order with slot 0 leftmost; canonical
family order is ascending by that string.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

from .errors import InvalidArgument, ParseError

MAX_N = 16


class Kind(str, enum.Enum):
    SIMPLE = "simple"
    ORIENTED = "oriented"
    DIRECTED = "directed"


def num_slots(n: int) -> int:
    return n * (n - 1) // 2


def _check_n(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise InvalidArgument(f"vertex count must be in [1, {MAX_N}], got {n!r}")


def edge_slot(i: int, j: int, n: int) -> int:
    """Slot index of the unordered pair {i, j}; the pair may be given in either order."""
    _check_n(n)
    if i == j:
        raise InvalidArgument(f"loop {i}-{j} has no slot")
    if not (0 <= i < n and 0 <= j < n):
        raise InvalidArgument(f"vertex out of range for n={n}: ({i}, {j})")
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def slot_edge(s: int, n: int) -> tuple[int, int]:
    _check_n(n)
    if not 0 <= s < num_slots(n):
        raise InvalidArgument(f"slot {s} out of range for n={n}")
    return _slot_table(n)[s]


@lru_cache(maxsize=None)
def _slot_table(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for j in range(n) for i in range(j))


def arc_position(u: int, v: int, n: int) -> int:
    return 2 * edge_slot(u, v, n) + (0 if u < v else 1)


def _full_mask(width: int) -> int:
    return (1 << width) - 1


# --------------------------------------------------------------------------
# graph values
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    bits: int = 0

    kind = Kind.SIMPLE

    def __post_init__(self):
        _check_n(self.n)
        if self.bits < 0 or self.bits >> num_slots(self.n):
            raise InvalidArgument(f"bits beyond C({self.n},2) slots")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
        bits = 0
        for i, j in edges:
            bits |= 1 << edge_slot(i, j, n)
        return cls(n, bits)

    @classmethod
    def complete(cls, n: int) -> SimpleGraph:
        return cls(n, _full_mask(num_slots(n)))

    @classmethod
    def from_string(cls, s: str, n: int) -> SimpleGraph:
        digits = _parse_digits(s, num_slots(n), "01")
        return cls(n, sum(1 << k for k, d in enumerate(digits) if d))

    def to_string(self) -> str:
        return "".join("1" if self.bits >> k & 1 else "0" for k in range(num_slots(self.n)))

    def edges(self) -> list[tuple[int, int]]:
        table = _slot_table(self.n)
        return [table[k] for k in _iter_bits(self.bits)]

    @property
    def vector(self) -> int:
        return self.bits

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def __str__(self):
        return self.to_string()


@dataclass(frozen=True)
class DirectedGraph:
    n: int
    bits: int = 0

    kind = Kind.DIRECTED

    def __post_init__(self):
        _check_n(self.n)
        if self.bits < 0 or self.bits >> (2 * num_slots(self.n)):
            raise InvalidArgument(f"bits beyond 2*C({self.n},2) arc positions")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> DirectedGraph:
        bits = 0
        for u, v in arcs:
            bits |= 1 << arc_position(u, v, n)
        return cls(n, bits)

    @classmethod
    def complete(cls, n: int) -> DirectedGraph:
        return cls(n, _full_mask(2 * num_slots(n)))

    @classmethod
    def from_string(cls, s: str, n: int) -> DirectedGraph:
        digits = _parse_digits(s, 2 * num_slots(n), "01")
        return cls(n, sum(1 << k for k, d in enumerate(digits) if d))

    def to_string(self) -> str:
        return "".join("1" if self.bits >> k & 1 else "0" for k in range(2 * num_slots(self.n)))

    def arcs(self) -> list[tuple[int, int]]:
        table = _slot_table(self.n)
        out = []
        for p in _iter_bits(self.bits):
            i, j = table[p >> 1]
            out.append((i, j) if p & 1 == 0 else (j, i))
        return out

    @property
    def vector(self) -> int:
        return self.bits

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def __str__(self):
        return self.to_string()


@dataclass(frozen=True)
class OrientedGraph:
    """Oriented graph stored as two slot masks: ``fwd`` for trit 1, ``bwd`` for trit 2."""

    n: int
    fwd: int = 0
    bwd: int = 0

    kind = Kind.ORIENTED

    def __post_init__(self):
        _check_n(self.n)
        m = num_slots(self.n)
        if self.fwd < 0 or self.bwd < 0 or (self.fwd | self.bwd) >> m:
            raise InvalidArgument(f"trits beyond C({self.n},2) slots")
        if self.fwd & self.bwd:
            raise InvalidArgument("a pair cannot carry both directions in an oriented graph")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> OrientedGraph:
        fwd = bwd = 0
        for u, v in arcs:
            bit = 1 << edge_slot(u, v, n)
            if u < v:
                fwd |= bit
            else:
                bwd |= bit
        return cls(n, fwd, bwd)

    @classmethod
    def from_trits(cls, n: int, trits: Sequence[int]) -> OrientedGraph:
        if len(trits) != num_slots(n):
            raise InvalidArgument(f"expected {num_slots(n)} trits, got {len(trits)}")
        fwd = bwd = 0
        for k, t in enumerate(trits):
            if t == 1:
                fwd |= 1 << k
            elif t == 2:
                bwd |= 1 << k
            elif t != 0:
                raise InvalidArgument(f"trit {t!r} at slot {k}")
        return cls(n, fwd, bwd)

    @classmethod
    def from_string(cls, s: str, n: int) -> OrientedGraph:
        return cls.from_trits(n, _parse_digits(s, num_slots(n), "012"))

    def trits(self) -> tuple[int, ...]:
        return tuple(
            1 if self.fwd >> k & 1 else 2 if self.bwd >> k & 1 else 0
            for k in range(num_slots(self.n))
        )

    def to_string(self) -> str:
        return "".join(map(str, self.trits()))

    def arcs(self) -> list[tuple[int, int]]:
        table = _slot_table(self.n)
        out = []
        for k in range(num_slots(self.n)):
            i, j = table[k]
            if self.fwd >> k & 1:
                out.append((i, j))
            elif self.bwd >> k & 1:
                out.append((j, i))
        return out

    def to_directed(self) -> DirectedGraph:
        return DirectedGraph(self.n, _spread(self.fwd) | _spread(self.bwd) << 1)

    @property
    def size(self) -> int:
        return (self.fwd | self.bwd).bit_count()

    def __str__(self):
        return self.to_string()


Graph = Union[SimpleGraph, OrientedGraph, DirectedGraph]

GRAPH_TYPES = {Kind.SIMPLE: SimpleGraph, Kind.ORIENTED: OrientedGraph, Kind.DIRECTED: DirectedGraph}


def parse_graph(s: str, n: int, kind: Kind | str) -> Graph:
    return GRAPH_TYPES[Kind(kind)].from_string(s, n)


def _parse_digits(s: str, length: int, alphabet: str) -> list[int]:
    for pos, ch in enumerate(s):
        if ch not in alphabet:
            raise ParseError(f"unexpected character {ch!r}, allowed {alphabet!r}", pos)
    if len(s) != length:
        raise ParseError(f"expected {length} digits, got {len(s)}", min(len(s), length))
    return [int(ch) for ch in s]


def _iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@lru_cache(maxsize=1 << 16)
def _spread(x: int) -> int:
    """Move bit k to bit 2k."""
    out = 0
    for k in _iter_bits(x):
        out |= 1 << (2 * k)
    return out


def all_graphs(kind: Kind | str, n: int) -> Iterator[Graph]:
    """Every graph of the kind on n vertices, in canonical (digit-string) order."""
    kind = Kind(kind)
    m = num_slots(n)
    if kind is Kind.SIMPLE:
        for digits in itertools.product((0, 1), repeat=m):
            yield SimpleGraph(n, sum(1 << k for k, d in enumerate(digits) if d))
    elif kind is Kind.DIRECTED:
        for digits in itertools.product((0, 1), repeat=2 * m):
            yield DirectedGraph(n, sum(1 << k for k, d in enumerate(digits) if d))
    else:
        for trits in itertools.product((0, 1, 2), repeat=m):
            yield OrientedGraph.from_trits(n, trits)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Image of g under the vertex map ``v -> perm[v]``."""
    if isinstance(g, SimpleGraph):
        return SimpleGraph.from_edges(g.n, ((perm[i], perm[j]) for i, j in g.edges()))
    if isinstance(g, DirectedGraph):
        return DirectedGraph.from_arcs(g.n, ((perm[u], perm[v]) for u, v in g.arcs()))
    return OrientedGraph.from_arcs(g.n, ((perm[u], perm[v]) for u, v in g.arcs()))


def is_subgraph(h: Graph, g: Graph) -> bool:
    _check_same(h, g)
    return intersect(h, g) == h


# --------------------------------------------------------------------------
# intersection
# --------------------------------------------------------------------------


def _check_same(g: Graph, h: Graph) -> None:
    if type(g) is not type(h):
        raise InvalidArgument(f"cannot combine {g.kind.value} and {h.kind.value} graphs")
    if g.n != h.n:
        raise InvalidArgument(f"vertex counts differ: {g.n} vs {h.n}")


def intersect(g: Graph, h: Graph) -> Graph:
    """Common subgraph; an oriented arc survives only with the same direction in both."""
    _check_same(g, h)
    if isinstance(g, OrientedGraph):
        return OrientedGraph(g.n, g.fwd & h.fwd, g.bwd & h.bwd)
    return type(g)(g.n, g.bits & h.bits)


# --------------------------------------------------------------------------
# low-level predicates on (n, mask) pairs, cached for the search loops
# --------------------------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def _simple_adj(n: int, bits: int) -> tuple[int, ...]:
    adj = [0] * n
    table = _slot_table(n)
    for k in _iter_bits(bits):
        i, j = table[k]
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return tuple(adj)


@lru_cache(maxsize=1 << 18)
def _directed_out(n: int, bits: int) -> tuple[int, ...]:
    out = [0] * n
    table = _slot_table(n)
    for p in _iter_bits(bits):
        i, j = table[p >> 1]
        if p & 1:
            out[j] |= 1 << i
        else:
            out[i] |= 1 << j
    return tuple(out)


def _reach(adj: Sequence[int], start: int, allowed: int) -> int:
    seen = frontier = (1 << start) & allowed
    while frontier:
        nxt = 0
        for v in _iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def _count_components(adj: Sequence[int], vertices: int) -> int:
    count = 0
    while vertices:
        start = (vertices & -vertices).bit_length() - 1
        vertices &= ~_reach(adj, start, vertices)
        count += 1
    return count


@lru_cache(maxsize=1 << 18)
def _components(n: int, bits: int) -> int:
    return _count_components(_simple_adj(n, bits), _full_mask(n))


@lru_cache(maxsize=1 << 18)
def _ham_cycle(n: int, bits: int) -> bool:
    if n <= 2:
        return False
    adj = _simple_adj(n, bits)
    if any(a.bit_count() < 2 for a in adj) or _components(n, bits) != 1:
        return False
    # reach[S]: endpoints v of paths from vertex 0 covering exactly S
    full = _full_mask(n)
    reach = [0] * (1 << n)
    reach[1] = 1
    for s in range(1, full + 1, 2):
        ends = reach[s]
        for v in _iter_bits(ends):
            for w in _iter_bits(adj[v] & ~s):
                reach[s | 1 << w] |= 1 << w
    return bool(reach[full] & adj[0])


@lru_cache(maxsize=1 << 18)
def _ham_path(n: int, bits: int) -> bool:
    if n == 1:
        return True
    adj = _simple_adj(n, bits)
    if _components(n, bits) != 1:
        return False
    if sum(1 for a in adj if a.bit_count() == 1) > 2:
        return False
    full = _full_mask(n)
    reach = [0] * (1 << n)
    for v in range(n):
        reach[1 << v] = 1 << v
    for s in range(1, full + 1):
        for v in _iter_bits(reach[s]):
            for w in _iter_bits(adj[v] & ~s):
                reach[s | 1 << w] |= 1 << w
    return reach[full] != 0


@lru_cache(maxsize=1 << 18)
def _cutvertex(n: int, bits: int) -> bool:
    if n <= 2:
        return False
    adj = _simple_adj(n, bits)
    full = _full_mask(n)
    base = _count_components(adj, full)
    return any(_count_components(adj, full & ~(1 << v)) > base for v in range(n))


@lru_cache(maxsize=1 << 18)
def _two_edge_connected(n: int, bits: int) -> bool:
    if _components(n, bits) != 1:
        return False
    return all(_components(n, bits & ~(1 << k)) == 1 for k in _iter_bits(bits))


@lru_cache(maxsize=1 << 18)
def _strong(n: int, bits: int) -> bool:
    out = _directed_out(n, bits)
    inn = [0] * n
    for u in range(n):
        for v in _iter_bits(out[u]):
            inn[v] |= 1 << u
    full = _full_mask(n)
    return _reach(out, 0, full) == full and _reach(inn, 0, full) == full


# --------------------------------------------------------------------------
# public predicates
# --------------------------------------------------------------------------


def _require_simple(g: Graph) -> SimpleGraph:
    if not isinstance(g, SimpleGraph):
        raise InvalidArgument(f"predicate needs a simple graph, got {g.kind.value}")
    return g


def _as_directed(d: Graph) -> DirectedGraph:
    if isinstance(d, OrientedGraph):
        return d.to_directed()
    if isinstance(d, DirectedGraph):
        return d
    raise InvalidArgument("predicate needs a directed or oriented graph")


def component_count(g: SimpleGraph) -> int:
    """Components of the spanning subgraph; isolated vertices count."""
    g = _require_simple(g)
    return _components(g.n, g.bits)


def is_connected(g: SimpleGraph) -> bool:
    return component_count(g) == 1


def is_strongly_connected(d: DirectedGraph | OrientedGraph) -> bool:
    d = _as_directed(d)
    return _strong(d.n, d.bits)


def has_hamilton_cycle(g: SimpleGraph) -> bool:
    """Spanning-cycle test by DP over (subset, endpoint); false for n <= 2."""
    g = _require_simple(g)
    return _ham_cycle(g.n, g.bits)


def has_hamilton_path(g: SimpleGraph) -> bool:
    g = _require_simple(g)
    return _ham_path(g.n, g.bits)


def has_cutvertex(g: SimpleGraph) -> bool:
    """True iff deleting some vertex raises the component count (on the remaining vertices).

    For connected graphs this is the usual notion.  Isolated vertices never
    qualify, since deleting one lowers the count.  Always false for n <= 2.
    """
    g = _require_simple(g)
    return _cutvertex(g.n, g.bits)


def is_two_edge_connected(g: SimpleGraph) -> bool:
    g = _require_simple(g)
    return _two_edge_connected(g.n, g.bits)


def contains_full_out_cut(d: DirectedGraph | OrientedGraph, subset: Iterable[int] | int) -> bool:
    """Whether every arc from ``subset`` to its complement is present.

    ``subset`` is an iterable of vertices or a vertex bitmask.
    """
    d = _as_directed(d)
    mask = subset if isinstance(subset, int) else sum(1 << v for v in set(subset))
    full = _full_mask(d.n)
    if mask <= 0 or mask >= full or mask & ~full:
        raise InvalidArgument("vertex subset must be nonempty and proper")
    need = out_cut_mask(d.n, mask)
    return d.bits & need == need


@lru_cache(maxsize=None)
def out_cut_mask(n: int, subset_mask: int) -> int:
    """Directed-graph bit mask of all arcs leaving ``subset_mask``."""
    need = 0
    for u in range(n):
        if subset_mask >> u & 1:
            for v in range(n):
                if not subset_mask >> v & 1:
                    need |= 1 << arc_position(u, v, n)
    return need


# --------------------------------------------------------------------------
# properties
# --------------------------------------------------------------------------

PROPERTY_KINDS = (
    "connected",
    "strongly-connected",
    "hamiltonian-cycle",
    "hamiltonian-path",
    "no-cutvertex",
    "two-edge-connected",
    "at-most-k-components",
)

_ALIASES = {
    "hamiltonian": "hamiltonian-cycle",
    "strong": "strongly-connected",
    "2-edge-connected": "two-edge-connected",
    "two-components": "at-most-2-components",
    "three-components": "at-most-3-components",
}


@dataclass(frozen=True)
class PropertySpec:
    kind: str
    k: int | None = None

    def __post_init__(self):
        if self.kind not in PROPERTY_KINDS:
            raise InvalidArgument(f"unknown property {self.kind!r}")
        if self.kind == "at-most-k-components":
            if self.k is None or self.k < 1:
                raise InvalidArgument("at-most-k-components needs k >= 1")
        elif self.k is not None:
            raise InvalidArgument(f"property {self.kind!r} takes no k")

    @classmethod
    def parse(cls, text: str, k: int | None = None) -> PropertySpec:
        """Accepts names like ``connected``, ``at-most-2-components`` or ``at-most-k-components`` with k."""
        text = _ALIASES.get(text, text)
        if text.startswith("at-most-") and text.endswith("-components"):
            middle = text[len("at-most-"):-len("-components")]
            if middle != "k":
                try:
                    k = int(middle)
                except ValueError:
                    raise InvalidArgument(f"bad component bound in {text!r}") from None
            return cls("at-most-k-components", k)
        return cls(text)

    @property
    def name(self) -> str:
        if self.kind == "at-most-k-components":
            return f"at-most-{self.k}-components"
        return self.kind

    def applies_to(self, kind: Kind | str) -> bool:
        kind = Kind(kind)
        if self.kind == "strongly-connected":
            return kind is not Kind.SIMPLE
        return kind is Kind.SIMPLE

    def __str__(self):
        return self.name


def satisfies(g: Graph, prop: PropertySpec) -> bool:
    if not prop.applies_to(g.kind):
        raise InvalidArgument(f"property {prop.name} does not apply to {g.kind.value} graphs")
    return predicate_on_key(g.kind, g.n, prop)(graph_key(g))


def graph_key(g: Graph) -> int:
    """Integer handle used by the cached predicates (directed bits for oriented graphs)."""
    if isinstance(g, OrientedGraph):
        return g.to_directed().bits
    return g.bits


def predicate_on_key(kind: Kind | str, n: int, prop: PropertySpec):
    """Return ``f(key) -> bool`` evaluating ``prop`` on a graph given by ``graph_key``."""
    kind = Kind(kind)
    if not prop.applies_to(kind):
        raise InvalidArgument(f"property {prop.name} does not apply to {kind.value} graphs")
    if prop.kind == "strongly-connected":
        return lambda key: _strong(n, key)
    if prop.kind == "connected":
        return lambda key: _components(n, key) == 1
    if prop.kind == "hamiltonian-cycle":
        return lambda key: _ham_cycle(n, key)
    if prop.kind == "hamiltonian-path":
        return lambda key: _ham_path(n, key)
    if prop.kind == "no-cutvertex":
        return lambda key: _components(n, key) == 1 and not _cutvertex(n, key)
    if prop.kind == "two-edge-connected":
        return lambda key: _two_edge_connected(n, key)
    k = prop.k
    return lambda key: _components(n, key) <= k
