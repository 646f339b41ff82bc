"""Exact maximum P-intersecting families via maximum cliques of the compatibility graph."""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .clique import CliqueEngine, SearchTimeout
from .constructions import Family, construction_for, verify_family
from .errors import CapacityError, InvalidArgument
from .graphs import Graph, Kind, PropertySpec, all_graphs, graph_key, num_slots, predicate_on_key, relabel

log = logging.getLogger(__name__)

DEFAULT_TIME_LIMIT = 600.0

# universe guards: 2^15 simple, 3^6 oriented, 4^3 directed
_GUARDS = {Kind.SIMPLE: 2**15, Kind.ORIENTED: 3**6, Kind.DIRECTED: 4**3}


def universe_size(kind: Kind | str, n: int) -> int:
    kind = Kind(kind)
    base = {Kind.SIMPLE: 2, Kind.ORIENTED: 3, Kind.DIRECTED: 4}[kind]
    return base ** num_slots(n)


def enumerate_universe(kind: Kind | str, n: int, prop: PropertySpec | None = None, force: bool = False) -> list[Graph]:
    """All graphs of the kind (optionally only those satisfying ``prop``), canonical order."""
    kind = Kind(kind)
    total = universe_size(kind, n)
    if total > _GUARDS[kind] and not force:
        raise CapacityError(f"{total} {kind.value} graphs on {n} vertices exceeds the guard {_GUARDS[kind]}; pass force")
    graphs = all_graphs(kind, n)
    if prop is None:
        return list(graphs)
    pred = predicate_on_key(kind, n, prop)
    return [g for g in graphs if pred(graph_key(g))]


@dataclass
class SearchOptions:
    threads: int = 1
    time_limit: float | None = DEFAULT_TIME_LIMIT
    symmetry: bool = False
    seed: bool = False
    all_maximum: bool = False
    force: bool = False


@dataclass
class SearchResult:
    kind: Kind
    n: int
    prop: PropertySpec
    max_size: int
    status: str
    witness: Family | None
    all_maximum: list[Family] | None = None
    universe: int = 0
    nodes: int = 0
    elapsed: float = 0.0
    bound_refs: list[dict] = field(default_factory=list)
    # max_size is exact even if a later stage (witness extraction) timed out
    optimum_proven: bool = False

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def to_dict(self, stats: bool = True) -> dict:
        out = {
            "kind": self.kind.value,
            "n": self.n,
            "property": self.prop.name,
            "max_size": self.max_size,
            "status": self.status,
            "optimum_proven": self.optimum_proven,
            "universe": self.universe,
            "witness": None if self.witness is None else self.witness.strings(),
            "bound_refs": self.bound_refs,
        }
        if self.all_maximum is not None:
            out["all_maximum"] = [f.strings() for f in self.all_maximum]
        if stats:
            out["stats"] = {"nodes": self.nodes, "elapsed_seconds": round(self.elapsed, 3)}
        return out


def known_bounds(kind: Kind | str, n: int, prop: PropertySpec) -> list[dict]:
    """Proven or conjectured upper bounds for comparison, as exact values."""
    kind = Kind(kind)
    m = num_slots(n)
    refs = []
    if kind is Kind.DIRECTED and prop.kind == "strongly-connected":
        refs.append({"name": "out-star coset bound", "value": 2 ** (2 * m - n), "proven": True})
    elif kind is Kind.ORIENTED and prop.kind == "strongly-connected" and n >= 3:
        refs.append({"name": "star projection bound", "value": 3 ** (m - n), "proven": True})
    elif kind is Kind.SIMPLE:
        if prop.kind in ("connected", "hamiltonian-path") or (prop.kind == "at-most-k-components" and prop.k == 1):
            refs.append({"name": "star coset bound", "value": 2 ** (m - (n - 1)), "proven": True})
        if prop.kind in ("hamiltonian-cycle", "no-cutvertex") and n >= 3:
            refs.append({"name": "vertex-deletion projection bound", "value": 2 ** (m - n), "proven": True})
        if prop.kind == "two-edge-connected" and n >= 3:
            refs.append({"name": "2-edge-connected conjecture", "value": 2 ** (m - n), "proven": False})
        if prop.kind == "at-most-k-components" and prop.k == 2 and n >= 3:
            refs.append({"name": "two-component conjecture", "value": (n + 1) * 2 ** (m - n), "proven": False})
        if prop.kind == "at-most-k-components" and prop.k == 3 and n % 2 == 1:
            value = Fraction((n + 3) ** 2, 8) * Fraction(2**m, 2**n)
            refs.append({"name": "three-component conjecture", "value": _frac_json(value), "proven": False})
    return refs


def _frac_json(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vertex_orbits(graphs: list[Graph], n: int) -> list[list[int]]:
    """Partition indices of ``graphs`` into orbits of the vertex-permutation group."""
    index = {g.to_string(): i for i, g in enumerate(graphs)}
    seen = [False] * len(graphs)
    perms = list(itertools.permutations(range(n)))
    orbits = []
    for i, g in enumerate(graphs):
        if seen[i]:
            continue
        orbit = set()
        for perm in perms:
            j = index.get(relabel(g, perm).to_string())
            if j is None:
                raise InvalidArgument("universe is not closed under relabelling")
            orbit.add(j)
        for j in orbit:
            seen[j] = True
        orbits.append(sorted(orbit))
    return orbits


class _Compat:
    """Compatibility graph of a property-filtered universe."""

    def __init__(self, kind: Kind, n: int, prop: PropertySpec, force: bool, deadline: float | None):
        self.vertices = enumerate_universe(kind, n, prop, force=force)
        pred = predicate_on_key(kind, n, prop)
        keys = [graph_key(g) for g in self.vertices]
        adj = [0] * len(keys)
        for i, a in enumerate(keys):
            if deadline is not None and time.monotonic() > deadline:
                raise SearchTimeout
            row = 0
            for j in range(i + 1, len(keys)):
                if pred(a & keys[j]):
                    row |= 1 << j
                    adj[j] |= 1 << i
            adj[i] |= row
        self.adj = adj
        self.index = {g.to_string(): i for i, g in enumerate(self.vertices)}

    def family(self, clique) -> Family:
        return Family.of([self.vertices[i] for i in clique])


def _check(kind: Kind | str, n: int, prop: PropertySpec) -> Kind:
    kind = Kind(kind)
    if not prop.applies_to(kind):
        raise InvalidArgument(f"property {prop.name} does not apply to {kind.value} graphs")
    return kind


def max_family(kind: Kind | str, n: int, prop: PropertySpec, options: SearchOptions | None = None) -> SearchResult:
    """Exact maximum P-intersecting family; the witness is the lexicographically smallest optimum.

    On timeout the status is ``timeout-lower-bound`` and the incumbent (a
    verified P-intersecting family) is reported.  If the maximum was proven
    but witness extraction ran out of time, ``optimum_proven`` stays True and
    the witness is the search's own optimum rather than the lexmin one.
    """
    options = options or SearchOptions()
    kind = _check(kind, n, prop)
    start = time.monotonic()
    deadline = None if options.time_limit is None else start + options.time_limit
    result = SearchResult(kind, n, prop, 0, "complete", None, bound_refs=known_bounds(kind, n, prop))
    try:
        compat = _Compat(kind, n, prop, options.force, deadline)
    except SearchTimeout:
        result.status = "timeout-lower-bound"
        seed = construction_for(kind, n, prop)
        if seed is not None and verify_family(seed, prop)[0]:
            result.witness, result.max_size = seed, len(seed)
        result.elapsed = time.monotonic() - start
        return result
    result.universe = len(compat.vertices)
    if not compat.vertices:
        result.witness = Family.of([], n, kind)
        result.all_maximum = [result.witness] if options.all_maximum else None
        result.optimum_proven = True
        result.elapsed = time.monotonic() - start
        return result

    remaining = None if deadline is None else max(deadline - time.monotonic(), 0.0)
    engine = CliqueEngine(compat.adj, time_limit=remaining)
    if options.seed:
        seed = construction_for(kind, n, prop)
        if seed is not None:
            idx = [compat.index.get(g.to_string()) for g in seed.members]
            if None not in idx and engine.is_clique(idx):
                engine.offer(idx)
                log.debug("seeded incumbent of size %d", len(idx))
    orbits = vertex_orbits(compat.vertices, n) if options.symmetry else None
    size, clique, complete = engine.max_clique(threads=options.threads, orbits=orbits)
    result.max_size = size
    if not complete:
        result.status = "timeout-lower-bound"
        result.witness = compat.family(clique)
    else:
        result.optimum_proven = True
        try:
            result.witness = compat.family(engine.lexmin_clique(size))
            if options.all_maximum:
                result.all_maximum = [compat.family(c) for c in engine.all_cliques(size)]
        except SearchTimeout:
            result.status = "timeout-lower-bound"
            if result.witness is None:
                result.witness = compat.family(clique)
    result.nodes = engine.nodes
    result.elapsed = time.monotonic() - start
    return result


def enumerate_maximum_families(kind: Kind | str, n: int, prop: PropertySpec, options: SearchOptions | None = None) -> list[Family]:
    options = options or SearchOptions()
    opts = SearchOptions(**{**options.__dict__, "all_maximum": True})
    res = max_family(kind, n, prop, opts)
    if not res.complete:
        raise TimeoutError(f"enumeration of maximum families did not finish ({res.status})")
    return res.all_maximum


# --------------------------------------------------------------------------
# conjectures
# --------------------------------------------------------------------------

CONJECTURES = {
    "two-edge-connected": PropertySpec("two-edge-connected"),
    "two-components": PropertySpec("at-most-k-components", 2),
    "three-components": PropertySpec("at-most-k-components", 3),
}


def conjectured_bound(which: str, n: int) -> Fraction:
    total = 2 ** comb(n, 2)
    if which == "two-edge-connected":
        return Fraction(total, 2**n)
    if which == "two-components":
        return Fraction((n + 1) * total, 2**n)
    if which == "three-components":
        return Fraction((n + 3) ** 2 * total, 8 * 2**n)
    raise InvalidArgument(f"unknown conjecture {which!r}")


@dataclass
class ConjectureReport:
    which: str
    n: int
    bound: Fraction
    construction_size: int | None
    search: SearchResult
    verdict: str
    note: str = ""

    def to_dict(self, stats: bool = True) -> dict:
        return {
            "conjecture": self.which,
            "n": self.n,
            "conjectured_bound": _frac_json(self.bound),
            "construction_size": self.construction_size,
            "search_value": self.search.max_size,
            "search_status": self.search.status,
            "optimum_proven": self.search.optimum_proven,
            "verdict": self.verdict,
            "note": self.note,
            "witness": None if self.search.witness is None else self.search.witness.strings(),
            **({"stats": {"nodes": self.search.nodes, "elapsed_seconds": round(self.search.elapsed, 3)}} if stats else {}),
        }


def conjecture_report(n: int, which: str, options: SearchOptions | None = None) -> ConjectureReport:
    """Compare conjectured bound, best construction, and exhaustive search.

    Verdicts: ``consistent`` (complete search within the bound),
    ``counterexample`` (a verified family beats the bound), ``open`` (search
    timed out below the bound), ``not-applicable`` (three components, even n).
    """
    if which not in CONJECTURES:
        raise InvalidArgument(f"unknown conjecture {which!r}; choose from {sorted(CONJECTURES)}")
    prop = CONJECTURES[which]
    bound = conjectured_bound(which, n)
    construction = construction_for(Kind.SIMPLE, n, prop)
    options = options or SearchOptions()
    res = max_family(Kind.SIMPLE, n, prop, options)
    if res.max_size > bound:
        verdict = "counterexample"
    elif res.complete or res.optimum_proven:
        verdict = "consistent"
    else:
        verdict = "open"
    note = ""
    if which == "three-components" and n % 2 == 0:
        verdict = "not-applicable"
        note = "stated for odd n only"
    if which == "three-components" and construction is not None and n >= 5:
        note = (note + "; " if note else "") + "flower construction"
    return ConjectureReport(which, n, bound, None if construction is None else len(construction), res, verdict, note)
