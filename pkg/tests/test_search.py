import itertools
import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from pintersect.certificates import star_span, verify_coset_disjointness
from pintersect.clique import CliqueEngine
from pintersect.constructions import Family, construction_for, hamilton_cycle_family, upset_of, verify_family
from pintersect.errors import CapacityError, InvalidArgument
from pintersect.graphs import PropertySpec, SimpleGraph, intersect
from pintersect.search import (
    SearchOptions,
    conjecture_report,
    conjectured_bound,
    enumerate_maximum_families,
    enumerate_universe,
    max_family,
    vertex_orbits,
)


# -- clique engine against brute force --------------------------------------------


def random_graph(n, p, seed):
    rng = random.Random(seed)
    adj = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


def brute_cliques(adj):
    n = len(adj)
    cliques = [()]
    for r in range(1, n + 1):
        layer = [c for c in itertools.combinations(range(n), r) if all(adj[a] >> b & 1 for a, b in itertools.combinations(c, 2))]
        if not layer:
            break
        cliques = layer
    return cliques  # all maximum cliques, lexicographic


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 13), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_engine_matches_brute_force(n, p, seed):
    adj = random_graph(n, p, seed)
    expected = brute_cliques(adj)
    eng = CliqueEngine(adj)
    size, clique, complete = eng.max_clique()
    assert complete and size == len(expected[0])
    assert eng.is_clique(clique) and len(clique) == size
    assert tuple(eng.lexmin_clique(size)) == expected[0]
    assert eng.all_cliques(size) == expected
    assert CliqueEngine(adj).max_clique(threads=3)[0] == size


def test_engine_orbits_on_vertex_transitive_graph():
    # circulant graph: i ~ j iff (i - j) mod 11 in {1, 2, 3}; all vertices in one orbit
    n = 11
    adj = [sum(1 << j for j in range(n) if (i - j) % n in (1, 2, 3, 8, 9, 10)) for i in range(n)]
    plain = CliqueEngine(adj).max_clique()[0]
    assert CliqueEngine(adj).max_clique(orbits=[list(range(n))])[0] == plain == 4


def test_engine_offer_and_empty():
    assert CliqueEngine([]).max_clique() == (0, [], True)
    eng = CliqueEngine([0b10, 0b01, 0])
    with pytest.raises(ValueError):
        eng.offer([0, 2])
    eng.offer([0, 1])
    assert eng.max_clique()[0] == 2


# -- universes ---------------------------------------------------------------------


def test_universe_examples():
    assert len(enumerate_universe("simple", 3)) == 8
    assert len(enumerate_universe("oriented", 3)) == 27
    strong = enumerate_universe("directed", 3, PropertySpec("strongly-connected"))
    brute = [g for g in enumerate_universe("directed", 3) if oracles.strongly_connected(oracles.arc_set(g.to_string(), 3), 3)]
    assert strong == brute and len(strong) == 18


def test_universe_guard():
    with pytest.raises(CapacityError):
        enumerate_universe("simple", 7)
    with pytest.raises(CapacityError):
        enumerate_universe("oriented", 5)
    with pytest.raises(CapacityError):
        enumerate_universe("directed", 4)


# -- maximum families --------------------------------------------------------------


def test_max_examples():
    assert max_family("simple", 4, PropertySpec("hamiltonian-cycle")).max_size == 4
    r3 = max_family("simple", 3, PropertySpec("hamiltonian-cycle"))
    assert r3.max_size == 1 and r3.witness.strings() == ["111"]
    assert max_family("oriented", 4, PropertySpec("strongly-connected")).max_size == 9


def test_property_kind_mismatch():
    with pytest.raises(InvalidArgument):
        max_family("simple", 3, PropertySpec("strongly-connected"))


def brute_max_families(universe, ok):
    """All maximum pairwise-compatible subsets by subset enumeration."""
    best, found = 0, []
    for r in range(1, len(universe) + 1):
        layer = [c for c in itertools.combinations(range(len(universe)), r) if all(ok(universe[a], universe[b]) for a, b in itertools.combinations(c, 2))]
        if not layer:
            break
        best, found = r, layer
    return best, found


def test_hamiltonian_n4_all_maximum_families():
    prop = PropertySpec("hamiltonian-cycle")
    fams = enumerate_maximum_families("simple", 4, prop)
    cycles = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]]
    assert sorted(f.strings() for f in fams) == sorted(hamilton_cycle_family(c, 4).strings() for c in cycles)
    universe = enumerate_universe("simple", 4, prop)
    ok = lambda a, b: oracles.ham_cycle(oracles.edge_set(intersect(a, b).to_string(), 4), 4)
    size, found = brute_max_families([g for g in universe], ok)
    assert size == 4 and len(found) == 3


def test_directed_n3_all_maximum_families():
    prop = PropertySpec("strongly-connected")
    fams = enumerate_maximum_families("directed", 3, prop)
    universe = enumerate_universe("directed", 3, prop)
    ok = lambda a, b: oracles.strongly_connected(oracles.arc_set(intersect(a, b).to_string(), 3), 3)
    size, found = brute_max_families(universe, ok)
    assert size == 8 == 4**3 // 2**3
    assert sorted(f.strings() for f in fams) == sorted(sorted(universe[i].to_string() for i in c) for c in found)
    from pintersect.constructions import directed_cycle

    tri = [upset_of(directed_cycle(o, 3)).strings() for o in ([0, 1, 2], [0, 2, 1])]
    assert all(t in [f.strings() for f in fams] for t in tri)


def test_connected_n4_non_uniqueness():
    prop = PropertySpec("connected")
    fams = enumerate_maximum_families("simple", 4, prop)
    assert all(len(f) == 8 for f in fams)
    non_upsets = 0
    for f in fams:
        assert verify_family(f, prop)[0]
        assert verify_coset_disjointness(f, star_span(4))
        common = SimpleGraph(4, (1 << 6) - 1)
        for g in f:
            common = intersect(common, g)
        if f.strings() != upset_of(common).strings():
            non_upsets += 1
    assert non_upsets >= 1


@pytest.mark.parametrize(
    "kind,n,prop",
    [
        ("simple", 4, "connected"),
        ("simple", 4, "hamiltonian-cycle"),
        ("simple", 4, "no-cutvertex"),
        ("simple", 4, "two-edge-connected"),
        ("simple", 4, "hamiltonian-path"),
        ("simple", 4, "at-most-2-components"),
        ("oriented", 3, "strongly-connected"),
        ("oriented", 4, "strongly-connected"),
        ("directed", 3, "strongly-connected"),
    ],
)
def test_search_invariants(kind, n, prop):
    p = PropertySpec.parse(prop)
    base = max_family(kind, n, p)
    assert base.complete and base.optimum_proven
    assert verify_family(base.witness, p) == (True, None)
    assert len(base.witness) == base.max_size
    cons = construction_for(kind, n, p)
    if cons is not None:
        assert base.max_size >= len(cons)
    for ref in base.bound_refs:
        if ref["proven"]:
            assert base.max_size <= ref["value"]
            assert cons is None or len(cons) == ref["value"]
    for opts in (SearchOptions(seed=True), SearchOptions(symmetry=True), SearchOptions(threads=2), SearchOptions(threads=8, symmetry=True, seed=True)):
        other = max_family(kind, n, p, opts)
        assert other.max_size == base.max_size
        assert other.witness == base.witness


def test_vertex_orbits_partition():
    universe = enumerate_universe("simple", 4, PropertySpec("hamiltonian-cycle"))
    orbits = vertex_orbits(universe, 4)
    # C4, C4 plus one chord, K4
    assert sorted(len(o) for o in orbits) == [1, 3, 6]


def test_timeout_degrades_to_verified_incumbent():
    prop = PropertySpec.parse("at-most-3-components")
    res = max_family("simple", 5, prop, SearchOptions(time_limit=0.2, seed=True))
    assert res.status == "timeout-lower-bound" and not res.optimum_proven
    assert res.witness is not None and len(res.witness) == res.max_size >= 256
    assert verify_family(res.witness, prop)[0]


def test_extraction_timeout_keeps_proven_optimum(monkeypatch):
    import pintersect.clique as clique_mod

    def slow(self, size):
        raise clique_mod.SearchTimeout

    monkeypatch.setattr(clique_mod.CliqueEngine, "lexmin_clique", slow)
    prop = PropertySpec("hamiltonian-cycle")
    res = max_family("simple", 4, prop)
    assert res.status == "timeout-lower-bound" and res.optimum_proven
    assert res.max_size == len(res.witness) == 4
    assert verify_family(res.witness, prop)[0]
    rep = conjecture_report(4, "two-edge-connected")
    assert rep.verdict == "consistent"


# -- conjectures ---------------------------------------------------------------------


def test_conjecture_two_edge_connected_n4():
    rep = conjecture_report(4, "two-edge-connected")
    assert rep.bound == 4 and rep.construction_size == 4
    assert rep.search.max_size == 4 and rep.verdict == "consistent"


def test_conjecture_two_components_n4():
    rep = conjecture_report(4, "two-components")
    assert rep.bound == 20 and rep.construction_size == 20
    # every graph with at least 4 of the 6 edges: any two share >= 2 edges
    assert rep.search.max_size == 22 and rep.verdict == "counterexample"
    assert rep.search.witness.strings() == sorted(s for s in (g.to_string() for g in enumerate_universe("simple", 4)) if s.count("1") >= 4)
    assert verify_family(rep.search.witness, PropertySpec.parse("at-most-2-components"))[0]


def test_conjecture_three_components_even_n():
    rep = conjecture_report(4, "three-components")
    assert rep.verdict == "not-applicable"


def test_conjecture_three_components_n5_construction():
    rep = conjecture_report(5, "three-components", SearchOptions(time_limit=1.0, seed=True))
    assert rep.bound == 256 and rep.construction_size == 256
    assert rep.search.max_size >= 256
    assert rep.verdict in ("open", "consistent", "counterexample")


def test_two_components_n5_family_beats_conjectured_bound():
    # witness of an exhaustive n=5 search (about 90 s with --symmetry --seed-construction)
    text = (Path(__file__).parent / "data" / "two_components_n5.txt").read_text()
    fam = Family.loads(text)
    assert len(fam) == 196 > conjectured_bound("two-components", 5) == 192
    assert verify_family(fam, PropertySpec.parse("at-most-2-components"))[0]
    edges = [oracles.edge_set(s, 5) for s in fam.strings()]
    assert all(oracles.components(a & b, range(5)) <= 2 for a, b in itertools.combinations_with_replacement(edges, 2))


def test_three_components_n5_family_beats_conjectured_bound():
    # incumbent of a 600 s n=5 search that did not finish; a lower bound only
    text = (Path(__file__).parent / "data" / "three_components_n5.txt").read_text()
    fam = Family.loads(text)
    assert len(fam) == 320 > conjectured_bound("three-components", 5) == 256
    assert verify_family(fam, PropertySpec.parse("at-most-3-components"))[0]
    edges = [oracles.edge_set(s, 5) for s in fam.strings()]
    assert all(oracles.components(a & b, range(5)) <= 3 for a, b in itertools.combinations_with_replacement(edges, 2))
