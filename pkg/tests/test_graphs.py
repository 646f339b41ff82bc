import pytest
from hypothesis import given, strategies as st

import oracles
from pintersect.errors import InvalidArgument, ParseError
from pintersect.graphs import (
    DirectedGraph,
    OrientedGraph,
    PropertySpec,
    SimpleGraph,
    all_graphs,
    component_count,
    contains_full_out_cut,
    edge_slot,
    has_cutvertex,
    has_hamilton_cycle,
    has_hamilton_path,
    intersect,
    is_connected,
    is_strongly_connected,
    is_two_edge_connected,
    num_slots,
    parse_graph,
    relabel,
    satisfies,
    slot_edge,
)


def S(n, edges):
    return SimpleGraph.from_edges(n, edges)


def cycle(n):
    return S(n, [(i, (i + 1) % n) for i in range(n)])


# -- slots ---------------------------------------------------------------------


def test_slot_examples():
    assert edge_slot(0, 1, 4) == 0
    assert edge_slot(2, 3, 4) == 5
    assert slot_edge(4, 4) == (1, 3)


@pytest.mark.parametrize("n", range(1, 17))
def test_slot_round_trip(n):
    seen = []
    for j in range(n):
        for i in range(j):
            s = edge_slot(i, j, n)
            assert slot_edge(s, n) == (i, j)
            seen.append(s)
    assert sorted(seen) == list(range(num_slots(n)))


@pytest.mark.parametrize("args", [(1, 1, 4), (0, 4, 4), (-1, 2, 4)])
def test_slot_errors(args):
    with pytest.raises(InvalidArgument):
        edge_slot(*args)


def test_slot_edge_out_of_range():
    with pytest.raises(InvalidArgument):
        slot_edge(6, 4)


# -- encodings -----------------------------------------------------------------


def test_directed_arc_positions():
    d = DirectedGraph.from_arcs(3, [(0, 1), (2, 0)])
    # slot{0,1}=0 low->high at 0; slot{0,2}=1, arc 2->0 is high->low at 3
    assert d.to_string() == "100100"
    assert sorted(d.arcs()) == [(0, 1), (2, 0)]


def test_oriented_trits_and_strings():
    g = OrientedGraph.from_arcs(3, [(0, 1), (2, 0), (1, 2)])
    assert g.trits() == (1, 2, 1)
    assert g.to_string() == "121"
    assert OrientedGraph.from_string("121", 3) == g
    assert g.to_directed() == DirectedGraph.from_arcs(3, [(0, 1), (2, 0), (1, 2)])


def test_oriented_rejects_both_directions():
    with pytest.raises(InvalidArgument):
        OrientedGraph(3, 1, 1)


def test_parse_errors_report_position():
    with pytest.raises(ParseError) as err:
        SimpleGraph.from_string("1021", 3)
    assert err.value.position == 2
    with pytest.raises(ParseError):
        SimpleGraph.from_string("11", 3)
    with pytest.raises(ParseError):
        OrientedGraph.from_string("013", 3)


@pytest.mark.parametrize("kind,n", [("simple", 4), ("oriented", 3), ("directed", 3)])
def test_string_round_trip_and_canonical_order(kind, n):
    graphs = list(all_graphs(kind, n))
    strings = [g.to_string() for g in graphs]
    assert strings == sorted(strings)
    assert len(set(strings)) == len(strings)
    assert all(parse_graph(s, n, kind) == g for s, g in zip(strings, graphs))


def test_bits_beyond_slots_rejected():
    with pytest.raises(InvalidArgument):
        SimpleGraph(3, 1 << 3)


# -- intersection --------------------------------------------------------------


def test_intersect_examples():
    a = SimpleGraph.from_string("111000", 4)
    b = SimpleGraph.from_string("101010", 4)
    assert intersect(a, b).to_string() == "101000"
    x = OrientedGraph.from_string("120", 3)
    y = OrientedGraph.from_string("110", 3)
    assert intersect(x, y).to_string() == "100"


def test_intersect_mismatch():
    with pytest.raises(InvalidArgument):
        intersect(SimpleGraph(3), SimpleGraph(4))
    with pytest.raises(InvalidArgument):
        intersect(SimpleGraph(3), DirectedGraph(3))


def _graph_strategy(kind, n):
    m = num_slots(n)
    if kind == "simple":
        return st.integers(0, 2**m - 1).map(lambda b: SimpleGraph(n, b))
    if kind == "directed":
        return st.integers(0, 4**m - 1).map(lambda b: DirectedGraph(n, b))
    return st.lists(st.integers(0, 2), min_size=m, max_size=m).map(lambda t: OrientedGraph.from_trits(n, t))


@pytest.mark.parametrize("kind", ["simple", "oriented", "directed"])
@given(data=st.data())
def test_intersect_laws(kind, data):
    gs = _graph_strategy(kind, 5)
    a, b, c = data.draw(gs), data.draw(gs), data.draw(gs)
    assert intersect(a, a) == a
    assert intersect(a, b) == intersect(b, a)
    assert intersect(intersect(a, b), c) == intersect(a, intersect(b, c))


# -- predicate examples --------------------------------------------------------


def test_component_examples():
    assert component_count(SimpleGraph(4)) == 4
    assert component_count(S(4, [(0, 1), (1, 2)])) == 2
    assert component_count(SimpleGraph.complete(4)) == 1


def test_connected_examples():
    assert is_connected(S(5, [(0, j) for j in range(1, 5)]))
    assert not is_connected(SimpleGraph(2))
    assert is_connected(SimpleGraph(1))


def test_strong_examples():
    assert is_strongly_connected(DirectedGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)]))
    assert not is_strongly_connected(DirectedGraph.from_arcs(2, [(0, 1)]))
    assert is_strongly_connected(DirectedGraph.from_arcs(2, [(0, 1), (1, 0)]))
    assert is_strongly_connected(OrientedGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)]))
    with pytest.raises(InvalidArgument):
        is_strongly_connected(SimpleGraph(3))


def test_hamilton_cycle_examples():
    assert has_hamilton_cycle(S(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))
    g = S(4, [(0, 2), (0, 3), (1, 3)])  # K4 minus 01, 12, 23
    assert has_hamilton_cycle(g) == oracles.ham_cycle(oracles.edge_set(g.to_string(), 4), 4) is False
    assert not has_hamilton_cycle(S(5, [(0, 1), (1, 2), (2, 3), (3, 1), (2, 4), (0, 2)]))  # vertex 4 has degree 1
    assert has_hamilton_cycle(SimpleGraph.complete(3))
    assert not has_hamilton_cycle(S(3, [(0, 1), (1, 2)]))
    assert not has_hamilton_cycle(SimpleGraph.complete(2))


def test_hamilton_path_examples():
    assert has_hamilton_path(S(4, [(0, 1), (1, 2), (2, 3)]))
    assert not has_hamilton_path(S(4, [(0, 1), (0, 2), (0, 3)]))
    assert not has_hamilton_path(S(4, [(0, 1), (2, 3)]))
    assert has_hamilton_path(SimpleGraph(1))


def test_cutvertex_examples():
    assert has_cutvertex(S(3, [(0, 1), (1, 2)]))
    assert not has_cutvertex(SimpleGraph.complete(3))
    assert not has_cutvertex(cycle(4))
    assert not has_cutvertex(SimpleGraph.complete(2))
    # disconnected: path 0-1-2 plus isolated 3, vertex 1 still separates
    assert has_cutvertex(S(4, [(0, 1), (1, 2)]))
    assert not has_cutvertex(S(4, [(0, 1), (1, 2), (0, 2)]))


def test_two_edge_connected_examples():
    assert all(is_two_edge_connected(cycle(n)) for n in range(3, 8))
    assert not is_two_edge_connected(S(5, [(0, 1), (1, 2), (1, 3), (3, 4)]))
    bowtie = S(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert is_two_edge_connected(bowtie)


def test_satisfies_examples():
    assert satisfies(cycle(4), PropertySpec("hamiltonian-cycle"))
    assert satisfies(SimpleGraph(3), PropertySpec.parse("at-most-3-components"))
    assert satisfies(OrientedGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)]), PropertySpec("strongly-connected"))


def test_satisfies_kind_mismatch():
    with pytest.raises(InvalidArgument):
        satisfies(SimpleGraph(3), PropertySpec("strongly-connected"))
    with pytest.raises(InvalidArgument):
        satisfies(DirectedGraph(3), PropertySpec("connected"))


def test_property_parsing():
    assert PropertySpec.parse("at-most-k-components", 2) == PropertySpec("at-most-k-components", 2)
    assert PropertySpec.parse("two-components").k == 2
    assert PropertySpec.parse("hamiltonian").kind == "hamiltonian-cycle"
    with pytest.raises(InvalidArgument):
        PropertySpec("at-most-k-components", 0)
    with pytest.raises(InvalidArgument):
        PropertySpec("bogus")
    with pytest.raises(InvalidArgument):
        PropertySpec("connected", 2)


def test_no_cutvertex_is_compound():
    p = PropertySpec("no-cutvertex")
    assert satisfies(cycle(4), p)
    assert not satisfies(S(4, [(0, 1), (1, 2), (0, 2)]), p)  # no cutvertex, but disconnected


def test_full_out_cut_examples():
    out0 = DirectedGraph.from_arcs(4, [(0, j) for j in range(1, 4)])
    assert contains_full_out_cut(out0, {0})
    assert not contains_full_out_cut(DirectedGraph.from_arcs(3, [(0, 1)]), {0})
    full = DirectedGraph.complete(4)
    assert all(contains_full_out_cut(full, a) for a in range(1, 15))
    with pytest.raises(InvalidArgument):
        contains_full_out_cut(full, set())
    with pytest.raises(InvalidArgument):
        contains_full_out_cut(full, {0, 1, 2, 3})


def test_relabel():
    g = S(4, [(0, 1), (1, 2)])
    assert relabel(g, [3, 2, 1, 0]) == S(4, [(3, 2), (2, 1)])
    o = OrientedGraph.from_arcs(3, [(0, 1)])
    assert relabel(o, [1, 0, 2]) == OrientedGraph.from_arcs(3, [(1, 0)])


# -- exhaustive invariants against the oracles ----------------------------------


@pytest.mark.parametrize("n", range(1, 6))
def test_simple_predicates_match_oracles(n):
    for g in all_graphs("simple", n):
        e = oracles.edge_set(g.to_string(), n)
        cc = oracles.components(e, range(n))
        assert component_count(g) == cc
        assert is_connected(g) == (cc == 1)
        assert has_hamilton_cycle(g) == oracles.ham_cycle(e, n), g
        assert has_hamilton_path(g) == oracles.ham_path(e, n), g
        assert has_cutvertex(g) == oracles.cutvertex(e, n), g
        assert is_two_edge_connected(g) == oracles.two_edge_connected(e, n), g


@pytest.mark.parametrize("n", range(3, 6))
def test_implication_chain(n):
    for g in all_graphs("simple", n):
        if has_hamilton_cycle(g):
            assert is_connected(g) and not has_cutvertex(g)
            assert has_hamilton_path(g)
        if is_connected(g) and not has_cutvertex(g):
            assert is_two_edge_connected(g)
        if is_two_edge_connected(g):
            assert is_connected(g)


@pytest.mark.parametrize("kind,n", [("directed", 1), ("directed", 2), ("directed", 3), ("oriented", 3), ("oriented", 4)])
def test_strong_matches_oracle(kind, n):
    decode = oracles.arc_set if kind == "directed" else oracles.oriented_arc_set
    for g in all_graphs(kind, n):
        assert is_strongly_connected(g) == oracles.strongly_connected(decode(g.to_string(), n), n), g


@pytest.mark.parametrize("kind,n", [("directed", 2), ("directed", 3), ("oriented", 3), ("oriented", 4)])
def test_strong_graphs_cross_every_cut(kind, n):
    for g in all_graphs(kind, n):
        if not is_strongly_connected(g):
            continue
        arcs = set(g.to_directed().arcs() if kind == "oriented" else g.arcs())
        for mask in range(1, 2**n - 1):
            side = {v for v in range(n) if mask >> v & 1}
            assert any(u in side and v not in side for u, v in arcs)
            assert any(v in side and u not in side for u, v in arcs)
