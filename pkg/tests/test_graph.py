import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irmatch.generators import (FIGURE1_BLUE, disjoint_copies, gen_appb_triangle,
                                gen_figure1, gen_long_chain)
from irmatch.graph import (Graph, GraphFormatError, add_altruist_backedges,
                           canonical_cycle, enumerate_cycles, format_graph,
                           induced_subgraph, parse_graph, to_undirected,
                           weakly_connected_components)

from conftest import brute_cycles

FIG1_TEXT = """# three chained 3-cycles
7 9
0 1
1 4
4 0
1 2
2 5
5 1
2 3
3 6
6 2
"""


@st.composite
def digraphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    edges = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return Graph(n, frozenset(edges))


def test_parse_figure1(fig1):
    g = parse_graph(FIG1_TEXT)
    assert g.vertex_count == 7 and len(g.edges) == 9
    assert g == fig1


def test_parse_empty():
    g = parse_graph("0 0\n")
    assert g.vertex_count == 0 and not g.edges


@pytest.mark.parametrize("text, lineno", [
    ("3 1\n3 3\n", 2),
    ("3 1\n1 1\n", 2),
    ("3 1\n0 7\n", 2),
    ("3 2\n0 1\n0 1\n", 3),
    ("three 1\n0 1\n", 1),
    ("3 1\n# c\n0 x\n", 3),
])
def test_parse_errors_carry_line(text, lineno):
    with pytest.raises(GraphFormatError) as err:
        parse_graph(text)
    assert err.value.lineno == lineno


def test_self_loop_reported_as_such():
    with pytest.raises(GraphFormatError, match="self-loop"):
        parse_graph("4 1\n3 3\n")


def test_roundtrip_normalises_edge_order(fig1):
    text = format_graph(fig1)
    assert parse_graph(text) == fig1
    assert format_graph(parse_graph(text)) == text
    shuffled = "7 9\n" + "\n".join(reversed(FIG1_TEXT.strip().splitlines()[2:])) + "\n"
    assert format_graph(parse_graph(shuffled)) == text


def test_roundtrip_altruist():
    g = gen_long_chain(18).graph
    text = format_graph(g)
    assert text.splitlines()[1] == "altruist 0"
    assert parse_graph(text) == g


def test_graph_invariants():
    with pytest.raises(ValueError):
        Graph(2, frozenset({(0, 0)}))
    with pytest.raises(ValueError):
        Graph(2, frozenset({(0, 2)}))
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 1), (0, 1)])
    with pytest.raises(ValueError):
        Graph(2, frozenset(), altruist=5)


def test_figure1_cycles(fig1):
    assert enumerate_cycles(fig1, 3) == [(0, 1, 4), (1, 2, 5), (2, 3, 6)]
    assert enumerate_cycles(fig1, 2) == []
    assert brute_cycles(fig1, 2) == set()


def test_smallest_cycle():
    assert enumerate_cycles(Graph.from_edges(2, [(0, 1), (1, 0)]), 2) == [(0, 1)]


def test_cap_must_be_two_or_more(fig1):
    with pytest.raises(ValueError):
        enumerate_cycles(fig1, 1)


def test_canonical_cycle_rotation():
    assert canonical_cycle([5, 2, 7]) == (2, 7, 5)
    assert canonical_cycle((0, 3)) == (0, 3)


@settings(max_examples=150, deadline=None)
@given(digraphs(), st.integers(2, 4))
def test_enumeration_matches_permutation_oracle(g, cap):
    cycles = enumerate_cycles(g, cap)
    assert len(cycles) == len(set(cycles))
    assert cycles == sorted(cycles)
    assert set(cycles) == brute_cycles(g, cap)


@settings(max_examples=100, deadline=None)
@given(digraphs(), st.integers(2, 4))
def test_cap_monotone(g, cap):
    assert set(enumerate_cycles(g, cap)) <= set(enumerate_cycles(g, cap + 1))


@settings(max_examples=100, deadline=None)
@given(digraphs(), st.data())
def test_subgraph_cycles_map_to_host(g, data):
    keep = data.draw(st.sets(st.integers(0, max(g.vertex_count - 1, 0)))
                     if g.vertex_count else st.just(set()))
    sub, id_map = induced_subgraph(g, keep)
    host = set(enumerate_cycles(g, 3))
    for c in enumerate_cycles(sub, 3):
        assert canonical_cycle([id_map[v] for v in c]) in host


@settings(max_examples=100, deadline=None)
@given(digraphs())
def test_undirected_edges_count_two_cycles(g):
    assert len(to_undirected(g).edges) == len(enumerate_cycles(g, 2))


def test_to_undirected_examples(fig1):
    ug = to_undirected(Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)]))
    assert ug.edges == {(0, 1)}
    assert to_undirected(fig1).edges == frozenset() and to_undirected(fig1).vertex_count == 7
    tri = to_undirected(gen_appb_triangle().graph)
    assert tri.edges == {(0, 1), (1, 2), (0, 2)}


def test_induced_subgraph_examples(fig1):
    sub, id_map = induced_subgraph(fig1, FIGURE1_BLUE)
    assert id_map == FIGURE1_BLUE
    assert enumerate_cycles(sub, 3) == [(0, 1, 2)]
    same, ident = induced_subgraph(fig1, range(7))
    assert same == fig1 and ident == tuple(range(7))
    empty, none = induced_subgraph(fig1, [])
    assert empty.vertex_count == 0 and none == ()
    with pytest.raises(ValueError):
        induced_subgraph(fig1, [9])


def test_components():
    copies = disjoint_copies(gen_figure1(), 50).graph
    comps = weakly_connected_components(copies)
    assert len(comps) == 50 and all(len(c) == 7 for c in comps)
    assert [c[0] for c in comps] == sorted(c[0] for c in comps)
    assert weakly_connected_components(gen_figure1().graph) == [tuple(range(7))]
    assert weakly_connected_components(Graph(3)) == [(0,), (1,), (2,)]


def test_altruist_backedges():
    g = gen_long_chain(18).graph
    h = add_altruist_backedges(g)
    d = g.altruist
    assert all((v, d) in h.edges for v in range(g.vertex_count) if v != d)
    assert len(h.edges) == len(g.edges) + g.vertex_count - 1

    alone = Graph(1, frozenset(), altruist=0)
    assert add_altruist_backedges(alone) == alone

    pair = add_altruist_backedges(Graph.from_edges(2, [(0, 1)], altruist=0))
    assert enumerate_cycles(pair, 2) == [(0, 1)]

    with pytest.raises(ValueError):
        add_altruist_backedges(Graph(2))
