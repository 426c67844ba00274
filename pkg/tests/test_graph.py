import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from triedge.graph import (
    Graph,
    GraphFormatError,
    clique_number,
    independence_number,
    induced,
    non_triangular_subgraph,
    parse_graph6,
    to_graph6,
    tr_count,
    triangular_edges,
)
from triedge.search import enumerate_graphs

from conftest import efr_graph, graphs, petersen, random_graph


def brute_triangular(g):
    return [(u, v) for u, v in combinations(range(g.n), 2)
            if g.has_edge(u, v) and any(g.has_edge(u, w) and g.has_edge(v, w)
                                        for w in range(g.n) if w not in (u, v))]


def brute_clique(g):
    for size in range(g.n, 0, -1):
        for s in combinations(range(g.n), size):
            if all(g.has_edge(u, v) for u, v in combinations(s, 2)):
                return size
    return 0


def test_graph_rejects_asymmetry():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph(2, (0b01, 0))


def test_edge_count_and_order():
    g = Graph.from_edges(4, [(2, 3), (0, 2), (0, 1)])
    assert g.edge_count == 3
    assert g.edges() == [(0, 1), (0, 2), (2, 3)]


def test_triangular_examples():
    assert triangular_edges(Graph.complete(4)) == Graph.complete(4).edges()
    assert triangular_edges(Graph.complete_bipartite(1, 4)) == []
    g = efr_graph(5)
    assert g.edge_count == 7
    assert tr_count(g) == 5


def test_non_triangular_examples():
    c4 = Graph.cycle(4)
    assert non_triangular_subgraph(c4) == c4
    assert non_triangular_subgraph(Graph.complete(4)) == Graph.empty(4)
    g = efr_graph(5)
    rest = non_triangular_subgraph(g)
    assert rest.edge_count == 2
    # the surviving edges join the lone big-side vertex to the small side
    assert rest.edges() == [(2, 3), (2, 4)]


def test_triangular_matches_brute_force_on_all_small_graphs():
    for n in range(1, 7):
        for g in enumerate_graphs(n):
            assert triangular_edges(g) == brute_triangular(g)
            assert tr_count(g) + non_triangular_subgraph(g).edge_count == g.edge_count


@given(graphs(max_n=9))
def test_tr_count_partition(g):
    assert tr_count(g) + non_triangular_subgraph(g).edge_count == g.edge_count
    assert tr_count(g) == len(triangular_edges(g))


def test_clique_examples():
    assert clique_number(Graph.complete(5)) == 5
    assert clique_number(Graph.cycle(5)) == 2
    p = petersen()
    assert brute_clique(p) == 2
    assert clique_number(p) == 2


def test_independence_examples():
    g = efr_graph(5)
    assert independence_number(g, []) == 0
    assert independence_number(Graph.cycle(5)) == 2
    best = max(len(s) for r in range(6) for s in combinations(range(5), r)
               if not any(g.has_edge(u, v) for u, v in combinations(s, 2)))
    assert best == 2
    assert independence_number(g) == 2


def test_clique_complement_duality_small():
    for n in range(1, 8):
        for g in enumerate_graphs(n):
            assert independence_number(g.complement()) == clique_number(g)


@given(graphs(max_n=12))
@settings(max_examples=150)
def test_clique_matches_brute(g):
    assert clique_number(g) == brute_clique(g)


def test_induced_examples():
    g = petersen()
    assert induced(g, range(10)) == g
    assert induced(Graph.complete(4), [1, 3]) == Graph.complete(2)
    assert induced(Graph.cycle(5), [0, 1, 2]) == Graph.from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        induced(Graph.complete(3), [0, 5])


def test_graph6_known_strings():
    assert parse_graph6("@") == Graph.empty(1)
    assert to_graph6(Graph.complete(2)) == "A_"
    assert parse_graph6(to_graph6(Graph.complete(2))) == Graph.complete(2)
    # C5 in the reference encoding
    assert to_graph6(Graph.cycle(5)) == "Dhc"
    assert parse_graph6(">>graph6<<Dhc\n") == Graph.cycle(5)


def test_graph6_long_header():
    g = random_graph(64, 0.3, random.Random(5))
    s = to_graph6(g)
    assert s[0] == "~"
    assert parse_graph6(s) == g


def test_graph6_matches_networkx():
    nx = pytest.importorskip("networkx")
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 20)
        g = random_graph(n, rng.random(), rng)
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(g.edges())
        ref = nx.to_graph6_bytes(h, header=False).decode().strip()
        assert to_graph6(g) == ref


@pytest.mark.parametrize("text, offset", [
    ("", 0),
    ("D", 1),          # missing data bytes
    ("Dhcc", 3),       # trailing byte
    ("D h", 1),        # byte outside range
    ("?", 0),          # zero vertices
    ("Dhd", 2),        # nonzero padding
])
def test_graph6_errors(text, offset):
    with pytest.raises(GraphFormatError) as info:
        parse_graph6(text)
    assert info.value.offset == offset


def test_graph6_round_trip_random():
    rng = random.Random(0)
    for _ in range(10_000):
        n = rng.randint(1, 20)
        g = random_graph(n, rng.random(), rng)
        assert parse_graph6(to_graph6(g)) == g
