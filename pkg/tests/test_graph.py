import itertools

import pytest
from hypothesis import given, strategies as st

from chipfire.graph import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    Graph,
    GraphError,
    InvalidVertexError,
    MalformedLineError,
    SelfLoopError,
    connected_graphs,
    degree,
    distance,
    generate,
    parse_graph,
    serialize_graph,
    trees,
)

nx = pytest.importorskip("networkx")

P3 = Graph(3, [(0, 1), (1, 2)])
C4 = generate("cycle", 4)


def test_degree_examples():
    assert degree(P3, 1) == 2
    assert degree(P3, 0) == 1
    assert [degree(C4, v) for v in range(4)] == [2, 2, 2, 2]


def test_degree_invalid_vertex():
    with pytest.raises(InvalidVertexError):
        degree(P3, 3)
    with pytest.raises(InvalidVertexError):
        degree(P3, -1)


def test_distance_examples():
    assert distance(P3, 0, 2) == 2
    assert distance(C4, 0, 2) == 2
    for v in range(4):
        assert distance(C4, v, v) == 0


def test_generate_examples():
    c6 = generate("cycle", 6)
    assert c6.n == 6 and c6.m == 6
    k4 = generate("complete", 4)
    assert k4.m == 6
    t = generate("random_tree", 10, seed=1)
    assert t.m == 9 and t.is_tree()
    assert generate("star", 5).degrees == (4, 1, 1, 1, 1)


def test_generate_seed_determinism():
    for kind in ("random_tree", "random_connected"):
        assert generate(kind, 12, seed=7) == generate(kind, 12, seed=7)


@pytest.mark.parametrize("kind,n", [("cycle", 2), ("path", 0), ("star", 0), ("bogus", 4)])
def test_generate_rejects(kind, n):
    with pytest.raises(GraphError):
        generate(kind, n)


def test_parse_examples():
    assert parse_graph("3 2\n0 1\n1 2") == P3
    with pytest.raises(SelfLoopError):
        parse_graph("2 1\n0 0")
    with pytest.raises(DisconnectedGraphError):
        parse_graph("4 2\n0 1\n2 3")
    with pytest.raises(DuplicateEdgeError):
        parse_graph("2 2\n0 1\n1 0")
    with pytest.raises(MalformedLineError):
        parse_graph("2 1\n0 x")
    with pytest.raises(MalformedLineError):
        parse_graph("3 2\n0 1")


def test_parse_comments_and_blank_lines():
    text = "# a path\n\n3 2\n# edges\n0 1\n1 2\n"
    assert parse_graph(text) == P3


def test_parse_errors_are_distinct():
    classes = {SelfLoopError, DisconnectedGraphError, DuplicateEdgeError, MalformedLineError}
    assert len(classes) == 4
    assert all(issubclass(c, GraphError) for c in classes)


@given(st.integers(1, 14), st.integers(0, 2**31))
def test_roundtrip_and_degree_sum(n, seed):
    g = generate("random_connected", n, seed=seed, p=0.3)
    assert parse_graph(serialize_graph(g)) == g
    assert sum(g.degrees) == 2 * g.m
    for v in range(n):
        for w in g.neighbors(v):
            assert v in g.neighbors(w)


@given(st.integers(2, 12), st.integers(0, 2**31))
def test_distance_matches_networkx(n, seed):
    g = generate("random_connected", n, seed=seed, p=0.25)
    ref = dict(nx.all_pairs_shortest_path_length(nx.Graph(list(g.edges))))
    for u, v in itertools.product(range(n), repeat=2):
        assert distance(g, u, v) == ref[u][v] == distance(g, v, u)


@given(st.integers(3, 10), st.integers(0, 2**31), st.data())
def test_triangle_inequality(n, seed, data):
    g = generate("random_connected", n, seed=seed)
    u, v, w = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert distance(g, u, w) <= distance(g, u, v) + distance(g, v, w)


@given(st.integers(1, 6), st.integers(1, 6))
def test_disconnected_by_construction(a, b):
    # two disjoint paths side by side
    edges = [(i, i + 1) for i in range(a - 1)] + [(a + i, a + i + 1) for i in range(b - 1)]
    with pytest.raises(DisconnectedGraphError):
        Graph(a + b, edges)


def test_connected_graph_counts():
    # number of connected unlabeled graphs on n vertices
    assert [len(connected_graphs(n)) for n in range(1, 6)] == [1, 1, 2, 6, 21]


def test_tree_counts():
    # number of unlabeled trees on n vertices
    assert [len(trees(n)) for n in range(1, 8)] == [1, 1, 1, 2, 3, 6, 11]


@pytest.mark.parametrize("n", [4, 5])
def test_connected_classes_pairwise_nonisomorphic(n):
    gs = [nx.Graph(list(g.edges)) for g in connected_graphs(n)]
    for g in gs:
        g.add_nodes_from(range(n))
    for a, b in itertools.combinations(gs, 2):
        assert not nx.is_isomorphic(a, b)


def test_induced_keeps_order():
    g = generate("path", 5)
    sub, remap = g.induced([0, 1, 2, 3])
    assert sub == generate("path", 4)
    assert remap == {0: 0, 1: 1, 2: 2, 3: 3}
