import itertools
import random

import pytest

from chipfire.patterns import signed_sum_M
from chipfire.verifier import (
    ConsistencyError,
    SectorGraph,
    SectorState,
    build_sector_graph,
    find_negative_cycle,
    path_weight_of_pair,
    sector_graph_dot,
    state_sequence,
)

nx = pytest.importorskip("networkx")

GRAPH = build_sector_graph()


def test_counts_are_regression_constants():
    assert (len(GRAPH.vertices), len(GRAPH.edges)) == (64, 256)
    again = build_sector_graph()
    assert again.vertices == GRAPH.vertices and again.edges == GRAPH.edges


def test_no_negative_cycle():
    assert find_negative_cycle(GRAPH) is None


def test_networkx_agrees():
    d = nx.DiGraph()
    d.add_weighted_edges_from(GRAPH.edges)
    assert not nx.negative_edge_cycle(d)


def test_edge_weights_come_from_source():
    for u, _, w in GRAPH.edges:
        assert w == u.weight()
        assert -4 <= w <= 4


def test_weight_examples():
    for b, s in ((0, -1), (1, 1)):
        quiet = SectorState(b, b, s, s, b, b, s, s)
        assert quiet in GRAPH.vertices
        assert quiet.weight() == 0
    # p switches away from a 0-sector with no disagreement
    switch = SectorState(0, 0, -1, 1, 0, 0, -1, -1)
    assert switch in GRAPH.vertices
    assert switch.weight() == -1


def test_toy_graphs():
    assert find_negative_cycle({"a": {"b": -1}, "b": {"a": -1}}) == ["a", "b"]
    assert find_negative_cycle({"a": {"b": -1}, "b": {"a": 1}}) is None


def test_disconnected_components_are_covered():
    g = {"a": {"b": 0}, "b": {"a": 0}, "c": {"d": 2}, "d": {"c": -3}}
    cyc = find_negative_cycle(g)
    assert sorted(cyc) == ["c", "d"]


@pytest.mark.parametrize("seed", range(10))
def test_negative_cycle_witness_matches_networkx(seed):
    rng = random.Random(seed)
    nodes = list(range(8))
    g = {u: {} for u in nodes}
    for u, v in itertools.permutations(nodes, 2):
        if rng.random() < 0.3:
            g[u][v] = rng.randint(-3, 6)
    d = nx.DiGraph()
    d.add_nodes_from(nodes)
    d.add_weighted_edges_from((u, v, w) for u in g for v, w in g[u].items())
    cyc = find_negative_cycle(g)
    assert (cyc is not None) == nx.negative_edge_cycle(d)
    if cyc is not None:
        total = sum(g[cyc[i]][cyc[(i + 1) % len(cyc)]] for i in range(len(cyc)))
        assert total < 0


def test_path_weight_examples():
    assert path_weight_of_pair("0011", "0011") == 0 == signed_sum_M("0011", "0011")
    assert path_weight_of_pair("0011", "0101") == 0
    assert path_weight_of_pair("01", "01") == 0


def test_oracle_equivalence_fuzz():
    rng = random.Random(99)
    for _ in range(3000):
        n = rng.randint(1, 32)
        p = "".join(rng.choice("01") for _ in range(n))
        q = "".join(rng.choice("01") for _ in range(n))
        for alt in (0, 1):
            w = path_weight_of_pair(p, q, alternating_kind=alt)
            assert w == signed_sum_M(p, q, alternating_kind=alt) >= 0


def test_graph_is_tight():
    # every vertex and edge is visited by some short word pair
    seen_v, seen_e = set(), set()
    for n in range(1, 7):
        ws = ["".join(b) for b in itertools.product("01", repeat=n)]
        for p, q in itertools.product(ws, ws):
            seq = state_sequence(p, q)
            seen_v.update(seq)
            seen_e.update((seq[i], seq[(i + 1) % n]) for i in range(n))
    assert seen_v == set(GRAPH.vertices)
    assert seen_e == {(u, v) for u, v, _ in GRAPH.edges}


def test_missing_state_raises():
    pruned = SectorGraph(GRAPH.vertices[1:], tuple(e for e in GRAPH.edges
                                                   if GRAPH.vertices[0] not in e[:2]))
    hit = None
    for p, q in itertools.product(["0011", "1100", "0101", "1010", "0000", "1111"], repeat=2):
        try:
            path_weight_of_pair(p, q, graph=pruned)
        except ConsistencyError:
            hit = True
    assert hit


def test_dot_output():
    text = sector_graph_dot(GRAPH)
    assert text.startswith("digraph")
    assert text.count("->") == 256
