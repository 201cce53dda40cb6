"""Mechanical proof that the full-cycle signed sum is nonnegative.

Each index ``i`` of a word pair ``(p, q)`` is summarized by the local state::

    (p[i-1], p[i], s_i(p), s_{i+1}(p), q[i-1], q[i], s_i(q), s_{i+1}(q))

and the per-index term of the signed sum depends only on that state. The
states form a weighted digraph; the full-cycle sum of any pair is the
weight of a closed walk, so the sum is nonnegative for all pairs exactly
when the digraph has no negative cycle. Bellman-Ford decides that.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

from .patterns import _check_pair, sectors

__all__ = [
    "SectorState",
    "SectorGraph",
    "ConsistencyError",
    "build_sector_graph",
    "find_negative_cycle",
    "state_sequence",
    "path_weight_of_pair",
    "sector_graph_dot",
]


class ConsistencyError(RuntimeError):
    """A word pair visits a state or transition missing from the graph."""


class SectorState(NamedTuple):
    p_prev: int
    p_cur: int
    sp_cur: int
    sp_next: int
    q_prev: int
    q_cur: int
    sq_cur: int
    sq_next: int

    def weight(self) -> int:
        """Per-index term of the signed sum determined by this state."""
        return (
            self.sp_cur * (self.p_cur - self.q_prev)
            + self.sq_cur * (self.q_cur - self.p_prev)
            - (self.sp_cur != self.sp_next)
            - (self.sq_cur != self.sq_next)
        )

    def __str__(self) -> str:
        sign = {1: "+", -1: "-"}
        return "{}{}{}{}|{}{}{}{}".format(
            self.p_prev, self.p_cur, sign[self.sp_cur], sign[self.sp_next],
            self.q_prev, self.q_cur, sign[self.sq_cur], sign[self.sq_next],
        )


@dataclass(frozen=True)
class SectorGraph:
    vertices: tuple[SectorState, ...]
    edges: tuple[tuple[SectorState, SectorState, int], ...]

    def successors(self) -> dict[SectorState, dict[SectorState, int]]:
        out: dict[SectorState, dict[SectorState, int]] = {v: {} for v in self.vertices}
        for u, v, w in self.edges:
            out[u][v] = w
        return out


def _kind(sign: int) -> int:
    return (sign + 1) // 2


def _half_valid(prev: int, cur: int, s_cur: int, s_next: int) -> bool:
    b = _kind(s_cur)
    if s_cur != s_next:
        # a switch away from a b-sector needs p[i-1] = p[i] = b
        return prev == cur == b
    # inside a b-sector no two consecutive 1-b symbols
    return not (prev == cur == 1 - b)


def _half_edge(src: tuple[int, int, int, int], dst: tuple[int, int, int, int]) -> bool:
    _, cur, _, s_next = src
    d_prev, d_cur, d_s_cur, _ = dst
    if d_prev != cur or d_s_cur != s_next:
        return False
    if src[2] != src[3]:
        # a new sector starts with its own kind
        return d_cur == _kind(s_next)
    return True


def _halves() -> list[tuple[int, int, int, int]]:
    return [
        h for h in itertools.product((0, 1), (0, 1), (-1, 1), (-1, 1))
        if _half_valid(*h)
    ]


def build_sector_graph() -> SectorGraph:
    """Enumerate realizable states and their valid successor transitions."""
    halves = _halves()
    vertices = tuple(SectorState(*hp, *hq) for hp in halves for hq in halves)
    edges = []
    for u in vertices:
        w = u.weight()
        for v in vertices:
            if _half_edge(u[:4], v[:4]) and _half_edge(u[4:], v[4:]):
                edges.append((u, v, w))
    return SectorGraph(vertices, tuple(edges))


def find_negative_cycle(
    graph: SectorGraph | Mapping[Hashable, Mapping[Hashable, int]],
) -> list | None:
    """Bellman-Ford from a virtual source joined to every vertex by 0-edges.

    Returns the vertices of a negative cycle in walk order, or ``None``.
    Accepts a :class:`SectorGraph` or an adjacency mapping
    ``{u: {v: weight}}``.
    """
    if isinstance(graph, SectorGraph):
        vertices = list(graph.vertices)
        edges = list(graph.edges)
    else:
        vertices = list(dict.fromkeys(itertools.chain(graph, *graph.values())))
        edges = [(u, v, w) for u, nbrs in graph.items() for v, w in nbrs.items()]
    dist = {v: 0 for v in vertices}
    pred: dict = {v: None for v in vertices}
    changed = None
    for _ in range(len(vertices)):
        changed = None
        for u, v, w in edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                pred[v] = u
                changed = v
        if changed is None:
            return None
    # relaxation still succeeded in round |V|: walk back onto the cycle
    x = changed
    for _ in range(len(vertices)):
        x = pred[x]
    cycle = [x]
    y = pred[x]
    while y != x:
        cycle.append(y)
        y = pred[y]
    cycle.reverse()
    order = {v: i for i, v in enumerate(vertices)}
    k = min(range(len(cycle)), key=lambda i: order[cycle[i]])
    return cycle[k:] + cycle[:k]


def state_sequence(p: str, q: str, alternating_kind: int = 0) -> list[SectorState]:
    """``[mu_0, ..., mu_{n-1}]`` for the cyclic pair ``(p, q)``."""
    _check_pair(p, q)
    n = len(p)
    sp = sectors(p, alternating_kind).s
    sq = sectors(q, alternating_kind).s
    return [
        SectorState(
            int(p[i - 1]), int(p[i]), sp[i], sp[(i + 1) % n],
            int(q[i - 1]), int(q[i]), sq[i], sq[(i + 1) % n],
        )
        for i in range(n)
    ]


def path_weight_of_pair(
    p: str, q: str, graph: SectorGraph | None = None, alternating_kind: int = 0
) -> int:
    """Weight of the closed walk ``mu_0 -> ... -> mu_{n-1} -> mu_0``.

    Every state and transition must exist in ``graph``; otherwise
    :class:`ConsistencyError` is raised.
    """
    if graph is None:
        graph = _default_graph()
    succ = _successors(graph)
    seq = state_sequence(p, q, alternating_kind)
    total = 0
    for i, u in enumerate(seq):
        v = seq[(i + 1) % len(seq)]
        if u not in succ:
            raise ConsistencyError(f"state {u} of ({p}, {q}) at {i} is not a vertex")
        if v not in succ[u]:
            raise ConsistencyError(f"transition {u} -> {v} of ({p}, {q}) at {i} is not an edge")
        total += succ[u][v]
    return total


_cache: dict = {}


def _default_graph() -> SectorGraph:
    if "graph" not in _cache:
        _cache["graph"] = build_sector_graph()
    return _cache["graph"]


def _successors(graph: SectorGraph) -> dict:
    key = id(graph)
    hit = _cache.get("succ")
    if hit is None or hit[0] != key:
        _cache["succ"] = (key, graph.successors(), graph)
    return _cache["succ"][1]


def sector_graph_dot(graph: SectorGraph, highlight: Sequence[SectorState] | None = None) -> str:
    marked = set(highlight or ())
    ids = {v: i for i, v in enumerate(graph.vertices)}
    lines = ["digraph sector_states {", "  node [shape=box, fontname=monospace];"]
    for v, i in ids.items():
        style = ", color=red" if v in marked else ""
        lines.append(f'  s{i} [label="{v}"{style}];')
    for u, v, w in graph.edges:
        lines.append(f'  s{ids[u]} -> s{ids[v]} [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def summarize(graph: SectorGraph, cycle: Iterable[SectorState] | None) -> str:
    lines = [f"vertices: {len(graph.vertices)}", f"edges: {len(graph.edges)}"]
    if cycle is None:
        lines.append("no negative cycles")
    else:
        cycle = list(cycle)
        lines.append("negative cycle: " + " -> ".join(str(s) for s in cycle))
    return "\n".join(lines) + "\n"
