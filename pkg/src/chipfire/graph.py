"""Simple connected undirected graphs with dense integer vertex ids.

Graphs are immutable. Vertex ids are ``0..n-1``; labels only exist in I/O.
The edge-list text format is::

    # optional comment lines
    n m
    u v        (m lines, 0 <= u < v < n)
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "GraphParseError",
    "MalformedLineError",
    "SelfLoopError",
    "DuplicateEdgeError",
    "DisconnectedGraphError",
    "InvalidVertexError",
    "degree",
    "distance",
    "generate",
    "parse_graph",
    "serialize_graph",
    "connected_graphs",
    "trees",
    "canonical_edges",
]


class GraphError(ValueError):
    """Invalid graph input."""


class InvalidVertexError(GraphError):
    pass


class GraphParseError(GraphError):
    """Base class for edge-list parse failures."""


class MalformedLineError(GraphParseError):
    pass


class SelfLoopError(GraphParseError):
    pass


class DuplicateEdgeError(GraphParseError):
    pass


class DisconnectedGraphError(GraphParseError):
    pass


class Graph:
    """A finite, simple, connected, undirected graph.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (int, int)
        Undirected edges. Self-loops, duplicates and disconnected inputs
        raise the matching :class:`GraphError` subclass.
    """

    __slots__ = ("_n", "_adj", "__dict__")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise GraphError(f"graph needs at least one vertex, got n={n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertexError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise DuplicateEdgeError(f"duplicate edge ({min(u, v)}, {max(u, v)})")
            adj[u].add(v)
            adj[v].add(u)
        self._n = n
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        if not self._is_connected():
            raise DisconnectedGraphError("graph is not connected")

    def _is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self._adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self._n

    @property
    def n(self) -> int:
        return self._n

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def __len__(self) -> int:
        return self._n

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self._adj)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self._n) for v in self._adj[u] if u < v)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) arrays, int64, for the compiled kernel."""
        indptr = np.zeros(self._n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(self.degrees)
        indices = np.fromiter(
            itertools.chain.from_iterable(self._adj), dtype=np.int64, count=int(indptr[-1])
        )
        return indptr, indices

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self._n, self._n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return v in self._adj[u]

    def bfs_distances(self, source: int) -> list[int]:
        self._check(source)
        dist = [-1] * self._n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def distance(self, u: int, v: int) -> int:
        self._check(v)
        return self.bfs_distances(u)[v]

    def is_tree(self) -> bool:
        return self.m == self._n - 1

    def induced(self, keep: Sequence[int]) -> tuple["Graph", dict[int, int]]:
        """Subgraph induced by ``keep`` with vertices renumbered in order.

        Returns the graph and the old-id -> new-id map.
        """
        remap = {old: new for new, old in enumerate(keep)}
        edges = [(remap[u], remap[v]) for u, v in self.edges if u in remap and v in remap]
        return Graph(len(keep), edges), remap

    def _check(self, v: int) -> None:
        if not (0 <= v < self._n):
            raise InvalidVertexError(f"vertex {v} not in [0, {self._n - 1}]")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={list(self.edges)})"


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def distance(g: Graph, u: int, v: int) -> int:
    """Breadth-first shortest-path length between ``u`` and ``v``."""
    return g.distance(u, v)


# -- generators ---------------------------------------------------------------

def _random_tree_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    # Pruefer decoding
    seq = [rng.randrange(n) for _ in range(n - 2)]
    count = [1] * n
    for x in seq:
        count[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if count[i] == 1)
        edges.append((leaf, x))
        count[leaf] -= 1
        count[x] -= 1
    u, v = (i for i in range(n) if count[i] == 1)
    edges.append((u, v))
    return edges


def generate(kind: str, n: int, *, seed: int | None = None, p: float = 0.3) -> Graph:
    """Build a graph of a named family.

    ``kind`` is one of ``path``, ``cycle``, ``star``, ``complete``,
    ``random_tree`` or ``random_connected``. The random kinds require
    ``seed``; ``random_connected`` adds each non-tree edge with
    probability ``p`` on top of a random spanning tree.
    """
    if n < 1:
        raise GraphError(f"size must be >= 1, got {n}")
    if kind == "path":
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "cycle":
        if n < 3:
            raise GraphError(f"cycle needs n >= 3, got {n}")
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "star":
        return Graph(n, [(0, i) for i in range(1, n)])
    if kind == "complete":
        return Graph(n, itertools.combinations(range(n), 2))
    if kind in ("random_tree", "random_connected"):
        if seed is None:
            raise GraphError(f"{kind} requires a seed")
        rng = random.Random(seed)
        edges = {tuple(sorted(e)) for e in _random_tree_edges(n, rng)}
        if kind == "random_connected":
            for e in itertools.combinations(range(n), 2):
                if e not in edges and rng.random() < p:
                    edges.add(e)
        return Graph(n, sorted(edges))
    raise GraphError(f"unknown graph kind {kind!r}")


# -- exhaustive families ----------------------------------------------------------

def canonical_edges(g: Graph) -> tuple[tuple[int, int], ...]:
    """Isomorphism-invariant edge list.

    Minimum sorted edge list over all relabelings that order vertices by
    degree; any isomorphic graph yields the same candidate set.
    """
    n = g.n
    by_degree: dict[int, list[int]] = {}
    for v in range(n):
        by_degree.setdefault(g.degrees[v], []).append(v)
    classes = [by_degree[d] for d in sorted(by_degree)]
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = [v for part in parts for v in part]
        pos = {v: i for i, v in enumerate(order)}
        cand = tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges))
        if best is None or cand < best:
            best = cand
    return best


def connected_graphs(n: int) -> list[Graph]:
    """All connected simple graphs on ``n`` vertices, one per isomorphism class."""
    if n < 1:
        raise GraphError(f"size must be >= 1, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    seen: dict[tuple, Graph] = {}
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if len(edges) < n - 1:
            continue
        try:
            g = Graph(n, edges)
        except DisconnectedGraphError:
            continue
        key = canonical_edges(g)
        if key not in seen:
            seen[key] = Graph(n, key)
    return [seen[k] for k in sorted(seen, key=lambda k: (len(k), k))]


def _tree_code(adj: Sequence[Sequence[int]], root: int, parent: int = -1) -> str:
    kids = sorted(_tree_code(adj, w, root) for w in adj[root] if w != parent)
    return "(" + "".join(kids) + ")"


def _tree_canon(g: Graph) -> str:
    # AHU encoding rooted at the center(s)
    leaves = [v for v in range(g.n) if g.degrees[v] <= 1]
    deg = list(g.degrees)
    remaining = g.n
    while remaining > 2:
        nxt = []
        for v in leaves:
            remaining -= 1
            for w in g.adjacency[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        leaves = nxt
    return min(_tree_code(g.adjacency, c) for c in leaves)


def trees(n: int) -> list[Graph]:
    """All trees on ``n`` vertices up to isomorphism."""
    if n < 1:
        raise GraphError(f"size must be >= 1, got {n}")
    if n <= 2:
        return [generate("path", n)]
    seen: dict[str, Graph] = {}
    for seq in itertools.product(range(n), repeat=n - 2):
        count = [1] * n
        for x in seq:
            count[x] += 1
        edges = []
        for x in seq:
            leaf = min(i for i in range(n) if count[i] == 1)
            edges.append((leaf, x))
            count[leaf] -= 1
            count[x] -= 1
        u, v = (i for i in range(n) if count[i] == 1)
        edges.append((u, v))
        g = Graph(n, edges)
        seen.setdefault(_tree_canon(g), g)
    return [seen[k] for k in sorted(seen)]


# -- text format -------------------------------------------------------------

def _data_lines(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _ints(line: str, lineno: int, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise MalformedLineError(f"line {lineno}: expected {count} integers, got {line!r}")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise MalformedLineError(f"line {lineno}: non-integer field in {line!r}") from None


def parse_graph_lines(lines: Iterable[str]) -> Graph:
    it = _data_lines(lines)
    try:
        lineno, header = next(it)
    except StopIteration:
        raise MalformedLineError("empty graph text") from None
    n, m = _ints(header, lineno, 2)
    if n < 1 or m < 0:
        raise MalformedLineError(f"line {lineno}: bad header {header!r}")
    edges = []
    seen = set()
    for lineno, line in it:
        u, v = _ints(line, lineno, 2)
        if u == v:
            raise SelfLoopError(f"line {lineno}: self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedLineError(f"line {lineno}: vertex out of range in {line!r}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise DuplicateEdgeError(f"line {lineno}: duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    if len(edges) != m:
        raise MalformedLineError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format. See the module docstring."""
    return parse_graph_lines(text.splitlines())


def serialize_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
