"""Game transformations.

* :func:`motorize_to_ordinary` replaces every motor by a wedge of copies of
  an ordinary game that reproduces the motor's firing sequence.
* :func:`complement` swaps firing and waiting in a periodic game.
* :func:`prune_leaf` / :func:`prune_treelike` delete pendant trees from a
  periodic game without changing anyone else's periodic firing pattern.
* :func:`realize_pfp_on_cycle` finds a game on a cycle in which every vertex
  has a prescribed nonclumpy pattern up to rotation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .engine import Game, MotorSchedule, SimulationResult, rebase, simulate
from .graph import Graph, generate
from .patterns import is_clumpy, is_primitive

__all__ = [
    "PreconditionError",
    "RealizerMismatchError",
    "PruneConsistencyError",
    "RealizationNotFoundError",
    "Realizer",
    "TransformReport",
    "motorize_to_ordinary",
    "complement",
    "prune_leaf",
    "prune_treelike",
    "realize_pfp_on_cycle",
    "realizer_for",
    "regime",
]


class PreconditionError(ValueError):
    pass


class RealizerMismatchError(ValueError):
    """A realizer's witness does not follow the claimed sequence."""


class PruneConsistencyError(RuntimeError):
    """No chip adjustment of the root keeps its firing record after pruning."""


class RealizationNotFoundError(RuntimeError):
    pass


def _periodic_result(game: Game, what: str) -> SimulationResult:
    result = simulate(game)
    if result.t0 != 0:
        raise PreconditionError(f"{what}: game is not periodic at t=0 (t0={result.t0})")
    return result


@dataclass(frozen=True)
class Realizer:
    """Ordinary game whose ``witness`` vertex fires according to ``sequence``."""

    game: Game
    witness: int
    sequence: MotorSchedule

    def validate(self) -> SimulationResult:
        if not self.game.is_ordinary:
            raise PreconditionError("realizer game must be ordinary")
        self.game.graph.degree(self.witness)
        result = simulate(self.game)
        seq = self.sequence.canonical()
        lt, lc = len(seq.transient), len(seq.cycle)
        horizon = max(result.t0, lt) + math.lcm(result.period, lc)
        horizon = max(horizon, lt + 2 * lc)
        got = result.firing_sequence(self.witness, horizon)
        want = seq.prefix(horizon)
        if got != want:
            raise RealizerMismatchError(
                f"witness {self.witness} fires {got!r}, expected {want!r}"
            )
        return result

    def shift(self, k: int) -> "Realizer":
        """The same realizer observed from time ``k`` onward."""
        if k == 0:
            return self
        return Realizer(rebase(simulate(self.game), k), self.witness, self.sequence.shift(k))


@dataclass(frozen=True)
class TransformReport:
    graph: Graph
    params: Mapping[int, tuple[int, int, int]]  # motor -> (a_m, b_m, k_m)
    copies: Mapping[int, list[dict[int, int]]]  # motor -> per copy: realizer vertex -> H vertex
    chips: tuple[int, ...]

    def text(self) -> str:
        lines = [f"vertices: {self.graph.n}", f"edges: {self.graph.m}"]
        for m, (a, b, k) in self.params.items():
            lines.append(f"motor {m}: a={a} b={b} k={k}")
        return "\n".join(lines) + "\n"


def motorize_to_ordinary(
    game: Game, realizers: Mapping[int, Realizer]
) -> tuple[Game, TransformReport]:
    """Ordinary game on ``H`` that reproduces ``game`` on its original vertices.

    ``H`` is ``G`` with ``k_m = b_m - a_m + 1`` copies of each realizer graph
    glued at ``m = u_m``, where ``a_m``/``b_m`` bound the motor's chips over
    a period. ``game`` must be periodic at t=0 and each realizer must follow
    its motor's schedule from t=0. Original vertices keep their ids.
    """
    if game.is_ordinary:
        raise PreconditionError("game has no motors")
    if set(realizers) != set(game.motors):
        raise PreconditionError(
            f"realizers given for {sorted(realizers)}, motors are {sorted(game.motors)}"
        )
    result = _periodic_result(game, "motorize_to_ordinary")
    g = game.graph
    edges = list(g.edges)
    chips = list(game.chips)
    params: dict[int, tuple[int, int, int]] = {}
    copies: dict[int, list[dict[int, int]]] = {}
    nxt = g.n
    for m, sched in game.motors.items():
        real = realizers[m]
        if not real.sequence.same_sequence(sched):
            raise RealizerMismatchError(
                f"realizer for motor {m} claims {real.sequence}, motor runs {sched}"
            )
        real.validate()
        a = int(result.positions[:, m].min())
        b = int(result.positions[:, m].max())
        k = b - a + 1
        params[m] = (a, b, k)
        ag, u = real.game.graph, real.witness
        copies[m] = []
        for _ in range(k):
            ids = {u: m}
            for x in range(ag.n):
                if x != u:
                    ids[x] = nxt
                    nxt += 1
                    chips.append(real.game.chips[x])
            edges += [(ids[x], ids[y]) for x, y in ag.edges]
            copies[m].append(ids)
        chips[m] = k * real.game.chips[u] + g.degree(m) + game.chips[m] - a
    h = Graph(nxt, edges)
    out = Game(h, tuple(chips))
    return out, TransformReport(h, params, copies, out.chips)


def complement(game: Game) -> Game:
    """Periodic game with every firing bit inverted: ``c -> 2 deg - 1 - c``."""
    if not game.is_ordinary:
        raise PreconditionError("complement needs an ordinary game")
    _periodic_result(game, "complement")
    degs = game.graph.degrees
    # all-fire games may hold any number of chips; the map needs c <= 2 deg - 1
    over = [v for v, (d, c) in enumerate(zip(degs, game.chips)) if c > 2 * d - 1]
    if over:
        raise PreconditionError(f"vertex {over[0]} holds more than 2*deg-1 chips")
    return game.with_chips(2 * d - 1 - c for d, c in zip(degs, game.chips))


def regime(result: SimulationResult) -> str:
    """``"no_double_fire"`` or ``"no_double_wait"`` for a periodic game.

    Games where neither pattern occurs report ``"no_double_fire"``.
    """
    pats = [p + p[0] for p in result.pfps()]
    has11 = any("11" in p for p in pats)
    has00 = any("00" in p for p in pats)
    if has11 and has00:
        raise PreconditionError("game has both double fires and double waits")
    return "no_double_wait" if has11 else "no_double_fire"


def prune_leaf(game: Game, leaf: int) -> Game:
    """Remove ``leaf`` from a periodic game, adjusting its neighbor's chips.

    Surviving vertices keep their relative order (ids above ``leaf`` shift
    down by one) and their periodic firing patterns.
    """
    if not game.is_ordinary:
        raise PreconditionError("prune_leaf needs an ordinary game")
    g = game.graph
    if g.degree(leaf) != 1:
        raise PreconditionError(f"vertex {leaf} is not a leaf")
    if g.n <= 2:
        raise PreconditionError("pruning would leave a single vertex")
    result = _periodic_result(game, "prune_leaf")
    (m,) = g.neighbors(leaf)
    regime(result)
    # Without the leaf, m holds c(m, t) - k + c(leaf, t) chips at every t:
    # k = 1 with no double fires, k = 2 (the mirrored adjustment) with no
    # double waits. Both are tried, each checked against m's firing record.
    dm = g.degree(m)
    cm = result.periodic_positions[:, m]
    cl = result.periodic_positions[:, leaf]
    for k in (1, 2):
        pruned = cm - k + cl
        if (pruned >= 0).all() and ((pruned >= dm - 1) == (cm >= dm)).all():
            break
    else:
        raise PruneConsistencyError(
            f"removing leaf {leaf} changes the firing of {m} (chips {cm.tolist()})"
        )
    chips = list(game.chips)
    chips[m] = int(pruned[0])
    keep = [v for v in range(g.n) if v != leaf]
    sub, _ = g.induced(keep)
    return Game(sub, tuple(chips[v] for v in keep))


def _check_treelike(g: Graph, root: int, subtree: set[int], min_remainder: int = 2) -> None:
    if not subtree:
        raise PreconditionError("empty subtree")
    if root in subtree:
        raise PreconditionError("root must not be part of the removed subtree")
    for v in subtree | {root}:
        g.degree(v)
    body = subtree | {root}
    inner = [(u, v) for u, v in g.edges if u in body and v in body]
    if len(inner) != len(body) - 1:
        raise PreconditionError("subtree plus root does not induce a tree")
    for v in subtree:
        if any(w not in body for w in g.neighbors(v)):
            raise PreconditionError(f"vertex {v} has an edge leaving the subtree")
    if g.n - len(subtree) < min_remainder:
        raise PreconditionError("pruning would leave a single vertex")
    # connectivity of body: g is connected and subtree only touches body, so
    # a cycle-free body with |body|-1 edges is connected iff reachable from root
    seen, stack = {root}, [root]
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if w in body and w not in seen:
                seen.add(w)
                stack.append(w)
    if seen != body:
        raise PreconditionError("subtree is not attached to the root")


def prune_treelike(game: Game, root: int, subtree: Iterable[int]) -> Game:
    """Remove a pendant tree hanging off ``root`` by repeated leaf pruning.

    ``subtree`` lists the vertices to delete; together with ``root`` they
    must induce a tree whose only contact with the rest of the graph is
    ``root``. Surviving vertices keep their relative order.
    """
    subtree = set(subtree)
    _check_treelike(game.graph, root, subtree)
    dist = game.graph.bfs_distances(root)
    ids = list(range(game.n))  # current position -> original id
    for v in sorted(subtree, key=lambda x: (-dist[x], x)):
        game = prune_leaf(game, ids.index(v))
        ids.remove(v)
    return game


def _cycle_offsets(pfp: str):
    """Yield rotation offsets for every vertex of C_n, vertex 0 fixed at 0."""
    n = len(pfp)
    bits = [int(c) for c in pfp]

    def fire(o: int, t: int) -> int:
        return bits[(t + o) % n]

    def feasible(left: int, mid: int, right: int) -> int | None:
        lo, hi, acc = -(10**9), 10**9, 0
        for t in range(n):
            f = fire(mid, t)
            lo = max(lo, 2 * f - acc)
            hi = min(hi, 2 * f + 1 - acc)
            acc += fire(left, t) + fire(right, t) - 2 * f
        return lo if lo <= hi else None

    offs = [0] * n

    def extend(v: int):
        if v == n:
            last = feasible(offs[n - 2], offs[n - 1], offs[0])
            first = feasible(offs[n - 1], offs[0], offs[1])
            if last is not None and first is not None:
                yield list(offs)
            return
        for o in range(n):
            offs[v] = o
            if v >= 2 and feasible(offs[v - 2], offs[v - 1], o) is None:
                continue
            yield from extend(v + 1)

    yield from extend(1)


def realize_pfp_on_cycle(pfp: str) -> Game:
    """Game on the ``len(pfp)``-cycle where vertex ``v`` has ``pfp`` rotated.

    Backtracks over per-vertex rotation offsets; a choice of offsets fixes
    the firing record, and the initial chips then follow from the periodic
    bound ``2 f <= c <= 2 f + 1`` on a degree-2 vertex. Vertex 0 gets the
    unrotated pattern.
    """
    n = len(pfp)
    if n < 3:
        raise PreconditionError("pattern length must be at least 3")
    if is_clumpy(pfp):
        raise PreconditionError(f"{pfp} is clumpy")
    if not is_primitive(pfp):
        raise PreconditionError(f"{pfp} is a repeated shorter pattern")
    g = generate("cycle", n)
    bits = [int(c) for c in pfp]
    for offs in _cycle_offsets(pfp):
        chips = []
        for v in range(n):
            left, right = offs[v - 1], offs[(v + 1) % n]
            lo, acc = -(10**9), 0
            for t in range(n):
                f = bits[(t + offs[v]) % n]
                lo = max(lo, 2 * f - acc)
                acc += bits[(t + left) % n] + bits[(t + right) % n] - 2 * f
            chips.append(lo)
        game = Game(g, tuple(chips))
        result = simulate(game)
        if result.t0 == 0 and result.period == n and all(
            result.pfp(v) == pfp[offs[v]:] + pfp[:offs[v]] for v in range(n)
        ):
            return game
    raise RealizationNotFoundError(f"no game on C{n} realizes {pfp}")


def realizer_for(cycle: str) -> Realizer:
    """Registered ordinary realizer of the periodic sequence ``cycle``.

    Constant and period-2 sequences use K2; other nonclumpy sequences use
    :func:`realize_pfp_on_cycle` on their primitive root.
    """
    sched = MotorSchedule.periodic(cycle)
    root = sched.canonical().cycle
    k2 = generate("path", 2)
    if root == "1":
        return Realizer(Game(k2, (1, 1)), 0, sched)
    if root == "0":
        return Realizer(Game(k2, (0, 0)), 0, sched)
    if root in ("10", "01"):
        return Realizer(Game(k2, (1, 0)), 0 if root == "10" else 1, sched)
    if is_clumpy(root):
        raise PreconditionError(f"clumpy sequence {cycle} has no ordinary realizer")
    return Realizer(realize_pfp_on_cycle(root), 0, sched)
