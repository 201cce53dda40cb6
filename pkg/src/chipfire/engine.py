"""Parallel chip-firing dynamics, ordinary and motorized.

Every vertex with at least ``deg(v)`` chips fires, sending one chip along
each edge; all vertices update simultaneously. A motor ignores its chip
count and fires according to a fixed eventually periodic schedule, so its
chip count may go negative.

Game text format: an edge-list graph section, then ``chips: c0 c1 ...``,
then zero or more ``motor <v> <transient>:<cycle>`` lines.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import _kernel
from .graph import Graph, GraphError, parse_graph_lines, serialize_graph

__all__ = [
    "MotorSchedule",
    "Game",
    "SimulationResult",
    "StateCorruptionError",
    "BudgetExceededError",
    "GameFormatError",
    "DEFAULT_MAX_STEPS",
    "fires",
    "step",
    "simulate",
    "firing_sequence",
    "rebase",
    "parse_game",
    "serialize_game",
]

DEFAULT_MAX_STEPS = 10**6


class StateCorruptionError(ValueError):
    """A non-motor vertex holds a negative number of chips."""


class GameFormatError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    def __init__(self, steps: int):
        super().__init__(f"no repeated state within {steps} steps")
        self.steps = steps


def _bits(s: str, what: str) -> str:
    if any(c not in "01" for c in s):
        raise ValueError(f"{what} must be a 0/1 string, got {s!r}")
    return s


def _primitive_root(word: str) -> str:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


@dataclass(frozen=True)
class MotorSchedule:
    """Eventually periodic firing schedule of a motor.

    ``firing(t) = transient[t]`` for ``t < len(transient)`` and
    ``cycle[(t - len(transient)) % len(cycle)]`` afterwards.
    """

    transient: str
    cycle: str

    def __post_init__(self):
        _bits(self.transient, "transient")
        _bits(self.cycle, "cycle")
        if not self.cycle:
            raise ValueError("motor cycle must be nonempty")

    @classmethod
    def periodic(cls, cycle: str) -> "MotorSchedule":
        return cls("", cycle)

    @classmethod
    def parse(cls, text: str) -> "MotorSchedule":
        if ":" not in text:
            raise GameFormatError(f"motor schedule must be 'transient:cycle', got {text!r}")
        transient, cycle = text.split(":", 1)
        try:
            return cls(transient, cycle)
        except ValueError as e:
            raise GameFormatError(str(e)) from None

    def firing(self, t: int) -> int:
        lt = len(self.transient)
        if t < lt:
            return int(self.transient[t])
        return int(self.cycle[(t - lt) % len(self.cycle)])

    def prefix(self, length: int) -> str:
        return "".join(str(self.firing(t)) for t in range(length))

    def shift(self, k: int) -> "MotorSchedule":
        """Schedule seen from time ``k`` onward."""
        lt = len(self.transient)
        if k <= lt:
            return MotorSchedule(self.transient[k:], self.cycle)
        r = (k - lt) % len(self.cycle)
        return MotorSchedule("", self.cycle[r:] + self.cycle[:r])

    def canonical(self) -> "MotorSchedule":
        """Same firing sequence with a primitive cycle and shortest transient."""
        trans, cyc = self.transient, _primitive_root(self.cycle)
        while trans and trans[-1] == cyc[-1]:
            trans, cyc = trans[:-1], cyc[-1] + cyc[:-1]
        return MotorSchedule(trans, cyc)

    def same_sequence(self, other: "MotorSchedule") -> bool:
        return self.canonical() == other.canonical()

    def __str__(self) -> str:
        return f"{self.transient}:{self.cycle}"


@dataclass(frozen=True)
class Game:
    """Graph, initial position and motor schedules (empty for ordinary games)."""

    graph: Graph
    chips: tuple[int, ...]
    motors: Mapping[int, MotorSchedule] = field(default_factory=dict)

    def __post_init__(self):
        chips = tuple(int(c) for c in self.chips)
        if len(chips) != self.graph.n:
            raise ValueError(f"expected {self.graph.n} chip counts, got {len(chips)}")
        motors = {}
        for v, sched in sorted(self.motors.items()):
            if not 0 <= v < self.graph.n:
                raise GraphError(f"motor vertex {v} out of range")
            if isinstance(sched, str):
                sched = MotorSchedule.parse(sched)
            motors[int(v)] = sched
        object.__setattr__(self, "chips", chips)
        object.__setattr__(self, "motors", motors)
        _check_position(self, chips)

    @property
    def is_ordinary(self) -> bool:
        return not self.motors

    @property
    def n(self) -> int:
        return self.graph.n

    def with_chips(self, chips: Sequence[int]) -> "Game":
        return Game(self.graph, tuple(chips), self.motors)


def _check_position(game: Game, position: Sequence[int]) -> None:
    for v, c in enumerate(position):
        if c < 0 and v not in game.motors:
            raise StateCorruptionError(f"vertex {v} has {c} chips")


def fires(game: Game, position: Sequence[int], v: int, t: int) -> int:
    """1 if ``v`` fires at time ``t`` from ``position``, else 0."""
    sched = game.motors.get(v)
    if sched is not None:
        return sched.firing(t)
    return 1 if position[v] >= game.graph.degree(v) else 0


def step(game: Game, position: Sequence[int], t: int) -> tuple[int, ...]:
    """Position at ``t + 1`` given the position at ``t``."""
    _check_position(game, position)
    g = game.graph
    nxt = list(position)
    for v in range(g.n):
        if fires(game, position, v, t):
            nxt[v] -= g.degree(v)
            for w in g.adjacency[v]:
                nxt[w] += 1
    return tuple(nxt)


@dataclass(frozen=True, eq=False)
class SimulationResult:
    """Transient, period and the full record over ``[0, t0 + period)``.

    ``positions`` and ``firing`` have shape ``(t0 + period, n)``. Queries
    beyond that range wrap around the periodic window.
    """

    game: Game
    t0: int
    period: int
    positions: np.ndarray
    firing: np.ndarray

    @property
    def length(self) -> int:
        return self.t0 + self.period

    def index(self, t: int) -> int:
        if t < 0:
            raise ValueError(f"negative time {t}")
        if t < self.length:
            return t
        return self.t0 + (t - self.t0) % self.period

    def fires(self, v: int, t: int) -> int:
        return int(self.firing[self.index(t), v])

    def chips(self, v: int, t: int) -> int:
        return int(self.positions[self.index(t), v])

    def position(self, t: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.positions[self.index(t)])

    def received(self, v: int, t: int) -> int:
        row = self.firing[self.index(t)]
        return int(sum(row[w] for w in self.game.graph.adjacency[v]))

    def firing_sequence(self, v: int, length: int | None = None) -> str:
        if length is None:
            length = self.length
        return "".join(str(self.fires(v, t)) for t in range(length))

    @property
    def periodic_firing(self) -> np.ndarray:
        return self.firing[self.t0:]

    @property
    def periodic_positions(self) -> np.ndarray:
        return self.positions[self.t0:]

    def pfp(self, v: int) -> str:
        return "".join("1" if b else "0" for b in self.firing[self.t0:, v])

    def pfps(self) -> list[str]:
        return [self.pfp(v) for v in range(self.game.n)]


def _motor_arrays(game: Game):
    items = [(m, s.canonical()) for m, s in sorted(game.motors.items())]
    vertex = np.array([m for m, _ in items], dtype=np.int64)
    trans_len = np.array([len(s.transient) for _, s in items], dtype=np.int64)
    cyc_len = np.array([len(s.cycle) for _, s in items], dtype=np.int64)
    words = [s.transient + s.cycle for _, s in items]
    off = np.zeros(len(items), dtype=np.int64)
    if items:
        off[1:] = np.cumsum([len(w) for w in words])[:-1]
    bits = np.array([int(c) for w in words for c in w], dtype=np.uint8)
    return vertex, trans_len, cyc_len, off, bits


def simulate(game: Game, max_steps: int = DEFAULT_MAX_STEPS, backend: str | None = None) -> SimulationResult:
    """Run ``game`` until its full state (position and motor phases) repeats.

    Raises :class:`BudgetExceededError` if no repeat occurs within
    ``max_steps`` steps.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    run = _kernel.KERNELS[backend] if backend else _kernel.run
    indptr, indices = game.graph.csr
    chips0 = np.asarray(game.chips, dtype=np.int64)
    t0, period, positions, firing = run(indptr, indices, chips0, *_motor_arrays(game), max_steps)
    if t0 < 0:
        raise BudgetExceededError(max_steps)
    positions.flags.writeable = False
    firing.flags.writeable = False
    return SimulationResult(game, int(t0), int(period), positions, firing)


def firing_sequence(result: SimulationResult, v: int) -> str:
    """Firing bits of ``v`` over ``[0, t0 + period)``."""
    return result.firing_sequence(v)


def rebase(result: SimulationResult, t: int | None = None) -> Game:
    """The game restarted at time ``t`` (default: the first periodic time)."""
    if t is None:
        t = result.t0
    game = result.game
    motors = {m: s.shift(t) for m, s in game.motors.items()}
    return Game(game.graph, result.position(t), motors)


# -- text format -------------------------------------------------------------

def parse_game(text: str) -> Game:
    graph_lines: list[str] = []
    chips = None
    motors: dict[int, MotorSchedule] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("chips:"):
            if chips is not None:
                raise GameFormatError(f"line {lineno}: duplicate chips line")
            try:
                chips = [int(x) for x in line[len("chips:"):].split()]
            except ValueError:
                raise GameFormatError(f"line {lineno}: malformed chips line {line!r}") from None
        elif line.startswith("motor"):
            parts = line.split()
            if chips is None or len(parts) != 3:
                raise GameFormatError(f"line {lineno}: malformed motor line {line!r}")
            try:
                v = int(parts[1])
            except ValueError:
                raise GameFormatError(f"line {lineno}: bad motor vertex {parts[1]!r}") from None
            if v in motors:
                raise GameFormatError(f"line {lineno}: duplicate motor {v}")
            motors[v] = MotorSchedule.parse(parts[2])
        elif chips is not None:
            raise GameFormatError(f"line {lineno}: unexpected line after chips: {line!r}")
        else:
            graph_lines.append(line)
    if chips is None:
        raise GameFormatError("missing 'chips:' line")
    graph = parse_graph_lines(graph_lines)
    if len(chips) != graph.n:
        raise GameFormatError(f"chips line has {len(chips)} entries, graph has {graph.n} vertices")
    return Game(graph, tuple(chips), motors)


def serialize_game(game: Game) -> str:
    out = serialize_graph(game.graph)
    out += "chips: " + " ".join(str(c) for c in game.chips) + "\n"
    for m, s in game.motors.items():
        out += f"motor {m} {s}\n"
    return out
