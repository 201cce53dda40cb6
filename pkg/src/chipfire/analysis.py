"""Checkers for structural facts about periodic games, and the census harness.

Every checker returns a :class:`CheckReport`. A failing report carries a
replayable counterexample: the game in text format plus the vertex and time
window where the violation shows.
"""
from __future__ import annotations

import hashlib
import itertools
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .constructions import PreconditionError, _check_treelike, regime
from .engine import (
    DEFAULT_MAX_STEPS,
    BudgetExceededError,
    Game,
    SimulationResult,
    serialize_game,
    simulate,
)
from .graph import Graph, connected_graphs, generate, serialize_graph, trees
from .patterns import is_clumpy, max_clumps, runs

__all__ = [
    "InputError",
    "CheckReport",
    "scan_nonclumpy",
    "check_dichotomy",
    "check_lemma_bounds",
    "sweep_lemma_bounds",
    "check_fey_levine",
    "sweep_fey_levine",
    "check_equal_firing",
    "check_conservation",
    "check_tree_period",
    "check_motor_following",
    "check_treelike_formula",
    "CensusSpec",
    "CensusBundle",
    "census",
    "TSV_COLUMNS",
]


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    counterexample: dict | None = None

    def __bool__(self) -> bool:
        return self.passed

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        out = f"{verdict} {self.name}"
        if self.counterexample:
            details = {k: v for k, v in self.counterexample.items() if k != "game"}
            out += f" {details}"
        return out


def _ok(name: str) -> CheckReport:
    return CheckReport(name, True)


def _fail(name: str, result: SimulationResult, **details) -> CheckReport:
    return CheckReport(name, False, {"game": serialize_game(result.game), **details})


def _cyclic_has(word: str, pair: str) -> bool:
    return pair in word + word[0]


def scan_nonclumpy(result: SimulationResult) -> CheckReport:
    """Pass iff no vertex has a clumpy periodic firing pattern."""
    for v, p in enumerate(result.pfps()):
        if is_clumpy(p):
            return _fail("nonclumpy", result, vertex=v, pfp=p,
                         window=(result.t0, result.t0 + result.period - 1))
    return _ok("nonclumpy")


def check_dichotomy(result: SimulationResult) -> CheckReport:
    """Pass unless one vertex fires twice in a row and another waits twice."""
    pfps = result.pfps()
    fire2 = next((v for v, p in enumerate(pfps) if _cyclic_has(p, "11")), None)
    wait2 = next((v for v, p in enumerate(pfps) if _cyclic_has(p, "00")), None)
    if fire2 is not None and wait2 is not None:
        return _fail("dichotomy", result, vertex=fire2, other=wait2,
                     pfps=(pfps[fire2], pfps[wait2]))
    return _ok("dichotomy")


def check_lemma_bounds(result: SimulationResult, v: int, a: int, b: int) -> CheckReport:
    """Check ``1 - deg <= sum_{t=a..b} (received(v, t-1) - deg*fires(v, t)) <= deg - 1``."""
    if a < result.t0 + 1 or b < a:
        raise InputError(f"window [{a}, {b}] must satisfy t0 + 1 <= a <= b (t0={result.t0})")
    d = result.game.graph.degree(v)
    if d == 0:
        return _ok("lemma_bounds")
    total = sum(result.received(v, t - 1) - d * result.fires(v, t) for t in range(a, b + 1))
    if not (1 - d <= total <= d - 1):
        return _fail("lemma_bounds", result, vertex=v, window=(a, b), sum=total)
    return _ok("lemma_bounds")


def sweep_lemma_bounds(result: SimulationResult) -> CheckReport:
    """The window bound for every vertex and every periodic window.

    Per-step terms sum to zero over a period, so window sums are differences
    of a periodic prefix sum; the extreme windows are max minus min.
    """
    g = result.game.graph
    fire = result.periodic_firing.astype(np.int64)
    recv = fire @ g.adjacency_matrix
    deg = np.asarray(g.degrees, dtype=np.int64)
    x = np.roll(recv, 1, axis=0) - deg * fire
    prefix = np.cumsum(x, axis=0)
    span = prefix.max(axis=0) - prefix.min(axis=0)
    bad = np.nonzero(((span > deg - 1) | (prefix[-1] != 0)) & (deg > 0))[0]
    if len(bad):
        v = int(bad[0])
        col = prefix[:, v]
        k, i = int(col.argmin()), int(col.argmax())
        # row r is time t0 + p + r; stay clear of the transient
        start = result.t0 + result.period
        a, b = start + k + 1, start + i + (result.period if i <= k else 0)
        return _fail("lemma_bounds", result, vertex=v, window=(a, b),
                     sum=int(col[i] - col[k]))
    return _ok("lemma_bounds")


def _interiors(result: SimulationResult, t: int) -> tuple[list[int], list[int]]:
    g = result.game.graph
    row = [result.fires(v, t) for v in range(g.n)]
    wait_int = [v for v in range(g.n) if not row[v] and not any(row[w] for w in g.adjacency[v])]
    fire_int = [v for v in range(g.n) if row[v] and all(row[w] for w in g.adjacency[v])]
    return wait_int, fire_int


def check_fey_levine(result: SimulationResult, a: int, b: int) -> CheckReport:
    """Interior of the waiters at ``a`` or of the firers at ``b`` is empty."""
    if a < result.t0 or b < result.t0:
        raise InputError(f"times must lie in the periodic window (t0={result.t0})")
    ia, _ = _interiors(result, a)
    _, ib = _interiors(result, b)
    if ia and ib:
        return _fail("fey_levine", result, vertex=ia[0], other=ib[0], window=(a, b))
    return _ok("fey_levine")


def sweep_fey_levine(result: SimulationResult) -> CheckReport:
    """:func:`check_fey_levine` for every pair of times in one period."""
    g = result.game.graph
    fire = result.periodic_firing.astype(np.int64)
    wait = 1 - fire
    deg = np.asarray(g.degrees, dtype=np.int64)
    adj = g.adjacency_matrix
    wait_int = (wait == 1) & ((wait @ adj) == deg)
    fire_int = (fire == 1) & ((fire @ adj) == deg)
    ta = np.nonzero(wait_int.any(axis=1))[0]
    tb = np.nonzero(fire_int.any(axis=1))[0]
    if len(ta) and len(tb):
        a, b = int(ta[0]), int(tb[0])
        return _fail("fey_levine", result, vertex=int(np.nonzero(wait_int[a])[0][0]),
                     other=int(np.nonzero(fire_int[b])[0][0]),
                     window=(result.t0 + a, result.t0 + b))
    return _ok("fey_levine")


def check_equal_firing(result: SimulationResult) -> CheckReport:
    counts = result.periodic_firing.sum(axis=0)
    if counts.size and (counts != counts[0]).any():
        v = int(np.nonzero(counts != counts[0])[0][0])
        return _fail("equal_firing", result, vertex=v,
                     counts=[int(c) for c in counts])
    return _ok("equal_firing")


def check_conservation(result: SimulationResult) -> CheckReport:
    totals = result.positions.sum(axis=1)
    if (totals != totals[0]).any():
        t = int(np.nonzero(totals != totals[0])[0][0])
        return _fail("conservation", result, window=(t, t), total=int(totals[t]),
                     expected=int(totals[0]))
    return _ok("conservation")


def check_tree_period(result: SimulationResult) -> CheckReport:
    if result.period not in (1, 2):
        return _fail("tree_period", result, period=result.period)
    return _ok("tree_period")


def _require_periodic(result: SimulationResult) -> None:
    if result.t0 != 0:
        raise InputError(f"game must start in a periodic position (t0={result.t0})")


def check_motor_following(result: SimulationResult, m: int, mode: str = "auto") -> CheckReport:
    """Vertices of a motorized tree follow the motor with a delay of their distance.

    ``mode="theorem"`` checks that every run of length >= 2 in a vertex's
    cyclic record, shifted back by the distance ``D`` to the motor, lies in
    the motor's positions of the same kind. ``mode="corollary"`` checks the
    exact relation ``fires(v, t + D) == fires(m, t)``, which requires a
    nonclumpy motor with at least one max-clump. ``"auto"`` runs the
    theorem check, then the corollary check when it applies.
    """
    game = result.game
    g = game.graph
    if not g.is_tree():
        raise InputError("motor following needs a tree")
    if set(game.motors) != {m}:
        raise InputError(f"expected exactly one motor at {m}, got {sorted(game.motors)}")
    if mode not in ("auto", "theorem", "corollary"):
        raise InputError(f"unknown mode {mode!r}")
    _require_periodic(result)
    p = result.period
    motor = result.pfp(m)
    dist = g.bfs_distances(m)
    applicable = not is_clumpy(motor) and bool(max_clumps(motor, cyclic=True))
    if mode == "corollary" and not applicable:
        raise InputError(f"motor pattern {motor} is clumpy or has no max-clump")
    name = f"motor_following[{mode}]"
    if mode in ("auto", "theorem"):
        for v in range(g.n):
            rec = result.pfp(v)
            d = dist[v]
            for start, length, kind in runs(rec):
                if length < 2 and length < p:
                    continue
                for k in range(length):
                    if int(motor[(start + k - d) % p]) != kind:
                        return _fail(name, result, vertex=v, window=(start, start + length - 1),
                                     kind=kind, distance=d)
    if mode == "corollary" or (mode == "auto" and applicable):
        for v in range(g.n):
            d = dist[v]
            rec = result.pfp(v)
            for t in range(p):
                if rec[(t + d) % p] != motor[t]:
                    return _fail(name, result, vertex=v, window=(t, t + d), distance=d)
    return _ok(name)


def check_treelike_formula(result: SimulationResult, root: int, subtree: Iterable[int]) -> CheckReport:
    """Chips on a pendant tree are fixed by the root's recent firing.

    With no double fires, ``chips(v, t)`` is ``deg(v)`` if the root fired at
    ``t - D``, ``0`` if it fired at ``t - D - 1`` and ``deg(v) - 1``
    otherwise. With no double waits the complementary formula applies.
    """
    game = result.game
    if not game.is_ordinary:
        raise InputError("tree-like formula needs an ordinary game")
    if result.period < 3:
        raise InputError(f"period must be >= 3, got {result.period}")
    subtree = set(subtree)
    try:
        _check_treelike(game.graph, root, subtree, min_remainder=1)
        mode = regime(result)
    except PreconditionError as e:
        raise InputError(str(e)) from None
    g = game.graph
    dist = g.bfs_distances(root)
    p, t0 = result.period, result.t0
    root_rec = result.pfp(root)
    for v in sorted(subtree):
        d, dv = dist[v], g.degree(v)
        for j in range(p):
            now, before = int(root_rec[(j - d) % p]), int(root_rec[(j - d - 1) % p])
            if mode == "no_double_fire":
                want = dv if now else 0 if before else dv - 1
            else:
                want = dv - 1 if not now else 2 * dv - 1 if not before else dv
            got = result.chips(v, t0 + j)
            if got != want:
                return _fail(f"treelike_formula[{mode}]", result, vertex=v,
                             window=(t0 + j, t0 + j), chips=got, expected=want)
    return _ok(f"treelike_formula[{mode}]")


# -- census ---------------------------------------------------------------------

EXHAUSTIVE_FAMILIES = ("tree", "connected", "path", "cycle", "star", "complete")
RANDOM_FAMILIES = ("random_tree", "random_connected")

TSV_COLUMNS = (
    "index", "family", "n", "m", "graph_hash", "chips_hash", "t0", "period",
    "activity", "pfp_fingerprint", "clumpy_pfps", "nonclumpy", "dichotomy",
    "fey_levine", "equal_firing", "conservation", "lemma_bounds", "tree_period",
)


def _chip_cap(expr: str | int, deg: int) -> int:
    if isinstance(expr, int):
        return expr
    e = expr.replace(" ", "").replace("*", "")
    if e.isdigit():
        return int(e)
    if e.endswith("deg-1") or e.endswith("deg"):
        coef, _, rest = e.partition("deg")
        c = int(coef) if coef else 1
        return c * deg - (1 if rest == "-1" else 0)
    raise InputError(f"unsupported chip cap {expr!r}; use an integer, 'k*deg' or 'k*deg-1'")


@dataclass(frozen=True)
class CensusSpec:
    """Which games to simulate.

    ``family`` is a graph family; ``sizes`` an inclusive ``(lo, hi)`` vertex
    range; ``chip_cap`` bounds each vertex's initial chips (integer or an
    expression like ``"2deg-1"``). With ``samples=None`` every chip vector
    on every graph is enumerated; otherwise ``samples`` games are drawn
    with ``seed``.
    """

    family: str
    sizes: tuple[int, int]
    chip_cap: str | int = "2deg-1"
    samples: int | None = None
    seed: int = 0
    max_steps: int = DEFAULT_MAX_STEPS
    edge_prob: float = 0.3

    def __post_init__(self):
        lo, hi = self.sizes
        if lo < 1 or hi < lo:
            raise InputError(f"bad size range {self.sizes}")
        if self.family not in EXHAUSTIVE_FAMILIES + RANDOM_FAMILIES:
            raise InputError(f"unknown family {self.family!r}")
        if self.samples is None and self.family in RANDOM_FAMILIES:
            raise InputError(f"family {self.family} can only be sampled")
        _chip_cap(self.chip_cap, 1)

    def graphs(self, n: int) -> list[Graph]:
        if self.family == "tree":
            return trees(n)
        if self.family == "connected":
            return connected_graphs(n)
        return [generate(self.family, n)]

    def caps(self, g: Graph) -> list[int]:
        return [_chip_cap(self.chip_cap, d) for d in g.degrees]

    def games(self) -> Iterator[Game]:
        lo, hi = self.sizes
        if self.samples is None:
            for n in range(lo, hi + 1):
                if self.family == "cycle" and n < 3:
                    continue
                for g in self.graphs(n):
                    for chips in itertools.product(*(range(c + 1) for c in self.caps(g))):
                        yield Game(g, chips)
            return
        rng = random.Random(self.seed)
        pools: dict[int, list[Graph]] = {}
        for _ in range(self.samples):
            n = rng.randint(max(lo, 3) if self.family == "cycle" else lo, hi)
            if self.family in RANDOM_FAMILIES:
                g = generate(self.family, n, seed=rng.randrange(2**32), p=self.edge_prob)
            else:
                if n not in pools:
                    pools[n] = self.graphs(n)
                g = rng.choice(pools[n])
            yield Game(g, tuple(rng.randint(0, c) for c in self.caps(g)))


@dataclass
class CensusBundle:
    spec: CensusSpec
    rows: list[dict] = field(default_factory=list)
    reports: dict[str, CheckReport] = field(default_factory=dict)
    failures: dict[str, int] = field(default_factory=dict)
    errors: list[dict] = field(default_factory=list)
    periods: Counter = field(default_factory=Counter)
    pfps: Counter = field(default_factory=Counter)
    clumpy_pfps: int = 0

    @property
    def games(self) -> int:
        return len(self.rows)

    @property
    def passed(self) -> bool:
        return not self.errors and all(self.reports[k].passed for k in self.reports)

    def tsv(self) -> str:
        out = ["\t".join(TSV_COLUMNS)]
        for row in self.rows:
            out.append("\t".join(str(row[c]) for c in TSV_COLUMNS))
        out.append("")
        out += [f"# {line}" for line in self.summary().splitlines()]
        return "\n".join(out) + "\n"

    def summary(self) -> str:
        lines = [
            f"games\t{self.games}",
            f"budget_errors\t{len(self.errors)}",
            f"clumpy_pfps\t{self.clumpy_pfps}",
            "periods\t" + ",".join(f"{p}:{c}" for p, c in sorted(self.periods.items())),
            f"distinct_pfps\t{len(self.pfps)}",
        ]
        for name in sorted(self.reports):
            lines.append(f"{name}\t{'pass' if self.reports[name].passed else 'FAIL'}"
                         f"\t{self.failures.get(name, 0)}")
        return "\n".join(lines) + "\n"


def _digest(text: str) -> str:
    return hashlib.sha1(text.encode()).hexdigest()[:12]


def _analyze(index: int, game: Game, family: str, max_steps: int):
    try:
        result = simulate(game, max_steps)
    except BudgetExceededError as e:
        return index, None, [], {"index": index, "game": serialize_game(game), "steps": e.steps}
    pfps = result.pfps()
    checks = [
        scan_nonclumpy(result),
        check_dichotomy(result),
        sweep_fey_levine(result),
        check_equal_firing(result),
        check_conservation(result),
        sweep_lemma_bounds(result),
    ]
    if family in ("tree", "random_tree", "path", "star"):
        checks.append(check_tree_period(result))
    verdicts = {c.name: "pass" if c.passed else "FAIL" for c in checks}
    act = Fraction(pfps[0].count("1"), result.period)
    row = {
        "index": index,
        "family": family,
        "n": game.n,
        "m": game.graph.m,
        "graph_hash": _digest(serialize_graph(game.graph)),
        "chips_hash": _digest(",".join(map(str, game.chips))),
        "t0": result.t0,
        "period": result.period,
        "activity": f"{act.numerator}/{act.denominator}",
        "pfp_fingerprint": _digest(" ".join(sorted(pfps))),
        "clumpy_pfps": sum(is_clumpy(p) for p in pfps),
        "tree_period": verdicts.pop("tree_period", "-"),
        **verdicts,
    }
    failed = [c for c in checks if not c.passed]
    return index, (row, pfps), failed, None


def _analyze_chunk(args):
    chunk, family, max_steps = args
    return [_analyze(i, g, family, max_steps) for i, g in chunk]


def _chunks(items: Iterable, size: int) -> Iterator[list]:
    it = iter(items)
    while chunk := list(itertools.islice(it, size)):
        yield chunk


def census(spec: CensusSpec, workers: int = 1, chunk_size: int = 2000) -> CensusBundle:
    """Simulate every game of ``spec`` and run all checks on each.

    Results are merged in input order, so output is deterministic for any
    ``workers``. Budget overruns are recorded in ``errors``.
    """
    bundle = CensusBundle(spec)
    names = ["nonclumpy", "dichotomy", "fey_levine", "equal_firing", "conservation", "lemma_bounds"]
    if spec.family in ("tree", "random_tree", "path", "star"):
        names.append("tree_period")
    for name in names:
        bundle.reports[name] = _ok(name)
    jobs = ((chunk, spec.family, spec.max_steps)
            for chunk in _chunks(enumerate(spec.games()), chunk_size))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            outputs = pool.map(_analyze_chunk, jobs)
            _merge(bundle, outputs)
    else:
        _merge(bundle, map(_analyze_chunk, jobs))
    return bundle


def _merge(bundle: CensusBundle, outputs) -> None:
    for chunk in outputs:
        for index, payload, failed, error in chunk:
            if error is not None:
                bundle.errors.append(error)
                continue
            row, pfps = payload
            bundle.rows.append(row)
            bundle.periods[row["period"]] += 1
            bundle.pfps.update(pfps)
            bundle.clumpy_pfps += row["clumpy_pfps"]
            for rep in failed:
                bundle.failures[rep.name] = bundle.failures.get(rep.name, 0) + 1
                if bundle.reports[rep.name].passed:
                    bundle.reports[rep.name] = CheckReport(
                        rep.name, False, {**rep.counterexample, "index": index})
