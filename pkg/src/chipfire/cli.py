"""Command-line interface.

Exit codes: 0 success, 1 a check failed (witness printed), 2 bad input.
"""
from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

from . import _kernel
from .analysis import TSV_COLUMNS, CensusSpec, InputError, census
from .constructions import (
    PreconditionError,
    PruneConsistencyError,
    RealizationNotFoundError,
    Realizer,
    RealizerMismatchError,
    complement,
    motorize_to_ordinary,
    prune_leaf,
    prune_treelike,
    realizer_for,
)
from .engine import (
    DEFAULT_MAX_STEPS,
    BudgetExceededError,
    Game,
    GameFormatError,
    StateCorruptionError,
    parse_game,
    serialize_game,
    simulate,
)
from .graph import GraphError
from .patterns import (
    activity,
    disagreement_mu,
    is_clumpy,
    is_primitive,
    max_clumps,
    render_sectors,
    sectors,
    signed_sum_M,
)
from .render import position_dot, write_frames
from .verifier import (
    ConsistencyError,
    build_sector_graph,
    find_negative_cycle,
    path_weight_of_pair,
    sector_graph_dot,
    summarize,
)

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (
    OSError,
    GraphError,
    GameFormatError,
    StateCorruptionError,
    BudgetExceededError,
    PreconditionError,
    PruneConsistencyError,
    RealizerMismatchError,
    RealizationNotFoundError,
    InputError,
    ValueError,
)


class UsageError(Exception):
    pass


def _read_game(path: str) -> Game:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_game(text)


def _write(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- simulate ----------------------------------------------------------------

def cmd_simulate(args) -> int:
    game = _read_game(args.game)
    result = simulate(game, args.max_steps, backend=args.backend)
    lines = []
    if args.emit == "summary":
        lines.append(f"t0={result.t0} period={result.period}")
        for v, p in enumerate(result.pfps()):
            act = activity(p)
            tag = " clumpy" if is_clumpy(p) else ""
            lines.append(f"v{v}\tpfp={p}\tactivity={act.numerator}/{act.denominator}{tag}")
    elif args.emit == "trace":
        lines.append(f"t0={result.t0} period={result.period}")
        for t in range(result.length):
            chips = " ".join(str(c) for c in result.position(t))
            fired = "".join(str(int(b)) for b in result.firing[t])
            lines.append(f"t={t}\tchips={chips}\tfires={fired}")
    else:
        n = game.n
        lines.append("\t".join(["t", "periodic"] + [f"c{v}" for v in range(n)]
                               + [f"f{v}" for v in range(n)]))
        for t in range(result.length):
            row = [str(t), str(int(t >= result.t0))]
            row += [str(c) for c in result.position(t)]
            row += [str(int(b)) for b in result.firing[t]]
            lines.append("\t".join(row))
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -- patterns ----------------------------------------------------------------

def cmd_patterns(args) -> int:
    p = args.word
    out = [
        f"word\t{p}",
        f"clumpy\t{str(is_clumpy(p)).lower()}",
        f"primitive\t{str(is_primitive(p)).lower()}",
    ]
    act = activity(p)
    out.append(f"activity\t{act.numerator}/{act.denominator}")
    clumps = max_clumps(p, cyclic=True)
    out.append("max_clumps\t" + (" ".join(f"[{c.start},{c.end}]{c.kind}" for c in clumps) or "-"))
    dec = sectors(p)
    out.append("sectors\t" + " ".join(f"[{s.start},{s.end}]{s.kind}" for s in dec.sectors))
    out.append(render_sectors(p))
    if args.other is not None:
        q = args.other
        if len(q) != len(p):
            raise UsageError(f"words differ in length: {len(p)} != {len(q)}")
        m = signed_sum_M(p, q)
        w = path_weight_of_pair(p, q)
        out += [f"other\t{q}", f"M\t{m}", f"mu\t{disagreement_mu(p, q)}", f"path_weight\t{w}"]
        if m != w or m < 0:
            sys.stdout.write("\n".join(out) + "\n")
            print(f"FAIL signed sum {m} vs path weight {w}", file=sys.stderr)
            return EXIT_CHECK
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


# -- verify-sector-graph -----------------------------------------------------

def cmd_verify(args) -> int:
    start = time.perf_counter()
    graph = build_sector_graph()
    cycle = find_negative_cycle(graph)
    elapsed = time.perf_counter() - start
    sys.stdout.write(summarize(graph, cycle))
    if args.timing:
        print(f"seconds\t{elapsed:.4f}")
    if args.dot:
        Path(args.dot).write_text(sector_graph_dot(graph, cycle))
    return EXIT_OK if cycle is None else EXIT_CHECK


# -- transform ---------------------------------------------------------------

def _parse_realizer(spec: str, game: Game) -> tuple[int, Realizer]:
    parts = spec.split(":")
    try:
        m = int(parts[0])
    except ValueError:
        raise UsageError(f"bad realizer spec {spec!r}") from None
    if m not in game.motors:
        raise UsageError(f"vertex {m} is not a motor")
    sched = game.motors[m]
    if len(parts) == 2 and parts[1] == "auto":
        if sched.transient:
            raise UsageError(f"motor {m} has a transient; supply a realizer file")
        return m, realizer_for(sched.cycle)
    if len(parts) != 3:
        raise UsageError(f"realizer spec must be M:PATH:U or M:auto, got {spec!r}")
    try:
        u = int(parts[2])
    except ValueError:
        raise UsageError(f"bad witness vertex in {spec!r}") from None
    return m, Realizer(_read_game(parts[1]), u, sched)


def _parse_prune(spec: str) -> tuple[str, int, list[int]]:
    kind, _, rest = spec.partition(":")
    try:
        if kind == "leaf":
            return kind, int(rest), []
        if kind == "tree":
            root, _, verts = rest.partition(":")
            return kind, int(root), [int(x) for x in verts.split(",") if x]
    except ValueError:
        pass
    raise UsageError(f"prune spec must be leaf:V or tree:ROOT:V1,V2,..., got {spec!r}")


def _cosim_motorized(game: Game, new: Game) -> str | None:
    before = simulate(game)
    after = simulate(new)
    horizon = 3 * math.lcm(before.period, after.period)
    for v in range(game.n):
        if before.firing_sequence(v, horizon) != after.firing_sequence(v, horizon):
            return f"vertex {v} fires differently within {horizon} steps"
    return None


def _cosim_complement(game: Game, new: Game) -> str | None:
    before = simulate(game)
    after = simulate(new)
    horizon = 3 * before.period
    for v in range(game.n):
        a = before.firing_sequence(v, horizon)
        b = after.firing_sequence(v, horizon)
        if any(x == y for x, y in zip(a, b)):
            return f"vertex {v} is not inverted: {a} vs {b}"
    return None


def _cosim_prune(game: Game, new: Game, removed: set[int]) -> str | None:
    before = simulate(game)
    after = simulate(new)
    kept = [v for v in range(game.n) if v not in removed]
    if after.t0 != 0 or after.period != before.period:
        return f"period changed from {before.period} to {after.period} (t0={after.t0})"
    for i, v in enumerate(kept):
        if after.pfp(i) != before.pfp(v):
            return f"vertex {v} pattern {before.pfp(v)} became {after.pfp(i)}"
    return None


def cmd_transform(args) -> int:
    game = _read_game(args.game)
    report = []
    if args.realizer:
        realizers = dict(_parse_realizer(s, game) for s in args.realizer)
        new, rep = motorize_to_ordinary(game, realizers)
        report = rep.text().splitlines()
        failure = _cosim_motorized(game, new) if args.check else None
    elif args.complement:
        new = complement(game)
        report = [f"vertices: {new.n}"]
        failure = _cosim_complement(game, new) if args.check else None
    else:
        kind, v, verts = _parse_prune(args.prune)
        if kind == "leaf":
            new = prune_leaf(game, v)
            removed = {v}
        else:
            new = prune_treelike(game, v, verts)
            removed = set(verts)
        kept = [x for x in range(game.n) if x not in removed]
        report = [f"vertices: {new.n}", "kept: " + " ".join(map(str, kept))]
        failure = _cosim_prune(game, new, removed) if args.check else None
    if args.check:
        report.append("check: " + ("ok" if failure is None else f"FAIL {failure}"))
    text = serialize_game(new) + "".join(f"# {line}\n" for line in report)
    _write(text, args.out)
    if failure is not None:
        print(f"FAIL {failure}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


# -- census ------------------------------------------------------------------

def _size_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise UsageError(f"size range must look like 2..5, got {text!r}") from None


def cmd_census(args) -> int:
    spec = CensusSpec(
        family=args.family,
        sizes=_size_range(args.size_range),
        chip_cap=args.chip_cap,
        samples=None if args.exhaustive else args.sample,
        seed=args.seed,
        max_steps=args.max_steps,
        edge_prob=args.edge_prob,
    )
    bundle = census(spec, workers=args.workers)
    if args.out:
        Path(args.out).write_text(bundle.tsv())
    sys.stdout.write(bundle.summary())
    failed = [r for r in bundle.reports.values() if not r.passed]
    for rep in failed:
        print(rep.line(), file=sys.stderr)
        print(rep.counterexample["game"], file=sys.stderr, end="")
    for err in bundle.errors[:5]:
        print(f"budget exceeded on game {err['index']}", file=sys.stderr)
    return EXIT_OK if bundle.passed else EXIT_CHECK


# -- render ------------------------------------------------------------------

def cmd_render(args) -> int:
    game = _read_game(args.game)
    if args.format == "dot":
        _write(position_dot(game), args.out)
        return EXIT_OK
    if not args.out:
        raise UsageError("--format frames needs --out DIR")
    paths = write_frames(simulate(game, args.max_steps), args.out)
    print(f"wrote {len(paths)} frames to {args.out}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------

CENSUS_EPILOG = "TSV columns: " + ", ".join(TSV_COLUMNS) + (
    ". The file ends with '#'-prefixed summary lines."
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chipfire", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version="chipfire 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a game to periodicity")
    p.add_argument("game", help="game file ('-' for stdin)")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--emit", choices=("summary", "trace", "tsv"), default="summary")
    p.add_argument("--backend", choices=sorted(_kernel.KERNELS), default=None)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("patterns", help="classify a cyclic word, or compare two")
    p.add_argument("word")
    p.add_argument("other", nargs="?")
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("verify-sector-graph", help="build the sector-state digraph and search for negative cycles")
    p.add_argument("--dot", help="write the digraph in DOT format")
    p.add_argument("--timing", action="store_true", help="also print elapsed seconds")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="motors to ordinary game, complement or pruning")
    p.add_argument("game")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--realizer", action="append", metavar="M:PATH:U|M:auto",
                      help="realizer game for motor M with witness U (repeatable)")
    mode.add_argument("--complement", action="store_true")
    mode.add_argument("--prune", metavar="leaf:V|tree:ROOT:V1,V2")
    p.add_argument("--check", action="store_true", help="co-simulate and verify the result")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("census", help="simulate a family of games and run all checks",
                       epilog=CENSUS_EPILOG)
    p.add_argument("--family", required=True)
    p.add_argument("--size-range", required=True, metavar="LO..HI")
    p.add_argument("--chip-cap", default="2deg-1", help="integer, 'k*deg' or 'k*deg-1'")
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--exhaustive", action="store_true")
    how.add_argument("--sample", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--edge-prob", type=float, default=0.3)
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="TSV catalog path")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("render", help="DOT output of a position or of every step")
    p.add_argument("game")
    p.add_argument("--format", choices=("dot", "frames"), default="dot")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("-o", "--out", help="file for dot, directory for frames")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyError as e:
        print(f"FAIL {e}", file=sys.stderr)
        return EXIT_CHECK
    except (UsageError, *INPUT_ERRORS) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
