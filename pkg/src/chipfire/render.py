"""Graphviz DOT output for game positions."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .engine import Game, SimulationResult

__all__ = ["position_dot", "frames", "write_frames"]


def position_dot(
    game: Game,
    chips: Sequence[int] | None = None,
    firing: Sequence[int] | None = None,
    title: str | None = None,
) -> str:
    """DOT of the graph with chip counts as vertex labels.

    Motors are drawn as boxes; vertices in ``firing`` are filled.
    """
    if chips is None:
        chips = game.chips
    lines = ["graph G {"]
    if title:
        lines.append(f'  label="{title}";')
    lines.append("  node [shape=circle];")
    for v in range(game.n):
        attrs = [f'label="{v}: {chips[v]}"']
        if v in game.motors:
            attrs.append("shape=box")
        if firing is not None and firing[v]:
            attrs += ["style=filled", "fillcolor=gray80"]
        lines.append(f"  v{v} [{', '.join(attrs)}];")
    for u, v in game.graph.edges:
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def frames(result: SimulationResult) -> list[str]:
    """One DOT document per time step in ``[0, t0 + period)``."""
    out = []
    for t in range(result.length):
        label = f"t={t}" + (" (periodic)" if t >= result.t0 else "")
        out.append(position_dot(result.game, result.position(t),
                                result.firing[t].tolist(), title=label))
    return out


def write_frames(result: SimulationResult, outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    docs = frames(result)
    width = len(str(len(docs) - 1))
    paths = []
    for t, doc in enumerate(docs):
        path = outdir / f"frame_{t:0{width}d}.dot"
        path.write_text(doc)
        paths.append(path)
    return paths
