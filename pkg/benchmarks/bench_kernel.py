"""Compare the compiled and pure-Python simulation kernels.

    python3 benchmarks/bench_kernel.py [--games N] [--size N] [--repeat R]
"""
import argparse
import random
import time

from chipfire._kernel import KERNELS
from chipfire.engine import Game, simulate
from chipfire.graph import generate


def workload(count, size, seed):
    rng = random.Random(seed)
    games = []
    for _ in range(count):
        g = generate("random_connected", size, seed=rng.randrange(2**32), p=0.2)
        games.append(Game(g, tuple(rng.randint(0, 2 * d - 1) for d in g.degrees)))
    # a long-period game: a slow glider on a big cycle
    c = generate("cycle", 200)
    games.append(Game(c, (2,) + (1,) * 100 + (0,) * 99))
    return games


def bench(backend, games, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for game in games:
            simulate(game, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--games", type=int, default=300)
    ap.add_argument("--size", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    games = workload(args.games, args.size, args.seed)
    steps = sum(simulate(g, backend="python").length for g in games)

    # both kernels must agree before timing means anything
    for g in games:
        ref = simulate(g, backend="python")
        for name in KERNELS:
            r = simulate(g, backend=name)
            assert (r.t0, r.period) == (ref.t0, ref.period), name
            assert (r.positions == ref.positions).all(), name

    print(f"{len(games)} games, {steps} recorded steps")
    times = {name: bench(name, games, args.repeat) for name in KERNELS}
    for name, secs in times.items():
        print(f"{name:8s} {secs:8.4f} s  {steps / secs:12.0f} steps/s")
    if "cython" in times:
        print(f"speedup  {times['python'] / times['cython']:.1f}x")


if __name__ == "__main__":
    main()
