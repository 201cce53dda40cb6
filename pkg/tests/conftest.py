import random

import pytest
from hypothesis import settings

from chipfire.engine import Game, MotorSchedule
from chipfire.graph import generate

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_game(rng: random.Random, n_lo=1, n_hi=8, cap="3deg", motors=0, kind="random_connected"):
    n = rng.randint(max(n_lo, motors), n_hi)
    g = generate(kind, n, seed=rng.randrange(2**32), p=0.35)
    mult = 3 if cap == "3deg" else 2
    chips = [rng.randint(0, max(0, mult * d - (cap == "2deg-1"))) for d in g.degrees]
    mots = {}
    if motors:
        cyc = "".join(rng.choice("01") for _ in range(rng.randint(1, 5)))
        for m in rng.sample(range(n), motors):
            trans = "".join(rng.choice("01") for _ in range(rng.randint(0, 3)))
            # equal activity keeps motorized games eventually periodic
            r = rng.randrange(len(cyc))
            mots[m] = MotorSchedule(trans, cyc[r:] + cyc[:r])
            chips[m] = rng.randint(-3, 3)
    return Game(g, tuple(chips), mots)


@pytest.fixture
def rng():
    return random.Random(12345)
