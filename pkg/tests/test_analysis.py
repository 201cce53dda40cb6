import random

import numpy as np
import pytest

from chipfire.analysis import (
    CensusSpec,
    InputError,
    census,
    check_conservation,
    check_dichotomy,
    check_equal_firing,
    check_fey_levine,
    check_lemma_bounds,
    check_motor_following,
    check_treelike_formula,
    check_tree_period,
    scan_nonclumpy,
    sweep_fey_levine,
    sweep_lemma_bounds,
)
from chipfire.constructions import complement
from chipfire.engine import Game, MotorSchedule, SimulationResult, parse_game, rebase, simulate
from chipfire.graph import Graph, generate

from conftest import random_game

K2 = generate("path", 2)
P3 = generate("path", 3)
C3 = generate("cycle", 3)


def fake_result(game, firing_rows, positions=None):
    firing = np.array(firing_rows, dtype=np.uint8)
    if positions is None:
        positions = np.zeros(firing.shape, dtype=np.int64)
    return SimulationResult(game, 0, len(firing_rows), np.asarray(positions), firing)


def test_scan_nonclumpy_examples():
    assert scan_nonclumpy(simulate(Game(P3, (1, 0, 1)))).passed
    assert scan_nonclumpy(simulate(Game(K2, (1, 1)))).passed
    bad = fake_result(Game(K2, (0, 0)), [[1, 0], [1, 0], [0, 1], [0, 1]])
    rep = scan_nonclumpy(bad)
    assert not rep.passed
    assert rep.counterexample["vertex"] == 0
    assert rep.counterexample["pfp"] == "1100"
    # counterexamples are replayable game text
    assert parse_game(rep.counterexample["game"]) == bad.game


def test_dichotomy_examples():
    assert check_dichotomy(simulate(Game(C3, (2, 1, 0)))).passed
    assert check_dichotomy(simulate(Game(K2, (1, 1)))).passed
    bad = fake_result(Game(K2, (0, 0)), [[1, 0], [1, 0], [0, 1]])
    assert not check_dichotomy(bad).passed


def test_dichotomy_modes_swap_under_complement():
    game = Game(C3, (2, 1, 0))
    r = simulate(game)
    rc = simulate(complement(game))
    assert any("00" in p + p[0] for p in r.pfps())
    assert any("11" in p + p[0] for p in rc.pfps())
    assert check_dichotomy(r).passed and check_dichotomy(rc).passed


def test_lemma_bounds_examples():
    r = simulate(Game(P3, (1, 0, 1)))
    assert check_lemma_bounds(r, 1, 1, 1).passed
    for v in range(3):
        assert check_lemma_bounds(r, v, 1, 2).passed
    with pytest.raises(InputError):
        check_lemma_bounds(r, 0, 0, 1)


def brute_lemma(result):
    """Every window of length up to two periods, summed term by term."""
    g = result.game.graph
    p, t0 = result.period, result.t0
    for v in range(g.n):
        d = g.degree(v)
        for a in range(t0 + 1, t0 + 1 + p):
            total = 0
            for b in range(a, a + 2 * p):
                total += result.received(v, b - 1) - d * result.fires(v, b)
                if d and not (1 - d <= total <= d - 1):
                    return False
    return True


@pytest.mark.parametrize("seed", range(60))
def test_lemma_sweep_matches_brute_force(seed):
    r = simulate(random_game(random.Random(seed), n_hi=7))
    assert sweep_lemma_bounds(r).passed == brute_lemma(r) is True


def test_lemma_sweep_flags_injected_violation():
    # vertex 0 of K2 "receives" without ever firing in this fake record
    bad = fake_result(Game(K2, (0, 0)), [[0, 1], [0, 1], [0, 1]])
    rep = sweep_lemma_bounds(bad)
    assert not rep.passed
    assert rep.counterexample["vertex"] == 0


def test_fey_levine_examples():
    r = simulate(Game(K2, (1, 1)))
    assert check_fey_levine(r, 0, 0).passed
    r = simulate(Game(C3, (2, 1, 0)))
    assert check_fey_levine(r, 0, 0).passed
    bad = fake_result(Game(K2, (0, 0)), [[0, 0], [1, 1]])
    assert not check_fey_levine(bad, 0, 1).passed
    assert not sweep_fey_levine(bad).passed


@pytest.mark.parametrize("seed", range(40))
def test_fey_levine_sweep_matches_pairwise(seed):
    r = simulate(random_game(random.Random(seed), n_hi=8))
    pairwise = all(check_fey_levine(r, r.t0 + a, r.t0 + b).passed
                   for a in range(r.period) for b in range(r.period))
    assert sweep_fey_levine(r).passed == pairwise is True


def test_equal_firing_and_conservation():
    r = simulate(Game(C3, (2, 1, 0)))
    assert check_equal_firing(r).passed and check_conservation(r).passed
    bad = fake_result(Game(K2, (0, 0)), [[1, 0], [1, 0]], [[1, 0], [1, 1]])
    assert not check_equal_firing(bad).passed
    assert not check_conservation(bad).passed


def test_tree_period_check():
    assert check_tree_period(simulate(Game(P3, (1, 0, 1)))).passed
    assert not check_tree_period(simulate(Game(C3, (2, 1, 0)))).passed


def periodic(game):
    return simulate(rebase(simulate(game)))


def test_motor_following_star():
    star = generate("star", 4)
    r = periodic(Game(star, (0, 0, 0, 0), {0: MotorSchedule.periodic("100")}))
    assert r.t0 == 0
    assert check_motor_following(r, 0, "corollary").passed
    m = r.pfp(0)
    for leaf in (1, 2, 3):
        assert r.pfp(leaf) == m[-1] + m[:-1]


def test_motor_following_alternating_is_vacuous():
    r = periodic(Game(P3, (0, 0, 0), {0: MotorSchedule.periodic("10")}))
    assert check_motor_following(r, 0, "theorem").passed
    with pytest.raises(InputError):
        check_motor_following(r, 0, "corollary")


def test_motor_following_wave_on_path():
    g = generate("path", 6)
    r = periodic(Game(g, (0,) * 6, {0: MotorSchedule.periodic("10000")}))
    assert check_motor_following(r, 0).passed
    for v in range(6):
        t = r.pfp(v).index("1")
        assert t == (r.pfp(0).index("1") + v) % 5


def test_motor_following_guards():
    c = generate("cycle", 4)
    r = periodic(Game(c, (0,) * 4, {0: MotorSchedule.periodic("100")}))
    with pytest.raises(InputError):
        check_motor_following(r, 0)
    r = simulate(Game(P3, (0, 3, 0), {0: MotorSchedule.periodic("10")}))
    with pytest.raises(InputError):
        check_motor_following(r, 0)


def test_motor_following_detects_violation():
    g = generate("path", 3)
    game = Game(g, (0, 0, 0), {0: MotorSchedule.periodic("1100")})
    bad = fake_result(game, [[1, 0, 0], [1, 0, 0], [0, 0, 1], [0, 1, 1]])
    assert not check_motor_following(bad, 0, "theorem").passed


def glider_with_leaf():
    # cycle 0..4 with a leaf 5 on vertex 0
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5)])
    import itertools
    for chips in itertools.product(*(range(2 * d) for d in g.degrees)):
        r = simulate(Game(g, chips))
        if r.period >= 3 and not any("11" in p + p[0] for p in r.pfps()):
            return simulate(rebase(r))
    raise AssertionError


def test_treelike_formula_example():
    r = glider_with_leaf()
    assert check_treelike_formula(r, 0, [5]).passed
    root = r.pfp(0)
    for t in range(r.period):
        if root[(t - 1) % r.period] == "1":
            assert r.chips(5, t) == 1


def test_treelike_formula_complement_mode():
    r = glider_with_leaf()
    rc = simulate(complement(r.game))
    rep = check_treelike_formula(rc, 0, [5])
    assert rep.passed and "no_double_wait" in rep.name


def test_treelike_formula_guards():
    with pytest.raises(InputError):
        check_treelike_formula(simulate(Game(P3, (1, 0, 1))), 1, [2])


def test_census_small_exhaustive():
    b = census(CensusSpec("cycle", (3, 3), chip_cap=3))
    assert b.games == 64
    assert b.clumpy_pfps == 0 and b.passed
    b = census(CensusSpec("tree", (1, 5)))
    assert set(b.periods) <= {1, 2} and b.passed


def test_census_determinism_and_workers():
    spec = CensusSpec("random_connected", (2, 7), chip_cap="3deg", samples=300, seed=5)
    a = census(spec)
    b = census(spec, workers=2, chunk_size=37)
    assert a.tsv() == b.tsv()
    assert a.tsv() == census(spec).tsv()


def test_census_records_budget_errors():
    spec = CensusSpec("cycle", (6, 6), chip_cap=3, samples=20, max_steps=2)
    b = census(spec)
    assert b.errors and not b.passed
    assert "game" in b.errors[0]


@pytest.mark.parametrize("kwargs", [
    dict(family="bogus", sizes=(1, 2)),
    dict(family="tree", sizes=(3, 2)),
    dict(family="random_tree", sizes=(2, 3)),
    dict(family="tree", sizes=(2, 3), chip_cap="lots"),
])
def test_census_spec_errors(kwargs):
    with pytest.raises(InputError):
        CensusSpec(**kwargs)
