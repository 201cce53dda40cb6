import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chipfire.engine import Game, simulate
from chipfire.graph import generate
from chipfire.patterns import (
    activity,
    disagreement_mu,
    is_clumpy,
    is_clumpy_sequence,
    is_primitive,
    max_clumps,
    nonclumpy_words,
    pfp_extract,
    render_sectors,
    runs,
    sectors,
    signed_sum_M,
)

words = st.text("01", min_size=1, max_size=32)


def pairs(max_size=32):
    return st.integers(1, max_size).flatmap(
        lambda n: st.tuples(st.text("01", min_size=n, max_size=n),
                            st.text("01", min_size=n, max_size=n)))


def test_pfp_extract_examples():
    assert pfp_extract(simulate(Game(generate("path", 3), (1, 0, 1))), 1) == "01"
    assert pfp_extract(simulate(Game(generate("path", 2), (1, 1))), 0) == "1"
    assert pfp_extract(simulate(Game(generate("cycle", 3), (2, 1, 0))), 2) == "001"


def test_is_clumpy_examples():
    assert is_clumpy("011010")
    assert not is_clumpy("0101")
    assert is_clumpy("0011")
    # factors wrap around the end
    assert is_clumpy("1001")
    assert not is_clumpy("1")


def test_is_clumpy_sequence_examples():
    assert not is_clumpy_sequence("10010")
    assert is_clumpy_sequence("11010010")
    assert not is_clumpy_sequence("1")
    assert not is_clumpy_sequence("1001")


def test_max_clumps_examples():
    assert [(c.start, c.end, c.kind) for c in max_clumps("0110")] == [(1, 2, 1)]
    assert max_clumps("010101") == []
    got = [(c.start, c.end, c.kind) for c in max_clumps("1000010000", cyclic=True)]
    assert got == [(1, 4, 0), (6, 9, 0)]


def test_max_clumps_cyclic_wrap():
    got = [(c.start, c.end, c.kind) for c in max_clumps("1001", cyclic=True)]
    assert got == [(1, 2, 0), (3, 4, 1)]
    assert max_clumps("1111", cyclic=True) == []


def _decomp(word):
    return [(s.start, s.end, s.kind) for s in sectors(word).sectors]


def test_sectors_examples():
    assert _decomp("010001001101100101011") == [(0, 7, 0), (8, 12, 1), (13, 14, 0), (15, 20, 1)]
    assert _decomp("0011") == [(0, 1, 0), (2, 3, 1)]
    assert _decomp("0101") == [(0, 3, 0)]
    assert _decomp("01011") == [(0, 4, 1)]
    assert _decomp("111") == [(0, 2, 1)]
    assert _decomp("1") == [(0, 0, 1)]


def test_alternating_kind_switch():
    assert [(s.start, s.end, s.kind) for s in sectors("0101", 1).sectors] == [(0, 3, 1)]


def test_render_sectors_layout():
    out = render_sectors("010001001101100101011").splitlines()
    assert out[1] == "010001001101100101011"
    assert out[0] == "        [---]  [----]"
    assert out[2] == "[------]     []"


def _valid_sector(p, x, length):
    n = len(p)
    y = x + length - 1
    b = p[y % n]
    if p[x % n] != b or p[(y - 1) % n] != b:
        return False
    if p[(x - 1) % n] == b or p[(x - 2) % n] == b:
        return False
    return not any(p[i % n] != b and p[(i + 1) % n] != b for i in range(x, y))


def oracle_decompositions(p):
    """Every partition of the cyclic word into intervals that are all sectors."""
    n = len(p)
    found = []
    for r in range(2, n + 1):
        for starts in itertools.combinations(range(n), r):
            secs = []
            for j, s in enumerate(starts):
                length = (starts[(j + 1) % r] - s) % n
                if not _valid_sector(p, s, length):
                    break
                secs.append((s, (s + length - 1) % n, int(p[(s + length - 1) % n])))
            else:
                found.append(secs)
    return found


@pytest.mark.parametrize("n", range(4, 11))
def test_sectors_match_definition_oracle(n):
    checked = 0
    for x in range(1 << n):
        p = format(x, f"0{n}b")
        if len({k for _, length, k in runs(p) if length >= 2}) < 2:
            continue
        found = oracle_decompositions(p)
        assert len(found) == 1, p
        assert sorted(found[0]) == sorted(_decomp(p)), p
        checked += 1
    assert checked > 0


@given(words)
def test_sector_partition_properties(p):
    n = len(p)
    dec = sectors(p)
    assert sum(s.length(n) for s in dec.sectors) == n
    covered = sorted(i for s in dec.sectors for i in s.indices(n))
    assert covered == list(range(n))
    k = len(dec.sectors)
    if k >= 2:
        assert sum(dec.delta) == k
        kinds = [s.kind for s in dec.sectors]
        assert all(kinds[i] != kinds[(i + 1) % k] for i in range(k))
        for s in dec.sectors:
            assert _valid_sector(p, s.start, s.length(n))
    else:
        assert sum(dec.delta) == 0
    if not is_clumpy(p):
        assert k == 1


def test_signed_sum_examples():
    assert signed_sum_M("0011", "0011", range(4)) == 0
    assert signed_sum_M("0011", "0101", range(4)) == 0
    assert signed_sum_M("0110", "0110", []) == 0


def test_signed_sum_by_hand():
    # p = 0011: sectors [0,1] kind 0 and [2,3] kind 1, s = (-1,-1,+1,+1), delta at 1 and 3
    # q = 1100: sectors [0,1] kind 1 and [2,3] kind 0, s = (+1,+1,-1,-1), delta at 1 and 3
    p, q = "0011", "1100"
    s_p, s_q = (-1, -1, 1, 1), (1, 1, -1, -1)
    d = (0, 1, 0, 1)
    want = sum(
        s_p[i] * (int(p[i]) - int(q[i - 1])) + s_q[i] * (int(q[i]) - int(p[i - 1])) - 2 * d[i]
        for i in range(4)
    )
    assert signed_sum_M(p, q) == want == 0


def test_length_mismatch():
    with pytest.raises(ValueError):
        signed_sum_M("01", "011")
    with pytest.raises(ValueError):
        disagreement_mu("01", "011")


@given(pairs())
def test_full_cycle_signed_sum_nonnegative(pq):
    p, q = pq
    assert signed_sum_M(p, q) >= 0
    assert signed_sum_M(p, q, alternating_kind=1) >= 0


def test_disagreement_examples():
    assert disagreement_mu("10", "10", [0, 1]) == 0
    assert disagreement_mu("10", "01", [0]) == 0
    assert disagreement_mu("1100", "0011", range(4)) == 0


@given(st.integers(1, 20).flatmap(
    lambda n: st.tuples(st.permutations("1" * (n // 2) + "0" * (n - n // 2)),
                        st.permutations("1" * (n // 2) + "0" * (n - n // 2)))))
def test_disagreement_vanishes_with_equal_weight(pq):
    p, q = ("".join(x) for x in pq)
    assert disagreement_mu(p, q) == 0


def test_activity_examples():
    assert activity("100") == Fraction(1, 3)
    assert activity("1") == Fraction(1, 1)
    assert activity("0101") == Fraction(1, 2)


@given(words)
def test_activity_denominator_divides_length(p):
    assert len(p) % activity(p).denominator == 0


def test_is_primitive():
    assert is_primitive("100")
    assert not is_primitive("1010")
    assert not is_primitive("111")
    assert is_primitive("1")


def test_nonclumpy_words_oracle():
    for n in range(1, 9):
        want = [w for w in ("".join(b) for b in itertools.product("01", repeat=n))
                if not ("00" in w + w[0] and "11" in w + w[0])]
        assert nonclumpy_words(n) == want


def test_runs_cover_word():
    rng = random.Random(3)
    for _ in range(200):
        w = "".join(rng.choice("01") for _ in range(rng.randint(1, 15)))
        for cyclic in (True, False):
            rs = runs(w, cyclic)
            assert sum(length for _, length, _ in rs) == len(w)
            for s, length, k in rs:
                assert all(w[(s + i) % len(w)] == str(k) for i in range(length))
