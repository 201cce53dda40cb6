"""Calculus of (cyclic) binary words: clumpiness, max-clumps, sectors.

Words are plain ``'0'/'1'`` strings. Cyclic words index modulo their
length everywhere.

A *b-sector* of a cyclic word is an interval ``[x, y]`` with
``p[x] = p[y-1] = p[y] = b``, ``p[x-1] = p[x-2] = 1-b`` and no two
consecutive ``1-b`` symbols inside. Words whose runs of length >= 2 are
all of one kind b (including constant words) form a single b-sector;
strictly alternating words form a single 0-sector by default.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

__all__ = [
    "Sector",
    "SectorDecomposition",
    "MaxClump",
    "pfp_extract",
    "is_clumpy",
    "is_clumpy_sequence",
    "is_primitive",
    "max_clumps",
    "runs",
    "sectors",
    "signed_sum_M",
    "disagreement_mu",
    "activity",
    "render_sectors",
    "nonclumpy_words",
]


def _check(word: str) -> str:
    if not word or any(c not in "01" for c in word):
        raise ValueError(f"expected a nonempty 0/1 string, got {word!r}")
    return word


def _check_pair(p: str, q: str) -> None:
    _check(p)
    _check(q)
    if len(p) != len(q):
        raise ValueError(f"length mismatch: {len(p)} != {len(q)}")


@dataclass(frozen=True)
class Sector:
    start: int
    end: int  # inclusive; may be < start when the sector wraps
    kind: int

    def indices(self, n: int) -> list[int]:
        return [(self.start + k) % n for k in range(self.length(n))]

    def length(self, n: int) -> int:
        return (self.end - self.start) % n + 1


@dataclass(frozen=True)
class SectorDecomposition:
    word: str
    sectors: tuple[Sector, ...]
    s: tuple[int, ...]
    delta: tuple[int, ...]


@dataclass(frozen=True)
class MaxClump:
    """Maximal run ``[start, end]`` of ``kind`` bits, ``start < end``.

    For cyclic input ``end`` may exceed ``len(word) - 1`` when the run
    wraps the boundary.
    """

    start: int
    end: int
    kind: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1


def pfp_extract(result, v: int) -> str:
    """Periodic firing pattern of ``v``: bits over ``[t0, t0 + period)``."""
    return result.pfp(v)


def is_clumpy(word: str) -> bool:
    """True iff the cyclic word has both ``00`` and ``11`` as factors."""
    _check(word)
    w = word + word[0]
    return "00" in w and "11" in w


def is_clumpy_sequence(seq: str) -> bool:
    """Non-cyclic version of :func:`is_clumpy`."""
    return "00" in seq and "11" in seq


def is_primitive(word: str) -> bool:
    """False if ``word`` is a proper power of a shorter word."""
    n = len(_check(word))
    return all(word[:d] * (n // d) != word for d in range(1, n) if n % d == 0)


def runs(word: str, cyclic: bool = True) -> list[tuple[int, int, int]]:
    """Maximal runs as ``(start, length, kind)``.

    Cyclic runs may wrap: ``start + length`` can exceed ``len(word)``. A
    constant cyclic word is a single run of length ``len(word)``.
    """
    n = len(_check(word))
    if cyclic:
        if word.count(word[0]) == n:
            return [(0, n, int(word[0]))]
        # start scanning at a run boundary
        first = next(i for i in range(n) if word[i] != word[i - 1])
    else:
        first = 0
    out = []
    i = 0
    while i < n:
        start = (first + i) % n if cyclic else i
        kind = word[start]
        length = 1
        while i + length < n and word[(first + i + length) % n if cyclic else i + length] == kind:
            length += 1
        out.append((start, length, int(kind)))
        i += length
    if cyclic:
        out.sort()
    return out


def max_clumps(word: str, cyclic: bool = False) -> list[MaxClump]:
    """All maximal same-bit runs of length >= 2.

    With ``cyclic=True`` runs may wrap around the end of the word; a
    constant cyclic word has no flanking opposite bit and so no max-clump.
    """
    n = len(_check(word))
    if cyclic and word.count(word[0]) == n:
        return []
    return [MaxClump(s, s + length - 1, k) for s, length, k in runs(word, cyclic) if length >= 2]


def sectors(word: str, alternating_kind: int = 0) -> SectorDecomposition:
    """Unique partition of a cyclic word into 0- and 1-sectors.

    ``alternating_kind`` picks the kind of the single sector used for a
    strictly alternating word (either reading is valid).
    """
    return _sectors(_check(word), alternating_kind)


@lru_cache(maxsize=65536)
def _sectors(word: str, alternating_kind: int) -> SectorDecomposition:
    n = len(word)
    anchors = [(s, length, k) for s, length, k in runs(word) if length >= 2]
    kinds = {k for _, _, k in anchors}
    if word.count(word[0]) == n:
        kinds = {int(word[0])}  # also covers n == 1, where p[i-1] = p[i]
    if len(kinds) < 2:
        kind = kinds.pop() if kinds else alternating_kind
        sec = (Sector(0, n - 1, kind),)
        return SectorDecomposition(word, sec, (2 * kind - 1,) * n, (0,) * n)
    # a b-sector ends at the last b-anchor before a (1-b)-anchor
    ends = []
    for j, (s, length, k) in enumerate(anchors):
        if anchors[(j + 1) % len(anchors)][2] != k:
            ends.append(((s + length - 1) % n, k))
    ends.sort()
    secs = []
    for j, (end, kind) in enumerate(ends):
        prev_end = ends[j - 1][0]
        secs.append(Sector((prev_end + 1) % n, end, kind))
    secs.sort(key=lambda x: x.start)
    s = [0] * n
    delta = [0] * n
    for sec in secs:
        for i in sec.indices(n):
            s[i] = 2 * sec.kind - 1
        delta[sec.end] = 1
    return SectorDecomposition(word, tuple(secs), tuple(s), tuple(delta))


def signed_sum_M(p: str, q: str, S: Iterable[int] | None = None, alternating_kind: int = 0) -> int:
    """Sector-signed disagreement of ``p`` and ``q`` minus sector switches.

    Sum over ``i`` in ``S`` (default: all indices) of
    ``s_i(p)(p_i - q_{i-1}) + s_i(q)(q_i - p_{i-1}) - delta_i(p) - delta_i(q)``.
    """
    _check_pair(p, q)
    n = len(p)
    dp = sectors(p, alternating_kind)
    dq = sectors(q, alternating_kind)
    total = 0
    for i in range(n) if S is None else S:
        i %= n
        pi, qi = int(p[i]), int(q[i])
        pm, qm = int(p[i - 1]), int(q[i - 1])
        total += dp.s[i] * (pi - qm) + dq.s[i] * (qi - pm) - dp.delta[i] - dq.delta[i]
    return total


def disagreement_mu(p: str, q: str, S: Iterable[int] | None = None) -> int:
    """Plain sum of ``p_i - q_{i-1}`` over ``S`` (default: all indices)."""
    _check_pair(p, q)
    n = len(p)
    idx = range(n) if S is None else S
    return sum(int(p[i % n]) - int(q[(i - 1) % n]) for i in idx)


def activity(pfp: str) -> Fraction:
    """Fraction of turns the pattern fires, in lowest terms."""
    return Fraction(_check(pfp).count("1"), len(pfp))


def render_sectors(word: str, alternating_kind: int = 0) -> str:
    """Three-line diagram: 1-sectors marked above the word, 0-sectors below."""
    dec = sectors(word, alternating_kind)
    n = len(word)
    above = [" "] * n
    below = [" "] * n
    for sec in dec.sectors:
        row = above if sec.kind else below
        idx = sec.indices(n)
        for i in idx:
            row[i] = "-"
        row[idx[0]] = "["
        row[idx[-1]] = "]" if len(idx) > 1 else "|"
    return "\n".join(["".join(above).rstrip(), word, "".join(below).rstrip()])


def nonclumpy_words(length: int, primitive_only: bool = False) -> list[str]:
    """All nonclumpy cyclic words of a given length, in lexicographic order."""
    out = []
    for x in range(1 << length):
        w = format(x, f"0{length}b")
        if not is_clumpy(w) and (not primitive_only or is_primitive(w)):
            out.append(w)
    return out
