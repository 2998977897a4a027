"""Constructive lower bounds and closed-form bounds.

Layer sets, code-based total sets, halved-cube independence, the doubling
upper bounds anchored at h = 7, and the embedded table of known values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import comb

from cubevis.cube import VertexSet, check_dim, halved_cube, hamming_distance, layer, weight


# ---------------------------------------------------------------------------
# known values table


@dataclass(frozen=True)
class Bounds:
    lower: int
    upper: int
    provenance: str

    @property
    def exact(self) -> int | None:
        return self.lower if self.lower == self.upper else None


@lru_cache(maxsize=1)
def known_values() -> dict[str, dict[int, tuple[int, int]]]:
    """The embedded table of exact values and intervals per variant."""
    raw = json.loads(
        resources.files("cubevis.data").joinpath("known_values.json").read_text()
    )
    out = {}
    for kind in ("mutual", "total", "outer", "dual"):
        out[kind] = {int(h): tuple(v) for h, v in raw[kind].items()}
    for kind, table in out.items():
        for h, (lo, hi) in table.items():
            if lo > hi:
                raise ValueError(f"corrupt table entry {kind} h={h}")
    return out


def known_exact(h: int, kind: str) -> int | None:
    entry = known_values()[kind].get(h)
    if entry and entry[0] == entry[1]:
        return entry[0]
    return None


# A(h,4): largest binary code of length h with minimum distance 4.
# Exact for h <= 16; equals half the total visibility number of Q_h.
A_H_4 = {
    1: 1,
    2: 1,
    3: 1,
    4: 2,
    5: 2,
    6: 4,
    7: 8,
    8: 16,
    9: 20,
    10: 40,
    11: 72,
    12: 144,
    13: 256,
    14: 512,
    15: 1024,
    16: 2048,
}


def a_h_4(h: int) -> int | None:
    """Tabulated A(h,4); None for h > 16 (unknown, never guessed)."""
    if h < 1:
        raise ValueError("h must be positive")
    return A_H_4.get(h)


# ---------------------------------------------------------------------------
# layer constructions and closed-form bounds


def layer_pair_set(h: int, i: int, gap: int) -> VertexSet:
    """layer(0^h, i) together with layer(0^h, i+gap); gap=0 is a single layer."""
    check_dim(h)
    if not (1 <= i and i + gap <= h):
        raise ValueError(f"layer indices out of range: h={h}, i={i}, gap={gap}")
    if gap == 0:
        return layer(h, 0, i)
    return layer(h, 0, i) | layer(h, 0, i + gap)


def mv_lower_bound(h: int) -> int:
    """Binomial lower bound C(h, floor(h/2)-1) + C(h, floor(h/2)+2), h >= 8."""
    if h < 8:
        raise ValueError("small dimensions are served from the known-values table")
    i = h // 2 - 1
    return comb(h, i) + comb(h, i + 3)


def doubling_upper_bound(h: int, kind: str) -> int:
    """Upper bound from repeated doubling of the exact h=7 value."""
    if h < 8:
        raise ValueError("doubling bound applies for h >= 8")
    anchor = known_exact(7, kind)
    if anchor is None:
        raise ValueError(f"no exact h=7 anchor for {kind!r}")
    return anchor << (h - 7)


def bounds_for(h: int, kind: str) -> Bounds:
    """Best lower/upper bounds shipped with the package, with provenance."""
    check_dim(h)
    table = known_values()[kind]
    if h in table:
        lo, hi = table[h]
        if lo == hi:
            return Bounds(lo, hi, "Table 1" if kind != "total" else "Table 2")
        return Bounds(lo, hi, "Table 1 lower / doubling upper")
    if kind == "total":
        # exact through h=16; beyond that only the doubling chain
        lo = 2 * A_H_4[16]
        hi = 2 * A_H_4[16] << (h - 16)
        return Bounds(lo, hi, "code table lower / doubling upper")
    hi = doubling_upper_bound(h, kind)
    if kind == "mutual":
        lo = mv_lower_bound(h)
        prov = "layer construction lower / doubling upper"
    elif kind == "outer":
        lo = comb(h, h // 2)
        prov = "layer construction lower / doubling upper"
    else:  # dual: every total set is dual
        a = a_h_4(h)
        lo = 2 * a if a is not None else 2 * A_H_4[16]
        prov = "code construction lower / doubling upper"
    return Bounds(lo, hi, prov)


# ---------------------------------------------------------------------------
# binary codes and the code-based total sets


@dataclass(frozen=True)
class BinaryCode:
    """Words of length n with pairwise Hamming distance >= min_distance."""

    length: int
    min_distance: int
    words: tuple[int, ...]

    def __post_init__(self):
        words = self.words
        for i, u in enumerate(words):
            for v in words[i + 1 :]:
                if hamming_distance(u, v) < self.min_distance:
                    raise ValueError(
                        f"words {u:#x} and {v:#x} are closer than {self.min_distance}"
                    )


def hamming_code(m: int) -> BinaryCode:
    """The classical Hamming code of length 2^m - 1, minimum distance 3.

    A word is a codeword iff every syndrome bit vanishes: for each j < m the
    parity of the coordinates whose 1-based position has bit j set is 0.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    n = (1 << m) - 1
    words = []
    for w in range(1 << n):
        syndrome = 0
        x = w
        while x:
            low = x & -x
            x ^= low
            syndrome ^= low.bit_length()  # 1-based position
        if syndrome == 0:
            words.append(w)
    return BinaryCode(length=n, min_distance=3, words=tuple(words))


def greedy_code(n: int, d: int = 3) -> BinaryCode:
    """Deterministic lexicographic code: keep each word far from all kept ones."""
    if n < 1:
        raise ValueError("length must be positive")
    kept: list[int] = []
    for w in range(1 << n):
        if all(hamming_distance(w, u) >= d for u in kept):
            kept.append(w)
    return BinaryCode(length=n, min_distance=d, words=tuple(kept))


def parity_extend(code: BinaryCode) -> tuple[VertexSet, VertexSet]:
    """Extend a distance-3 code by a parity coordinate, giving two parts.

    The even-closed part lands in the even halved cube of Q_{n+1}, the
    odd-closed part in the odd one; the union is a total visibility set.
    """
    if code.min_distance < 3:
        raise ValueError("code must have minimum distance >= 3")
    n = code.length
    even, odd = [], []
    for u in code.words:
        if weight(u) % 2 == 0:
            even.append(u)  # append 0
            odd.append(u | (1 << n))  # append 1
        else:
            even.append(u | (1 << n))
            odd.append(u)
    return VertexSet(n + 1, even), VertexSet(n + 1, odd)


def code_total_set(h: int) -> VertexSet:
    """A total visibility set of Q_h of size 2*|code| from a distance-3 code.

    Uses the classical Hamming code when h-1 = 2^m - 1, otherwise the greedy
    lexicographic code; both are deterministic.
    """
    check_dim(h)
    if h < 2:
        raise ValueError("need h >= 2")
    n = h - 1
    if n >= 3 and (n & (n + 1)) == 0:  # n = 2^m - 1
        code = hamming_code(n.bit_length())
    else:
        code = greedy_code(n, 3)
    c_e, c_o = parity_extend(code)
    return c_e | c_o


# ---------------------------------------------------------------------------
# halved-cube independence


def alpha_halved_bruteforce(h: int) -> int:
    """alpha of the even halved cube of Q_h by exact branch and bound.

    Vertices are ordered by descending degree-in-remaining at each branch;
    the bound is |current| + |remaining|.  Deterministic traversal.
    """
    if h > 7:
        raise ValueError("halved cube too large for the brute force (h > 7)")
    hc = halved_cube(h, "even")
    adj = hc.adjacency_bitmasks()
    n = len(hc.vertices)
    best = 0

    def bound_search(current: int, remaining: int) -> None:
        nonlocal best
        size = current
        if size + remaining.bit_count() <= best:
            return
        if remaining == 0:
            best = max(best, size)
            return
        # branch on the remaining vertex of maximum remaining-degree
        pick = -1
        pick_deg = -1
        r = remaining
        while r:
            low = r & -r
            r ^= low
            i = low.bit_length() - 1
            deg = (adj[i] & remaining).bit_count()
            if deg > pick_deg:
                pick_deg = deg
                pick = i
        # include pick
        bound_search(current + 1, remaining & ~adj[pick] & ~(1 << pick))
        # exclude pick
        bound_search(current, remaining & ~(1 << pick))

    bound_search(0, (1 << n) - 1)
    return best
