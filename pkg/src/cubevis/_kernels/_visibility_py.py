"""Pure-Python visibility kernels.

Fallback for the compiled extension; both expose the same four functions and
must agree on every input (the test suite checks this).  `member` is a bytes
object of length 2^h with 1 at the positions of the set.

Variant codes: 0 mutual, 1 total, 2 outer, 3 dual.
"""

from __future__ import annotations

VARIANT_MUTUAL = 0
VARIANT_TOTAL = 1
VARIANT_OUTER = 2
VARIANT_DUAL = 3


def pair_visible(h: int, u: int, v: int, member: bytes) -> bool:
    """True iff some shortest u,v-path has its interior outside the set.

    Layered sweep inside I(u,v): advance level by level towards v through
    unblocked vertices; endpoints are exempt.
    """
    d = (u ^ v).bit_count()
    if d <= 1:
        return True
    frontier = {u}
    for _ in range(d - 1):
        nxt = set()
        for x in frontier:
            rem = x ^ v
            while rem:
                low = rem & -rem
                rem ^= low
                y = x ^ low
                if not member[y] or y == u or y == v:
                    nxt.add(y)
        if not nxt:
            return False
        frontier = nxt
    # one flip away from v now; v itself is exempt
    return True


def _pair_required(variant: int, in_u: int, in_v: int) -> bool:
    if variant == VARIANT_MUTUAL:
        return bool(in_u and in_v)
    if variant == VARIANT_TOTAL:
        return True
    if variant == VARIANT_OUTER:
        return bool(in_u or in_v)
    return in_u == in_v  # dual: both in or both out


def find_witness(h: int, member: bytes, variant: int, max_dist: int = -1):
    """First pair (ascending u, then v) the variant requires that is not
    visible, or None.  max_dist < 0 means unlimited."""
    n = 1 << h
    for u in range(n):
        in_u = member[u]
        for v in range(u + 1, n):
            if not _pair_required(variant, in_u, member[v]):
                continue
            d = (u ^ v).bit_count()
            if d <= 1:
                continue
            if 0 <= max_dist < d:
                continue
            if not pair_visible(h, u, v, member):
                return (u, v)
    return None


def total_distance_witness(h: int, member: bytes):
    """First pair of members at Hamming distance exactly 2, or None."""
    n = 1 << h
    members = [v for v in range(n) if member[v]]
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if (u ^ v).bit_count() == 2:
                return (u, v)
    return None


def dual_characterization_witness(h: int, member: bytes):
    """Witness against the interval characterization of dual sets.

    Checks that the set is a mutual-visibility set and that no distance-2
    interval meets it in exactly two non-adjacent vertices.  Returns the
    first offending pair, or None.
    """
    w = find_witness(h, member, VARIANT_MUTUAL)
    if w is not None:
        return w
    n = 1 << h
    for u in range(n):
        for v in range(u + 1, n):
            diff = u ^ v
            if diff.bit_count() != 2:
                continue
            b1 = diff & -diff
            b2 = diff ^ b1
            m1 = u ^ b1
            m2 = u ^ b2
            hits = [x for x in (u, m1, m2, v) if member[x]]
            if len(hits) == 2 and (hits[0] ^ hits[1]).bit_count() != 1:
                return (u, v)
    return None
