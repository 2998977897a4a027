# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled visibility kernels (hot inner loops of set verification).

Mirrors _visibility_py exactly; the pure module is the fallback selected at
import when this extension is unavailable.
"""

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memset

VARIANT_MUTUAL = 0
VARIANT_TOTAL = 1
VARIANT_OUTER = 2
VARIANT_DUAL = 3


cdef inline int _popcount(unsigned int x) nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef int _sweep(int h, unsigned int u, unsigned int v,
                const unsigned char[:] member,
                unsigned int *cur, unsigned int *nxt,
                unsigned char *seen) nogil:
    """Layered reachability sweep from u towards v inside I(u,v).

    cur/nxt are scratch arrays able to hold a full level of the interval;
    seen is a zeroed scratch of size 2^h (left zeroed on return).
    Returns 1 when a free shortest path exists.
    """
    cdef unsigned int diff = u ^ v
    cdef int d = _popcount(diff)
    if d <= 1:
        return 1
    cdef int level, ncur, nnxt, i
    cdef unsigned int x, rem, low, y
    cur[0] = u
    ncur = 1
    for level in range(d - 1):
        nnxt = 0
        for i in range(ncur):
            x = cur[i]
            rem = x ^ v
            while rem:
                low = rem & (~rem + 1)
                rem ^= low
                y = x ^ low
                if member[y] and y != v:
                    continue
                if not seen[y]:
                    seen[y] = 1
                    nxt[nnxt] = y
                    nnxt += 1
        for i in range(nnxt):
            seen[nxt[i]] = 0
        if nnxt == 0:
            return 0
        # swap cur/nxt
        for i in range(nnxt):
            cur[i] = nxt[i]
        ncur = nnxt
    return 1


cdef long _binom_half(int d) nogil:
    # C(d, d//2): largest level of a d-dimensional interval
    cdef long num = 1
    cdef int k = d // 2
    cdef int i
    for i in range(1, k + 1):
        num = num * (d - k + i) // i
    return num


def pair_visible(int h, unsigned int u, unsigned int v, const unsigned char[:] member):
    """True iff some shortest u,v-path has its interior outside the set."""
    cdef int d = _popcount(u ^ v)
    if d <= 1:
        return True
    cdef long cap = _binom_half(d)
    cdef unsigned int *cur = <unsigned int *> malloc(cap * sizeof(unsigned int))
    cdef unsigned int *nxt = <unsigned int *> malloc(cap * sizeof(unsigned int))
    cdef unsigned char *seen = <unsigned char *> calloc(1ULL << h, 1)
    if cur == NULL or nxt == NULL or seen == NULL:
        free(cur); free(nxt); free(seen)
        raise MemoryError()
    cdef int ok
    with nogil:
        ok = _sweep(h, u, v, member, cur, nxt, seen)
    free(cur); free(nxt); free(seen)
    return ok == 1


cdef inline int _pair_required(int variant, int in_u, int in_v) nogil:
    if variant == 0:
        return in_u and in_v
    if variant == 1:
        return 1
    if variant == 2:
        return in_u or in_v
    return in_u == in_v


def find_witness(int h, const unsigned char[:] member, int variant, int max_dist=-1):
    """First required pair (ascending u, then v) that is not visible, or None."""
    cdef unsigned int n = 1u << h
    cdef long cap = _binom_half(h)
    cdef unsigned int *cur = <unsigned int *> malloc(cap * sizeof(unsigned int))
    cdef unsigned int *nxt = <unsigned int *> malloc(cap * sizeof(unsigned int))
    cdef unsigned char *seen = <unsigned char *> calloc(n, 1)
    if cur == NULL or nxt == NULL or seen == NULL:
        free(cur); free(nxt); free(seen)
        raise MemoryError()
    cdef unsigned int u, v
    cdef int in_u, d
    cdef long wit = -1
    with nogil:
        for u in range(n):
            in_u = member[u]
            for v in range(u + 1, n):
                if not _pair_required(variant, in_u, member[v]):
                    continue
                d = _popcount(u ^ v)
                if d <= 1:
                    continue
                if 0 <= max_dist < d:
                    continue
                if not _sweep(h, u, v, member, cur, nxt, seen):
                    wit = (<long> u << 32) | v
                    break
            if wit >= 0:
                break
    free(cur); free(nxt); free(seen)
    if wit < 0:
        return None
    return (int(wit >> 32), int(wit & 0xFFFFFFFF))


def total_distance_witness(int h, const unsigned char[:] member):
    """First pair of members at Hamming distance exactly 2, or None."""
    cdef unsigned int n = 1u << h
    cdef unsigned int *mem = <unsigned int *> malloc(n * sizeof(unsigned int))
    if mem == NULL:
        raise MemoryError()
    cdef int count = 0
    cdef unsigned int v
    cdef int i, j
    cdef long wit = -1
    with nogil:
        for v in range(n):
            if member[v]:
                mem[count] = v
                count += 1
        for i in range(count):
            for j in range(i + 1, count):
                if _popcount(mem[i] ^ mem[j]) == 2:
                    wit = (<long> mem[i] << 32) | mem[j]
                    break
            if wit >= 0:
                break
    free(mem)
    if wit < 0:
        return None
    return (int(wit >> 32), int(wit & 0xFFFFFFFF))


def dual_characterization_witness(int h, const unsigned char[:] member):
    """Witness against the interval characterization of dual sets, or None."""
    w = find_witness(h, member, VARIANT_MUTUAL)
    if w is not None:
        return w
    cdef unsigned int n = 1u << h
    cdef unsigned int u, v, diff, b1, b2, w0, w1
    cdef int hits
    cdef long wit = -1
    with nogil:
        for u in range(n):
            for v in range(u + 1, n):
                diff = u ^ v
                if _popcount(diff) != 2:
                    continue
                b1 = diff & (~diff + 1)
                b2 = diff ^ b1
                hits = 0
                w0 = 0
                w1 = 0
                if member[u]:
                    w1 = u; hits += 1
                if member[u ^ b1]:
                    w0 = w1; w1 = u ^ b1; hits += 1
                if member[u ^ b2]:
                    w0 = w1; w1 = u ^ b2; hits += 1
                if member[v]:
                    w0 = w1; w1 = v; hits += 1
                if hits == 2 and _popcount(w0 ^ w1) != 1:
                    wit = (<long> u << 32) | v
                    break
            if wit >= 0:
                break
    if wit < 0:
        return None
    return (int(wit >> 32), int(wit & 0xFFFFFFFF))
