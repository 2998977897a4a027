"""Hypercube geometry: vertices, distances, layers, intervals, shortest paths.

A vertex of Q_h is an unsigned integer bitmask where bit i holds coordinate
i+1; the text form is exactly h characters over {0,1} with the leftmost
character being coordinate 1.  A VertexSet is an immutable set of vertices of
one cube, backed by a bitset of length 2^h.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

MAX_DIM = 24
# d! shortest paths per pair; 8! = 40320 is the practicality cliff.
MAX_PATH_DISTANCE = 8


class DimensionError(ValueError):
    """Vertex/set dimensions are inconsistent or out of range."""


class CapacityError(ValueError):
    """The request exceeds a hard capacity limit (path fan-out, dimension)."""


def check_dim(h: int) -> None:
    if not 1 <= h <= MAX_DIM:
        raise DimensionError(f"dimension must be in [1, {MAX_DIM}], got {h}")


def check_vertex(h: int, v: int) -> None:
    check_dim(h)
    if not 0 <= v < (1 << h):
        raise DimensionError(f"vertex {v} out of range for Q_{h}")


def weight(v: int) -> int:
    """Number of 1-coordinates of the vertex."""
    return v.bit_count()


def hamming_distance(u: int, v: int) -> int:
    """Number of coordinates in which u and v differ; equals d(u,v) in Q_h."""
    return (u ^ v).bit_count()


def antipode(h: int, u: int) -> int:
    """Coordinatewise complement within h bits; an involution."""
    check_vertex(h, u)
    return u ^ ((1 << h) - 1)


def neighbors(h: int, u: int) -> list[int]:
    """The h vertices at distance 1 from u, in ascending order."""
    check_vertex(h, u)
    return [u ^ (1 << i) for i in range(h)]


def closed_neighborhood(h: int, u: int) -> list[int]:
    """N[u] = N(u) plus u itself, in ascending order."""
    return sorted(neighbors(h, u) + [u])


def vertex_to_text(h: int, v: int) -> str:
    check_vertex(h, v)
    return "".join("1" if (v >> i) & 1 else "0" for i in range(h))


def vertex_from_text(text: str) -> tuple[int, int]:
    """Parse the text form; returns (h, vertex)."""
    if not text or any(c not in "01" for c in text):
        raise ValueError(f"not a binary vertex string: {text!r}")
    h = len(text)
    check_dim(h)
    v = 0
    for i, c in enumerate(text):
        if c == "1":
            v |= 1 << i
    return h, v


class VertexSet:
    """Immutable set of vertices of Q_h, stored as a bitset of length 2^h."""

    __slots__ = ("h", "mask")

    def __init__(self, h: int, vertices=()):
        check_dim(h)
        mask = 0
        for v in vertices:
            check_vertex(h, v)
            mask |= 1 << v
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_mask(cls, h: int, mask: int) -> "VertexSet":
        check_dim(h)
        if mask < 0 or mask >> (1 << h):
            raise DimensionError(f"bitset does not fit Q_{h}")
        s = cls.__new__(cls)
        object.__setattr__(s, "h", h)
        object.__setattr__(s, "mask", mask)
        return s

    def __setattr__(self, name, value):
        raise AttributeError("VertexSet is immutable")

    def __contains__(self, v: int) -> bool:
        return 0 <= v < (1 << self.h) and (self.mask >> v) & 1 == 1

    def __iter__(self):
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VertexSet)
            and self.h == other.h
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.h, self.mask))

    def __repr__(self) -> str:
        return f"VertexSet(h={self.h}, {{{', '.join(vertex_to_text(self.h, v) for v in self)}}})"

    def members(self) -> list[int]:
        return list(self)

    def _check_same_cube(self, other: "VertexSet") -> None:
        if self.h != other.h:
            raise DimensionError(f"mixing Q_{self.h} and Q_{other.h} sets")

    def union(self, other: "VertexSet") -> "VertexSet":
        self._check_same_cube(other)
        return VertexSet.from_mask(self.h, self.mask | other.mask)

    __or__ = union

    def intersection(self, other: "VertexSet") -> "VertexSet":
        self._check_same_cube(other)
        return VertexSet.from_mask(self.h, self.mask & other.mask)

    __and__ = intersection

    def difference(self, other: "VertexSet") -> "VertexSet":
        self._check_same_cube(other)
        return VertexSet.from_mask(self.h, self.mask & ~other.mask)

    __sub__ = difference

    def with_vertex(self, v: int) -> "VertexSet":
        check_vertex(self.h, v)
        return VertexSet.from_mask(self.h, self.mask | (1 << v))

    def complement(self) -> "VertexSet":
        full = (1 << (1 << self.h)) - 1
        return VertexSet.from_mask(self.h, full & ~self.mask)

    def translate(self, t: int) -> "VertexSet":
        """XOR every member by t (a hypercube automorphism)."""
        check_vertex(self.h, t)
        return VertexSet(self.h, (v ^ t for v in self))

    def permute(self, perm) -> "VertexSet":
        """Apply a coordinate permutation: new coordinate i = old perm[i]."""
        if sorted(perm) != list(range(self.h)):
            raise ValueError("not a permutation of coordinates")
        out = []
        for v in self:
            w = 0
            for i, p in enumerate(perm):
                if (v >> p) & 1:
                    w |= 1 << i
            out.append(w)
        return VertexSet(self.h, out)

    def member_bytes(self) -> bytes:
        """Membership indicator over all 2^h vertices (for the kernels)."""
        buf = bytearray(1 << self.h)
        for v in self:
            buf[v] = 1
        return bytes(buf)

    # -- set-file format: one vertex per line, optional '#' comments ---------

    def to_text(self) -> str:
        lines = [vertex_to_text(self.h, v) for v in self]
        return "\n".join(lines) + ("\n" if lines else "")

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(self.to_text())

    @classmethod
    def parse(cls, text: str, h: int | None = None) -> "VertexSet":
        vertices = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            vh, v = vertex_from_text(line)
            if h is None:
                h = vh
            elif vh != h:
                raise DimensionError(
                    f"vertex {line!r} has length {vh}, expected {h}"
                )
            vertices.append(v)
        if h is None:
            raise ValueError("empty set file without an explicit dimension")
        return cls(h, vertices)

    @classmethod
    def load(cls, path, h: int | None = None) -> "VertexSet":
        with open(path, encoding="utf-8") as f:
            return cls.parse(f.read(), h)


def layer(h: int, v: int, i: int) -> VertexSet:
    """All vertices at Hamming distance exactly i from v; |result| = C(h,i)."""
    check_vertex(h, v)
    if not 0 <= i <= h:
        raise ValueError(f"layer index {i} out of range for Q_{h}")
    out = []
    for positions in itertools.combinations(range(h), i):
        x = v
        for p in positions:
            x ^= 1 << p
        out.append(x)
    return VertexSet(h, out)


def interval(h: int, u: int, v: int) -> VertexSet:
    """I(u,v): the subcube of vertices agreeing with u and v where they agree."""
    check_vertex(h, u)
    check_vertex(h, v)
    diff = u ^ v
    # enumerate submasks of diff
    out = []
    sub = 0
    while True:
        out.append(u ^ sub)
        if sub == diff:
            break
        sub = (sub - diff) & diff
    return VertexSet(h, out)


def enumerate_shortest_paths(
    h: int, u: int, v: int, max_len: int | None = None
) -> list[tuple[int, ...]]:
    """All d! shortest u,v-paths, ordered by lexicographic flip-permutation.

    Returns [] when d(u,v) exceeds max_len.  Distances above
    MAX_PATH_DISTANCE are rejected outright.
    """
    check_vertex(h, u)
    check_vertex(h, v)
    diff = u ^ v
    d = diff.bit_count()
    if max_len is not None and d > max_len:
        return []
    if d > MAX_PATH_DISTANCE:
        raise CapacityError(
            f"{d}! shortest paths exceed the enumeration limit (d > {MAX_PATH_DISTANCE})"
        )
    bits = [i for i in range(h) if (diff >> i) & 1]
    paths = []
    for perm in itertools.permutations(bits):
        x = u
        path = [x]
        for b in perm:
            x ^= 1 << b
            path.append(x)
        paths.append(tuple(path))
    return paths


def raised_subcube(h: int, u: int, X: VertexSet) -> VertexSet:
    """Subcube spanned by u and the flip-directions of its neighbors in X."""
    check_vertex(h, u)
    if len(X) < 1:
        raise ValueError("X must contain at least one neighbor of u")
    span = 0
    for x in X:
        if hamming_distance(u, x) != 1:
            raise ValueError(
                f"{vertex_to_text(h, x)} is not a neighbor of {vertex_to_text(h, u)}"
            )
        span |= u ^ x
    return interval(h, u, u ^ span)


@dataclass(frozen=True)
class HalvedCube:
    """Graph on one weight-parity class of Q_h; edges join distance-2 pairs."""

    h: int
    parity: str  # "even" | "odd"
    vertices: tuple[int, ...] = field(repr=False)

    def index_of(self, v: int) -> int:
        return self._index[v]

    @property
    def _index(self):
        # small caches are fine; instances are immutable
        idx = self.__dict__.get("_index_cache")
        if idx is None:
            idx = {v: i for i, v in enumerate(self.vertices)}
            self.__dict__["_index_cache"] = idx
        return idx

    def adjacent(self, u: int, v: int) -> bool:
        return hamming_distance(u, v) == 2

    def adjacency_bitmasks(self) -> list[int]:
        """Per-vertex adjacency as bitmasks over vertex indices."""
        n = len(self.vertices)
        masks = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if hamming_distance(self.vertices[i], self.vertices[j]) == 2:
                    masks[i] |= 1 << j
                    masks[j] |= 1 << i
        return masks


def halved_cube(h: int, parity: str = "even") -> HalvedCube:
    """The halved cube on the 2^{h-1} vertices of the given weight parity."""
    check_dim(h)
    if h < 2:
        raise DimensionError("halved cube needs h >= 2")
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    want = 0 if parity == "even" else 1
    verts = tuple(v for v in range(1 << h) if v.bit_count() % 2 == want)
    return HalvedCube(h=h, parity=parity, vertices=verts)
