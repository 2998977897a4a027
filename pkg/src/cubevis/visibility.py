"""Visibility verdicts for candidate sets, all four variants.

The verifier runs a layered reachability sweep per pair (via the kernel
backend) instead of enumerating d! paths; enumeration is reserved for the
encoders.  The reported witness is always the least failing pair in the
ascending bitmask order, independent of backend.
"""

from __future__ import annotations

from dataclasses import dataclass

from cubevis import _kernels
from cubevis.cube import VertexSet, check_vertex, hamming_distance

VARIANT_KINDS = ("mutual", "total", "outer", "dual")

_VARIANT_CODE = {
    "mutual": _kernels.VARIANT_MUTUAL,
    "total": _kernels.VARIANT_TOTAL,
    "outer": _kernels.VARIANT_OUTER,
    "dual": _kernels.VARIANT_DUAL,
}


@dataclass(frozen=True)
class Variant:
    """Problem flavor plus the optional path-length relaxation distance."""

    kind: str
    max_check_distance: int | None = None

    def __post_init__(self):
        if self.kind not in VARIANT_KINDS:
            raise ValueError(f"unknown variant kind {self.kind!r}")
        if self.max_check_distance is not None and self.max_check_distance < 2:
            raise ValueError("max_check_distance must be >= 2 when limited")


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification run.

    certified is False when pairs were skipped because of a distance
    relaxation; a relaxed pass is only a non-refutation.
    """

    ok: bool
    witness: tuple[int, int] | None = None
    certified: bool = True
    all_witnesses: tuple[tuple[int, int], ...] | None = None


def pair_visible(M: VertexSet, u: int, v: int) -> bool:
    """True iff some shortest u,v-path avoids M outside the endpoints."""
    check_vertex(M.h, u)
    check_vertex(M.h, v)
    return _kernels.pair_visible(M.h, u, v, M.member_bytes())


def _pair_population(M: VertexSet, kind: str):
    n = 1 << M.h
    mask = M.mask
    for u in range(n):
        in_u = (mask >> u) & 1
        for v in range(u + 1, n):
            in_v = (mask >> v) & 1
            if kind == "mutual":
                required = in_u and in_v
            elif kind == "total":
                required = True
            elif kind == "outer":
                required = in_u or in_v
            else:
                required = in_u == in_v
            if required:
                yield u, v


def verify(M: VertexSet, variant: Variant | str, all_witnesses: bool = False) -> Verdict:
    """Check every pair the variant demands for M-visibility.

    Short-circuits on the first failing pair unless all_witnesses is set.
    """
    if isinstance(variant, str):
        variant = Variant(variant)
    limit = variant.max_check_distance
    certified_limit = limit is None or limit >= M.h
    member = M.member_bytes()
    if not all_witnesses:
        w = _kernels.find_witness(
            M.h, member, _VARIANT_CODE[variant.kind], -1 if limit is None else limit
        )
        if w is None:
            return Verdict(ok=True, certified=certified_limit)
        return Verdict(ok=False, witness=w, certified=True)
    witnesses = []
    for u, v in _pair_population(M, variant.kind):
        d = hamming_distance(u, v)
        if d <= 1 or (limit is not None and d > limit):
            continue
        if not _kernels.pair_visible(M.h, u, v, member):
            witnesses.append((u, v))
    if witnesses:
        return Verdict(
            ok=False,
            witness=witnesses[0],
            certified=True,
            all_witnesses=tuple(witnesses),
        )
    return Verdict(ok=True, certified=certified_limit, all_witnesses=())


def verify_total_by_distance(M: VertexSet) -> Verdict:
    """Total-variant check via the distance-2 characterization.

    A set is a total visibility set exactly when no two members are at
    Hamming distance 2; agrees with verify(M, "total") on every input.
    """
    w = _kernels.total_distance_witness(M.h, M.member_bytes())
    if w is None:
        return Verdict(ok=True)
    return Verdict(ok=False, witness=w)


def verify_dual_by_characterization(M: VertexSet) -> Verdict:
    """Dual-variant check via the distance-2 interval characterization.

    The set must be a mutual-visibility set and no distance-2 interval may
    meet it in exactly two non-adjacent vertices; agrees with
    verify(M, "dual") on every input.
    """
    w = _kernels.dual_characterization_witness(M.h, M.member_bytes())
    if w is None:
        return Verdict(ok=True)
    return Verdict(ok=False, witness=w)
