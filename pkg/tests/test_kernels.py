"""Agreement between the compiled kernel and the pure-Python fallback."""

import random

import pytest

from cubevis import _kernels
from cubevis._kernels import (
    VARIANT_DUAL,
    VARIANT_MUTUAL,
    VARIANT_OUTER,
    VARIANT_TOTAL,
    backends,
)

ALL_VARIANTS = (VARIANT_MUTUAL, VARIANT_TOTAL, VARIANT_OUTER, VARIANT_DUAL)

impls = backends()
needs_both = pytest.mark.skipif(
    "c" not in impls, reason="compiled backend not built"
)


def member_bytes(h, mask):
    return bytes((mask >> v) & 1 for v in range(1 << h))


def test_backend_selected():
    assert _kernels.BACKEND in ("c", "python")
    assert "python" in impls


@needs_both
def test_find_witness_agreement_exhaustive_h3():
    h = 3
    for mask in range(1 << 8):
        member = member_bytes(h, mask)
        for variant in ALL_VARIANTS:
            assert impls["python"].find_witness(h, member, variant, -1) == impls[
                "c"
            ].find_witness(h, member, variant, -1), (mask, variant)


@needs_both
def test_find_witness_agreement_random_h5():
    rng = random.Random(20240817)
    h = 5
    for _ in range(200):
        mask = rng.getrandbits(1 << h)
        member = member_bytes(h, mask)
        for variant in ALL_VARIANTS:
            for limit in (-1, 3):
                assert impls["python"].find_witness(
                    h, member, variant, limit
                ) == impls["c"].find_witness(h, member, variant, limit)


@needs_both
def test_pair_visible_agreement():
    rng = random.Random(7)
    h = 4
    for _ in range(100):
        mask = rng.getrandbits(16)
        member = member_bytes(h, mask)
        u = rng.randrange(16)
        v = rng.randrange(16)
        if u == v:
            continue
        assert impls["python"].pair_visible(h, u, v, member) == impls[
            "c"
        ].pair_visible(h, u, v, member)


@needs_both
def test_characterization_witness_agreement_exhaustive_h3():
    h = 3
    for mask in range(1 << 8):
        member = member_bytes(h, mask)
        assert impls["python"].total_distance_witness(h, member) == impls[
            "c"
        ].total_distance_witness(h, member)
        assert impls["python"].dual_characterization_witness(h, member) == impls[
            "c"
        ].dual_characterization_witness(h, member)
