"""Search engines: exhaustive optima, two-phase restriction, heuristics."""

import pytest

from cubevis.constructions import known_exact
from cubevis.cube import VertexSet
from cubevis.search import (
    dual_size_census,
    exact_number,
    heuristic_search,
    two_phase_search,
)
from cubevis.visibility import verify

KINDS = ("mutual", "total", "outer", "dual")


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("h", [1, 2, 3, 4])
def test_exact_numbers_small(h, kind):
    result = exact_number(h, kind)
    assert result.size == known_exact(h, kind), (h, kind)
    assert result.status == "optimal"
    assert result.certificate == "exhaustive"
    assert verify(result.best_set, kind).ok
    assert len(result.best_set) == result.size


def test_exact_number_rejects_large_h():
    with pytest.raises(ValueError):
        exact_number(7, "mutual")
    with pytest.raises(ValueError):
        exact_number(3, "sideways")


def test_exact_number_h5_total_by_internal_sat():
    result = exact_number(5, "total")
    assert result.size == 4
    assert result.status == "optimal"


def test_dual_census_small():
    # Q_2: a dual set of size 3 exists, but the full vertex set is not dual
    assert dual_size_census(2, 3)[0]
    assert not dual_size_census(2, 4)[0]


def test_metadata_lines():
    result = exact_number(2, "mutual")
    lines = dict(line.split("=", 1) for line in result.metadata_lines())
    assert lines["h"] == "2" and lines["variant"] == "mutual"
    assert lines["size"] == "3" and lines["status"] == "optimal"


@pytest.mark.parametrize(
    "kind,pattern,expected",
    [
        ("mutual", "k12-star", 9),
        ("outer", "k12-star", 6),
        ("dual", "k12-star", 8),
        ("mutual", "adjacent-pair", 9),
    ],
)
def test_two_phase_q4(kind, pattern, expected):
    result = two_phase_search(4, kind, pattern)
    assert result.size == expected
    assert result.status == "optimal"
    assert "phase-1 bound" in result.certificate
    # the restricted phase can never beat the true optimum
    bound = int(result.certificate.split("phase-1 bound ")[1].split(")")[0].split()[0])
    assert bound <= expected


def test_two_phase_rejects_unknown_pattern():
    with pytest.raises(ValueError):
        two_phase_search(4, "mutual", "triangle")


@pytest.mark.parametrize(
    "kind,floor",
    [("mutual", 84), ("outer", 70), ("dual", 32)],
)
def test_heuristic_q8_meets_constructive_floors(kind, floor):
    result = heuristic_search(8, kind, budget_seconds=0.0)
    assert result.size >= floor
    assert result.status == "lower-bound-only"
    assert verify(result.best_set, kind).ok


def test_heuristic_can_grow_with_budget():
    result = heuristic_search(4, "mutual", budget_seconds=5.0)
    assert result.size >= 5  # seed size; usually grows to 9
    assert verify(result.best_set, "mutual").ok


def test_heuristic_antipode_seed_is_dual_only():
    with pytest.raises(ValueError):
        heuristic_search(6, "mutual", seeds="antipode")
    result = heuristic_search(6, "dual", seeds="antipode", budget_seconds=0.0)
    assert verify(result.best_set, "dual").ok


def test_heuristic_rejects_huge_h():
    with pytest.raises(ValueError):
        heuristic_search(12, "mutual")


def test_reported_sets_live_in_the_right_cube():
    result = exact_number(3, "outer")
    assert isinstance(result.best_set, VertexSet)
    assert result.best_set.h == 3
