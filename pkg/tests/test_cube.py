"""Hypercube primitives: vertices, sets, layers, intervals, paths."""

import itertools
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubevis.cube import (
    CapacityError,
    DimensionError,
    HalvedCube,
    VertexSet,
    antipode,
    closed_neighborhood,
    enumerate_shortest_paths,
    halved_cube,
    hamming_distance,
    interval,
    layer,
    neighbors,
    raised_subcube,
    vertex_from_text,
    vertex_to_text,
    weight,
)


def test_text_form_leftmost_is_coordinate_one():
    # "0001": coordinate 4 is set, i.e. bit 3
    assert vertex_from_text("0001") == (4, 8)
    assert vertex_to_text(4, 8) == "0001"
    assert vertex_from_text("1000") == (4, 1)


def test_text_round_trip_exhaustive_h4():
    for v in range(16):
        h, back = vertex_from_text(vertex_to_text(4, v))
        assert (h, back) == (4, v)


def test_vertex_from_text_rejects_garbage():
    for bad in ("", "012", "ab", "10 1"):
        with pytest.raises(ValueError):
            vertex_from_text(bad)


def test_dimension_limits():
    with pytest.raises(DimensionError):
        vertex_to_text(0, 0)
    with pytest.raises(DimensionError):
        VertexSet(25)
    with pytest.raises(DimensionError):
        antipode(3, 8)


def test_weight_distance_antipode():
    assert weight(0b1011) == 3
    assert hamming_distance(0b1011, 0b0010) == 2
    for v in range(32):
        assert antipode(5, antipode(5, v)) == v
        assert hamming_distance(v, antipode(5, v)) == 5


def test_neighbors():
    nb = neighbors(3, 0b101)
    assert nb == [0b100, 0b111, 0b001]
    assert closed_neighborhood(3, 0) == [0, 1, 2, 4]
    assert all(hamming_distance(0b101, x) == 1 for x in nb)


class TestVertexSet:
    def test_basic_ops(self):
        a = VertexSet(3, [0, 5])
        b = VertexSet(3, [5, 7])
        assert len(a | b) == 3
        assert (a & b).members() == [5]
        assert (a - b).members() == [0]
        assert 5 in a and 1 not in a

    def test_immutable(self):
        s = VertexSet(2, [0])
        with pytest.raises(AttributeError):
            s.mask = 3

    def test_mixing_dimensions_rejected(self):
        with pytest.raises(DimensionError):
            VertexSet(2, [0]) | VertexSet(3, [0])

    def test_complement_and_with_vertex(self):
        s = VertexSet(2, [1])
        assert sorted(s.complement()) == [0, 2, 3]
        assert sorted(s.with_vertex(3)) == [1, 3]

    def test_member_bytes(self):
        s = VertexSet(2, [0, 3])
        assert s.member_bytes() == b"\x01\x00\x00\x01"

    def test_translate_is_automorphism(self):
        s = VertexSet(3, [0, 3, 5])
        t = s.translate(0b101)
        assert len(t) == len(s)
        assert t.translate(0b101) == s

    def test_permute(self):
        s = VertexSet(3, [0b001])
        assert s.permute([2, 0, 1]).members() == [0b010]
        with pytest.raises(ValueError):
            s.permute([0, 0, 1])

    def test_parse_with_comments_and_blanks(self):
        text = "# a comment\n010\n\n110\n"
        s = VertexSet.parse(text)
        assert s == VertexSet(3, [0b010, 0b011])

    def test_parse_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            VertexSet.parse("01\n011\n")
        with pytest.raises(ValueError):
            VertexSet.parse("# nothing\n")

    def test_save_load_round_trip(self, tmp_path):
        s = VertexSet(4, [0, 9, 15])
        p = tmp_path / "s.txt"
        s.save(p)
        assert VertexSet.load(p) == s
        assert VertexSet.load(p, h=4) == s


def test_layer_sizes():
    for h in range(1, 7):
        for i in range(h + 1):
            assert len(layer(h, 0, i)) == comb(h, i)
    assert all(hamming_distance(v, 0b111) == 2 for v in layer(3, 0b111, 2))


def test_interval_is_a_subcube():
    u, v = 0b0011, 0b0110
    I = interval(4, u, v)
    assert len(I) == 1 << hamming_distance(u, v)
    assert u in I and v in I
    for z in I:
        assert hamming_distance(u, z) + hamming_distance(z, v) == hamming_distance(u, v)


def test_shortest_path_enumeration():
    paths = enumerate_shortest_paths(4, 0, 0b111)
    assert len(paths) == factorial(3)
    for path in paths:
        assert path[0] == 0 and path[-1] == 0b111
        assert all(hamming_distance(a, b) == 1 for a, b in zip(path, path[1:]))
    # lexicographic flip order: the first path flips bits 0,1,2 in turn
    assert paths[0] == (0b000, 0b001, 0b011, 0b111)


def test_shortest_paths_max_len_and_cap():
    assert enumerate_shortest_paths(4, 0, 0b1111, max_len=3) == []
    with pytest.raises(CapacityError):
        enumerate_shortest_paths(9, 0, 0b111111111)


def test_raised_subcube():
    u = 0
    X = VertexSet(4, [1, 2])
    Q = raised_subcube(4, u, X)
    assert Q == interval(4, 0, 3)
    with pytest.raises(ValueError):
        raised_subcube(4, 0, VertexSet(4, [3]))  # not a neighbor


def test_halved_cube():
    hc = halved_cube(4, "even")
    assert isinstance(hc, HalvedCube)
    assert len(hc.vertices) == 8
    masks = hc.adjacency_bitmasks()
    # the halved 4-cube is C(4,2)-regular
    assert all(m.bit_count() == comb(4, 2) for m in masks)
    assert hc.adjacent(0b0000, 0b0011)
    assert not hc.adjacent(0b0000, 0b1111)
    with pytest.raises(ValueError):
        halved_cube(4, "both")


@given(st.integers(2, 8), st.data())
def test_distance_is_translate_invariant(h, data):
    n = 1 << h
    u = data.draw(st.integers(0, n - 1))
    v = data.draw(st.integers(0, n - 1))
    t = data.draw(st.integers(0, n - 1))
    assert hamming_distance(u ^ t, v ^ t) == hamming_distance(u, v)


@given(st.integers(2, 6), st.data())
def test_interval_matches_path_union(h, data):
    n = 1 << h
    u = data.draw(st.integers(0, n - 1))
    v = data.draw(st.integers(0, n - 1))
    on_paths = set()
    for path in enumerate_shortest_paths(h, u, v):
        on_paths.update(path)
    assert on_paths == set(interval(h, u, v))
