import pytest

from rigidquad.bijections import (
    GlueError,
    Signature,
    build_minimal_submap,
    find_minimal_submap,
    glue_bottom,
    glue_minimal,
    glue_top,
    h_tree_to_quad,
    minimal_submap_seams,
    quad_to_h_tree,
    signature_allowed,
    submap_type,
)
from rigidquad.enumeration import h_trees_recursive
from rigidquad.maps import QuadMap, from_cells, unit_square
from rigidquad.trees import PartitionTree


def allowed_grid():
    for p in range(-4, 5):
        for a in range(-4, 5):
            for b in range(-4, 5):
                k = a + b - p + 1
                if 0 <= k <= 6 and signature_allowed((p, a, b, k)):
                    yield Signature(p, a, b, k)


def open_sides(m):
    return [s for s in m.sides[1:] if s.is_open]


def test_signature_examples():
    assert signature_allowed((3, 1, 1, 0)) and submap_type((3, 1, 1, 0)) == "G"
    assert not signature_allowed((-1, 1, 1, 4))
    assert not signature_allowed((2, 1, 1, 1))
    assert submap_type((3, 0, 2, 0)) == "G"
    assert submap_type((2, 4, -1, 2)) == "R"
    assert submap_type((-2, -2, 0, 1)) == "Gbar"
    assert not signature_allowed((0, 0, 0, 1))
    with pytest.raises(ValueError):
        submap_type((2, 1, 1, 1))


def test_open_base_needs_two_extra_corners():
    assert not signature_allowed((-1, 0, 0, 1))
    assert signature_allowed((-1, 0, 0, 2))


def test_build_terminal_pieces():
    assert build_minimal_submap((1, 0, 0, 0)) == unit_square()
    m = build_minimal_submap((-1, 0, 0, 2))
    assert m.validate().ok and m.base_length() == -1 and m.is_complete()


def test_build_g_with_one_open_top_side():
    m = build_minimal_submap((2, 1, 0, 0))
    assert m.validate().ok and m.base_length() == 2
    [side] = open_sides(m)
    assert side.top and side.size == 1
    assert minimal_submap_seams((2, 1, 0, 0)) == ("top", None)


def test_every_allowed_signature_builds_its_submap():
    count = 0
    for s in allowed_grid():
        count += 1
        m = build_minimal_submap(s)
        assert m.validate().ok, s
        assert m.base_length() == s.p
        kinds = minimal_submap_seams(s)
        sides = open_sides(m)
        assert len(sides) == sum(k is not None for k in kinds)
        # a-position is met first going clockwise from the base
        expected = [(k, v) for k, v in zip(kinds, (s.a, s.b)) if k is not None]
        for side, (kind, value) in zip(sides, expected):
            if kind == "top":
                assert side.top and side.size == value
            else:
                assert side.top is False and side.size == 1 and side.length == -value
    assert count > 100


def test_glue_top_unit_square():
    e = build_minimal_submap((2, 1, 0, 0))
    [side] = open_sides(e)
    m = glue_top(e, side.index, unit_square())
    assert m.validate().ok and m.is_complete()
    c = m.corner_census()
    assert c.convex + c.concave == 6
    assert m == from_cells([(0, 0), (1, 0), (0, 1)])


def test_glue_bottom_smallest_case():
    e = build_minimal_submap((2, 2, -1, 0))
    bottom = [s for s in open_sides(e) if s.top is False]
    assert bottom and bottom[0].length == 1
    u = build_minimal_submap((-1, 0, 0, 2))
    m = glue_bottom(e, bottom[0].index, u)
    assert m.validate().ok
    assert m.base_length() == 2


def test_glue_bottom_mismatch():
    e = build_minimal_submap((2, 3, -2, 0))
    [side] = [s for s in open_sides(e) if s.top is False]
    assert side.length == 2
    u = h_tree_to_quad(h_trees_recursive(3, -3)[0])
    with pytest.raises(GlueError):
        glue_bottom(e, side.index, u)
    with pytest.raises(GlueError):
        glue_top(e, side.index, unit_square())


def test_unit_square_decomposition():
    s, a, b = find_minimal_submap(unit_square())
    assert s.as_tuple() == (1, 0, 0, 0)
    assert a.point and b.point
    assert quad_to_h_tree(unit_square()) == PartitionTree("100", [1, 0, 0])
    assert h_tree_to_quad(PartitionTree("100", [1, 0, 0])) == unit_square()
    assert quad_to_h_tree(QuadMap.base0()) == PartitionTree.single(0)
    assert h_tree_to_quad(PartitionTree.single(0)).point


def test_decompose_then_glue_is_identity():
    for p in (-3, -2, -1, 1, 2, 3):
        for n in range(2, 6):
            for h in h_trees_recursive(n, p):
                m = h_tree_to_quad(h)
                s, a, b = find_minimal_submap(m)
                assert signature_allowed(s)
                assert glue_minimal(s, a, b) == m
                assert m.num_corners() == 2 * h.degree


def test_find_rejects_base0():
    with pytest.raises(ValueError):
        find_minimal_submap(QuadMap.base0())
