import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidquad import series as S
from rigidquad.checks import map_problems
from rigidquad.enumeration import (
    build_spine_tree,
    compositions,
    count_quads_recursive,
    cycle_subtrees,
    degeneracy,
    enumerate_bcd,
    enumerate_h_trees,
    enumerate_pre_q_trees,
    enumerate_q_trees,
    enumerate_quads,
    h_trees_recursive,
    shapes,
    spine_kind_ok,
)
from rigidquad.maps import unit_square
from rigidquad.sampling import (
    SamplingBudgetExceeded,
    random_composition,
    random_shape,
    sample_delta_type,
    sample_pre_q_tree,
    sample_rigid_quad,
)
from rigidquad.trees import PartitionTree, TreeClass, is_member


def test_orderings():
    assert shapes(3) == ("10100", "11000")
    assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert list(compositions(0, 0)) == [()]


def test_pre_q_small_counts():
    assert enumerate_pre_q_trees(1, 0) == [PartitionTree.single(0)]
    two = enumerate_pre_q_trees(2, 0)
    assert sorted(t.leaf_labels() for t in two) == [(-1, 0), (0, -1)]
    assert len(enumerate_pre_q_trees(3, 0)) == 12


def test_pre_q_formula():
    for p in range(-4, 5):
        for n in range(1, 7):
            assert len(enumerate_pre_q_trees(n, p)) == S.pre_q_count(n, p)


def test_base_zero_q_trees():
    assert len(enumerate_q_trees(1, 0)) == 1
    assert all(not enumerate_q_trees(n, 0) for n in range(2, 6))
    assert enumerate_h_trees(2, 1) == [PartitionTree("100", [1, 0, 0])]


def test_recursive_count_small_values():
    assert count_quads_recursive(0, 1) == 1
    assert count_quads_recursive(1, 2) == 1
    assert enumerate_quads(2, 1) == [unit_square()]


def test_h_tree_enumerators_agree():
    for p in (-3, -2, -1, 1, 2, 3):
        h = S.h_series(p, 5)
        for n in range(1, 6):
            rec = h_trees_recursive(n, p)
            assert set(rec) == set(enumerate_h_trees(n, p))
            assert len(rec) == h[n]
            assert all(is_member(t, TreeClass.H) for t in rec)


def test_cycle_subtrees_trivial_walks():
    t = build_spine_tree(1, [PartitionTree.single(0)])
    assert len(cycle_subtrees(t, 1, 1)) == 1
    for q in (2, 3, 4):
        diag = build_spine_tree(q, [PartitionTree.single(0)] * q)
        assert len(cycle_subtrees(diag, q, q)) == q
    with pytest.raises(ValueError):
        cycle_subtrees(t, 1, 2)


def test_valid_rotations_equal_degeneracy():
    for p, q in ((2, 2), (3, 3), (2, 4), (3, 2)):
        for n in range(1, 6):
            for t in enumerate_q_trees(n, p):
                if spine_kind_ok("delta", t, p, q):
                    assert len(cycle_subtrees(t, p, q)) == degeneracy(t, p, q)


def test_bcd_low_order():
    for kind in ("B", "C", "delta"):
        assert len(enumerate_bcd(kind, 1, 1, 1)) == 1
    b = S.b_series(2)
    assert len(enumerate_bcd("B", 2, 1, 2)) == b.coeff(2, 2, 1) == 1


def test_bcd_against_series():
    d, b, c = S.delta_series(3), S.b_series(3), S.c_series(3)
    for n in range(1, 4):
        for p in range(1, 4):
            for q in range(1, 4):
                assert sum(Fraction(1, m) for _, m in enumerate_bcd("delta", p, q, n)) == d.coeff(n, p, q)
                assert len(enumerate_bcd("B", p, q, n)) == b.coeff(n, p, q)
                assert len(enumerate_bcd("C", p, q, n)) == c.coeff(n, p, q)


# ---------------------------------------------------------------------------
# samplers


def test_random_shape_uniform_enough():
    rng = random.Random(7)
    counts = Counter(random_shape(4, rng) for _ in range(5000))
    assert set(counts) == set(shapes(4))
    assert min(counts.values()) > 800


def test_random_composition():
    rng = random.Random(2)
    for _ in range(200):
        c = random_composition(5, 3, rng)
        assert len(c) == 3 and sum(c) == 5 and min(c) >= 0


def test_sample_pre_q_tree_basics():
    assert sample_pre_q_tree(1, 0, random.Random(0)) == PartitionTree.single(0)
    a = sample_pre_q_tree(6, -1, random.Random(11))
    b = sample_pre_q_tree(6, -1, random.Random(11))
    assert a == b
    assert is_member(a, TreeClass.PRE_Q) and a.base_length == -1 and a.degree == 6
    with pytest.raises(ValueError):
        sample_pre_q_tree(2, 5, random.Random(0))


def test_sample_unit_square():
    rng = random.Random(3)
    for _ in range(20):
        m, n = sample_rigid_quad(1, 4, 2, rng)
        assert n == 2 and m == unit_square()


def test_rejection_budget():
    with pytest.raises(SamplingBudgetExceeded) as info:
        sample_rigid_quad(1, 6, 6, random.Random(0), budget=1)
    assert info.value.retryable and info.value.attempts == 1


@given(st.integers(0, 2**32), st.sampled_from([-3, -2, -1, 1, 2, 3]), st.integers(3, 9))
@settings(max_examples=40, deadline=None)
def test_sampled_maps_are_rigid(seed, p, n_max):
    if n_max - 1 - p < 0:
        return
    m, n = sample_rigid_quad(p, n_max, None, random.Random(seed))
    assert 1 <= n <= n_max
    assert map_problems(m) == []
    if p > 0:
        assert m.base_length() == p
    else:
        assert p <= m.base_length() <= 0
    assert m.point or m.num_corners() == 2 * n


@given(st.integers(0, 2**32), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=30, deadline=None)
def test_sampled_delta_maps(seed, p, q):
    n_max = max(p, q) + 4
    m, n = sample_delta_type(p, q, n_max, None, random.Random(seed))
    assert map_problems(m) == []
    assert m.base_length() == p
    assert any(m == x for x, _ in enumerate_bcd("delta", p, q, n)) if n <= 4 else True


def test_delta_minimal_is_unit_square():
    m, n = sample_delta_type(1, 1, 2, 1, random.Random(0))
    assert n == 1 and m == unit_square()
