import dataclasses
import itertools
import math

import pytest

from boundary.compactification import d_ultra
from boundary.ends import BoundaryPoint, symbolic_end
from boundary.tree_of_trees import TreeOfTrees, class_crossing, dbar, dbar_trace, diameter_bound, inner_bound
from groups.group import Group
from groups.tree import Vertex, median
from suites.base import REDUCED, suite_rng
from suites.boundary_suites import _dbar_points, dbar_axioms
from tests.helpers import vertex, word
from utils.errors import ExplorationNeededError


@pytest.fixture(scope="module")
def two_towers():
    """F(a, b, u, v) with u = (a)^(0,1) and v = (b)^(0,1)."""
    group = Group.from_texts(2, ["a", "b"], {"a": "a", "b": "b", "u": "(a)^(0,1)", "v": "(b)^(0,1)"})
    return group, TreeOfTrees.explore(group, 1)


@pytest.fixture(scope="module")
def not_min_tree(not_min):
    return TreeOfTrees.explore(not_min.group, 2)


def test_bounds():
    assert inner_bound(2) == 1.0
    assert inner_bound(3) == 2.0
    assert diameter_bound(2) == 2.0
    assert diameter_bound(1) == 1.0


def test_discovery_order_of_level_one_classes(two_towers):
    _, tree = two_towers
    level_one = [c for c in tree.classes() if c.level == 1]
    assert [str(c.anchor) for c in level_one] == ["(a)^(0,1)", "(a^-1)^(0,1)", "(b)^(0,1)", "(b^-1)^(0,1)"]
    assert [c.index for c in level_one] == [1, 2, 3, 4]
    assert tree.level_histogram() == {0: 1, 1: 4}
    assert tree.gluing_count() == 4


def test_pair_inside_a_rescaled_class(two_towers):
    _, tree = two_towers
    x, y = vertex("(b)^(0,1) a a"), vertex("(b)^(0,1) a b")
    result = dbar_trace(x, y, tree)
    assert result.value == pytest.approx(math.exp(-1) / 16)
    assert result.error_bound == 0.0
    assert [(t.level, t.index, t.factor) for t in result.trace] == [(1, 3, 1 / 16)]


def test_identical_points_are_at_distance_zero(two_towers):
    _, tree = two_towers
    x = vertex("(b)^(0,1) a")
    assert dbar(x, x, tree) == 0.0


def test_unexplored_class_needs_exploration(not_min):
    tree = TreeOfTrees.explore(not_min.group, 0)
    with pytest.raises(ExplorationNeededError):
        dbar(vertex("ε"), vertex("(a)^(0,5)"), tree)


def test_n_equal_one_is_the_ultrametric(free_ab):
    tree = TreeOfTrees.explore(free_ab.group, 1)
    x, y = vertex("a b a", 1), vertex("a b b", 1)
    assert dbar(x, y, tree) == pytest.approx(d_ultra(x, y))


def test_metric_axioms_on_the_not_min_ball(not_min, not_min_tree):
    points = [Vertex(g.word) for g in not_min.group.ball_enumerate(1)]
    bound = diameter_bound(2)
    for x, y in itertools.combinations(points, 2):
        d = dbar(x, y, not_min_tree)
        assert 0.0 < d <= bound
        assert d == pytest.approx(dbar(y, x, not_min_tree), abs=1e-12)
    for x, y, z in itertools.permutations(points, 3):
        assert dbar(x, z, not_min_tree) <= dbar(x, y, not_min_tree) + dbar(y, z, not_min_tree) + 1e-12


def test_top_type_end_is_within_the_diameter(not_min, not_min_tree):
    u_plus = not_min.ends["u_plus"]
    result = dbar_trace(vertex("ε"), u_plus, not_min_tree)
    assert 0.0 < result.value <= diameter_bound(2)
    assert result.error_bound > 0.0
    assert dbar(u_plus, not_min.ends["u_plus"], not_min_tree) == 0.0


def test_class_crossing_anchor():
    key, anchor = class_crossing(word("b (a)^(0,3) b"), 1, 2)
    assert anchor == word("b (a)^(-1,2)")
    assert anchor.length.height == 2
    assert key[1] == 2


@pytest.fixture(scope="module")
def deep_towers(two_towers):
    group, _ = two_towers
    return group, TreeOfTrees.explore(group, 3)


def test_vertices_along_a_ray_converge_to_its_end(deep_towers):
    _, tree = deep_towers
    end = symbolic_end(word("ε"), word("(a)^(0,1)"))
    ds = [dbar(vertex(f"(a)^(0,{i})" if i else "ε"), end, tree) for i in range(4)]
    assert all(later < earlier for earlier, later in zip(ds, ds[1:]))
    for i in range(1, 4):
        assert ds[i] <= 2.0**-i * inner_bound(2)


def test_pairs_with_a_rising_median_converge(deep_towers):
    _, tree = deep_towers
    ds = []
    for i in range(3):
        a, b = vertex(f"(a)^(0,{i}) a" if i else "a"), vertex(f"(a)^(0,{i}) b" if i else "b")
        assert median(vertex("ε"), a, b).length.height == i
        ds.append(dbar(a, b, tree))
    assert all(later < earlier for earlier, later in zip(ds, ds[1:]))
    assert ds[1] == pytest.approx(2.0**-2)


def test_unexplored_classes_share_the_first_free_slot(two_towers):
    _, tree = two_towers
    key_a, _ = class_crossing(word("(a)^(0,2)"), 1, 2)
    key_b, _ = class_crossing(word("(b)^(0,2)"), 1, 2)
    assert key_a != key_b
    assert not tree.is_explored(key_a) and not tree.is_explored(key_b)
    assert tree.index_of(key_a, 2) == tree.index_of(key_b, 2) == 1
    assert tree.factor(key_a, 2) == 2.0**-3


def test_every_class_on_a_vertex_climb_must_be_explored(two_towers):
    _, tree = two_towers
    with pytest.raises(ExplorationNeededError):
        dbar(vertex("(a)^(0,2) b"), vertex("(a)^(0,1)"), tree)
    assert dbar(vertex("(a)^(0,1) b"), symbolic_end(word("ε"), word("(a)^(0,1)")), tree) > 0.0


def test_axiom_sample_reaches_periodic_rows_and_ends(not_min):
    ball = not_min.group.ball_enumerate(1)
    points = _dbar_points(suite_rng(7, "dbar_axioms"), not_min, ball)
    ends = [p for p in points if isinstance(p, BoundaryPoint)]
    inside = [p for p in points if isinstance(p, Vertex) and 0 < p.length.height < 5]
    assert len(ends) == len(not_min.ends) + 4
    assert inside


def test_dbar_axioms_hold_with_ends_in_the_sample():
    result = dbar_axioms(dataclasses.replace(REDUCED, triples=80), 7)
    assert result.passed, result.detail
