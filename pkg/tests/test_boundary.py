import itertools
import math

import pytest

from algebra.zn import ZnVec
from boundary.compactification import ball_in_compactification, d_ultra, gromov, line_between, line_contains
from boundary.ends import classify_end, empirical_end, meet, same_end, symbolic_end
from groups.tree import Vertex
from tests.helpers import vertex, word
from utils.errors import BoundaryError, ConfigurationError, PrecisionError

V = ZnVec.of


def end1(tail: str, base: str = "ε"):
    return symbolic_end(word(base, 1), word(tail, 1))


class TestGromovAndUltrametric:
    def test_gromov(self):
        assert gromov(vertex("a b a"), vertex("a b b"), vertex("ε")) == V(2, 0)
        x = vertex("(a)^(0,5) b")
        assert gromov(x, x) == x.length

    def test_d_ultra(self):
        assert d_ultra(vertex("a b a", 1), vertex("a b b", 1)) == pytest.approx(math.exp(-2))
        assert d_ultra(vertex("a b", 1), vertex("a b", 1)) == 0.0

    def test_opposite_rays_are_at_distance_one(self):
        assert d_ultra(end1("a"), end1("b")) == pytest.approx(1.0)

    def test_base_point_moves_the_product(self):
        assert gromov(vertex("a b a", 1), vertex("a b b", 1), vertex("a", 1)) == V(1)

    def test_products_outside_a_z_subtree_are_rejected(self):
        with pytest.raises(BoundaryError):
            d_ultra(vertex("(a)^(0,1) b"), vertex("(a)^(0,1) b^-1"))

    def test_strong_triangle_inequality(self, free_ab):
        points = [Vertex(g.word) for g in free_ab.group.ball_enumerate(2)]
        points += [end1("a"), end1("a^-1"), end1("b", "a"), end1("a b")]
        for x, y, z in itertools.combinations(points, 3):
            dxy, dxz, dyz = d_ultra(x, y), d_ultra(x, z), d_ultra(y, z)
            assert dxz <= max(dxy, dyz) + 1e-15
            assert dxy == pytest.approx(d_ultra(y, x))
            assert dxy <= 1.0


class TestEnds:
    def test_classification(self):
        assert classify_end(symbolic_end(word("ε"), word("a"))) == 1
        assert classify_end(symbolic_end(word("ε"), word("(a)^(0,1)"))) == 2
        assert classify_end(symbolic_end(word("(a)^(0,5)"), word("b"))) == 1

    def test_tail_must_not_cancel_the_base(self):
        with pytest.raises(BoundaryError):
            end1("a^-1", "a")
        with pytest.raises(BoundaryError):
            end1("ε")
        with pytest.raises(BoundaryError):
            end1("a b a^-1")

    def test_dimension_mismatch(self):
        with pytest.raises(ConfigurationError):
            symbolic_end(word("a", 1), word("a", 2))

    def test_same_end_ignores_the_presentation(self):
        assert same_end(end1("a"), end1("a", "a"))
        assert same_end(end1("a b"), end1("b a", "a"))
        assert not same_end(end1("a"), end1("a^-1"))

    def test_meet_of_vertex_and_end(self):
        assert meet(vertex("a a b", 1), end1("a")) == V(2)

    def test_empirical_chain_must_grow(self):
        with pytest.raises(BoundaryError):
            empirical_end([word("a b", 1), word("b", 1)], 1)
        with pytest.raises(PrecisionError):
            empirical_end([], 1)

    def test_shallow_empirical_end_is_imprecise(self):
        p = empirical_end([word("a", 1), word("a a", 1)], 1)
        with pytest.raises(PrecisionError):
            meet(vertex("a a a", 1), p)

    def test_inconclusive_end_reports_a_lower_bound(self):
        p = empirical_end([word("(a)^(0,1)"), word("(a)^(0,2)")], 2, conclusive=False)
        with pytest.raises(PrecisionError) as info:
            classify_end(p)
        assert info.value.lower_bound == 2


class TestLinesAndBalls:
    def test_axis_line(self):
        line = line_between(end1("a^-1"), end1("a"))
        assert line_contains(line, vertex("a a a", 1))
        assert line_contains(line, vertex("a^-1", 1))
        assert not line_contains(line, vertex("a b", 1))

    def test_no_line_from_an_end_to_itself(self):
        with pytest.raises(BoundaryError):
            line_between(end1("a"), end1("a", "a"))

    def test_ball_around_an_end(self):
        x = end1("a")
        ball = ball_in_compactification(x, math.exp(-2))
        assert ball.apex == vertex("a a", 1)
        assert ball.contains(x)
        assert not ball.contains(vertex("a b", 1))

    def test_ball_around_a_vertex(self):
        ball = ball_in_compactification(vertex("a", 1), 0.5)
        assert ball.contains(vertex("a", 1))
        assert ball_in_compactification(vertex("a", 1), 0.01).is_singleton

    def test_large_radius_is_the_whole_space(self):
        ball = ball_in_compactification(vertex("ε", 1), 1.5)
        assert ball.whole
        assert ball.contains(end1("b"))

    def test_balls_need_n_equal_one(self):
        with pytest.raises(ConfigurationError):
            ball_in_compactification(vertex("a"), 0.5)
