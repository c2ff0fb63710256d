import pytest

from algebra.letters import letter
from algebra.words import is_reduced
from algebra.zn import ZnVec
from groups.group import GroupElement
from groups.tree import (
    Edge,
    Vertex,
    act,
    act_edge,
    axis_segment,
    dist,
    edge_label,
    hbar,
    hbar_pair,
    in_axis,
    in_cone,
    median,
    path_label,
    sigma,
    vertex_of,
)
from tests.helpers import element, vertex, word
from utils.errors import DomainError

V = ZnVec.of
EPS = vertex("ε")


def test_vertex_of():
    assert vertex_of(element("a b a"), V(2, 0)) == vertex("a b")
    assert vertex_of(element("a b a"), V(0, 0)) == EPS
    assert vertex_of(element("(a)^(0,5)"), V(0, 3)) == vertex("(a)^(0,3)")


def test_act():
    assert act(element("a"), EPS) == vertex("a")
    assert act(element("a^-1"), vertex("a")) == EPS
    assert act(element("b"), vertex("(a)^(0,1)")) == vertex("b (a)^(0,1)")


def test_dist():
    assert dist(EPS, vertex("a b a")) == V(3, 0)
    assert dist(vertex("a b a"), vertex("a b b")) == V(2, 0)
    v = vertex("(a)^(0,5) b")
    assert dist(v, v) == V(0, 0)


def test_median():
    assert median(EPS, vertex("a b a"), vertex("a b b")) == vertex("a b")
    x = vertex("a b")
    assert median(x, x, vertex("b")) == x
    assert median(EPS, vertex("(a)^(0,5)"), vertex("(a)^(0,1) b")) == vertex("(a)^(0,1)")


def test_labels():
    assert edge_label(vertex("a b")) == letter("b")
    assert sigma(Edge(vertex("a b"), vertex("a"))) == letter("b", -1)
    with pytest.raises(DomainError):
        edge_label(EPS)


def test_edge_needs_unit_distance():
    with pytest.raises(DomainError):
        Edge(EPS, vertex("a b"))


def test_sigma_is_equivariant_on_positive_images(free_ab):
    ball = free_ab.group.ball_enumerate(2)
    vertices = [Vertex(g.word) for g in ball if not g.word.is_empty]
    for g in ball:
        for v in vertices:
            parent = vertex_of(GroupElement(v.prefix), v.length - ZnVec.unit(1))
            e = Edge(parent, v)
            image = act_edge(g, e)
            assert sigma(image) == sigma(e)


def test_path_label_reads_the_geodesic():
    assert path_label(vertex("a b"), vertex("a a")) == word("b^-1 a")


def test_hbar():
    assert hbar(vertex("(a)^(0,5)")) == 5
    assert hbar(vertex("a b a")) == 0


def test_hbar_pair_adds_along_a_geodesic():
    start, mid, end = vertex("ε"), vertex("(a)^(0,2)"), vertex("(a)^(0,5)")
    assert hbar_pair(start, end) == 5
    assert hbar_pair(start, mid) + hbar_pair(mid, end) == hbar_pair(start, end)


def test_in_cone():
    assert in_cone(vertex("a b a"), EPS, vertex("a b"))
    assert not in_cone(vertex("b"), EPS, vertex("a"))
    assert in_cone(vertex("(a)^(0,5)"), EPS, vertex("(a)^(2,1)"))


def test_axis_of_a_generator():
    a = element("a", 1)
    points = axis_segment(a, 2)
    expected = {vertex(t, 1) for t in ("a^-1 a^-1", "a^-1", "ε", "a", "a a")}
    assert set(points) == expected


def test_axis_of_a_conjugate_passes_through_the_conjugator():
    g = element("b^-1 a b", 1)
    points = axis_segment(g, 1)
    assert vertex("b^-1", 1) in points
    assert all(in_axis(g, p) for p in points)
    assert not in_axis(g, vertex("ε", 1))


def test_identity_has_no_axis():
    with pytest.raises(DomainError):
        axis_segment(element("ε"), 1)


def test_action_composes_through_the_group_product(not_min):
    group = not_min.group
    ball = group.ball_enumerate(1)
    points = [Vertex(g.word) for g in ball] + [vertex("(a)^(0,2)"), vertex("b (a)^(3,1)")]
    for g in ball:
        assert act(group.identity(), Vertex(g.word)) == Vertex(g.word)
        for h in ball:
            gh = group.mult(g, h)
            for v in points:
                assert act(g, act(h, v)) == act(gh, v)


@pytest.mark.parametrize("name, radius", [("free_ab", 3), ("not_min", 2)])
def test_root_labels_are_the_ball(request, name, radius):
    ws = request.getfixturevalue(name)
    ball = ws.group.ball_enumerate(radius)
    base = Vertex.base(ws.n)
    labels = set()
    for g in ball:
        w = path_label(base, Vertex(g.word))
        assert is_reduced(w.blocks)
        labels.add(w)
    assert labels == {g.word for g in ball}


def test_path_labels_between_ball_vertices_are_reduced(not_min):
    vertices = [Vertex(g.word) for g in not_min.group.ball_enumerate(1)]
    for u in vertices:
        for v in vertices:
            w = path_label(u, v)
            assert is_reduced(w.blocks)
            assert w.length == dist(u, v)
