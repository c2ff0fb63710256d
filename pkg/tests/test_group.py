import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.letters import letter
from algebra.words import PERIODIC, Block, InfiniteWord
from algebra.zn import ZnVec
from groups.group import Group, GroupElement, check_lyndon_axioms, hbar_element, lyndon_c
from tests.helpers import element, word
from utils.errors import MalformedWorkspaceError, NoCommonMaxError, PresentationInvalidError, WordSyntaxError

V = ZnVec.of


def test_group_mult_and_inverse(f2_over_z2):
    g = f2_over_z2
    assert g.mult(element("a"), element("a^-1")).word.is_empty
    assert g.inv(element("a b")).word == word("b^-1 a^-1")


def test_not_min_product(not_min):
    g = not_min.group
    u5b = g.mult(g.element("u5"), g.element("b"))
    assert str(u5b) == "(a)^(0,5) b"
    assert u5b.length == V(1, 5)
    assert hbar_element(u5b) == 5


def test_evaluate_products_and_powers(not_min):
    g = not_min.group
    assert g.evaluate("u5 * b") == g.mult(g.element("u5"), g.element("b"))
    assert g.evaluate("a * a^-1").word.is_empty
    assert g.evaluate("u5^-2").length == V(0, 10)


def test_evaluate_reports_the_column(not_min):
    with pytest.raises(WordSyntaxError) as info:
        not_min.group.evaluate("a * * b")
    assert info.value.position == 5


def test_lyndon_c():
    assert lyndon_c(element("a b"), element("a b")) == V(2, 0)
    assert lyndon_c(element("a"), element("b")) == V(0, 0)
    assert lyndon_c(element("a b a"), element("a b b")) == V(2, 0)


@pytest.mark.parametrize("radius, size", [(1, 5), (3, 53)])
def test_free_group_balls(free_ab, radius, size):
    assert len(free_ab.group.ball_enumerate(radius)) == size


def test_not_min_ball_of_radius_one(not_min):
    ball = not_min.group.ball_enumerate(1)
    assert len(ball) == 7
    assert element("(a)^(0,5)") in ball
    assert element("(a^-1)^(0,5)") in ball


def test_ball_is_thread_count_independent(not_min):
    one = not_min.group.ball_enumerate(2, threads=1)
    four = not_min.group.ball_enumerate(2, threads=4)
    assert [str(g) for g in one] == [str(g) for g in four]


def test_spheres_partition_the_ball(free_ab):
    layers = free_ab.group.spheres(3)
    assert [len(s) for s in layers] == [1, 4, 12, 36]


def test_empty_generator_is_rejected():
    with pytest.raises(MalformedWorkspaceError):
        Group.from_texts(1, ["a"], {"x": "ε"})


def test_generator_syntax_errors_are_workspace_errors():
    with pytest.raises(MalformedWorkspaceError):
        Group.from_texts(1, ["a"], {"x": "a ^"})


def test_lyndon_axioms_on_the_not_min_ball(not_min):
    ball = not_min.group.ball_enumerate(1)
    for x, y, z in itertools.combinations(ball, 3):
        assert check_lyndon_axioms(x, y, z) == []


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_lyndon_axioms_on_sampled_free_triples(free_ab, data):
    ball = free_ab.group.ball_enumerate(3)
    x, y, z = (data.draw(st.sampled_from(ball)) for _ in range(3))
    assert check_lyndon_axioms(x, y, z) == []


class TestGuards:
    def test_generator_outside_cdr_is_a_malformed_workspace(self):
        a = letter("a")
        w = InfiniteWord(
            (Block(PERIODIC, (a,), ZnVec((0, 1))), Block(PERIODIC, (a.inverse(),), ZnVec((0, 1)))),
            ZnVec((0, 2)),
        )
        with pytest.raises(MalformedWorkspaceError, match="CDR"):
            Group(2, ["a"], {"x": w})

    def test_undefined_product_names_both_factors(self):
        g = Group.from_texts(2, ["a"], {"u": "(a)^(0,1)"})
        doubled = InfiniteWord((Block(PERIODIC, (letter("a", -1),) * 2, ZnVec((0, 1))),), ZnVec((0, 1)))
        with pytest.raises(PresentationInvalidError) as info:
            g.mult(GroupElement(doubled), g.element("u"))
        assert isinstance(info.value.__cause__, NoCommonMaxError)
