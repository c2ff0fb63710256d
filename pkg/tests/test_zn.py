import pytest
from hypothesis import given
from hypothesis import strategies as st

from algebra.zn import Ordering, ZnVec, add, cmp, height, in_segment, pred, scale, sub, succ
from utils.errors import ConfigurationError, WordSyntaxError

V = ZnVec.of
vectors = st.tuples(st.integers(-50, 50), st.integers(-50, 50)).map(lambda t: ZnVec(t))


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (V(5, 0), V(0, 1), Ordering.LESS),
        (V(3, 7), V(3, 7), Ordering.EQUAL),
        (V(-2, 1), V(4, 0), Ordering.GREATER),
    ],
)
def test_cmp_right_lexicographic(a, b, expected):
    assert cmp(a, b) is expected


def test_arithmetic():
    assert add(V(1, 2), V(3, 4)) == V(4, 6)
    assert scale(2, V(0, 5)) == V(0, 10)
    assert sub(V(0, 1), V(1, 0)) == V(-1, 1)


def test_in_segment():
    assert in_segment(V(7, 0), V(1, 0), V(0, 1))
    assert not in_segment(V(0, 2), V(1, 0), V(0, 1))
    assert in_segment(V(1, 0), V(1, 0), V(1, 0))


def test_succ_pred_and_height():
    assert succ(V(0, 1)) == V(1, 1)
    assert pred(V(0, 1)) == V(-1, 1)
    assert succ(V(3, 0)) == V(4, 0)
    assert height(V(3, 7)) == 7
    assert height(V(4, 0)) == 0
    assert height(V(0, 5)) == 5


def test_dimension_mismatch_is_a_configuration_error():
    with pytest.raises(ConfigurationError):
        cmp(V(1, 0), V(1, 0, 0))
    with pytest.raises(ConfigurationError):
        V(1) + V(1, 2)


def test_parse():
    assert ZnVec.parse("(0,5)") == V(0, 5)
    assert ZnVec.parse("3", 2) == V(3, 0)
    with pytest.raises(WordSyntaxError):
        ZnVec.parse("(1,x)")
    with pytest.raises(ConfigurationError):
        ZnVec.parse("(1,2,3)", 2)


@given(vectors, vectors, vectors)
def test_order_is_translation_invariant(a, b, c):
    assert (a < b) == (a + c < b + c)


@given(vectors, vectors)
def test_order_is_total(a, b):
    assert sum([a < b, a == b, a > b]) == 1


@given(vectors)
def test_succ_inverts_pred(a):
    assert succ(pred(a)) == a
    assert pred(a) < a < succ(a)
