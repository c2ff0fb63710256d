import pytest
from hypothesis import given
from hypothesis import strategies as st

from algebra.grammar import format_word, parse_word, split_product, tokenize
from algebra.letters import letter
from algebra.words import BlockKind, InfiniteWord
from algebra.zn import ZnVec
from utils.errors import ReductionError, WordSyntaxError


def test_finite_literal():
    w = parse_word("a b^-1", 2)
    assert w.length == ZnVec.of(2, 0)
    assert w.finite_letters() == (letter("a"), letter("b", -1))


def test_tuple_exponent_is_a_periodic_block():
    w = parse_word("(a)^(0,5)", 2)
    assert len(w.blocks) == 1
    assert w.blocks[0].kind is BlockKind.PERIODIC
    assert w.blocks[0].period == (letter("a"),)
    assert w.length == ZnVec.of(0, 5)


def test_integer_exponent_repeats():
    assert parse_word("(a b)^2", 1) == parse_word("a b a b", 1)
    assert parse_word("(a b)^-1", 1) == parse_word("b^-1 a^-1", 1)


def test_non_primitive_period_is_normalized():
    assert parse_word("(a a)^(0,1)", 2) == parse_word("(a)^(0,1)", 2)


def test_identifiers_are_single_letters_with_digits():
    assert [t.text for t in tokenize("aba u5")[:-1]] == ["a", "b", "a", "u5"]


def test_epsilon():
    assert parse_word("ε", 2).is_empty
    assert parse_word("", 2).is_empty


def test_parsing_never_reduces():
    with pytest.raises(ReductionError):
        parse_word("a a^-1", 1)


@pytest.mark.parametrize(
    "text, column",
    [
        ("a ^", 4),
        ("a (b", 5),
        ("a # b", 3),
        ("(a)^(0,5,1)", 4),
        ("a (b)^(1,2,3)", 6),
    ],
)
def test_syntax_errors_carry_the_column(text, column):
    with pytest.raises(WordSyntaxError) as info:
        parse_word(text, 2)
    assert info.value.position == column


def test_unknown_letter_against_an_alphabet():
    with pytest.raises(WordSyntaxError):
        parse_word("a c", 1, ["a", "b"])


def test_split_product_reports_empty_factor():
    assert split_product("u5 * b") == [("u5", 1), ("b", 6)]
    with pytest.raises(WordSyntaxError) as info:
        split_product("a * * b")
    assert info.value.position == 5


words_z2 = st.sampled_from(
    ["ε", "a", "a b^-1", "(a)^(0,5) b", "(a b)^(3,1) a", "b (a^-1)^(-2,1)", "(a)^(0,1) b (a)^(0,1)"]
)


@given(words_z2)
def test_format_parse_round_trip(text):
    w = parse_word(text, 2)
    assert parse_word(format_word(w), 2) == w
    assert isinstance(w, InfiniteWord)
