"""Short constructors for words, vertices and elements in tests."""

from algebra.grammar import parse_word
from groups.group import GroupElement
from groups.tree import Vertex


def word(text: str, n: int = 2):
    return parse_word(text, n)


def vertex(text: str, n: int = 2) -> Vertex:
    return Vertex(parse_word(text, n))


def element(text: str, n: int = 2) -> GroupElement:
    return GroupElement(parse_word(text, n))
