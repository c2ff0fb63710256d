"""
Finitely generated Z^n-free groups given by CDR generator words.

Membership is trusted: a group is whatever the generators produce under *.
A product that cannot be formed surfaces as PresentationInvalidError naming
the pair, never as a silent wrong answer.
"""

from __future__ import annotations

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from algebra.grammar import parse_word, split_product
from algebra.words import (
    InfiniteWord,
    c_len,
    cyclic_decomposition,
    invert,
    mult,
    power,
)
from algebra.zn import ZnVec
from utils.errors import (
    ConfigurationError,
    MalformedWorkspaceError,
    NoCommonMaxError,
    NotInCDRError,
    PresentationInvalidError,
    WordSyntaxError,
    ZnTreeError,
)

logger = logging.getLogger(__name__)

Expression = tuple[tuple[int, int], ...]  # (generator index, sign)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A group element; equality is equality of canonical words."""

    word: InfiniteWord
    expression: Expression | None = field(default=None)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.word == other.word

    def __hash__(self) -> int:
        return hash(self.word)

    @property
    def length(self) -> ZnVec:
        return self.word.length

    @property
    def hbar(self) -> int:
        return self.word.length.height

    def sort_key(self) -> tuple:
        return self.word.sort_key()

    def __str__(self) -> str:
        return str(self.word)


_POWER = re.compile(r"^([A-Za-z][0-9_]*)\s*(?:\^\s*(-?\d+))?$")


class Group:
    """A Z^n-free group presented by named generator words.

    Args:
        n: Ambient dimension.
        alphabet: Symbols the generator words are written in.
        generators: Ordered mapping name -> generator word.
    """

    def __init__(self, n: int, alphabet: Sequence[str], generators: Mapping[str, InfiniteWord]):
        if n < 1:
            raise ConfigurationError(f"dimension must be >= 1, got {n}")
        if not generators:
            raise MalformedWorkspaceError("a group needs at least one generator")
        self.n = n
        self.alphabet = tuple(alphabet)
        self.names = tuple(generators)
        words = []
        for name, w in generators.items():
            if w.n != n:
                raise ConfigurationError(f"generator {name} lives in Z^{w.n}, group in Z^{n}")
            if w.is_empty:
                raise MalformedWorkspaceError(f"generator {name} is ε")
            try:
                cyclic_decomposition(w)
            except NotInCDRError as e:
                raise MalformedWorkspaceError(f"generator {name}: {e}") from e
            words.append(w)
        self.generator_words = tuple(words)

    @classmethod
    def from_texts(cls, n: int, alphabet: Sequence[str], generators: Mapping[str, str]) -> Group:
        parsed = {}
        for name, text in generators.items():
            try:
                parsed[name] = parse_word(text, n, alphabet)
            except WordSyntaxError as e:
                raise MalformedWorkspaceError(f"generator {name}: {e}") from e
        return cls(n, alphabet, parsed)

    def __repr__(self) -> str:
        gens = ", ".join(f"{k}={w}" for k, w in zip(self.names, self.generator_words))
        return f"Group(n={self.n}, {gens})"

    # --- elements ---

    def identity(self) -> GroupElement:
        return GroupElement(InfiniteWord.empty(self.n), ())

    def generator(self, index: int, sign: int = 1) -> GroupElement:
        w = self.generator_words[index]
        return GroupElement(w if sign > 0 else invert(w), ((index, sign),))

    def element(self, name: str) -> GroupElement:
        if name not in self.names:
            raise ConfigurationError(f"unknown generator {name!r}")
        return self.generator(self.names.index(name))

    def symmetric_generators(self) -> list[GroupElement]:
        """Generators and inverses ordered by (index, sign); duplicates dropped."""
        out: list[GroupElement] = []
        seen: set[InfiniteWord] = set()
        for i in range(len(self.generator_words)):
            for sign in (-1, 1):
                g = self.generator(i, sign)
                if g.word not in seen:
                    seen.add(g.word)
                    out.append(g)
        return out

    def word_element(self, text: str) -> GroupElement:
        return GroupElement(parse_word(text, self.n, self.alphabet))

    # --- operations ---

    def mult(self, g: GroupElement, h: GroupElement) -> GroupElement:
        try:
            word = mult(g.word, h.word)
        except NoCommonMaxError as e:
            raise PresentationInvalidError(str(g), str(h), str(e)) from e
        expr = None
        if g.expression is not None and h.expression is not None:
            expr = g.expression + h.expression
        return GroupElement(word, expr)

    def inv(self, g: GroupElement) -> GroupElement:
        expr = None
        if g.expression is not None:
            expr = tuple((i, -s) for i, s in reversed(g.expression))
        return GroupElement(invert(g.word), expr)

    def evaluate(self, text: str) -> GroupElement:
        """Evaluate "f1 * f2 * ..." where each factor is a generator name,
        a generator power such as u5^-1, or a word literal."""
        result = self.identity()
        for factor, column in split_product(text):
            m = _POWER.match(factor)
            if m and m.group(1) in self.names:
                k = int(m.group(2)) if m.group(2) is not None else 1
                g = self.element(m.group(1))
                step = GroupElement(
                    power(g.word, k), ((self.names.index(m.group(1)), 1 if k >= 0 else -1),) * abs(k)
                )
            else:
                try:
                    step = self.word_element(factor)
                except WordSyntaxError as e:
                    raise WordSyntaxError(e.message, column + e.position - 1) from e
            result = self.mult(result, step)
        return result

    # --- balls ---

    def ball_enumerate(self, k: int, threads: int = 1) -> list[GroupElement]:
        """All elements that are products of at most k generators or inverses.

        Breadth-first by generations; each element keeps its shortest
        expression, ties broken lexicographically on (index, sign).

        Returns:
            Elements sorted by canonical word order.
        """
        if k < 0:
            raise ConfigurationError(f"ball radius must be >= 0, got {k}")
        gens = sorted(self.symmetric_generators(), key=lambda g: g.expression)
        seen: dict[InfiniteWord, GroupElement] = {}
        ident = self.identity()
        seen[ident.word] = ident
        frontier = [ident]
        with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
            for radius in range(1, k + 1):
                pairs = [(g, s) for g in frontier for s in gens]
                products = list(pool.map(lambda pair: self.mult(*pair), pairs))
                nxt: list[GroupElement] = []
                for prod in products:
                    if prod.word not in seen:
                        seen[prod.word] = prod
                        nxt.append(prod)
                nxt.sort(key=lambda g: g.expression)
                logger.debug("ball radius %d: %d new elements", radius, len(nxt))
                frontier = nxt
                if not frontier:
                    break
        return sorted(seen.values(), key=GroupElement.sort_key)

    def spheres(self, k: int) -> list[list[GroupElement]]:
        """Elements of the ball split by word length 0..k."""
        layers: list[list[GroupElement]] = [[] for _ in range(k + 1)]
        for g in self.ball_enumerate(k):
            layers[len(g.expression or ())].append(g)
        return layers


# ---------------------------------------------------------------------------
# Lyndon length function
# ---------------------------------------------------------------------------


def lyndon_c(x: GroupElement, y: GroupElement) -> ZnVec:
    """c(x, y) = (l(x) + l(y) - l(x^-1 y)) / 2, cross-checked against com."""
    total = x.length + y.length - mult(invert(x.word), y.word).length
    if any(c % 2 for c in total.coords):
        raise ZnTreeError(f"half-integral Lyndon product for ({x}, {y}): {total}")
    value = ZnVec(tuple(c // 2 for c in total.coords))
    direct = c_len(x.word, y.word)
    if value != direct:
        raise ZnTreeError(f"Lyndon product {value} disagrees with c(x, y) = {direct}")
    return value


def hbar_element(g: GroupElement) -> int:
    """ℏ_n(g): the last coordinate of |g|."""
    return g.length.height


def check_lyndon_axioms(x: GroupElement, y: GroupElement, z: GroupElement) -> list[str]:
    """Names of the length-function axioms violated by the triple (empty when all hold)."""
    bad: list[str] = []
    n = x.word.n
    zero = ZnVec.zero(n)
    for g in (x, y, z):
        if g.length < zero:
            bad.append("nonnegative")
            break
    if any(g.length != invert(g.word).length for g in (x, y, z)):
        bad.append("inverse_length")
    try:
        cxy, cxz, cyz = lyndon_c(x, y), lyndon_c(x, z), lyndon_c(y, z)
    except ZnTreeError:
        bad.append("integral_c")
        return bad
    low = sorted((cxy, cxz, cyz))
    if low[0] != low[1]:
        bad.append("isosceles")
    if mult(x.word, y.word).length > x.length + y.length:
        bad.append("subadditive")
    if lyndon_c(y, x) != cxy:
        bad.append("c_symmetric")
    return bad
