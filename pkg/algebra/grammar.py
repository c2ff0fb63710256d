"""
Parser and printer for the word grammar.

    word     := term*            ("ε" or an empty string is the empty word)
    term     := atom | atom "^" exponent
    atom     := identifier | "(" word ")"
    exponent := integer | "(" integer ("," integer)* ")"

Identifiers are one ASCII letter optionally followed by digits or
underscores, so "aba" reads as a·b·a and "u5" is a single letter.
An integer exponent repeats the atom along the first coordinate (negative
repeats the inverse). A tuple exponent is the extent of the resulting
block and needs a finite, cyclically reduced base.

Parsing never reduces: "a a^-1" is a ReductionError.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from algebra.letters import letter
from algebra.words import (
    Block,
    InfiniteWord,
    invert,
    periodic_word,
)
from algebra.zn import ZnVec
from utils.errors import ConfigurationError, DomainError, ReductionError, WordSyntaxError

EPSILON = "ε"


@dataclass(frozen=True)
class Token:
    kind: str  # ident, int, lparen, rparen, caret, comma, star, eps, end
    text: str
    column: int  # 1-based


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        col = i + 1
        if ch.isspace():
            i += 1
        elif ch.isascii() and ch.isalpha():
            j = i + 1
            while j < len(text) and (text[j].isdigit() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], col))
            i = j
        elif ch.isdigit() or (ch == "-" and i + 1 < len(text) and text[i + 1].isdigit()):
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], col))
            i = j
        elif ch in "()^,*":
            kind = {"(": "lparen", ")": "rparen", "^": "caret", ",": "comma", "*": "star"}[ch]
            tokens.append(Token(kind, ch, col))
            i += 1
        elif ch == EPSILON:
            tokens.append(Token("eps", ch, col))
            i += 1
        else:
            raise WordSyntaxError(f"unexpected character {ch!r}", col)
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], n: int, alphabet: frozenset[str] | None):
        self.tokens = tokens
        self.pos = 0
        self.n = n
        self.alphabet = alphabet

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def expect(self, kind: str) -> Token:
        tok = self.current
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise WordSyntaxError(f"expected {kind}, found {shown!r}", tok.column)
        self.pos += 1
        return tok

    def word(self) -> InfiniteWord:
        """Parse terms until a closing token; the result is checked for reduction."""
        blocks: list[Block] = []
        if self.current.kind == "eps":
            self.pos += 1
            return InfiniteWord.empty(self.n)
        while self.current.kind in ("ident", "lparen"):
            blocks.extend(self.term().blocks)
        return InfiniteWord.from_blocks(blocks, self.n)

    def term(self) -> InfiniteWord:
        base = self.atom()
        if self.current.kind != "caret":
            return base
        caret = self.expect("caret")
        if self.current.kind == "int":
            k = int(self.expect("int").text)
            return _repeat(base, k, caret.column)
        if self.current.kind == "lparen":
            self.expect("lparen")
            coords = [int(self.expect("int").text)]
            while self.current.kind == "comma":
                self.pos += 1
                coords.append(int(self.expect("int").text))
            self.expect("rparen")
            if len(coords) != self.n:
                raise WordSyntaxError(
                    f"exponent has {len(coords)} coordinates, workspace has n={self.n}",
                    caret.column,
                )
            try:
                return periodic_word(base, ZnVec(tuple(coords)))
            except DomainError as e:
                raise WordSyntaxError(str(e), caret.column) from e
        tok = self.current
        raise WordSyntaxError(f"bad exponent {tok.text or 'end of input'!r}", tok.column)

    def atom(self) -> InfiniteWord:
        tok = self.current
        if tok.kind == "ident":
            self.pos += 1
            if self.alphabet is not None and tok.text not in self.alphabet:
                raise WordSyntaxError(f"unknown letter {tok.text!r}", tok.column)
            return InfiniteWord.from_letters([letter(tok.text)], self.n)
        if tok.kind == "lparen":
            self.pos += 1
            inner = self.word()
            self.expect("rparen")
            return inner
        raise WordSyntaxError(f"unexpected {tok.text or 'end of input'!r}", tok.column)


def _repeat(base: InfiniteWord, k: int, column: int) -> InfiniteWord:
    if k < 0:
        base, k = invert(base), -k
    blocks: list[Block] = list(base.blocks) * k
    try:
        return InfiniteWord.from_blocks(blocks, base.n)
    except ReductionError as e:
        raise ReductionError(f"{e} (power at column {column})") from e


def parse_word(text: str, n: int, alphabet: Iterable[str] | None = None) -> InfiniteWord:
    """Parse `text` into a canonical word of Z^n.

    Args:
        text: A word in the grammar above.
        n: Ambient dimension.
        alphabet: Allowed symbols; any identifier is accepted when None.

    Returns:
        The canonical InfiniteWord.
    """
    if n < 1:
        raise ConfigurationError(f"dimension must be >= 1, got {n}")
    parser = _Parser(tokenize(text), n, frozenset(alphabet) if alphabet is not None else None)
    word = parser.word()
    parser.expect("end")
    return word


def format_word(w: InfiniteWord) -> str:
    """Printed form; parse_word(format_word(w), n) == w."""
    return str(w)


def split_product(text: str) -> list[tuple[str, int]]:
    """Split "x * y * z" into (factor text, 1-based column) pairs.

    Raises:
        WordSyntaxError: on an empty factor, e.g. "a * * b".
    """
    tokenize(text)
    factors: list[tuple[str, int]] = []
    start = 0
    depth = 0
    for i, ch in enumerate(text + "*"):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "*" and depth == 0:
            piece = text[start:i]
            if not piece.strip():
                raise WordSyntaxError("empty factor", i + 1 if i < len(text) else max(start, 1))
            lead = len(piece) - len(piece.lstrip())
            factors.append((piece.strip(), start + lead + 1))
            start = i + 1
    return factors
