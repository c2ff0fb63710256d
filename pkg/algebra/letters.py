"""
Letters of X^± = X ∪ X^-1.

Letters are interned NamedTuples so equality and hashing stay in C; the
word algebra compares millions of them during a walk ensemble.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from utils.errors import ConfigurationError

SYMBOL_PATTERN = re.compile(r"[A-Za-z][0-9_]*")


class Letter(NamedTuple):
    symbol: str
    sign: int  # +1 for x, -1 for x^-1

    def inverse(self) -> Letter:
        return letter(self.symbol, -self.sign)

    def __str__(self) -> str:
        return self.symbol if self.sign > 0 else f"{self.symbol}^-1"


_INTERN: dict[tuple[str, int], Letter] = {}


def letter(symbol: str, sign: int = 1) -> Letter:
    """Return the interned letter for (symbol, sign)."""
    key = (symbol, sign)
    found = _INTERN.get(key)
    if found is None:
        if sign not in (1, -1):
            raise ConfigurationError(f"letter sign must be +1 or -1, got {sign}")
        if not SYMBOL_PATTERN.fullmatch(symbol):
            raise ConfigurationError(f"invalid letter symbol {symbol!r}")
        found = Letter(symbol, sign)
        _INTERN[key] = found
    return found


def inverse_letters(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    """Formal inverse of a finite letter sequence."""
    return tuple(x.inverse() for x in reversed(letters))


def letters_reduced(letters: tuple[Letter, ...] | list[Letter]) -> bool:
    """No successor pair x x^-1."""
    return all(
        a.symbol != b.symbol or a.sign == b.sign for a, b in zip(letters, letters[1:])
    )


def primitive_root(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    """Shortest r with letters == r^k, found with the doubling test."""
    p = len(letters)
    doubled = letters + letters
    for d in range(1, p):
        if p % d == 0 and doubled[d : d + p] == letters:
            return letters[:d]
    return letters


def rotate(letters: tuple[Letter, ...], k: int) -> tuple[Letter, ...]:
    """Cyclic shift so that index 0 of the result is letters[k mod p]."""
    p = len(letters)
    k %= p
    return letters[k:] + letters[:k] if k else letters
