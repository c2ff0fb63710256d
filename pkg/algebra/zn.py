"""
Exact arithmetic on Z^n under the right lexicographic order.

A ZnVec doubles as a length, a position and a distance. Tuples are compared
from the last coordinate down, so (5, 0) < (0, 1): the last coordinate is
the "height" and every row below it is an infinite copy of Z.

Coordinates are Python ints, so overflow never happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from utils.errors import ConfigurationError, WordSyntaxError


class Ordering(str, Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


@dataclass(frozen=True, slots=True)
class ZnVec:
    """An element (a_1, ..., a_n) of Z^n."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coords:
            raise ConfigurationError("ZnVec needs at least one coordinate")

    # --- construction ---

    @classmethod
    def of(cls, *coords: int) -> ZnVec:
        return cls(tuple(int(c) for c in coords))

    @classmethod
    def zero(cls, n: int) -> ZnVec:
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int) -> ZnVec:
        """The minimal positive element 1 = (1, 0, ..., 0)."""
        return cls((1,) + (0,) * (n - 1))

    @classmethod
    def first(cls, k: int, n: int) -> ZnVec:
        """(k, 0, ..., 0)."""
        return cls((k,) + (0,) * (n - 1))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> ZnVec:
        """Read "(a1,...,an)" or a bare integer (n = 1, or k*1 when n is given)."""
        s = text.strip()
        try:
            if s.startswith("("):
                if not s.endswith(")"):
                    raise WordSyntaxError("unterminated vector", len(s))
                vec = cls(tuple(int(p) for p in s[1:-1].split(",")))
            else:
                vec = cls.first(int(s), n or 1)
        except ValueError as e:
            raise WordSyntaxError(f"bad vector {text!r}: {e}", 1) from e
        if n is not None and vec.n != n:
            raise ConfigurationError(f"vector {vec} has dimension {vec.n}, expected {n}")
        return vec

    # --- shape ---

    @property
    def n(self) -> int:
        return len(self.coords)

    def key(self) -> tuple[int, ...]:
        """Sort key realising the right lexicographic order."""
        return self.coords[::-1]

    def _check(self, other: ZnVec) -> None:
        if len(other.coords) != len(self.coords):
            raise ConfigurationError(
                f"dimension mismatch: {self} has n={self.n}, {other} has n={other.n}"
            )

    # --- order ---

    def __lt__(self, other: ZnVec) -> bool:
        self._check(other)
        return self.coords[::-1] < other.coords[::-1]

    def __le__(self, other: ZnVec) -> bool:
        self._check(other)
        return self.coords[::-1] <= other.coords[::-1]

    def __gt__(self, other: ZnVec) -> bool:
        self._check(other)
        return self.coords[::-1] > other.coords[::-1]

    def __ge__(self, other: ZnVec) -> bool:
        self._check(other)
        return self.coords[::-1] >= other.coords[::-1]

    # --- group operations ---

    def __add__(self, other: ZnVec) -> ZnVec:
        self._check(other)
        return ZnVec(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: ZnVec) -> ZnVec:
        self._check(other)
        return ZnVec(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> ZnVec:
        return ZnVec(tuple(-a for a in self.coords))

    def __mul__(self, m: int) -> ZnVec:
        return ZnVec(tuple(m * a for a in self.coords))

    __rmul__ = __mul__

    # --- predicates ---

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_positive(self) -> bool:
        return self.top_index() >= 0 and self.coords[self.top_index()] > 0

    @property
    def is_finite(self) -> bool:
        """True when only the first coordinate may be nonzero."""
        return not any(self.coords[1:])

    def top_index(self) -> int:
        """0-based index of the highest nonzero coordinate, -1 for zero."""
        for i in range(len(self.coords) - 1, -1, -1):
            if self.coords[i]:
                return i
        return -1

    @property
    def height(self) -> int:
        return self.coords[-1]

    def __str__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __repr__(self) -> str:
        return f"ZnVec{self.coords!r}" if self.n > 1 else f"ZnVec(({self.coords[0]},))"


def cmp(alpha: ZnVec, beta: ZnVec) -> Ordering:
    """Compare in right lexicographic order."""
    if alpha < beta:
        return Ordering.LESS
    if alpha == beta:
        return Ordering.EQUAL
    return Ordering.GREATER


def add(alpha: ZnVec, beta: ZnVec) -> ZnVec:
    return alpha + beta


def sub(alpha: ZnVec, beta: ZnVec) -> ZnVec:
    return alpha - beta


def neg(alpha: ZnVec) -> ZnVec:
    return -alpha


def scale(m: int, alpha: ZnVec) -> ZnVec:
    return alpha * m


def in_segment(gamma: ZnVec, alpha: ZnVec, beta: ZnVec) -> bool:
    """True iff alpha <= gamma <= beta."""
    return alpha <= gamma <= beta


def succ(alpha: ZnVec) -> ZnVec:
    return ZnVec((alpha.coords[0] + 1,) + alpha.coords[1:])


def pred(alpha: ZnVec) -> ZnVec:
    return ZnVec((alpha.coords[0] - 1,) + alpha.coords[1:])


def height(alpha: ZnVec) -> int:
    return alpha.coords[-1]


def vec_sum(vectors: Iterable[ZnVec], n: int) -> ZnVec:
    total = [0] * n
    for v in vectors:
        if v.n != n:
            raise ConfigurationError(f"dimension mismatch: {v} in a sum over Z^{n}")
        for i, c in enumerate(v.coords):
            total[i] += c
    return ZnVec(tuple(total))
