"""
Gromov products, the ultrametric on a compactified Z-tree, its balls, and
geodesic lines between ends.

All products are taken at the base vertex ε unless a base vertex is passed;
in a tree they are always integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from algebra.words import invert, prefix
from algebra.zn import ZnVec
from boundary.ends import (
    BoundaryPoint,
    Point,
    act_on_point,
    meet,
    point_word,
    same_end,
    same_point,
)
from config.config import RADIUS_TOLERANCE
from groups.tree import Vertex
from utils.errors import BoundaryError, ConfigurationError, DomainError


def _dimension(x: Point) -> int:
    return x.prefix.n if isinstance(x, Vertex) else x.n


def gromov(x: Point, y: Point, base: Vertex | None = None) -> ZnVec:
    """(x · y)_base.

    Raises:
        BoundaryError: x and y are the same end.
        PrecisionError: an empirical end is too shallow for the query.
    """
    if base is not None and not base.is_base:
        shift = invert(base.prefix)
        x, y = act_on_point(shift, x), act_on_point(shift, y)
    if isinstance(x, Vertex) and isinstance(y, Vertex) and x == y:
        return x.length
    return meet(x, y)


def d_ultra(x: Point, y: Point, base: Vertex | None = None) -> float:
    """e^-(x·y) on a compactified Z-tree; 0 on equal points."""
    if same_point(x, y):
        return 0.0
    g = gromov(x, y, base)
    if not g.is_finite:
        raise BoundaryError(f"{x} and {y} are not in one Z-subtree (product {g})")
    return math.exp(-g.coords[0])


# ---------------------------------------------------------------------------
# Balls (n = 1)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ball:
    """B_δ(x): the whole space, a cone T(ε, apex) with its ends, or {x}."""

    center: Point
    delta: float
    apex: Vertex | None = None
    whole: bool = False

    @property
    def is_singleton(self) -> bool:
        return not self.whole and self.apex is None

    def contains(self, y: Point) -> bool:
        if self.whole:
            return True
        if self.apex is None:
            return same_point(self.center, y)
        return meet(self.apex, y) == self.apex.length

    def __str__(self) -> str:
        if self.whole:
            return "whole space"
        if self.apex is None:
            return f"{{{self.center}}}"
        return f"cone at {self.apex}"


def ball_in_compactification(x: Point, delta: float) -> Ball:
    """The ball of radius delta around x in a compactified Z-tree (n = 1 only)."""
    if _dimension(x) != 1:
        raise ConfigurationError("balls in the compactification are defined for n = 1 only")
    if delta <= 0:
        raise DomainError(f"radius must be positive, got {delta}")
    t = -math.log(delta)
    if t <= 0:
        return Ball(x, delta, whole=True)
    k = math.ceil(t - RADIUS_TOLERANCE)
    depth = ZnVec.of(k)
    if isinstance(x, BoundaryPoint):
        return Ball(x, delta, apex=Vertex(prefix(point_word(x, depth), depth)))
    if depth <= x.length:
        return Ball(x, delta, apex=Vertex(prefix(x.prefix, depth)))
    return Ball(x, delta)


# ---------------------------------------------------------------------------
# Lines
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    """The geodesic line (a, b); apex is the common prefix of the two rays."""

    a: BoundaryPoint
    b: BoundaryPoint
    apex: Vertex

    def __str__(self) -> str:
        return f"({self.a}, {self.b}) through {self.apex}"


def line_between(a: BoundaryPoint, b: BoundaryPoint) -> Line:
    if same_end(a, b):
        raise BoundaryError(f"no line between an end and itself: {a}")
    c = meet(a, b)
    return Line(a, b, Vertex(prefix(point_word(a, c), c)))


def line_contains(line: Line, v: Vertex) -> bool:
    """True iff v lies on one of the two rays past the apex."""
    if v.length < line.apex.length:
        return False
    return meet(v, line.a) == v.length or meet(v, line.b) == v.length
