"""
Strips S(a, b) = {g : g·ε on the line (a, b)} counted inside word-metric balls.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from boundary.compactification import line_between, line_contains
from boundary.ends import BoundaryPoint
from groups.group import Group, GroupElement
from groups.tree import Vertex
from utils.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StripRow:
    k: int
    count: int
    hbar_count: int  # members with ℏ_n(g) <= k
    criterion: float  # (1/k) log count


@dataclass(frozen=True)
class StripCounts:
    rows: tuple[StripRow, ...]
    slope: float  # least-squares slope of log count against log k

    def counts(self) -> list[int]:
        return [r.count for r in self.rows]


def word_length(g: GroupElement) -> int:
    return len(g.expression or ())


def loglog_slope(ks: list[int], counts: list[int]) -> float:
    pts = [(math.log(k), math.log(c)) for k, c in zip(ks, counts) if k > 0 and c > 0]
    if len(pts) < 2:
        return float("nan")
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])


def strip_members(
    group: Group, a: BoundaryPoint, b: BoundaryPoint, k_max: int, threads: int = 1
) -> list[GroupElement]:
    line = line_between(a, b)
    ball = group.ball_enumerate(k_max, threads=threads)
    return [g for g in ball if line_contains(line, Vertex(g.word))]


def strip_count(
    group: Group, a: BoundaryPoint, b: BoundaryPoint, k_max: int, threads: int = 1
) -> StripCounts:
    """|S(a, b) ∩ B_G(k)| for k = 1..k_max, plain and ℏ-filtered.

    Raises:
        BoundaryError: a and b are the same end.
    """
    if k_max < 1:
        raise DomainError(f"k_max must be positive, got {k_max}")
    members = strip_members(group, a, b, k_max, threads)
    rows = []
    for k in range(1, k_max + 1):
        inside = [g for g in members if word_length(g) <= k]
        count = len(inside)
        hbar_count = sum(1 for g in inside if g.hbar <= k)
        rows.append(StripRow(k, count, hbar_count, math.log(count) / k if count else float("-inf")))
    slope = loglog_slope([r.k for r in rows], [r.count for r in rows])
    logger.info("strip counts up to k=%d: %s (slope %.3f)", k_max, [r.count for r in rows], slope)
    return StripCounts(tuple(rows), slope)


def seminorm_comparison(group: Group, k: int) -> list[GroupElement]:
    """Elements of B_G(k) violating ℏ_n(g) <= k_0 |g|, k_0 the largest generator ℏ_n."""
    k0 = max(g.hbar for g in group.symmetric_generators())
    return [g for g in group.ball_enumerate(k) if g.hbar > k0 * word_length(g)]
