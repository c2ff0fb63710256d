"""
Finitely supported probability measures on a group.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

from algebra.words import invert
from groups.group import Group, GroupElement
from utils.errors import DomainError

logger = logging.getLogger(__name__)


class Nondegeneracy(str, Enum):
    CONFIRMED = "Confirmed"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Measure:
    """μ: support elements with positive weights summing to 1."""

    support: tuple[GroupElement, ...]
    weights: tuple[float, ...]

    @property
    def probabilities(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.float64)

    def weight(self, g: GroupElement) -> float:
        for h, w in zip(self.support, self.weights):
            if h == g:
                return w
        return 0.0

    def max_length(self) -> int:
        """Largest first coordinate of |g| over finite support elements."""
        return max((g.length.coords[0] for g in self.support if g.length.is_finite), default=0)

    def __len__(self) -> int:
        return len(self.support)

    def __str__(self) -> str:
        return ", ".join(f"{g}: {w:.6g}" for g, w in zip(self.support, self.weights))


def make_measure(pairs: Iterable[tuple[GroupElement, float]]) -> Measure:
    """Normalize (element, weight) pairs; repeated elements are merged.

    Raises:
        DomainError: empty support or a non-positive weight.
    """
    merged: dict[GroupElement, float] = {}
    for g, w in pairs:
        if not w > 0:
            raise DomainError(f"weight of {g} must be positive, got {w}")
        merged[g] = merged.get(g, 0.0) + float(w)
    if not merged:
        raise DomainError("a measure needs a nonempty support")
    total = sum(merged.values())
    support = tuple(merged)
    return Measure(support, tuple(merged[g] / total for g in support))


def uniform_symmetric(group: Group) -> Measure:
    gens = group.symmetric_generators()
    return make_measure((g, 1.0) for g in gens)


def reflect(mu: Measure) -> Measure:
    """μ̌(g) = μ(g^-1)."""
    return Measure(tuple(GroupElement(invert(g.word)) for g in mu.support), mu.weights)


def check_nondegenerate(mu: Measure, group: Group, horizon: int) -> Nondegeneracy:
    """Confirmed when every generator and inverse is a product of at most
    `horizon` support elements; Unknown otherwise."""
    if horizon < 1:
        raise DomainError(f"horizon must be >= 1, got {horizon}")
    targets = {g.word for g in group.symmetric_generators()}
    reached = {g.word: g for g in mu.support}
    frontier = list(reached.values())
    for step in range(2, horizon + 1):
        if targets <= reached.keys():
            break
        nxt = []
        for g in frontier:
            for s in mu.support:
                h = group.mult(g, s)
                if h.word not in reached:
                    reached[h.word] = h
                    nxt.append(h)
        logger.debug("nondegeneracy horizon %d: %d products", step, len(reached))
        frontier = nxt
    return Nondegeneracy.CONFIRMED if targets <= reached.keys() else Nondegeneracy.UNKNOWN
