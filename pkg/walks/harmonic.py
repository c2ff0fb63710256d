"""
Exact harmonic measure of nearest-neighbour walks on free groups.

F(s), the probability of ever reaching the letter s, is the minimal solution
of F(s) = μ(s) + F(s) Σ_{t≠s} μ(t) F(t^-1); the cone of a reduced word
x_1 ... x_k then has mass
F(x_1) ... F(x_(k-1)) · F(x_k)(1 - F(x_k^-1)) / (1 - F(x_k) F(x_k^-1)).
"""

from __future__ import annotations

import logging

import numpy as np

from algebra.letters import Letter
from algebra.words import InfiniteWord
from config.config import HARMONIC_MAX_ITER, HARMONIC_TOLERANCE
from groups.group import Group
from utils.errors import DomainError
from walks.cones import ConeMeasure
from walks.measure import Measure

logger = logging.getLogger(__name__)


def _letters(group: Group) -> list[Letter]:
    out: list[Letter] = []
    for g in group.symmetric_generators():
        if not g.word.is_finite or len(g.word.finite_letters()) != 1:
            raise DomainError(f"generator {g} is not a single letter")
        out.append(g.word.finite_letters()[0])
    return out


def hitting_probabilities(group: Group, mu: Measure) -> dict[Letter, float]:
    """F(s) for every letter s of the symmetric generating set."""
    letters = _letters(group)
    index = {x: i for i, x in enumerate(letters)}
    weights = np.zeros(len(letters))
    for g, w in zip(mu.support, mu.weights):
        word = g.word
        if not word.is_finite or len(word.finite_letters()) != 1 or word.finite_letters()[0] not in index:
            raise DomainError(f"support element {g} is not a generator letter")
        weights[index[word.finite_letters()[0]]] += w
    inv = np.array([index[x.inverse()] for x in letters])
    f = np.zeros(len(letters))
    for it in range(HARMONIC_MAX_ITER):
        back = weights * f[inv]
        nxt = weights / (1.0 - (back.sum() - back))
        if np.max(np.abs(nxt - f)) < HARMONIC_TOLERANCE:
            f = nxt
            break
        f = nxt
    else:
        raise DomainError(
            f"hitting probabilities did not converge in {HARMONIC_MAX_ITER} iterations; the walk looks recurrent"
        )
    logger.debug("hitting probabilities after %d iterations: %s", it + 1, f)
    return {x: float(f[i]) for i, x in enumerate(letters)}


def harmonic_cone_measure(group: Group, mu: Measure, depth: int) -> ConeMeasure:
    """Exact cone masses for all reduced words of length 1..depth.

    Raises:
        DomainError: the walk is recurrent (F(s) F(s^-1) = 1) or not nearest-neighbour.
    """
    f = hitting_probabilities(group, mu)
    n = group.n
    escape: dict[Letter, float] = {}
    for x, fx in f.items():
        denom = 1.0 - fx * f[x.inverse()]
        if denom <= 0.0:
            raise DomainError(f"recurrent along {x}: no harmonic measure on ends")
        escape[x] = fx * (1.0 - f[x.inverse()]) / denom
    table: dict[InfiniteWord, float] = {}
    layer: list[tuple[tuple[Letter, ...], float]] = [((), 1.0)]
    for _ in range(depth):
        nxt = []
        for word, reach in layer:
            for x in f:
                if word and word[-1] == x.inverse():
                    continue
                w = word + (x,)
                table[InfiniteWord.from_letters(w, n)] = reach * escape[x]
                nxt.append((w, reach * f[x]))
        layer = nxt
    return ConeMeasure(n, depth, dict(sorted(table.items(), key=lambda kv: kv[0].sort_key())))
