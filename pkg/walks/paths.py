"""
Sample paths of the random μ-walk and what can be read off them.

A path keeps its increments and the partial products τ_i at checkpoints:
geometrically spaced indices plus a uniform ladder over the final eighth.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from algebra.letters import Letter
from algebra.words import InfiniteWord, c_len, concat, invert, last_letter, mult, prefix, suffix
from algebra.zn import ZnVec
from boundary.ends import BoundaryPoint, empirical_end
from config.config import (
    S_MIN_INDICES,
    STABLE_WINDOW_FRACTION,
    UNIFORM_TAIL_FRACTION,
    make_rng,
)
from utils.errors import DomainError, InconclusiveError, NoCommonMaxError, PresentationInvalidError
from walks.measure import Measure

logger = logging.getLogger(__name__)

TAIL_CHECKPOINTS = 32


@dataclass(frozen=True)
class WalkPath:
    master_seed: int
    walk_index: int
    increments: np.ndarray  # support indices g_1, g_2, ...
    checkpoints: tuple[tuple[int, InfiniteWord], ...]

    @property
    def steps(self) -> int:
        return int(self.increments.shape[0])

    @property
    def final(self) -> InfiniteWord:
        return self.checkpoints[-1][1]

    def at(self, i: int) -> InfiniteWord:
        for j, w in self.checkpoints:
            if j == i:
                return w
        raise DomainError(f"step {i} is not a checkpoint")

    def hbar_profile(self) -> list[int]:
        return [w.length.height for _, w in self.checkpoints]

    @cached_property
    def final_agreement(self) -> tuple[ZnVec, ...]:
        """c(τ_i, τ_N) for every checkpoint i."""
        final = self.final
        return tuple(c_len(w, final) for _, w in self.checkpoints)


def checkpoint_indices(steps: int) -> list[int]:
    """0, 1, 2, 4, ... plus a uniform ladder over the final eighth, ending at steps."""
    marks = {0, steps}
    k = 1
    while k < steps:
        marks.add(k)
        k *= 2
    start = steps - int(steps * UNIFORM_TAIL_FRACTION)
    if steps > start:
        marks.update(int(x) for x in np.linspace(start, steps, TAIL_CHECKPOINTS))
    return sorted(marks)


class _Accumulator:
    """τ as an infinite head followed by an explicit letter tail.

    Finite steps cancel against the tail in place; anything else falls back
    to the full product.
    """

    def __init__(self, n: int):
        self.n = n
        self.head = InfiniteWord.empty(n)
        self.tail: list[Letter] = []

    def value(self) -> InfiniteWord:
        if not self.tail:
            return self.head
        return concat(self.head, InfiniteWord.from_letters(self.tail, self.n))

    def push(self, step: InfiniteWord, letters: tuple[Letter, ...] | None) -> None:
        if letters is None:
            self.head = mult(self.value(), step)
            self.tail = []
            return
        k = 0
        while k < len(letters) and self.tail and self.tail[-1] == letters[k].inverse():
            self.tail.pop()
            k += 1
        rest = letters[k:]
        if not rest:
            return
        if not self.tail and not self.head.is_empty and last_letter(self.head) == rest[0].inverse():
            self.head = mult(self.head, InfiniteWord.from_letters(rest, self.n))
            return
        self.tail.extend(rest)


def sample_path(mu: Measure, seed: int, steps: int, walk_index: int = 0) -> WalkPath:
    """The walk τ_0 = ε, τ_(i+1) = τ_i * g_(i+1) with g drawn from μ.

    Raises:
        PresentationInvalidError: a product along the path is undefined.
    """
    if steps < 0:
        raise DomainError(f"steps must be >= 0, got {steps}")
    n = mu.support[0].word.n
    rng = make_rng(seed, walk_index)
    increments = rng.choice(len(mu.support), size=steps, p=mu.probabilities)
    words = [g.word for g in mu.support]
    letters = [w.finite_letters() if w.is_finite else None for w in words]
    marks = checkpoint_indices(steps)
    acc = _Accumulator(n)
    saved: list[tuple[int, InfiniteWord]] = [(0, acc.value())]
    cursor = 1
    for i, s in enumerate(increments, start=1):
        try:
            acc.push(words[s], letters[s])
        except NoCommonMaxError as e:
            raise PresentationInvalidError(str(acc.value()), str(words[s]), str(e)) from e
        if cursor < len(marks) and marks[cursor] == i:
            saved.append((i, acc.value()))
            cursor += 1
    return WalkPath(seed, walk_index, increments, tuple(saved))


def drift(path: WalkPath) -> float:
    """|τ_N| / N on the first coordinate."""
    if path.steps == 0:
        return 0.0
    return path.final.length.coords[0] / path.steps


def replay(mu: Measure, path: WalkPath) -> list[InfiniteWord]:
    """Every τ_i of the path, recomputed with the general product."""
    tau = InfiniteWord.empty(mu.support[0].word.n)
    out = [tau]
    for s in path.increments:
        tau = mult(tau, mu.support[s].word)
        out.append(tau)
    return out


def transition_counts(mu: Measure, path: WalkPath) -> Counter:
    """Counts of the observed quotients τ_i^-1 * τ_(i+1), keyed by word.

    Raises:
        DomainError: a quotient is not in the support of μ.
    """
    support = {g.word for g in mu.support}
    taus = replay(mu, path)
    counts: Counter = Counter()
    for a, b in zip(taus, taus[1:]):
        q = mult(invert(a), b)
        if q not in support:
            raise DomainError(f"transition {a} -> {b} has quotient {q} outside the support")
        counts[q] += 1
    return counts


# ---------------------------------------------------------------------------
# Boundary extraction
# ---------------------------------------------------------------------------


def _distinct_chain(prefixes: list[InfiniteWord]) -> list[InfiniteWord]:
    chain: list[InfiniteWord] = []
    for w in prefixes:
        if w.is_empty:
            continue
        if not chain or chain[-1].length < w.length:
            chain.append(w)
    return chain


def _end_type(chain: list[InfiniteWord], n: int) -> tuple[int, bool]:
    deepest = chain[-1].length
    if n == 1:
        return 1, True
    if len(chain) < 2:
        return deepest.top_index() + 1, False
    mid = chain[(len(chain) - 1) // 2].length
    growth = deepest - mid
    return growth.top_index() + 1, growth.is_positive


def boundary_point(path: WalkPath, window: float = STABLE_WINDOW_FRACTION) -> BoundaryPoint:
    """Empirical end: prefixes of τ_i stable from each checkpoint to the end.

    The deepest chain entry is the prefix shared by every checkpoint of the
    final `window` share.

    Raises:
        InconclusiveError: nothing is stable across the window.
    """
    marks = path.checkpoints
    if len(marks) < 3:
        raise InconclusiveError("path too short to extract an end", chain=[])
    final = path.final
    n = final.n
    start = max(1, min(len(marks) - 2, int(len(marks) * (1 - window))))
    # com of checkpoints j..last is the prefix of τ_N of length min_{i>=j} c(τ_i, τ_N)
    depths = list(path.final_agreement)
    for j in range(len(depths) - 2, -1, -1):
        if depths[j + 1] < depths[j]:
            depths[j] = depths[j + 1]
    cache: dict[ZnVec, InfiniteWord] = {}
    suffix_coms: list[InfiniteWord] = []
    for d in depths:
        if d not in cache:
            cache[d] = prefix(final, d)
        suffix_coms.append(cache[d])
    chain = _distinct_chain(suffix_coms[: start + 1])
    if not chain:
        partial = _distinct_chain(suffix_coms[start + 1 : -1])
        raise InconclusiveError(
            f"no prefix stable over the final {window:.0%} of checkpoints",
            chain=partial,
            lower_bound=partial[-1].length if partial else ZnVec.zero(n),
        )
    end_type, conclusive = _end_type(chain, n)
    return empirical_end(chain, end_type, conclusive)


# ---------------------------------------------------------------------------
# S-subsequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SEvidence:
    indices: tuple[int, ...]
    hbar: tuple[int, ...]
    forward: tuple[ZnVec, ...]  # c(τ_prev, τ_next) along the subsequence
    backward: tuple[ZnVec, ...]  # c(τ_prev^-1, τ_next^-1)
    note: str = ""

    def __bool__(self) -> bool:
        return bool(self.indices)


class _Agreement:
    """c(x_a, x_b) over a family of words, read off their agreement with a reference r.

    Of c(x, y), c(x, r) and c(y, r) the two smallest are equal, so only pairs
    leaving r at the same point are compared past it.
    """

    def __init__(self, words: list[InfiniteWord], ref: InfiniteWord, depths: tuple[ZnVec, ...] | None = None):
        self.words = words
        self.depths = depths if depths is not None else tuple(c_len(w, ref) for w in words)
        self._tails: dict[int, InfiniteWord] = {}

    def _tail(self, a: int) -> InfiniteWord:
        if a not in self._tails:
            self._tails[a] = suffix(self.words[a], self.depths[a])
        return self._tails[a]

    def __call__(self, a: int, b: int) -> ZnVec:
        da, db = self.depths[a], self.depths[b]
        if da != db:
            return da if da < db else db
        return da + c_len(self._tail(a), self._tail(b))


def detect_S_subsequence(path: WalkPath, min_indices: int = S_MIN_INDICES) -> SEvidence:
    """Longest checkpoint subsequence with strictly growing ℏ_n and strictly
    growing agreement of both τ_i and τ_i^-1 between consecutive picks."""
    if path.steps == 0:
        return SEvidence((), (), (), (), note="empty path")
    # checkpoint 0 is ε; the rest line up with final_agreement[1:]
    marks = list(path.checkpoints[1:])
    k = len(marks)
    words = [w for _, w in marks]
    inverses = [invert(w) for w in words]
    hb = [w.length.height for w in words]
    forward = _Agreement(words, path.final, path.final_agreement[1:])
    backward = _Agreement(inverses, inverses[-1])
    fwd: dict[tuple[int, int], ZnVec] = {}
    bwd: dict[tuple[int, int], ZnVec] = {}
    for a in range(k):
        for b in range(a + 1, k):
            if hb[b] > hb[a]:
                fwd[a, b] = forward(a, b)
                bwd[a, b] = backward(a, b)
    # best[(a, b)]: longest chain ending with the pick pair (a, b)
    best: dict[tuple[int, int], int] = {}
    back: dict[tuple[int, int], tuple[int, int] | None] = {}
    for b in range(k):
        for a in range(b):
            if (a, b) not in fwd:
                continue
            best[a, b], back[a, b] = 2, None
            for z in range(a):
                if (z, a) in best and fwd[a, b] > fwd[z, a] and bwd[a, b] > bwd[z, a]:
                    if best[z, a] + 1 > best[a, b]:
                        best[a, b], back[a, b] = best[z, a] + 1, (z, a)
    if not best:
        return SEvidence((), (), (), (), note="ℏ_n never increases along the checkpoints")
    pair = max(best, key=lambda p: (best[p], -p[1], -p[0]))
    if best[pair] < min_indices:
        return SEvidence(
            (), (), (), (), note=f"longest admissible subsequence has {best[pair]} picks"
        )
    pairs = [pair]
    while back[pairs[-1]] is not None:
        pairs.append(back[pairs[-1]])
    pairs.reverse()
    picks = [pairs[0][0]] + [b for _, b in pairs]
    return SEvidence(
        tuple(marks[p][0] for p in picks),
        tuple(hb[p] for p in picks),
        tuple(fwd[p] for p in pairs),
        tuple(bwd[p] for p in pairs),
    )
