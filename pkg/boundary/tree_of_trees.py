"""
The Z^n-tree as a tree of Z^(n-1)-trees, and the rescaled metric on it.

Two vertices share a class iff their distance has zero height. Along a word,
the class at level j is fixed by the blocks before the periodic block that
carries the word into row j, plus that block's period; the class anchor is
those blocks followed by the period up to length (0, ..., 0, j).

Distances are summed over the classes on the Δ-geodesic between two points.
Inside a class the points are translated by the inverse anchor and measured
recursively, one coordinate lower, down to the ultrametric on Z-trees. Top
level classes are rescaled by 2^-(level + index) with the breadth-first
discovery index; nested levels by 2^-(level + 1); the class of ε is unscaled.
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass, field
from typing import Iterable

from algebra.words import BlockKind, InfiniteWord, c_len, invert, mult, periodic_block
from algebra.zn import ZnVec
from boundary.compactification import d_ultra
from boundary.ends import (
    BoundaryPoint,
    EndKind,
    Point,
    axis_unit,
    classify_end,
    closure_word,
    meet,
    ray_prefix,
    same_point,
)
from config.config import METRIC_SERIES_LEVELS
from groups.group import Group
from groups.tree import Vertex
from utils.errors import BoundaryError, DomainError, ExplorationNeededError, PrecisionError

logger = logging.getLogger(__name__)

ClassKey = tuple


def _upper(v: ZnVec, idx: int) -> tuple[int, ...]:
    return v.coords[idx:][::-1]


def class_crossing(word: InfiniteWord, idx: int, level: int) -> tuple[ClassKey, InfiniteWord]:
    """Key and anchor of the class at `level` of coordinate idx along word."""
    n = word.n
    if level == 0:
        return (idx, 0), InfiniteWord.empty(n)
    target = axis_unit(idx, n) * level
    goal = _upper(target, idx)
    start = ZnVec.zero(n)
    for i, blk in enumerate(word.blocks):
        end = start + blk.extent
        if _upper(end, idx) >= goal:
            if blk.kind is BlockKind.FINITE or not _upper(start, idx) < goal:
                raise DomainError(f"{word} has no crossing into level {level}")
            key = (idx, level, word.blocks[:i], blk.letters)
            anchor = InfiniteWord(
                word.blocks[:i] + (periodic_block(blk.letters, target - start),), target
            )
            return key, anchor
        start = end
    raise DomainError(f"{word} never reaches level {level} of coordinate {idx}")


def format_key(key: ClassKey) -> str:
    if len(key) == 2:
        return f"T0[{key[0]}]"
    idx, level, before, period = key
    head = " ".join(str(b) for b in before) or "ε"
    return f"L{level}:{head}|({' '.join(map(str, period))})"


@dataclass(frozen=True)
class ClassInfo:
    key: ClassKey
    level: int
    index: int
    anchor: InfiniteWord
    parent: ClassKey | None
    vertices: int


class TreeOfTrees:
    """Explored Z^(n-1)-classes with their discovery enumeration.

    Registration is serialized by a lock; queries read an immutable snapshot.
    """

    def __init__(self, n: int):
        self.n = n
        self._lock = threading.Lock()
        self._anchor: dict[ClassKey, InfiniteWord] = {}
        self._parent: dict[ClassKey, ClassKey | None] = {}
        self._level: dict[ClassKey, int] = {}
        self._count: dict[ClassKey, int] = {}
        self._snapshot: dict[ClassKey, ClassInfo] = {}
        self._per_level: dict[int, int] = {}
        root = (n - 1, 0)
        self._anchor[root] = InfiniteWord.empty(n)
        self._parent[root] = None
        self._level[root] = 0
        self._count[root] = 0
        self._reindex()

    @classmethod
    def explore(cls, group: Group, depth: int, threads: int = 1) -> TreeOfTrees:
        """Register every element of the ball of radius depth."""
        tree = cls(group.n)
        tree.register(g.word for g in group.ball_enumerate(depth, threads=threads))
        logger.info(
            "explored depth %d: %d classes over %d levels",
            depth,
            len(tree.classes()),
            len(tree.level_histogram()),
        )
        return tree

    def register(self, words: Iterable[InfiniteWord]) -> None:
        idx = self.n - 1
        with self._lock:
            for w in words:
                parent: ClassKey | None = None
                top = w.length.height if self.n > 1 else 0
                for j in range(top + 1):
                    key, anchor = class_crossing(w, idx, j)
                    if key not in self._anchor:
                        self._anchor[key] = anchor
                        self._parent[key] = parent
                        self._level[key] = j
                        self._count[key] = 0
                    parent = key
                self._count[parent] += 1
            self._reindex()

    def _reindex(self) -> None:
        children: dict[ClassKey, list[ClassKey]] = {}
        root = None
        for key, parent in self._parent.items():
            if parent is None:
                root = key
            else:
                children.setdefault(parent, []).append(key)
        snapshot: dict[ClassKey, ClassInfo] = {}
        per_level: dict[int, int] = {}
        frontier = [root]
        level = 0
        while frontier:
            nxt: list[ClassKey] = []
            for pos, key in enumerate(frontier):
                index = 0 if level == 0 else pos + 1
                snapshot[key] = ClassInfo(
                    key, level, index, self._anchor[key], self._parent[key], self._count[key]
                )
                kids = sorted(children.get(key, []), key=lambda k: self._anchor[k].sort_key())
                nxt.extend(kids)
            per_level[level] = len(frontier)
            frontier = nxt
            level += 1
        self._snapshot = snapshot
        self._per_level = per_level

    # --- queries ---

    def classes(self) -> list[ClassInfo]:
        return sorted(self._snapshot.values(), key=lambda c: (c.level, c.index))

    def info(self, key: ClassKey) -> ClassInfo:
        try:
            return self._snapshot[key]
        except KeyError:
            raise ExplorationNeededError(format_key(key)) from None

    def is_explored(self, key: ClassKey) -> bool:
        return key in self._snapshot

    def level_histogram(self) -> dict[int, int]:
        return dict(self._per_level)

    def gluing_count(self) -> int:
        """Adjacent class pairs; the class graph is a tree."""
        return len(self._snapshot) - 1

    def index_of(self, key: ClassKey, level: int) -> int:
        """Discovery index.

        Classes past the explored region, which only end rays reach, share the
        first free slot of their level; their factors bound the true ones from above.
        """
        if key in self._snapshot:
            return self._snapshot[key].index
        return self._per_level.get(level, 0) + 1

    def factor(self, key: ClassKey, level: int) -> float:
        if level == 0:
            return 1.0
        return 2.0 ** -(level + self.index_of(key, level))


# ---------------------------------------------------------------------------
# Metric
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceEntry:
    key: str
    level: int
    index: int
    factor: float
    inner: float


@dataclass(frozen=True)
class DbarResult:
    value: float
    error_bound: float
    trace: tuple[TraceEntry, ...] = field(default=())


def inner_bound(n: int) -> float:
    """C: the diameter bound of the Z^(n-1)-classes."""
    return 2.0 ** max(n - 2, 0)


def diameter_bound(n: int) -> float:
    return 2.0 * inner_bound(n) if n >= 2 else 1.0


@dataclass
class _Side:
    word: InfiniteWord
    last: int | None  # last level to sum; None when it is cut by the series length
    bound: float = 0.0


class _Summation:
    def __init__(self, tree: TreeOfTrees, levels: int):
        self.tree = tree
        self.levels = levels
        self.trace: list[TraceEntry] = []
        self.bound = 0.0

    def _factor(self, m: int, key: ClassKey, level: int) -> float:
        if m == self.tree.n:
            return self.tree.factor(key, level)
        return 1.0 if level == 0 else 2.0 ** -(level + 1)

    def _record(self, m: int, key: ClassKey, level: int, factor: float, inner: float) -> None:
        if m == self.tree.n:
            index = 0 if level == 0 else self.tree.index_of(key, level)
            self.trace.append(TraceEntry(format_key(key), level, index, factor, inner))

    def frame(self, m: int, p: _Side, q: _Side) -> float:
        """Distance between p and q inside a Z^m-tree whose base class anchor is ε."""
        if m == 1:
            return self._ultra(p.word, q.word)
        idx = m - 1
        c = c_len(p.word, q.word)
        if any(c.coords[m:]):
            return 0.0
        if p.word == q.word and not any(p.word.length.coords[m:]):
            return 0.0
        apex = c.coords[idx]
        key, anchor = class_crossing(p.word, idx, apex)
        shift = invert(anchor)
        total = 0.0
        for side in (p, q):
            total += self._climb(m, side, apex)
        factor = self._factor(m, key, apex)
        inner = self.frame(
            m - 1, self._sub(m - 1, mult(shift, p.word)), self._sub(m - 1, mult(shift, q.word))
        )
        self._record(m, key, apex, factor, inner)
        return total + factor * inner

    def _climb(self, m: int, side: _Side, apex: int) -> float:
        idx = m - 1
        if side.last is None:
            last = apex + self.levels
            self.bound += 2.0 ** -(last + 1) * inner_bound(m)
        else:
            last = side.last
            self.bound += side.bound
        total = 0.0
        for j in range(apex + 1, last + 1):
            key, anchor = class_crossing(side.word, idx, j)
            shift = invert(anchor)
            factor = self._factor(m, key, j)
            inner = self.frame(m - 1, self._sub(m - 1, shift), self._sub(m - 1, mult(shift, side.word)))
            self._record(m, key, j, factor, inner)
            total += factor * inner
        return total

    def _sub(self, m: int, word: InfiniteWord) -> _Side:
        if any(word.length.coords[m:]):
            return _Side(word, None)
        return _Side(word, word.length.coords[m - 1])

    @staticmethod
    def _ultra(u: InfiniteWord, v: InfiniteWord) -> float:
        if u == v and u.length.is_finite:
            return 0.0
        c = c_len(u, v)
        if not c.is_finite:
            return 0.0
        return math.exp(-c.coords[0])


def _top_side(x: Point, apex: ZnVec, tree: TreeOfTrees, levels: int) -> _Side:
    n = tree.n
    top = n - 1
    if isinstance(x, Vertex):
        for j in range(x.length.height + 1):
            tree.info(class_crossing(x.prefix, top, j)[0])
        return _Side(x.prefix, x.length.height)
    if x.kind is EndKind.EMPIRICAL:
        if classify_end(x) < n:
            raise BoundaryError("empirical ends below type n are compared through cones only")
        s = x.deepest
        last = s.length.height - 1
        if last < apex.height:
            raise PrecisionError(
                f"chain of height {s.length.height} cannot resolve an apex at level {apex.height}",
                lower_bound=s.length,
            )
        return _Side(s, last, 2.0 ** -(s.length.height - 1) * inner_bound(n))
    k = classify_end(x)
    if k == n:
        reach = axis_unit(top, n) * (apex.height + levels + 1)
        return _Side(ray_prefix(x, reach), None)
    if n != 2:
        raise BoundaryError(f"ends of type {k} < {n} are not supported by dbar for n >= 3")
    return _Side(closure_word(x), x.base.length.height)


def dbar_trace(
    x: Point, y: Point, tree: TreeOfTrees, levels: int = METRIC_SERIES_LEVELS
) -> DbarResult:
    """dbar with the enumeration trace and an error bound for truncated series.

    Raises:
        ExplorationNeededError: a vertex argument lies in an unexplored class.
        PrecisionError: an empirical end is too shallow.
    """
    if same_point(x, y):
        return DbarResult(0.0, 0.0)
    if tree.n == 1:
        return DbarResult(d_ultra(x, y), 0.0)
    apex = meet(x, y)
    summation = _Summation(tree, levels)
    px = _top_side(x, apex, tree, levels)
    py = _top_side(y, apex, tree, levels)
    value = summation.frame(tree.n, px, py)
    return DbarResult(value, summation.bound, tuple(summation.trace))


def dbar(x: Point, y: Point, tree: TreeOfTrees) -> float:
    return dbar_trace(x, y, tree).value
