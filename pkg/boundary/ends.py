"""
Ends of the Z^n-tree.

A symbolic end is the ray base ∘ tail ∘ tail ∘ ... ; its type is one plus
the index of the highest nonzero coordinate of |tail|. Type-n ends are read
through finite truncations base ∘ tail^K. A finite tail in a workspace with
n >= 2 gives a Z-type end lying inside a row; it is read through the closure
word base ∘ (tail)^e_2, whose row beyond |base| is the ray.

An empirical end is the monotone chain of stable prefixes extracted from a
walk. It only answers questions its deepest prefix can settle and raises
PrecisionError otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from algebra.words import (
    InfiniteWord,
    c_len,
    concat,
    first_letter,
    is_cyclically_reduced,
    last_letter,
    mult,
    periodic_word,
    power,
    prefix,
)
from algebra.zn import ZnVec
from groups.tree import Vertex
from utils.errors import BoundaryError, ConfigurationError, PrecisionError


class EndKind(str, Enum):
    SYMBOLIC = "symbolic"
    EMPIRICAL = "empirical"


@dataclass(frozen=True, eq=False)
class BoundaryPoint:
    kind: EndKind
    n: int
    base: InfiniteWord | None = None
    tail: InfiniteWord | None = None
    chain: tuple[InfiniteWord, ...] = field(default=())
    declared_type: int | None = None
    conclusive: bool = True

    @property
    def depth(self) -> ZnVec:
        """Resolution of an empirical end: length of the deepest stable prefix."""
        if self.kind is EndKind.SYMBOLIC:
            raise BoundaryError("symbolic ends have unbounded resolution")
        return self.chain[-1].length if self.chain else ZnVec.zero(self.n)

    @property
    def deepest(self) -> InfiniteWord:
        if not self.chain:
            raise PrecisionError("empirical end has an empty chain", lower_bound=0)
        return self.chain[-1]

    def __str__(self) -> str:
        if self.kind is EndKind.SYMBOLIC:
            return f"{self.base} ({self.tail})^∞"
        tag = "" if self.conclusive else "?"
        return f"end[{self.depth}]{tag} {self.chain[-1] if self.chain else 'ε'}"


def symbolic_end(base: InfiniteWord, tail: InfiniteWord) -> BoundaryPoint:
    """The end of base ∘ tail ∘ tail ∘ ...

    Raises:
        BoundaryError: tail empty, not cyclically reduced, or cancelling against base.
    """
    if base.n != tail.n:
        raise ConfigurationError(f"base in Z^{base.n}, tail in Z^{tail.n}")
    if tail.is_empty:
        raise BoundaryError("tail of an end must be nonempty")
    if not is_cyclically_reduced(tail):
        raise BoundaryError(f"tail {tail} is not cyclically reduced")
    if not base.is_empty and last_letter(base) == first_letter(tail).inverse():
        raise BoundaryError(f"base {base} cancels against tail {tail}")
    return BoundaryPoint(EndKind.SYMBOLIC, base.n, base=base, tail=tail)


def empirical_end(
    chain: list[InfiniteWord], end_type: int, conclusive: bool = True
) -> BoundaryPoint:
    if not chain:
        raise PrecisionError("an empirical end needs at least one prefix", lower_bound=0)
    for a, b in zip(chain, chain[1:]):
        if not a.length < b.length or c_len(a, b) != a.length:
            raise BoundaryError("empirical chain must be strictly increasing prefixes")
    return BoundaryPoint(
        EndKind.EMPIRICAL,
        chain[0].n,
        chain=tuple(chain),
        declared_type=end_type,
        conclusive=conclusive,
    )


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def classify_end(p: BoundaryPoint) -> int:
    """Type k in [1, n] of the end."""
    if p.kind is EndKind.SYMBOLIC:
        return p.tail.length.top_index() + 1
    if not p.conclusive:
        raise PrecisionError(
            f"end below resolution; type is at least {p.declared_type}",
            lower_bound=p.declared_type,
        )
    return p.declared_type


def _closure_period(p: BoundaryPoint) -> tuple:
    """Letters read periodically along the ray of a sub-top symbolic end."""
    tail = p.tail
    if tail.is_finite:
        return tail.finite_letters()
    if len(tail.blocks) == 1:
        blk = tail.blocks[0]
        if blk.extent.coords[0] % len(blk.letters) == 0:
            return blk.letters
    raise BoundaryError(
        f"ends of intermediate type with tail {tail} are not supported"
    )


def closure_word(p: BoundaryPoint) -> InfiniteWord:
    """base ∘ (period)^e_k for a symbolic end of type k < n.

    The positions of this word just past |base|, below coordinate k, are the ray.
    """
    k = classify_end(p)
    if k >= p.n:
        raise BoundaryError("type-n ends are read through truncations")
    seed = InfiniteWord.from_letters(_closure_period(p), p.n)
    return concat(p.base, periodic_word(seed, axis_unit(k, p.n)))


def axis_unit(k: int, n: int) -> ZnVec:
    """e_(k+1): the unit vector with 1 at 0-based index k."""
    return ZnVec(tuple(1 if i == k else 0 for i in range(n)))


def _in_ray_region(p: BoundaryPoint, c: ZnVec) -> bool:
    k = classify_end(p)
    b = p.base.length
    return c <= b or c.coords[k:] == b.coords[k:]


def ray_prefix(p: BoundaryPoint, min_length: ZnVec) -> InfiniteWord:
    """A prefix of the ray of p strictly longer than min_length."""
    if p.kind is EndKind.EMPIRICAL:
        s = p.deepest
        if not min_length < s.length:
            raise PrecisionError(
                f"need a prefix beyond {min_length}, chain reaches {s.length}",
                lower_bound=s.length,
            )
        return s
    k = classify_end(p)
    if k < p.n and min_length.coords[k:] != p.base.length.coords[k:] and not min_length < p.base.length:
        raise BoundaryError(f"the ray of {p} never reaches length {min_length}")
    reps = 1
    while not min_length < p.base.length + p.tail.length * reps:
        reps *= 2
    return concat(p.base, power(p.tail, reps))


# ---------------------------------------------------------------------------
# Meets
# ---------------------------------------------------------------------------


Point = Vertex | BoundaryPoint


def _word_meet(word: InfiniteWord, p: BoundaryPoint) -> ZnVec:
    """c(word, ray of p) for a finite-resolution word."""
    if p.kind is EndKind.EMPIRICAL:
        s = p.deepest
        c = c_len(word, s)
        if c == s.length:
            raise PrecisionError(
                f"chain of depth {s.length} too shallow against {word}", lower_bound=c
            )
        return c
    if classify_end(p) < p.n:
        c = c_len(word, closure_word(p))
        if not _in_ray_region(p, c):
            raise BoundaryError(f"the end {p} lies inside the segment to {word}")
        return c
    return c_len(word, ray_prefix(p, word.length))


def same_end(p: BoundaryPoint, q: BoundaryPoint) -> bool:
    """Equality of ends; empirical ends are only equal to themselves."""
    if p is q:
        return True
    if p.kind is EndKind.EMPIRICAL or q.kind is EndKind.EMPIRICAL:
        return False
    k = classify_end(p)
    if k != classify_end(q):
        return False
    bp, bq = p.base.length, q.base.length
    if k < p.n and bp.coords[k:] != bq.coords[k:]:
        return False
    bound = (bp if bq <= bp else bq) + (p.tail.length + q.tail.length) * 2
    return prefix(ray_prefix(p, bound), bound) == prefix(ray_prefix(q, bound), bound)


def _end_meet(p: BoundaryPoint, q: BoundaryPoint) -> ZnVec:
    if same_end(p, q):
        raise BoundaryError("identical ends have no finite meet")
    if p.kind is EndKind.EMPIRICAL:
        return _word_meet(p.deepest, q)
    if q.kind is EndKind.EMPIRICAL:
        return _word_meet(q.deepest, p)
    kp, kq = classify_end(p), classify_end(q)
    if kp < p.n and kq < q.n:
        c = c_len(closure_word(p), closure_word(q))
        if not (_in_ray_region(p, c) and _in_ray_region(q, c)):
            raise BoundaryError(f"ends {p} and {q} are nested rays")
        return c
    if kp < p.n:
        return _word_meet(ray_prefix(q, _bound_for(p)), p)
    if kq < q.n:
        return _word_meet(ray_prefix(p, _bound_for(q)), q)
    bp, bq = p.base.length, q.base.length
    bound = (bp if bq <= bp else bq) + (p.tail.length + q.tail.length) * 2
    return c_len(ray_prefix(p, bound), ray_prefix(q, bound))


def _bound_for(p: BoundaryPoint) -> ZnVec:
    """A length past the ray region of a sub-top end."""
    return p.base.length + axis_unit(classify_end(p), p.n)


def meet(x: Point, y: Point) -> ZnVec:
    """Length of the common part of [ε, x] and [ε, y]."""
    if isinstance(x, Vertex) and isinstance(y, Vertex):
        return c_len(x.prefix, y.prefix)
    if isinstance(x, Vertex):
        return _word_meet(x.prefix, y)
    if isinstance(y, Vertex):
        return _word_meet(y.prefix, x)
    return _end_meet(x, y)


def same_point(x: Point, y: Point) -> bool:
    if isinstance(x, Vertex) and isinstance(y, Vertex):
        return x == y
    if isinstance(x, BoundaryPoint) and isinstance(y, BoundaryPoint):
        return same_end(x, y)
    return False


def point_word(x: Point, beyond: ZnVec) -> InfiniteWord:
    """A word standing for x, long enough to settle meets below `beyond`."""
    if isinstance(x, Vertex):
        return x.prefix
    if x.kind is EndKind.SYMBOLIC and classify_end(x) < x.n:
        return closure_word(x)
    return ray_prefix(x, beyond)


# ---------------------------------------------------------------------------
# Action
# ---------------------------------------------------------------------------


def act_on_point(g: InfiniteWord, p: Point) -> Point:
    """g · p for vertices and ends."""
    if isinstance(p, Vertex):
        return Vertex(mult(g, p.prefix))
    if p.kind is EndKind.EMPIRICAL:
        kept = [s for s in p.chain if g.length < s.length]
        if not kept:
            raise PrecisionError(f"chain too shallow to translate by {g}", lower_bound=p.depth)
        moved = [mult(g, s) for s in kept]
        chain = [moved[0]]
        for w in moved[1:]:
            if chain[-1].length < w.length:
                chain.append(w)
        return BoundaryPoint(
            EndKind.EMPIRICAL,
            p.n,
            chain=tuple(chain),
            declared_type=p.declared_type,
            conclusive=p.conclusive,
        )
    k = classify_end(p)
    if k < p.n and g.length.coords[k:] != ZnVec.zero(p.n).coords[k:]:
        raise BoundaryError(f"translating the Z^{k}-type end {p} by {g} is not supported")
    reps = 1
    while not g.length < p.tail.length * reps:
        reps *= 2
    base = mult(g, concat(p.base, power(p.tail, reps)))
    return symbolic_end(base, p.tail)
