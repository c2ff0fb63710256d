"""
Reduced Z^n-words in canonical block form.

A word w: [1, |w|] -> X^± is stored as a tuple of blocks. A finite block holds
explicit letters and has extent (k, 0, ..., 0). A periodic block holds a
primitive, cyclically reduced period and an extent with a nonzero higher
coordinate; the letter at in-block position γ is period[(γ_1 - 1) mod p].
Periods are rotated so the phase is always 0.

Canonical form is whatever `_push` leaves on its stack:
  - adjacent finite blocks are merged,
  - a periodic block swallows the letters after it that continue its pattern,
  - a periodic block swallows, backwards, the letters before it that fit,
  - two periodic blocks with aligned patterns merge; otherwise the left one
    takes the leading letters of the right one while they fit (left priority).
Pushing the blocks of a canonical word again reproduces it, so word equality
is structural equality and junctions can be re-stitched locally.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from algebra.letters import (
    Letter,
    inverse_letters,
    letters_reduced,
    primitive_root,
    rotate,
)
from algebra.zn import ZnVec
from utils.errors import (
    ConfigurationError,
    DomainError,
    NoCommonMaxError,
    NotInCDRError,
    ReductionError,
)


class BlockKind(str, Enum):
    FINITE = "finite"
    PERIODIC = "periodic"


FINITE = BlockKind.FINITE
PERIODIC = BlockKind.PERIODIC


@dataclass(frozen=True, slots=True)
class Block:
    """One run of a word: explicit letters, or a period repeated over an extent."""

    kind: BlockKind
    letters: tuple[Letter, ...]  # explicit letters, or the period
    extent: ZnVec

    @property
    def period(self) -> tuple[Letter, ...]:
        return self.letters

    @property
    def phase(self) -> int:
        return 0

    def letter_at(self, offset: int) -> Letter:
        """Letter at in-block position whose first coordinate is `offset` (1-based)."""
        if self.kind is FINITE:
            return self.letters[offset - 1]
        return self.letters[(offset - 1) % len(self.letters)]

    @property
    def first_letter(self) -> Letter:
        return self.letters[0]

    @property
    def last_letter(self) -> Letter:
        if self.kind is FINITE:
            return self.letters[-1]
        return self.letters[(self.extent.coords[0] - 1) % len(self.letters)]

    def inverse(self) -> Block:
        if self.kind is FINITE:
            return Block(FINITE, inverse_letters(self.letters), self.extent)
        p = len(self.letters)
        e1 = self.extent.coords[0]
        period = tuple(self.letters[(e1 - 1 - j) % p].inverse() for j in range(p))
        return Block(PERIODIC, period, self.extent)

    def __str__(self) -> str:
        body = " ".join(str(x) for x in self.letters)
        if self.kind is FINITE:
            return body
        return f"({body})^{self.extent}"


def finite_block(letters: Sequence[Letter], n: int) -> Block:
    letters = tuple(letters)
    if not letters:
        raise DomainError("finite block needs at least one letter")
    return Block(FINITE, letters, ZnVec.first(len(letters), n))


def periodic_block(period: Sequence[Letter], extent: ZnVec) -> Block:
    """Block of `period` over `extent`; collapses to a finite block when the extent is finite."""
    period = tuple(period)
    if not period:
        raise DomainError("period must be nonempty")
    if not extent.is_positive:
        raise DomainError(f"block extent must be positive, got {extent}")
    if extent.is_finite:
        k = extent.coords[0]
        p = len(period)
        return Block(FINITE, tuple(period[i % p] for i in range(k)), extent)
    if not letters_reduced(period + period[:1]):
        raise ReductionError(f"period {' '.join(map(str, period))} is not cyclically reduced")
    return Block(PERIODIC, primitive_root(period), extent)


def _cut(block: Block, delta: ZnVec) -> tuple[Block, Block]:
    """Split a block at in-block offset delta, 0 < delta < extent."""
    k = delta.coords[0]
    if block.kind is FINITE:
        n = block.extent.n
        return finite_block(block.letters[:k], n), finite_block(block.letters[k:], n)
    left = periodic_block(block.letters, delta)
    right = periodic_block(rotate(block.letters, k), block.extent - delta)
    return left, right


# ---------------------------------------------------------------------------
# Canonical stitching
# ---------------------------------------------------------------------------


def _forward_match(top: Block, letters: tuple[Letter, ...]) -> int:
    period = top.letters
    p = len(period)
    shift = top.extent.coords[0]
    k = 0
    for x in letters:
        if x != period[(shift + k) % p]:
            break
        k += 1
    return k


def _backward_match(blk: Block, letters: tuple[Letter, ...]) -> int:
    period = blk.letters
    q = len(period)
    k = 0
    for x in reversed(letters):
        if x != period[(-1 - k) % q]:
            break
        k += 1
    return k


def _grow_right(blk: Block, k: int) -> Block:
    return Block(PERIODIC, blk.letters, blk.extent + ZnVec.first(k, blk.extent.n))


def _grow_left(blk: Block, k: int) -> Block:
    return Block(PERIODIC, rotate(blk.letters, -k), blk.extent + ZnVec.first(k, blk.extent.n))


def _push(stack: list[Block], blk: Block) -> None:
    """Append `blk` to a canonical stack, merging around the junction only."""
    n = blk.extent.n
    while True:
        if not stack:
            stack.append(blk)
            return
        top = stack[-1]
        if top.kind is FINITE:
            if blk.kind is FINITE:
                stack[-1] = Block(FINITE, top.letters + blk.letters, top.extent + blk.extent)
                return
            k = _backward_match(blk, top.letters)
            if k == 0:
                stack.append(blk)
                return
            blk = _grow_left(blk, k)
            if k == len(top.letters):
                stack.pop()
                continue
            stack[-1] = finite_block(top.letters[:-k], n)
            stack.append(blk)
            return
        if blk.kind is FINITE:
            k = _forward_match(top, blk.letters)
            if k:
                stack[-1] = _grow_right(top, k)
            if k < len(blk.letters):
                stack.append(finite_block(blk.letters[k:], n) if k else blk)
            return
        p, q = len(top.letters), len(blk.letters)
        shift = top.extent.coords[0]
        if p == q and rotate(top.letters, shift) == blk.letters:
            stack[-1] = Block(PERIODIC, top.letters, top.extent + blk.extent)
            return
        bound = p + q
        k = 0
        while k < bound and top.letters[(shift + k) % p] == blk.letters[k % q]:
            k += 1
        if k == bound:
            raise NoCommonMaxError("distinct primitive periods agree past the Fine-Wilf bound")
        if k:
            stack[-1] = _grow_right(top, k)
            blk = Block(PERIODIC, rotate(blk.letters, k), blk.extent - ZnVec.first(k, n))
        stack.append(blk)
        return


def _stitch(stack: list[Block], rest: Sequence[Block], start: int = 0) -> list[Block]:
    """Push rest[start:] onto a canonical stack; stops early once a block lands unchanged."""
    for j in range(start, len(rest)):
        blk = rest[j]
        before = len(stack)
        _push(stack, blk)
        if len(stack) == before + 1 and stack[-1] is blk:
            stack.extend(rest[j + 1 :])
            break
    return stack


def normalize(blocks: Iterable[Block]) -> list[Block]:
    """Canonical form of an already reduced block sequence."""
    stack: list[Block] = []
    for blk in blocks:
        _push(stack, blk)
    return stack


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------


class InfiniteWord:
    """A reduced Z^n-word in canonical block form. Immutable."""

    __slots__ = ("blocks", "length", "_inverse", "_hash")

    def __init__(self, blocks: tuple[Block, ...], length: ZnVec):
        self.blocks = blocks
        self.length = length
        self._inverse: InfiniteWord | None = None
        self._hash: int | None = None

    # --- constructors ---

    @classmethod
    def empty(cls, n: int) -> InfiniteWord:
        return cls((), ZnVec.zero(n))

    @classmethod
    def from_letters(cls, letters: Sequence[Letter], n: int) -> InfiniteWord:
        letters = tuple(letters)
        if not letters:
            return cls.empty(n)
        if not letters_reduced(letters):
            raise ReductionError(f"not reduced: {' '.join(map(str, letters))}")
        return cls((finite_block(letters, n),), ZnVec.first(len(letters), n))

    @classmethod
    def from_blocks(cls, blocks: Sequence[Block], n: int) -> InfiniteWord:
        """Normalize a raw block sequence; raises ReductionError if it cancels anywhere."""
        blocks = tuple(blocks)
        if not is_reduced(blocks):
            raise ReductionError(
                "not reduced: " + " ".join(str(b) for b in blocks)
            )
        total = ZnVec.zero(n)
        for b in blocks:
            total = total + b.extent
        return cls(tuple(normalize(blocks)), total)

    # --- views ---

    @property
    def n(self) -> int:
        return self.length.n

    @property
    def is_empty(self) -> bool:
        return not self.blocks

    @property
    def is_finite(self) -> bool:
        return self.length.is_finite

    def finite_letters(self) -> tuple[Letter, ...]:
        """Explicit letters of a word whose length is (k, 0, ..., 0)."""
        if not self.length.is_finite:
            raise DomainError(f"{self} has infinitely many letters")
        out: tuple[Letter, ...] = ()
        for b in self.blocks:
            out += b.letters
        return out

    def sort_key(self) -> tuple:
        return (self.length.key(), str(self))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InfiniteWord):
            return NotImplemented
        return self.length == other.length and self.blocks == other.blocks

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.length, self.blocks))
        return self._hash

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        if not self.blocks:
            return "ε"
        return " ".join(str(b) for b in self.blocks)

    def __repr__(self) -> str:
        return f"InfiniteWord({str(self)!r}, length={self.length})"


@dataclass(frozen=True)
class RawWord:
    """Unreduced concatenation kept for inspection; never a first-class value."""

    blocks: tuple[Block, ...]
    length: ZnVec
    reduced: bool


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def length(w: InfiniteWord) -> ZnVec:
    return w.length


def first_letter(w: InfiniteWord) -> Letter:
    if not w.blocks:
        raise DomainError("ε has no letters")
    return w.blocks[0].first_letter


def last_letter(w: InfiniteWord) -> Letter:
    if not w.blocks:
        raise DomainError("ε has no letters")
    return w.blocks[-1].last_letter


def char_at(w: InfiniteWord, beta: ZnVec) -> Letter:
    """Letter of w at position beta in [1, |w|]."""
    if beta.n != w.n:
        raise ConfigurationError(f"position {beta} does not live in Z^{w.n}")
    if not (ZnVec.unit(w.n) <= beta <= w.length):
        raise DomainError(f"position {beta} outside [1, {w.length}]")
    start = ZnVec.zero(w.n)
    for b in w.blocks:
        end = start + b.extent
        if beta <= end:
            return b.letter_at((beta - start).coords[0])
        start = end
    raise DomainError(f"position {beta} outside [1, {w.length}]")


def _junction_ok(left: Block, right: Block) -> bool:
    a, b = left.last_letter, right.first_letter
    return a.symbol != b.symbol or a.sign == b.sign


def is_reduced(value: InfiniteWord | RawWord | Sequence[Block]) -> bool:
    """True iff no successor pair cancels, inside blocks or across junctions."""
    if isinstance(value, InfiniteWord):
        return True
    blocks = value.blocks if isinstance(value, RawWord) else tuple(value)
    for i, b in enumerate(blocks):
        if b.kind is FINITE:
            if not letters_reduced(b.letters):
                return False
        elif not letters_reduced(b.letters + b.letters[:1]):
            return False
        if i and not _junction_ok(blocks[i - 1], b):
            return False
    return True


def raw_concat(u: InfiniteWord, v: InfiniteWord) -> RawWord:
    blocks = u.blocks + v.blocks
    ok = not (u.blocks and v.blocks) or _junction_ok(u.blocks[-1], v.blocks[0])
    return RawWord(blocks, u.length + v.length, ok)


def _join(left: list[Block], right: Sequence[Block], length: ZnVec) -> InfiniteWord:
    return InfiniteWord(tuple(_stitch(left, right)), length)


def concat(u: InfiniteWord, v: InfiniteWord) -> InfiniteWord:
    """u ∘ v; raises ReductionError when the junction cancels."""
    if u.n != v.n:
        raise ConfigurationError(f"dimension mismatch: Z^{u.n} word and Z^{v.n} word")
    if not u.blocks:
        return v
    if not v.blocks:
        return u
    if not _junction_ok(u.blocks[-1], v.blocks[0]):
        raise ReductionError(f"junction of ({u}) and ({v}) is not reduced")
    return _join(list(u.blocks), v.blocks, u.length + v.length)


def invert(w: InfiniteWord) -> InfiniteWord:
    if w._inverse is None:
        inv = InfiniteWord(
            tuple(normalize(b.inverse() for b in reversed(w.blocks))), w.length
        )
        inv._inverse = w
        w._inverse = inv
    return w._inverse


def _locate(w: InfiniteWord, alpha: ZnVec) -> tuple[int, ZnVec]:
    """Index of the block holding the cut at alpha and the in-block offset.

    An offset of zero means the cut falls just before block `index`.
    """
    n = w.n
    rest = w.length - alpha
    if rest < alpha:
        tail = ZnVec.zero(n)
        for i in range(len(w.blocks) - 1, -1, -1):
            ext = w.blocks[i].extent
            span = tail + ext
            if rest == tail:
                return i + 1, ZnVec.zero(n)
            if rest < span:
                return i, ext - (rest - tail)
            tail = span
        return 0, ZnVec.zero(n)
    start = ZnVec.zero(n)
    for i, b in enumerate(w.blocks):
        if alpha == start:
            return i, ZnVec.zero(n)
        end = start + b.extent
        if alpha < end:
            return i, alpha - start
        start = end
    return len(w.blocks), ZnVec.zero(n)


def _check_cut(w: InfiniteWord, alpha: ZnVec) -> None:
    if alpha.n != w.n:
        raise ConfigurationError(f"cut {alpha} does not live in Z^{w.n}")
    if alpha < ZnVec.zero(w.n) or alpha > w.length:
        raise DomainError(f"cut {alpha} outside [0, {w.length}]")


def prefix(w: InfiniteWord, alpha: ZnVec) -> InfiniteWord:
    """The initial segment w_alpha of length alpha."""
    _check_cut(w, alpha)
    if alpha == w.length:
        return w
    i, delta = _locate(w, alpha)
    stack = list(w.blocks[:i])
    if not delta.is_zero:
        _push(stack, _cut(w.blocks[i], delta)[0])
    return InfiniteWord(tuple(stack), alpha)


def suffix(w: InfiniteWord, alpha: ZnVec) -> InfiniteWord:
    """The terminal segment after position alpha (length |w| - alpha)."""
    _check_cut(w, alpha)
    if alpha.is_zero:
        return w
    i, delta = _locate(w, alpha)
    if delta.is_zero:
        return InfiniteWord(w.blocks[i:], w.length - alpha)
    stack = [_cut(w.blocks[i], delta)[1]]
    return InfiniteWord(tuple(_stitch(stack, w.blocks, i + 1)), w.length - alpha)


def split(w: InfiniteWord, alpha: ZnVec) -> tuple[InfiniteWord, InfiniteWord]:
    """(w_alpha, w~_alpha) with w = w_alpha ∘ w~_alpha and |w_alpha| = alpha."""
    return prefix(w, alpha), suffix(w, alpha)


# --- longest common initial segment ---


def _agree(a: Block, pa: int, b: Block, pb: int, count: int) -> int:
    """Number of leading positions (up to count) where the two runs agree."""
    if a.kind is FINITE and b.kind is FINITE:
        sa, sb = a.letters[pa : pa + count], b.letters[pb : pb + count]
        if sa == sb:
            return count
        for i, (x, y) in enumerate(zip(sa, sb)):
            if x != y:
                return i
        return count
    la, lb = a.letters, b.letters
    p, q = len(la), len(lb)
    i = 0
    while i < count:
        x = la[pa + i] if a.kind is FINITE else la[(pa + i) % p]
        y = lb[pb + i] if b.kind is FINITE else lb[(pb + i) % q]
        if x != y:
            return i
        i += 1
    return count


def _tadd(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(x, y))


def _common_length(ublocks: Iterable[Block], vblocks: Iterable[Block], n: int) -> ZnVec:
    """Length of the longest common initial segment of two block streams."""
    # offsets stay raw coordinate tuples; the loop runs once per block
    ui, vi = iter(ublocks), iter(vblocks)
    a, b = next(ui, None), next(vi, None)
    zero = (0,) * n
    ao = bo = total = zero
    while a is not None and b is not None:
        ae, be = a.extent.coords, b.extent.coords
        if ao == zero and bo == zero and (a is b or a == b):
            total = _tadd(total, ae)
            a, b = next(ui, None), next(vi, None)
            continue
        ra = tuple(x - y for x, y in zip(ae, ao))
        rb = tuple(x - y for x, y in zip(be, bo))
        m = ra if ra[::-1] <= rb[::-1] else rb
        pa, pb = ao[0], bo[0]
        if (
            a.kind is PERIODIC
            and b.kind is PERIODIC
            and len(a.letters) == len(b.letters)
            and rotate(a.letters, pa) == rotate(b.letters, pb)
        ):
            pass
        elif not any(m[1:]):
            cnt = m[0]
            i = _agree(a, pa, b, pb, cnt)
            if i < cnt:
                return ZnVec((total[0] + i,) + total[1:])
        else:
            bound = len(a.letters) + len(b.letters)
            i = _agree(a, pa, b, pb, bound)
            if i == bound:
                raise NoCommonMaxError(
                    "agreement of distinct periodic runs has no maximum"
                )
            return ZnVec((total[0] + i,) + total[1:])
        total = _tadd(total, m)
        ao, bo = _tadd(ao, m), _tadd(bo, m)
        if ao == ae:
            a, ao = next(ui, None), zero
        if bo == be:
            b, bo = next(vi, None), zero
    return ZnVec(total)


def _inverse_stream(w: InfiniteWord) -> Iterator[Block]:
    if w._inverse is not None:
        yield from w._inverse.blocks
        return
    for b in reversed(w.blocks):
        yield b.inverse()


def c_len(u: InfiniteWord, v: InfiniteWord) -> ZnVec:
    """c(u, v) = |com(u, v)|."""
    if u.n != v.n:
        raise ConfigurationError(f"dimension mismatch: Z^{u.n} word and Z^{v.n} word")
    return _common_length(u.blocks, v.blocks, u.n)


def com(u: InfiniteWord, v: InfiniteWord) -> InfiniteWord:
    """Longest common initial segment of u and v."""
    return prefix(u, c_len(u, v))


def mult(u: InfiniteWord, v: InfiniteWord) -> InfiniteWord:
    """u * v: cancel com(u^-1, v), then concatenate what is left."""
    if u.n != v.n:
        raise ConfigurationError(f"dimension mismatch: Z^{u.n} word and Z^{v.n} word")
    if not u.blocks:
        return v
    if not v.blocks:
        return u
    c = _common_length(_inverse_stream(u), v.blocks, u.n)
    if c.is_zero:
        return _join(list(u.blocks), v.blocks, u.length + v.length)
    left = prefix(u, u.length - c)
    right = suffix(v, c)
    return _join(list(left.blocks), right.blocks, left.length + right.length)


def is_cyclically_reduced(w: InfiniteWord) -> bool:
    if not w.blocks:
        raise DomainError("ε is not cyclically reduced or unreduced")
    return first_letter(w).inverse() != last_letter(w)


def cyclic_decomposition(w: InfiniteWord) -> tuple[InfiniteWord, InfiniteWord]:
    """(c, u) with u cyclically reduced and w = c^-1 ∘ u ∘ c."""
    if not w.blocks:
        raise DomainError("ε has no cyclic decomposition")
    d = c_len(w, invert(w))
    if d.is_zero:
        return InfiniteWord.empty(w.n), w
    middle = w.length - d * 2
    if not middle.is_positive:
        raise NotInCDRError(f"{w} is not in CDR: overlap {d} covers half of {w.length}")
    c_inv = prefix(w, d)
    core = prefix(suffix(w, d), middle)
    return invert(c_inv), core


def power(w: InfiniteWord, k: int) -> InfiniteWord:
    """w^k under *, for any integer k."""
    if k < 0:
        return power(invert(w), -k)
    result = InfiniteWord.empty(w.n)
    if k == 0 or not w.blocks:
        return result
    if is_cyclically_reduced(w):
        stack: list[Block] = []
        for _ in range(k):
            _stitch(stack, w.blocks)
        return InfiniteWord(tuple(stack), w.length * k)
    for _ in range(k):
        result = mult(result, w)
    return result


def periodic_word(base: InfiniteWord, extent: ZnVec) -> InfiniteWord:
    """The word of length `extent` reading the finite base periodically."""
    if extent.n != base.n:
        raise ConfigurationError(f"extent {extent} does not live in Z^{base.n}")
    if not base.blocks:
        raise DomainError("cannot repeat ε over an extent")
    if not base.is_finite:
        raise DomainError(f"extent exponent needs a finite base, got {base}")
    if extent.is_zero:
        return InfiniteWord.empty(base.n)
    if not extent.is_positive:
        raise DomainError(f"negative extent {extent}")
    if not is_cyclically_reduced(base):
        raise ReductionError(f"base {base} is not cyclically reduced")
    return InfiniteWord((periodic_block(base.finite_letters(), extent),), extent)
