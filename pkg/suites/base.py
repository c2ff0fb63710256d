"""
Shared pieces of the self-test suites: scales, results and random samplers.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from algebra.letters import Letter, letter, letters_reduced
from algebra.words import Block, InfiniteWord, periodic_block
from algebra.zn import ZnVec
from boundary.ends import BoundaryPoint, symbolic_end
from config.config import make_rng
from config.settings import WORKSPACE_DIR
from config.workspace import Workspace, load_workspace
from utils.errors import BoundaryError, MalformedWorkspaceError, ReductionError


@dataclass(frozen=True)
class Scale:
    """Sample sizes of one self-test run."""

    label: str
    words: int
    periodic_words: int
    triples: int
    symbolic_ends: int
    ultra_radius: int
    lyndon_radius: int
    tree_depth: int
    drift_walks: int
    drift_steps: int
    residual_walks: int
    residual_steps: int
    z2_walks: int
    z2_steps: int
    dirac_walks: int
    dirac_steps: int
    axis_kmax: int
    strip_kmax: int


REDUCED = Scale(
    label="reduced",
    words=2_000,
    periodic_words=400,
    triples=400,
    symbolic_ends=20,
    ultra_radius=8,
    lyndon_radius=3,
    tree_depth=2,
    drift_walks=200,
    drift_steps=1_000,
    residual_walks=1_000,
    residual_steps=200,
    z2_walks=40,
    z2_steps=2_000,
    dirac_walks=100,
    dirac_steps=1_000,
    axis_kmax=8,
    strip_kmax=7,
)

FULL = Scale(
    label="full",
    words=100_000,
    periodic_words=10_000,
    triples=10_000,
    symbolic_ends=100,
    ultra_radius=12,
    lyndon_radius=4,
    tree_depth=3,
    drift_walks=2_000,
    drift_steps=5_000,
    residual_walks=10_000,
    residual_steps=400,
    z2_walks=1_000,
    z2_steps=20_000,
    dirac_walks=500,
    dirac_steps=1_000,
    axis_kmax=12,
    strip_kmax=8,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int = 0
    violations: int = 0
    detail: str = ""
    metrics: dict[str, float] = field(default_factory=dict)

    def __str__(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.name}: {self.detail} ({self.checked} checked, {self.violations} violations)"


def suite_rng(seed: int, name: str) -> np.random.Generator:
    """A stream of its own for every suite, keyed by the suite name."""
    return make_rng(seed, zlib.crc32(name.encode("utf-8")))


_workspace_cache: dict[str, Workspace] = {}


def workspace(name: str, directory: Path | None = None) -> Workspace:
    """One of the bundled workspaces, loaded once per process.

    Raises:
        MalformedWorkspaceError: the file is missing or invalid.
    """
    path = (directory or WORKSPACE_DIR) / f"{name}.json"
    key = str(path)
    if key not in _workspace_cache:
        ws, msg = load_workspace(path)
        if ws is None:
            raise MalformedWorkspaceError(msg)
        _workspace_cache[key] = ws
    return _workspace_cache[key]


# ---------------------------------------------------------------------------
# Samplers
# ---------------------------------------------------------------------------


def signed_letters(alphabet: list[str]) -> list[Letter]:
    return [letter(s, sign) for s in alphabet for sign in (1, -1)]


def random_letters(rng: np.random.Generator, alphabet: list[str], size: int, after: Letter | None = None) -> list[Letter]:
    """A reduced letter list of the given size, not cancelling against `after`."""
    pool = signed_letters(alphabet)
    out: list[Letter] = []
    prev = after
    for _ in range(size):
        choices = [x for x in pool if prev is None or x != prev.inverse()]
        x = choices[int(rng.integers(len(choices)))]
        out.append(x)
        prev = x
    return out


def random_cyclic_letters(rng: np.random.Generator, alphabet: list[str], size: int) -> list[Letter]:
    while True:
        xs = random_letters(rng, alphabet, size)
        if letters_reduced(tuple(xs + xs[:1])):
            return xs


def random_z2_word(rng: np.random.Generator, alphabet: list[str], max_blocks: int = 6) -> InfiniteWord:
    """A canonical Z^2-word of at most max_blocks blocks, extents up to (20, 3)."""
    while True:
        blocks: list[Block] = []
        for _ in range(int(rng.integers(1, max_blocks + 1))):
            period = random_cyclic_letters(rng, alphabet, int(rng.integers(1, 4)))
            upper = int(rng.integers(0, 4))
            lower = int(rng.integers(0 if upper else 1, 21))
            blocks.append(periodic_block(period, ZnVec.of(lower, upper)))
        try:
            return InfiniteWord.from_blocks(blocks, 2)
        except ReductionError:
            continue


def random_position(rng: np.random.Generator, w: InfiniteWord) -> ZnVec:
    """A position in [1, |w|] of a word with at most two coordinates."""
    start = ZnVec.zero(w.n)
    i = int(rng.integers(len(w.blocks)))
    for b in w.blocks[:i]:
        start = start + b.extent
    e = w.blocks[i].extent
    if e.is_finite:
        return start + ZnVec.first(int(rng.integers(1, e.coords[0] + 1)), w.n)
    row = int(rng.integers(0, e.coords[1] + 1))
    if row == 0:
        x = int(rng.integers(1, 21))
    elif row == e.coords[1]:
        x = e.coords[0] - int(rng.integers(0, 21))
    else:
        x = int(rng.integers(-20, 21))
    return start + ZnVec.of(x, row)


def random_symbolic_end(rng: np.random.Generator, alphabet: list[str], n: int, max_base: int) -> BoundaryPoint:
    while True:
        tail = InfiniteWord.from_letters(random_cyclic_letters(rng, alphabet, int(rng.integers(1, 4))), n)
        base = InfiniteWord.from_letters(random_letters(rng, alphabet, int(rng.integers(0, max_base + 1))), n)
        try:
            return symbolic_end(base, tail)
        except BoundaryError:
            continue
