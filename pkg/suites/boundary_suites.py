"""
Boundary suites: the ultrametric on a compactified Z-tree and dbar on the
tree of trees.
"""

from __future__ import annotations

import math

import numpy as np

from algebra.words import BlockKind, InfiniteWord, prefix
from algebra.zn import ZnVec
from boundary.compactification import d_ultra
from boundary.ends import Point, act_on_point, same_point
from boundary.tree_of_trees import TreeOfTrees, dbar, diameter_bound
from config.workspace import Workspace
from groups.group import GroupElement
from groups.tree import Vertex
from suites.base import Scale, SuiteResult, random_letters, random_symbolic_end, suite_rng, workspace

ULP_SLACK = 4
RELATIVE_TOLERANCE = 1e-12


def _sample_points(rng: np.random.Generator, scale: Scale) -> list[Point]:
    ws = workspace("free_ab")
    alphabet = ws.config.alphabet
    points: list[Point] = [
        random_symbolic_end(rng, alphabet, 1, scale.ultra_radius) for _ in range(scale.symbolic_ends)
    ]
    for _ in range(4 * scale.symbolic_ends):
        size = int(rng.integers(0, scale.ultra_radius + 1))
        points.append(Vertex(InfiniteWord.from_letters(random_letters(rng, alphabet, size), 1)))
    return points


def ultrametric(scale: Scale, seed: int) -> SuiteResult:
    """Strong triangle inequality, d <= 1 and d(x, y) = 0 iff x = y on F(a, b) and its ends."""
    rng = suite_rng(seed, "ultrametric")
    points = _sample_points(rng, scale)
    bad = 0
    first_bad = ""
    for _ in range(scale.triples):
        x, y, z = (points[int(rng.integers(len(points)))] for _ in range(3))
        dxy, dyz, dxz = d_ultra(x, y), d_ultra(y, z), d_ultra(x, z)
        top = max(dxy, dyz)
        problems: list[str] = []
        if dxz > top + ULP_SLACK * math.ulp(top):
            problems.append("strong triangle")
        if max(dxy, dyz, dxz) > 1.0:
            problems.append("diameter")
        if (dxy == 0.0) != same_point(x, y) or d_ultra(x, x) != 0.0:
            problems.append("identity")
        if problems:
            bad += 1
            first_bad = first_bad or f"{problems} on ({x}, {y}, {z})"
    return SuiteResult("ultrametric", bad == 0, scale.triples, bad, first_bad or "ultrametric axioms hold")


def _dbar_points(rng: np.random.Generator, ws: Workspace, ball: list[GroupElement]) -> list[Point]:
    """Ball vertices, midpoints of finite words, vertices inside periodic rows, and ends."""
    points: list[Point] = [Vertex(g.word) for g in ball]
    for g in ball[:: max(1, len(ball) // 50)]:
        if g.word.length.height == 0 and not g.word.is_empty:
            cut = g.word.length.coords[0] // 2
            points.append(Vertex(prefix(g.word, ZnVec.first(cut, 2))))
    for g in ball:
        head = g.word.blocks[0] if g.word.blocks else None
        if head is None or head.kind is not BlockKind.PERIODIC or head.extent.height < 2:
            continue
        row = int(rng.integers(1, head.extent.height))
        points.append(Vertex(prefix(g.word, ZnVec((int(rng.integers(-3, 4)), row)))))
    ends = list(ws.ends.values())
    shifts = [g for g in ball if g.word.length.height == 0 and not g.word.is_empty]
    for _ in range(4):
        g = shifts[int(rng.integers(len(shifts)))]
        ends.append(act_on_point(g.word, ends[int(rng.integers(len(ends)))]))
    return points + ends


def dbar_axioms(scale: Scale, seed: int) -> SuiteResult:
    """Symmetry, triangle inequality and the diameter bound of dbar on explored vertices and ends."""
    rng = suite_rng(seed, "dbar_axioms")
    ws = workspace("not_min")
    tree = TreeOfTrees.explore(ws.group, scale.tree_depth)
    ball = ws.group.ball_enumerate(scale.tree_depth)
    points = _dbar_points(rng, ws, ball)
    bound = diameter_bound(ws.n)
    bad = 0
    first_bad = ""
    for _ in range(scale.triples):
        x, y, z = (points[int(rng.integers(len(points)))] for _ in range(3))
        dxy, dyx, dyz, dxz = dbar(x, y, tree), dbar(y, x, tree), dbar(y, z, tree), dbar(x, z, tree)
        problems: list[str] = []
        if abs(dxy - dyx) > RELATIVE_TOLERANCE * max(dxy, dyx, 1e-300):
            problems.append("symmetry")
        if dxz > (dxy + dyz) * (1 + RELATIVE_TOLERANCE):
            problems.append("triangle")
        if max(dxy, dyz, dxz) > bound:
            problems.append("diameter")
        if (dxy == 0.0) != same_point(x, y):
            problems.append("identity")
        if problems:
            bad += 1
            first_bad = first_bad or f"{problems} on ({x}, {y}, {z})"
    detail = first_bad or f"metric axioms hold over {len(tree.classes())} classes, diameter <= {bound:g}"
    return SuiteResult("dbar_axioms", bad == 0, scale.triples, bad, detail)
