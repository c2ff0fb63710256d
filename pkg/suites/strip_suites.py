"""
Strip suites: exact axis counts on F(a, b) and polynomial growth on the Z^2 group.
"""

from __future__ import annotations

import numpy as np

from algebra.grammar import parse_word
from boundary.ends import BoundaryPoint, same_end, symbolic_end
from groups.group import Group
from suites.base import Scale, SuiteResult, suite_rng, workspace
from utils.errors import BoundaryError
from walks.strips import strip_count

SLOPE_SLACK = 0.3
TAILS = ("(a)^(0,5)", "(a^-1)^(0,5)", "b", "b^-1")
PAIRS = 3
CRITERION_FROM = 4


def axis_strip(scale: Scale, seed: int) -> SuiteResult:
    """|S(a^-∞, a^+∞) ∩ B(k)| = 2k + 1 on F(a, b)."""
    ws = workspace("free_ab")
    counts = strip_count(ws.group, ws.ends["a_minus"], ws.ends["a_plus"], scale.axis_kmax).counts()
    expected = [2 * k + 1 for k in range(1, scale.axis_kmax + 1)]
    bad = sum(1 for c, e in zip(counts, expected) if c != e)
    return SuiteResult("axis_strip", bad == 0, len(counts), bad, f"counts {counts}")


def _end_pairs(rng: np.random.Generator, count: int) -> list[tuple[BoundaryPoint, BoundaryPoint]]:
    """`count` end pairs spanning distinct lines, starting with the axis of u5."""
    ws = workspace("not_min")
    bases = [g.word for g in ws.group.ball_enumerate(1)]
    tails = [parse_word(t, ws.n, ws.config.alphabet) for t in TAILS]
    pairs: list[tuple[BoundaryPoint, BoundaryPoint]] = [(ws.ends["u_minus"], ws.ends["u_plus"])]
    while len(pairs) < count:
        ends = []
        for _ in range(2):
            try:
                ends.append(
                    symbolic_end(bases[int(rng.integers(len(bases)))], tails[int(rng.integers(len(tails)))])
                )
            except BoundaryError:
                break
        if len(ends) == 2 and not same_end(*ends) and not any(_same_line(ends, p) for p in pairs):
            pairs.append((ends[0], ends[1]))
    return pairs


def _same_line(ends: list[BoundaryPoint], pair: tuple[BoundaryPoint, BoundaryPoint]) -> bool:
    a, b = ends
    p, q = pair
    return (same_end(a, p) and same_end(b, q)) or (same_end(a, q) and same_end(b, p))


def criterion_window(group: Group) -> int:
    """First k of the trend fit: the largest generator ℏ, where the filtered count jumps."""
    return max(CRITERION_FROM, max(w.length.height for w in group.generator_words))


def strip_growth(scale: Scale, seed: int) -> SuiteResult:
    """Strips of the Z^2 group grow at most like k^(n + 0.3); the ℏ-filtered
    criterion (1/k) log count trends downwards."""
    rng = suite_rng(seed, "strip_growth")
    ws = workspace("not_min")
    limit = ws.n + SLOPE_SLACK
    start = criterion_window(ws.group)
    bad = 0
    slopes: list[float] = []
    notes: list[str] = []
    for a, b in _end_pairs(rng, PAIRS):
        result = strip_count(ws.group, a, b, scale.strip_kmax)
        slope = result.slope
        slopes.append(slope)
        tail = [r for r in result.rows if r.k >= start and r.hbar_count > 0]
        trend = float("nan")
        if len(tail) >= 2:
            ks = np.array([r.k for r in tail], dtype=np.float64)
            crit = np.array([np.log(r.hbar_count) / r.k for r in tail])
            trend = float(np.polyfit(ks, crit, 1)[0])
        if slope > limit or not trend < 0:
            bad += 1
            notes.append(f"({a}, {b}): slope {slope:.3f}, trend {trend:.3g}")
    detail = "; ".join(notes) if notes else f"slopes {', '.join(f'{s:.3f}' for s in slopes)} <= {limit:g}"
    return SuiteResult("strip_growth", bad == 0, len(slopes), bad, detail, {"max_slope": max(slopes)})

