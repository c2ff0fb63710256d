"""
Group-tree suites: Lyndon axioms, equivariance of labels and the ℏ seminorm.
"""

from __future__ import annotations

import numpy as np

from algebra.words import c_len, prefix
from algebra.zn import ZnVec
from groups.group import GroupElement, check_lyndon_axioms
from groups.tree import Edge, Vertex, act, act_edge, dist, hbar_pair, sigma
from suites.base import Scale, SuiteResult, random_position, suite_rng, workspace
from walks.strips import seminorm_comparison


def _pick(rng: np.random.Generator, ball: list[GroupElement]) -> GroupElement:
    return ball[int(rng.integers(len(ball)))]


def _random_vertex(rng: np.random.Generator, g: GroupElement) -> Vertex:
    if g.word.is_empty or rng.random() < 0.25:
        return Vertex(g.word)
    return Vertex(prefix(g.word, random_position(rng, g.word)))


def lyndon_axioms(scale: Scale, seed: int) -> SuiteResult:
    """Length-function axioms and subadditivity on triples from a Z^2 ball."""
    rng = suite_rng(seed, "lyndon_axioms")
    ball = workspace("not_min").group.ball_enumerate(scale.lyndon_radius)
    bad = 0
    first_bad = ""
    for _ in range(scale.triples):
        x, y, z = (_pick(rng, ball) for _ in range(3))
        violated = check_lyndon_axioms(x, y, z)
        if violated:
            bad += 1
            first_bad = first_bad or f"{violated} on ({x}, {y}, {z})"
    return SuiteResult(
        "lyndon_axioms", bad == 0, scale.triples, bad, first_bad or f"axioms hold on a ball of {len(ball)}"
    )


def equivariance(scale: Scale, seed: int) -> SuiteResult:
    """σ(g·e) = σ(e), isometry of the action and ℏ additivity along geodesics."""
    rng = suite_rng(seed, "equivariance")
    ball = workspace("not_min").group.ball_enumerate(scale.lyndon_radius)
    nonempty = [g for g in ball if not g.word.is_empty]
    unit = ZnVec.unit(2)
    bad = 0
    first_bad = ""
    for _ in range(scale.triples):
        g, h = _pick(rng, ball), _pick(rng, nonempty)
        e = Edge(Vertex(prefix(h.word, h.length - unit)), Vertex(h.word))
        if rng.random() < 0.5:
            e = e.inverse()
        u, v = _random_vertex(rng, _pick(rng, ball)), _random_vertex(rng, _pick(rng, ball))
        problems: list[str] = []
        if sigma(act_edge(g, e)) != sigma(e):
            problems.append("label")
        if dist(act(g, u), act(g, v)) != dist(u, v):
            problems.append("isometry")
        if not v.is_base:
            meet = c_len(u.prefix, v.prefix)
            cut = max(meet, random_position(rng, v.prefix), key=ZnVec.key)
            p = Vertex(prefix(v.prefix, cut))
            if hbar_pair(u, p) + hbar_pair(p, v) != hbar_pair(u, v):
                problems.append("hbar additivity")
        if problems:
            bad += 1
            first_bad = first_bad or f"{problems} for g={g}, e=({e.origin}, {e.terminus}), u={u}, v={v}"
    return SuiteResult("equivariance", bad == 0, scale.triples, bad, first_bad or "action preserves labels and ℏ")


def seminorm(scale: Scale, seed: int) -> SuiteResult:
    """ℏ_n(g) <= k0 |g| over a word-metric ball."""
    group = workspace("not_min").group
    offenders = seminorm_comparison(group, scale.lyndon_radius)
    checked = len(group.ball_enumerate(scale.lyndon_radius))
    detail = f"first offender {offenders[0]}" if offenders else "ℏ is dominated by the word length"
    return SuiteResult("seminorm", not offenders, checked, len(offenders), detail)
