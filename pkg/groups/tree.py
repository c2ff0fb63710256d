"""
The universal Z^n-tree of a group: vertices are canonical prefixes.

A vertex <α, g> is identified with the prefix word g_α, the base point is
the empty prefix, and g acts by g * prefix. Distances, medians, labels,
cones and axes are all computed from com on prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass

from algebra.letters import Letter
from algebra.words import (
    InfiniteWord,
    c_len,
    com,
    cyclic_decomposition,
    invert,
    last_letter,
    mult,
    power,
    prefix,
)
from algebra.zn import ZnVec
from groups.group import GroupElement
from utils.errors import (
    DomainError,
    MalformedWorkspaceError,
    NoCommonMaxError,
    PresentationInvalidError,
)


@dataclass(frozen=True)
class Vertex:
    prefix: InfiniteWord

    @classmethod
    def base(cls, n: int) -> Vertex:
        return cls(InfiniteWord.empty(n))

    @property
    def length(self) -> ZnVec:
        return self.prefix.length

    @property
    def is_base(self) -> bool:
        return self.prefix.is_empty

    def __str__(self) -> str:
        return str(self.prefix)


@dataclass(frozen=True)
class Edge:
    origin: Vertex
    terminus: Vertex

    def __post_init__(self) -> None:
        if dist(self.origin, self.terminus) != ZnVec.unit(self.origin.prefix.n):
            raise DomainError(f"({self.origin}, {self.terminus}) is not an edge")

    @property
    def positive(self) -> bool:
        """True when the edge points away from the base point."""
        return self.terminus.length > self.origin.length

    def inverse(self) -> Edge:
        return Edge(self.terminus, self.origin)


def vertex_of(g: GroupElement, alpha: ZnVec) -> Vertex:
    """The vertex <alpha, g>, i.e. the prefix g_alpha."""
    return Vertex(prefix(g.word, alpha))


def act(g: GroupElement, v: Vertex) -> Vertex:
    try:
        return Vertex(mult(g.word, v.prefix))
    except NoCommonMaxError as e:
        raise PresentationInvalidError(str(g), str(v), str(e)) from e


def act_edge(g: GroupElement, e: Edge) -> Edge:
    return Edge(act(g, e.origin), act(g, e.terminus))


def _meet(u: Vertex, v: Vertex) -> ZnVec:
    try:
        return c_len(u.prefix, v.prefix)
    except NoCommonMaxError as e:
        raise MalformedWorkspaceError(f"vertices {u} and {v} have no meet: {e}") from e


def dist(u: Vertex, v: Vertex) -> ZnVec:
    return u.length + v.length - _meet(u, v) * 2


def median(x: Vertex, y: Vertex, z: Vertex) -> Vertex:
    """Y(x, y, z): of the three pairwise meets, the one farthest from the base."""
    best = max(
        ((x, y), (x, z), (y, z)), key=lambda pair: _meet(*pair).key()
    )
    return Vertex(com(best[0].prefix, best[1].prefix))


def edge_label(v: Vertex) -> Letter:
    """ξ(v): the last letter of the prefix."""
    if v.is_base:
        raise DomainError("the base vertex has no label")
    return last_letter(v.prefix)


def sigma(e: Edge) -> Letter:
    """Label of an oriented edge; σ(f) = σ(f^-1)^-1 on negative edges."""
    if e.positive:
        return edge_label(e.terminus)
    return edge_label(e.origin).inverse()


def path_label(u: Vertex, v: Vertex) -> InfiniteWord:
    """Word read along the geodesic from u to v."""
    return mult(invert(u.prefix), v.prefix)


def hbar(v: Vertex) -> int:
    return v.length.height


def hbar_pair(a: Vertex, b: Vertex) -> int:
    return dist(a, b).height


def in_cone(x: Vertex, v1: Vertex, v2: Vertex) -> bool:
    """True iff v2 lies on [v1, x]."""
    return median(v1, v2, x) == v2


def in_axis(g: GroupElement, p: Vertex) -> bool:
    """[g^-1 p, p] ∩ [p, g p] = {p}."""
    g_inv = GroupElement(invert(g.word))
    return median(act(g_inv, p), p, act(g, p)) == p


def axis_segment(g: GroupElement, radius: int) -> list[Vertex]:
    """Vertices c^-1 * u^k (|k| <= radius) of the axis of g = c^-1 ∘ u ∘ c.

    When u is finite the vertices between consecutive translates are listed
    too. Every returned vertex is checked against the axis definition.
    """
    if g.word.is_empty:
        raise DomainError("ε has no axis")
    c, u = cyclic_decomposition(g.word)
    c_inv = invert(c)
    points: list[Vertex] = []
    for k in range(-radius, radius + 1):
        anchor = mult(c_inv, power(u, k))
        points.append(Vertex(anchor))
        if k < radius and u.is_finite:
            steps = u.length.coords[0]
            for j in range(1, steps):
                points.append(Vertex(mult(anchor, prefix(u, ZnVec.first(j, u.n)))))
    for p in points:
        if not in_axis(g, p):
            raise DomainError(f"{p} failed the axis membership check for {g}")
    return points
