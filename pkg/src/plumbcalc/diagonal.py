"""Rooted partial diagonalisation of the tree's quadratic form,
negative-definiteness testing, de-rationalisers, edge splitting, and the
surgery augmentation that extends a marked tree by a continued-fraction
chain.

The diagonalisation eliminates vertices from the leaves toward a chosen
root: an eliminated vertex contributes its current rational diagonal entry
and pushes -1/entry onto its parent.  The multiset of entries depends on
the root, but their product is always the determinant, and the sign
pattern decides definiteness by congruence.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .arith import ArithmeticDomainError, hj_expand
from .graph import GraphError, PlumbingGraph, UnknownVertexError


class DegenerateFormError(GraphError):
    """An intermediate diagonal entry vanished before elimination."""

    def __init__(self, vertex: str):
        self.vertex = vertex
        super().__init__(f"diagonal entry at vertex {vertex!r} is zero")


class NotNegativeDefiniteError(GraphError):
    pass


@dataclass(frozen=True)
class DiagonalForm:
    """Diagonal of a matrix congruent to the intersection form.

    ``entries`` maps each vertex to its rational diagonal entry;
    ``elimination_order`` runs from the deepest vertices toward the root,
    which comes last.  The product of the entries is the determinant.
    """

    root: str
    entries: dict[str, Fraction]
    elimination_order: tuple[str, ...]


@dataclass(frozen=True)
class MarkedGraph:
    """A plumbing tree with a distinguished boundary vertex."""

    graph: PlumbingGraph
    mark: str

    def __post_init__(self):
        if self.mark not in self.graph:
            raise UnknownVertexError(f"mark {self.mark!r} not in graph")


def rooted_diagonalize(g: PlumbingGraph, root: str) -> DiagonalForm:
    """Partially diagonalise the intersection form toward ``root``.

    Vertices are processed by decreasing depth (ties in declaration
    order), so every vertex is eliminated only after all its children.
    Raises DegenerateFormError when an entry is zero before elimination.
    """
    if root not in g:
        raise UnknownVertexError(f"unknown root {root!r}")
    depth = {root: 0}
    parent: dict[str, str] = {}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if v not in depth:
                depth[v] = depth[u] + 1
                parent[v] = u
                queue.append(v)
    order = tuple(sorted(g.ids, key=lambda v: (-depth[v], g.index(v))))
    entries = {v: Fraction(w) for v, w in g.vertices}
    for v in order[:-1]:
        if entries[v] == 0:
            raise DegenerateFormError(v)
        entries[parent[v]] -= 1 / entries[v]
    if entries[root] == 0:
        raise DegenerateFormError(root)
    return DiagonalForm(root=root, entries=entries, elimination_order=order)


def is_negative_definite(g: PlumbingGraph) -> bool:
    """Definiteness by congruence: diagonalise anywhere and read signs.

    A zero intermediate entry means the form is degenerate, hence not
    negative definite.  The verdict is independent of the root.
    """
    try:
        form = rooted_diagonalize(g, g.ids[0])
    except DegenerateFormError:
        return False
    return all(e < 0 for e in form.entries.values())


def split(g: PlumbingGraph, edge: tuple[str, str]) -> tuple[MarkedGraph, MarkedGraph]:
    """Cut the tree along an edge v-w into two marked components."""
    v, w = edge
    if not g.has_edge(v, w):
        raise GraphError(f"no edge {v}-{w} in graph")

    def side(start: str, other: str) -> PlumbingGraph:
        seen = {start}
        frontier = [start]
        while frontier:
            u = frontier.pop()
            for x in g.neighbors(u):
                if {u, x} == {v, w}:
                    continue
                if x not in seen:
                    seen.add(x)
                    frontier.append(x)
        verts = [(u, wt) for u, wt in g.vertices if u in seen]
        edges = [e for e in g.edges if e[0] in seen and e[1] in seen]
        return PlumbingGraph.build(verts, edges)

    return MarkedGraph(side(v, w), v), MarkedGraph(side(w, v), w)


def derationalizer(mg: MarkedGraph) -> Fraction:
    """1/Delta at the mark, where Delta is the mark's entry after rooted
    diagonalisation.  Requires a negative-definite graph, which also rules
    out Delta = 0; for trees with all weights <= -2 the value lies in
    (-1, 0)."""
    if not is_negative_definite(mg.graph):
        raise NotNegativeDefiniteError(
            "de-rationaliser requires a negative-definite graph")
    delta = rooted_diagonalize(mg.graph, mg.mark).entries[mg.mark]
    assert delta != 0
    return 1 / delta


def _fresh_chain_ids(g: PlumbingGraph, mark: str, k: int) -> list[str]:
    stem = f"{mark}_s"
    while any(f"{stem}{i}" in g for i in range(1, k + 1)):
        stem += "_"
    return [f"{stem}{i}" for i in range(1, k + 1)]


def surger(mg: MarkedGraph, r) -> PlumbingGraph:
    """Attach the continued-fraction chain of slope ``r`` at the mark.

    The chain weights are the Hirzebruch-Jung expansion of r, first chain
    vertex adjacent to the mark.  The result is not minimalized; callers
    compose with minimalize when the expansion starts with -1 entries.
    """
    r = Fraction(r)
    if r == 0:
        raise ArithmeticDomainError(
            "slope 0 does not yield a plumbing tree here")
    chain = hj_expand(r)
    ids = _fresh_chain_ids(mg.graph, mg.mark, len(chain))
    vertices = list(mg.graph.vertices) + list(zip(ids, chain))
    edges = list(mg.graph.edges)
    prev = mg.mark
    for vid in ids:
        edges.append((prev, vid) if prev < vid else (vid, prev))
        prev = vid
    return PlumbingGraph.build(vertices, edges)
