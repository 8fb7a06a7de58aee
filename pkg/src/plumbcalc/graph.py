"""Weighted plumbing trees: parsing, validation, vertex classification,
the intersection form, and blow-down minimalization.

A plumbing tree is a finite tree whose vertices carry integer Euler-number
weights.  Vertex order is declaration order throughout; all verdict-level
computations elsewhere in the package are order-invariant, but matrices,
traces and serializations are pinned to this order so that outputs are
reproducible bit for bit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property


class GraphError(Exception):
    """Base class for all plumbing-graph errors."""


class ParseError(GraphError):
    """A graph description failed validation.

    ``line`` is the 1-based input line at fault, when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphSyntaxError(ParseError):
    pass


class DuplicateVertexError(ParseError):
    pass


class UnknownVertexError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class CycleError(ParseError):
    pass


class DisconnectedError(ParseError):
    pass


class BlowDownError(GraphError):
    """Blow-down attempted at a vertex that does not admit one."""


class EmptyGraphError(GraphError):
    """Reduction consumed the whole graph."""


_ID_RE = re.compile(r"[A-Za-z0-9_]+\Z")
_INT_RE = re.compile(r"[+-]?[0-9]+\Z")


@dataclass(frozen=True)
class PlumbingGraph:
    """Immutable weighted tree.

    ``vertices`` is a tuple of ``(id, weight)`` pairs in declaration order;
    ``edges`` is a frozenset of id pairs, each stored sorted
    lexicographically.  Use :meth:`build` (or :func:`parse_graph`), which
    validate the tree invariants; the raw constructor trusts its input.
    """

    vertices: tuple[tuple[str, int], ...]
    edges: frozenset[tuple[str, str]]

    @classmethod
    def build(cls, vertices, edges) -> "PlumbingGraph":
        """Validate and construct; raises a ParseError subclass on bad data."""
        vertices = tuple((str(v), int(w)) for v, w in vertices)
        norm_edges = []
        for a, b in edges:
            if a == b:
                raise CycleError(f"self-loop at vertex {a!r}")
            norm_edges.append((a, b) if a < b else (b, a))
        g = cls(vertices, frozenset(norm_edges))
        if len(norm_edges) != len(g.edges):
            seen = set()
            for e in norm_edges:
                if e in seen:
                    raise DuplicateEdgeError(f"duplicate edge {e[0]}-{e[1]}")
                seen.add(e)
        g._validate()
        return g

    def _validate(self) -> None:
        if not self.vertices:
            raise EmptyGraphError("a plumbing graph needs at least one vertex")
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            seen = set()
            for v in ids:
                if v in seen:
                    raise DuplicateVertexError(f"duplicate vertex id {v!r}")
                seen.add(v)
        idset = set(ids)
        for a, b in self.edges:
            for v in (a, b):
                if v not in idset:
                    raise UnknownVertexError(f"edge references unknown id {v!r}")
        # Tree check: |E| = |V| - 1 plus connectivity rules out cycles.
        if len(self.edges) >= len(ids):
            raise CycleError("edge set contains a cycle")
        if len(self.edges) < len(ids) - 1:
            raise DisconnectedError("graph is not connected")
        seen = {ids[0]}
        frontier = [ids[0]]
        while frontier:
            v = frontier.pop()
            for u in self.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        if len(seen) != len(ids):
            raise DisconnectedError("graph is not connected")

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.vertices)

    @cached_property
    def _weights(self) -> dict[str, int]:
        return dict(self.vertices)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, (v, _) in enumerate(self.vertices)}

    @cached_property
    def _adjacency(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, list[str]] = {v: [] for v, _ in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {v: tuple(sorted(ns, key=self._index.__getitem__))
                for v, ns in adj.items()}

    def weight(self, v: str) -> int:
        try:
            return self._weights[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex id {v!r}") from None

    def neighbors(self, v: str) -> tuple[str, ...]:
        """Neighbours of v, ordered by their declaration index."""
        try:
            return self._adjacency[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex id {v!r}") from None

    def valence(self, v: str) -> int:
        return len(self.neighbors(v))

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex id {v!r}") from None

    def has_edge(self, a: str, b: str) -> bool:
        return ((a, b) if a < b else (b, a)) in self.edges

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: str) -> bool:
        return v in self._weights


@dataclass(frozen=True)
class VertexProfile:
    """Classification data of a single vertex.

    The deficiency is d(v) = n(v) - |w(v)|.  Shape names the valence class
    (isolated/leaf/bamboo/node); quality refines deficiency into the three
    disjoint buckets good (d <= 0), bad (d == 1) and very-bad (d >= 2).
    """

    id: str
    weight: int
    valence: int
    deficiency: int
    shape: str
    quality: str


def parse_graph(text: str) -> PlumbingGraph:
    """Parse the line-oriented graph file format.

    ``# ...`` and blank lines are ignored; ``vertex <id> <weight>`` declares
    a vertex, ``edge <a> <b>`` an edge.  Edge lines may precede the vertex
    declarations they refer to.
    """
    vertices: list[tuple[str, int]] = []
    declared: set[str] = set()
    edge_decls: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) != 3:
                raise GraphSyntaxError("expected: vertex <id> <weight>", lineno)
            vid, wtext = parts[1], parts[2]
            if not _ID_RE.match(vid):
                raise GraphSyntaxError(f"bad vertex id {vid!r}", lineno)
            if not _INT_RE.match(wtext):
                raise GraphSyntaxError(f"bad weight {wtext!r}", lineno)
            if vid in declared:
                raise DuplicateVertexError(f"duplicate vertex id {vid!r}", lineno)
            declared.add(vid)
            vertices.append((vid, int(wtext)))
        elif parts[0] == "edge":
            if len(parts) != 3:
                raise GraphSyntaxError("expected: edge <id> <id>", lineno)
            a, b = parts[1], parts[2]
            for v in (a, b):
                if not _ID_RE.match(v):
                    raise GraphSyntaxError(f"bad vertex id {v!r}", lineno)
            if a == b:
                raise CycleError(f"self-loop at vertex {a!r}", lineno)
            edge_decls.append((a, b, lineno))
        else:
            raise GraphSyntaxError(f"unknown directive {parts[0]!r}", lineno)

    if not vertices:
        raise GraphSyntaxError("no vertices declared")
    edges = []
    seen_edges = set()
    for a, b, lineno in edge_decls:
        for v in (a, b):
            if v not in declared:
                raise UnknownVertexError(f"edge references unknown id {v!r}", lineno)
        key = (a, b) if a < b else (b, a)
        if key in seen_edges:
            raise DuplicateEdgeError(f"duplicate edge {a}-{b}", lineno)
        seen_edges.add(key)
        edges.append(key)

    # Union-find to attribute a line number to the edge that closes a cycle.
    parent = {v: v for v in declared}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b, lineno in edge_decls:
        ra, rb = find(a), find(b)
        if ra == rb:
            raise CycleError(f"edge {a}-{b} closes a cycle", lineno)
        parent[ra] = rb
    if len({find(v) for v in declared}) != 1:
        raise DisconnectedError("graph is not connected")

    return PlumbingGraph.build(vertices, edges)


def serialize(g: PlumbingGraph) -> str:
    """Canonical text form: vertices in declaration order, then edges
    sorted lexicographically.  Stable bit for bit."""
    lines = [f"vertex {v} {w}" for v, w in g.vertices]
    lines += [f"edge {a} {b}" for a, b in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def intersection_matrix(g: PlumbingGraph) -> list[list[int]]:
    """Symmetric integer matrix: weights on the diagonal, 1 at edges."""
    n = len(g)
    m = [[0] * n for _ in range(n)]
    for i, (_, w) in enumerate(g.vertices):
        m[i][i] = w
    for a, b in g.edges:
        i, j = g.index(a), g.index(b)
        m[i][j] = m[j][i] = 1
    return m


def deficiency(g: PlumbingGraph, v: str) -> int:
    return g.valence(v) - abs(g.weight(v))


def vertex_profile(g: PlumbingGraph, v: str) -> VertexProfile:
    w = g.weight(v)
    n = g.valence(v)
    d = n - abs(w)
    shape = {0: "isolated", 1: "leaf", 2: "bamboo"}.get(n, "node")
    if d <= 0:
        quality = "good"
    elif d == 1:
        quality = "bad"
    else:
        quality = "very-bad"
    return VertexProfile(id=v, weight=w, valence=n, deficiency=d,
                         shape=shape, quality=quality)


def blow_down_candidates(g: PlumbingGraph) -> tuple[str, ...]:
    """Vertices currently eligible for a blow-down, in declaration order."""
    return tuple(v for v in g.ids
                 if g.weight(v) in (-1, 1) and 1 <= g.valence(v) <= 2)


def is_minimal(g: PlumbingGraph) -> bool:
    """True iff no vertex of valence one or two carries weight -1.

    Only the -1 convention enters minimality; +1 vertices still blow down.
    Isolated vertices never count.
    """
    return not any(g.weight(v) == -1 and g.valence(v) in (1, 2)
                   for v in g.ids)


def blow_down_once(g: PlumbingGraph, v: str) -> PlumbingGraph:
    """Remove a weight +-1 vertex of valence one or two.

    Each former neighbour's weight changes by minus the removed weight; the
    two neighbours of a bamboo become joined by an edge.
    """
    eps = g.weight(v)
    if eps not in (-1, 1):
        raise BlowDownError(f"vertex {v!r} has weight {eps}, not +-1")
    nbrs = g.neighbors(v)
    if len(nbrs) == 0:
        raise BlowDownError(f"vertex {v!r} is isolated; no blow-down defined")
    if len(nbrs) > 2:
        raise BlowDownError(f"vertex {v!r} has valence {len(nbrs)} > 2")
    new_vertices = [(u, w - eps if u in nbrs else w)
                    for u, w in g.vertices if u != v]
    new_edges = [e for e in g.edges if v not in e]
    if len(nbrs) == 2:
        a, b = nbrs
        # In a tree the two neighbours of v lie in different components of
        # g - v, so this edge cannot already exist.
        assert not g.has_edge(a, b)
        new_edges.append((a, b) if a < b else (b, a))
    return PlumbingGraph.build(new_vertices, new_edges)


def minimalize(g: PlumbingGraph) -> PlumbingGraph:
    """Blow down eligible +-1 vertices (first in declaration order each
    round) until the graph is minimal.  |det| of the intersection form is
    preserved at every step."""
    while True:
        eligible = blow_down_candidates(g)
        if not eligible:
            if not g.vertices:
                raise EmptyGraphError("reduction consumed the whole graph")
            return g
        g = blow_down_once(g, eligible[0])
