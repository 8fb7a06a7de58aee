"""Structural classification of plumbing trees.

Three structural conditions drive the verdicts: a very bad vertex
(deficiency at least 2), a proper all-(-2) E8 subtree, and insulation.
The first two predict a left-orderable fundamental group and a non-L-space;
insulation predicts the opposite pair.  Everything else is reported as
undetermined.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .diagonal import is_negative_definite
from .graph import PlumbingGraph, deficiency, is_minimal, minimalize
from .laufer import LATTICE_L_SPACE, laufer_run

LO_NOT_LSPACE = "LO_not_Lspace"
NOTLO_LSPACE = "notLO_Lspace"
UNDETERMINED = "undetermined"
SKIPPED_NOT_ND = "skipped_not_ND"

E8_ROLES = ("X", "x1", "x2", "x3", "x4", "z1", "y1", "y2")
# Leg lengths of the E8 star off the trivalent center.
_E8_LEGS = (("x1", "x2", "x3", "x4"), ("z1",), ("y1", "y2"))

ENUMERATION_CAP = 9


@dataclass(frozen=True)
class ClassificationReport:
    negative_definite: bool
    minimal: bool
    very_bad_witness: str | None
    proper_e8_witness: dict[str, str] | None
    insulated: bool
    insulation_violation: tuple[str, str] | None
    laufer_verdict: str
    prediction: str
    minimalized: PlumbingGraph | None = None  # set when the input was not


def find_very_bad(g: PlumbingGraph) -> str | None:
    """First vertex (declaration order) with deficiency >= 2, if any."""
    for v in g.ids:
        if deficiency(g, v) >= 2:
            return v
    return None


def _extend_leg(g: PlumbingGraph, start: str, first: str,
                length: int,
                blocked: frozenset[str]) -> Iterator[tuple[str, ...]]:
    """Simple paths of `length` vertices leaving `start` through `first`,
    all of weight -2 and avoiding `blocked`."""
    if g.weight(first) != -2 or first in blocked:
        return
    if length == 1:
        yield (first,)
        return
    for nxt in g.neighbors(first):
        if nxt == start:
            continue
        for tail in _extend_leg(g, first, nxt, length - 1,
                                blocked | {first}):
            yield (first,) + tail


def find_proper_e8(g: PlumbingGraph) -> dict[str, str] | None:
    """Role labels of a proper E8 subtree, or None.

    The witness is an 8-vertex induced subtree: a weight -2 center with
    three disjoint all-(-2) legs of 4, 1 and 2 vertices.  In a tree the
    induced edges of such a vertex set are automatically exactly the star
    edges.  Properness means g itself is strictly larger.
    """
    if len(g) <= 8:
        return None
    for center in g.ids:
        if g.weight(center) != -2 or g.valence(center) < 3:
            continue
        for legs in _assign_legs(g, center, 0, frozenset({center})):
            witness = {"X": center}
            for names, path in zip(_E8_LEGS, legs):
                for name, v in zip(names, path):
                    witness[name] = v
            return witness
    return None


def _assign_legs(g: PlumbingGraph, center: str, leg_idx: int,
                 used: frozenset[str]) \
        -> Iterator[tuple[tuple[str, ...], ...]]:
    if leg_idx == len(_E8_LEGS):
        yield ()
        return
    length = len(_E8_LEGS[leg_idx])
    for first in g.neighbors(center):
        for path in _extend_leg(g, center, first, length, used):
            for rest in _assign_legs(g, center, leg_idx + 1,
                                     used | set(path)):
                yield (path,) + rest


def is_insulated(g: PlumbingGraph) -> tuple[bool, tuple[str, str] | None]:
    """Insulation check with the first violation in declaration order.

    Insulated means: no very bad vertex; every good vertex v satisfies
    d(v) + K(v) <= 0 where K(v) counts its bad neighbors; and no two bad
    vertices are adjacent.
    """
    d = {v: deficiency(g, v) for v in g.ids}
    for v in g.ids:
        if d[v] >= 2:
            return False, (v, "has_very_bad")
    for v in g.ids:
        if d[v] <= 0:
            k_incl = sum(1 for u in g.neighbors(v) if d[u] >= 1)
            k_strict = sum(1 for u in g.neighbors(v) if d[u] == 1)
            # no very bad vertex survives to here, so the inclusive and
            # strict readings of "bad neighbor" must agree
            assert k_incl == k_strict
            if d[v] + k_incl > 0:
                return False, (v, "good_vertex_dK_positive")
        else:
            for u in g.neighbors(v):
                if d[u] >= 1:
                    return False, (v, "adjacent_bad_pair")
    return True, None


def classify(g: PlumbingGraph) -> ClassificationReport:
    """Full structural report with the L-space verdict and prediction.

    Non-minimal inputs are blown down first and the reduced graph is the
    one classified; the structural criteria assume minimal form.  Graphs
    that are not negative definite skip the Laufer run and stay
    undetermined.
    """
    minimal = is_minimal(g)
    reduced = None
    target = g
    if not minimal:
        target = minimalize(g)
        reduced = target

    nd = is_negative_definite(target)
    very_bad = find_very_bad(target)
    e8 = find_proper_e8(target)
    insulated, violation = is_insulated(target)

    if nd:
        verdict = laufer_run(target).verdict
    else:
        verdict = SKIPPED_NOT_ND

    if nd and (very_bad is not None or e8 is not None):
        prediction = LO_NOT_LSPACE
    elif nd and insulated:
        prediction = NOTLO_LSPACE
    else:
        prediction = UNDETERMINED

    if nd and insulated:
        assert verdict == LATTICE_L_SPACE, \
            "insulated graphs are lattice L-spaces"

    return ClassificationReport(
        negative_definite=nd,
        minimal=minimal,
        very_bad_witness=very_bad,
        proper_e8_witness=e8,
        insulated=insulated,
        insulation_violation=violation,
        laufer_verdict=verdict,
        prediction=prediction,
        minimalized=reduced,
    )


def _ahu_code(adj: dict[str, tuple[str, ...]], weights: dict[str, int],
              root: str) -> str:
    def code(v: str, parent: str | None) -> str:
        subs = sorted(code(u, v) for u in adj[v] if u != parent)
        return "(" + str(weights[v]) + "|" + "".join(subs) + ")"
    return code(root, None)


def _centroids(adj: dict[str, tuple[str, ...]], ids: tuple[str, ...]) \
        -> list[str]:
    n = len(ids)
    sizes: dict[str, int] = {}
    best: dict[str, int] = {}
    seen: list[tuple[str, str | None]] = [(ids[0], None)]
    i = 0
    while i < len(seen):
        v, parent = seen[i]
        i += 1
        for u in adj[v]:
            if u != parent:
                seen.append((u, v))
    for v, parent in reversed(seen):
        sizes[v] = 1 + sum(sizes[u] for u in adj[v] if u != parent)
        best[v] = max([sizes[u] for u in adj[v] if u != parent] or [0])
    # re-root: component size above v is n - sizes[v]
    for v, parent in seen:
        if parent is not None:
            best[v] = max(best[v], n - sizes[v])
    m = min(best.values())
    return [v for v in ids if best[v] == m]


def canonical_code(g: PlumbingGraph) -> str:
    """Isomorphism-invariant encoding of the weighted tree."""
    adj = {v: g.neighbors(v) for v in g.ids}
    weights = dict(g.vertices)
    return min(_ahu_code(adj, weights, c) for c in _centroids(adj, g.ids))


def _tree_shapes(max_vertices: int) -> dict[int, list[tuple[tuple[int, int], ...]]]:
    """Unlabeled trees per size, as edge lists on vertices 0..n-1."""
    def shape_code(n: int, edges: tuple[tuple[int, int], ...]) -> str:
        adj = {i: tuple(j for e in edges for j in e if i in e and j != i)
               for i in range(n)}
        full = {str(i): tuple(str(j) for j in adj[i]) for i in range(n)}
        weights = {str(i): 0 for i in range(n)}
        cents = _centroids(full, tuple(str(i) for i in range(n)))
        return min(_ahu_code(full, weights, c) for c in cents)

    shapes: dict[int, list[tuple[tuple[int, int], ...]]] = {1: [()]}
    for n in range(2, max_vertices + 1):
        seen: set[str] = set()
        out: list[tuple[tuple[int, int], ...]] = []
        for prev in shapes[n - 1]:
            for attach in range(n - 1):
                edges = prev + ((attach, n - 1),)
                key = shape_code(n, edges)
                if key not in seen:
                    seen.add(key)
                    out.append(edges)
        shapes[n] = out
    return shapes


def enumerate_and_classify(max_vertices: int, weight_min: int,
                           weight_max: int,
                           cap: int = ENUMERATION_CAP) \
        -> Iterator[tuple[PlumbingGraph, ClassificationReport]]:
    """All negative-definite minimal trees up to isomorphism, classified.

    Covers every size from 1 to max_vertices and every weight assignment
    in [weight_min, weight_max], deduplicated up to weighted isomorphism,
    in a deterministic order (size, then canonical encoding).
    """
    if max_vertices > cap:
        raise ValueError(
            f"max_vertices {max_vertices} exceeds the cap {cap}")
    if weight_min > weight_max:
        raise ValueError("empty weight range")
    shapes = _tree_shapes(max_vertices)
    wrange = range(weight_min, weight_max + 1)
    for n in range(1, max_vertices + 1):
        batch: dict[str, PlumbingGraph] = {}
        seen: set[str] = set()
        for edges in shapes[n]:
            for ws in product(wrange, repeat=n):
                g = PlumbingGraph.build(
                    [(f"v{i}", w) for i, w in enumerate(ws)],
                    [(f"v{a}", f"v{b}") for a, b in edges])
                if not is_minimal(g):
                    continue
                key = canonical_code(g)
                if key in seen:
                    continue
                seen.add(key)
                if not is_negative_definite(g):
                    continue
                batch[key] = g
        for key in sorted(batch):
            g = batch[key]
            yield g, classify(g)
