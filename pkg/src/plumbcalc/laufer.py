"""Laufer's algorithm and the lattice L-space verdict.

Starting from z0 = sum of all basis vectors, the algorithm repeatedly adds
E_v at some vertex v with <z, E_v> > 0 until every pairing is nonpositive;
the limit z_min is Artin's minimal cycle and the graph is a lattice
cohomology L-space exactly when chi(z_min) = 1.  Along any run chi starts
at 1 and never increases, so a drop below 1 settles the verdict early.

Laufer's termination proof assumes a negative-definite form.  With the
early exit enabled we still run speculatively on indefinite forms, since a
chi drop (or convergence) reached within the step budget is conclusive as
computed; only a budget overrun is refused.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .diagonal import NotNegativeDefiniteError, is_negative_definite
from .graph import GraphError, PlumbingGraph

LatticeVector = Mapping[str, int]

LATTICE_L_SPACE = "lattice_L_space"
NOT_LATTICE_L_SPACE = "not_lattice_L_space"

TIE_BREAKS = ("first", "last", "max", "random")


class BoxTooSmallError(GraphError):
    """The brute-force search box did not pin down the minimal cycle."""


@dataclass(frozen=True)
class LauferStep:
    index: int
    chosen_vertex: str
    cycle_after: dict[str, int]
    chi_after: int


@dataclass(frozen=True)
class LauferTrace:
    steps: tuple[LauferStep, ...]
    terminal: str  # converged | chi_dropped_early_exit


@dataclass(frozen=True)
class LauferResult:
    z_min: dict[str, int] | None
    chi_min: int
    verdict: str
    n_steps: int
    trace: LauferTrace | None


def canonical_vector(g: PlumbingGraph) -> dict[str, int]:
    """Coefficients k_v = -w(v) - 2 of the canonical vector."""
    return {v: -w - 2 for v, w in g.vertices}


def pairing(g: PlumbingGraph, a: LatticeVector, b: LatticeVector) -> int:
    """The intersection pairing a^T G b; missing coefficients are zero."""
    s = 0
    for v, w in g.vertices:
        av = a.get(v, 0)
        if av:
            bv = b.get(v, 0)
            if bv:
                s += w * av * bv
    for u, v in g.edges:
        s += a.get(u, 0) * b.get(v, 0) + a.get(v, 0) * b.get(u, 0)
    return s


def chi(g: PlumbingGraph, l: LatticeVector) -> int:
    """The weight function chi(l) = -(<l, l> + K.l)/2.

    The canonical vector pairs with l through its coefficients (the
    adjunction values -w(v)-2), which is what makes chi(E_v) = 1 for every
    vertex and chi integer valued across the whole lattice.
    """
    q = pairing(g, l, l)
    k = sum((-w - 2) * l.get(v, 0) for v, w in g.vertices)
    total = q + k
    assert total % 2 == 0, "chi parity violated"
    return -total // 2


def _default_step_limit(g: PlumbingGraph) -> int:
    max_w = max(abs(w) for _, w in g.vertices)
    return 10 * len(g) * max(1, max_w) * 64


def laufer_run(g: PlumbingGraph,
               tie_break: str = "first",
               trace_wanted: bool = False,
               early_exit: bool = True,
               seed: int = 0,
               step_limit: int | None = None) -> LauferResult:
    """Run Laufer's algorithm and report the L-space verdict.

    Tie-break strategies: "first"/"last" by declaration order, "max" by
    largest pairing value, "random" seeded; the limit z_min is independent
    of the choice.  With ``early_exit`` the run stops as soon as chi drops
    below 1 (then z_min is None).  Non-negative-definite graphs are only
    accepted in early-exit mode, and only if the run settles within the
    step budget.
    """
    if tie_break not in TIE_BREAKS:
        raise ValueError(f"unknown tie-break {tie_break!r}")
    definite = is_negative_definite(g)
    if not definite and not early_exit:
        raise NotNegativeDefiniteError(
            "full runs require a negative-definite graph")
    limit = step_limit if step_limit is not None else _default_step_limit(g)
    rng = random.Random(seed)

    ids = g.ids
    z = {v: 1 for v in ids}
    # p[v] tracks <z, E_v>; at z0 this is w(v) + n(v).
    p = {v: g.weight(v) + g.valence(v) for v in ids}
    c = chi(g, z)
    assert c == 1, "chi(z0) must be 1"
    steps: list[LauferStep] = []
    n = 0
    while True:
        positive = [v for v in ids if p[v] > 0]
        if not positive:
            terminal = "converged"
            break
        if n >= limit:
            if definite:
                raise AssertionError(
                    "step limit exceeded on a negative-definite graph")
            raise NotNegativeDefiniteError(
                "iteration did not settle within the step budget on a "
                "non-negative-definite graph")
        if tie_break == "first":
            v = positive[0]
        elif tie_break == "last":
            v = positive[-1]
        elif tie_break == "max":
            v = max(positive, key=lambda u: p[u])
        else:
            v = rng.choice(positive)
        new_c = c - p[v] + 1
        assert new_c <= c, "chi must be non-increasing"
        z[v] += 1
        p[v] += g.weight(v)
        for u in g.neighbors(v):
            p[u] += 1
        n += 1
        c = new_c
        if trace_wanted:
            steps.append(LauferStep(n, v, dict(z), c))
        if early_exit and c < 1:
            trace = LauferTrace(tuple(steps), "chi_dropped_early_exit") \
                if trace_wanted else None
            return LauferResult(z_min=None, chi_min=c,
                                verdict=NOT_LATTICE_L_SPACE,
                                n_steps=n, trace=trace)
    verdict = LATTICE_L_SPACE if c == 1 else NOT_LATTICE_L_SPACE
    trace = LauferTrace(tuple(steps), terminal) if trace_wanted else None
    return LauferResult(z_min=z, chi_min=c, verdict=verdict,
                        n_steps=n, trace=trace)


def deficiency_iteration(g: PlumbingGraph,
                         step_limit: int | None = None) -> str:
    """The deficiency-relabelling form of the algorithm.

    Labels start at d(v); while some label is >= 1: a label >= 2 anywhere
    decides not-L-space, otherwise pick the first label-1 vertex, add its
    weight to its own label and 1 to each neighbour's.  All labels <= 0
    decides L-space.
    """
    definite = is_negative_definite(g)
    limit = step_limit if step_limit is not None else _default_step_limit(g)
    labels = {v: g.valence(v) - abs(g.weight(v)) for v in g.ids}
    n = 0
    while True:
        if any(d >= 2 for d in labels.values()):
            return NOT_LATTICE_L_SPACE
        ready = [v for v in g.ids if labels[v] == 1]
        if not ready:
            return LATTICE_L_SPACE
        if n >= limit:
            if definite:
                raise AssertionError(
                    "step limit exceeded on a negative-definite graph")
            raise NotNegativeDefiniteError(
                "iteration did not settle within the step budget on a "
                "non-negative-definite graph")
        v = ready[0]
        labels[v] += g.weight(v)
        for u in g.neighbors(v):
            labels[u] += 1
        n += 1


def min_cycle_bruteforce(g: PlumbingGraph, box_bound: int) -> dict[str, int]:
    """Exhaustive oracle for z_min over the box [1, box_bound]^N.

    Scans every vector in the box for <x, E_v> <= 0 at all vertices (with
    subtree pruning on rows that are already fully determined), takes the
    coordinatewise minimum of the candidates, and verifies that the
    minimum is itself a candidate.  Raises BoxTooSmallError when no
    candidate exists or the minimum is not attained.
    """
    ids = g.ids
    n = len(ids)
    idx = {v: i for i, v in enumerate(ids)}
    weights = [g.weight(v) for v in ids]
    nbr_idx = [[idx[u] for u in g.neighbors(v)] for v in ids]
    x = [0] * n
    best: list[int] | None = None

    def propagate(depth: int) -> list[int] | None:
        """Per-coordinate lower bounds below every candidate extending the
        assignment x[0..depth]; None when no candidate can extend it.

        Row v reads w(v)x_v + sum of neighbours <= 0, so with w(v) < 0 an
        unassigned x_v is at least ceil(sum of neighbour bounds / |w(v)|),
        and an assigned row caps its unassigned neighbours from below.
        """
        lb = [x[i] if i <= depth else 1 for i in range(n)]
        dirty = True
        while dirty:
            dirty = False
            for i in range(depth + 1, n):
                if weights[i] >= 0:
                    continue
                s = sum(lb[j] for j in nbr_idx[i])
                need = -(-s // weights[i])  # ceil(s / -weights[i])
                if need > lb[i]:
                    if need > box_bound:
                        return None
                    lb[i] = need
                    dirty = True
        for i in range(depth + 1):
            if weights[i] * x[i] + sum(lb[j] for j in nbr_idx[i]) > 0:
                return None
        return lb

    def scan(depth: int, lb: list[int]) -> None:
        nonlocal best
        if depth == n:
            best = list(x) if best is None \
                else [min(b, v) for b, v in zip(best, x)]
            return
        for val in range(lb[depth], box_bound + 1):
            x[depth] = val
            nxt = propagate(depth)
            if nxt is None:
                continue
            # only descend where some coordinate can still shrink
            if best is not None and all(nxt[i] >= best[i] for i in range(n)):
                continue
            scan(depth + 1, nxt)
        x[depth] = 0

    start = propagate(-1)
    if start is not None:
        scan(0, start)
    if best is None:
        raise BoxTooSmallError(
            f"no candidate cycle in the box [1, {box_bound}]^{n}")
    ok = all(
        weights[i] * best[i] + sum(best[j] for j in nbr_idx[i]) <= 0
        for i in range(n))
    if not ok:
        raise BoxTooSmallError(
            "coordinatewise minimum of the candidate set is not itself a "
            "candidate; enlarge the box")
    return {v: best[i] for i, v in enumerate(ids)}
