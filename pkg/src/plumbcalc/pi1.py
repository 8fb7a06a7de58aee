"""Mumford's presentation of the fundamental group of a plumbed manifold.

One generator per vertex; for each vertex the power relation
v^{-w(v)} = product of its neighbors in a fixed cyclic order, and for each
edge the commutator of its endpoints.  Relations are stored as words equal
to the identity.  Abelianizing kills the commutators and turns the power
relations into the negated rows of the intersection matrix, so the Smith
divisors of that matrix recover the first homology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .arith import smith_divisors, tree_determinant
from .graph import PlumbingGraph

Word = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relations: tuple[Word, ...]
    neighbor_ordering: dict[str, tuple[str, ...]]


def mumford_presentation(
        g: PlumbingGraph,
        ordering: Mapping[str, Sequence[str]] | None = None,
) -> GroupPresentation:
    """Build the presentation; the cyclic neighbor orders are part of it.

    By default each vertex lists its neighbors in declaration order.  A
    supplied ordering must give, for every vertex, a permutation of its
    neighbor set.
    """
    orders: dict[str, tuple[str, ...]] = {}
    for v in g.ids:
        nbrs = g.neighbors(v)
        if ordering is None or v not in ordering:
            orders[v] = nbrs
        else:
            given = tuple(ordering[v])
            if sorted(given) != sorted(nbrs):
                raise ValueError(
                    f"ordering for {v!r} is not a permutation of its "
                    f"neighbors")
            orders[v] = given
    if ordering is not None:
        stray = set(ordering) - set(g.ids)
        if stray:
            raise ValueError(f"ordering mentions unknown vertices: "
                             f"{sorted(stray)}")

    relations: list[Word] = []
    for v in g.ids:
        word: list[tuple[str, int]] = []
        if g.weight(v) != 0:
            word.append((v, -g.weight(v)))
        # the neighbor product (in cyclic order) inverts as the reversed
        # product of inverses
        for u in reversed(orders[v]):
            word.append((u, -1))
        relations.append(tuple(word))
    for u, v in sorted(g.edges):
        relations.append(((u, 1), (v, 1), (u, -1), (v, -1)))

    return GroupPresentation(generators=g.ids,
                             relations=tuple(relations),
                             neighbor_ordering=orders)


def abelianization_invariants(p: GroupPresentation) -> list[int]:
    """Elementary divisors of the abelianized relation matrix.

    Commutator words have exponent sum zero in every generator and drop
    out; the rest present coker of the (negated) intersection matrix.  The
    product of the nonzero divisors equals |det| of that matrix.
    """
    index = {v: i for i, v in enumerate(p.generators)}
    rows = []
    for word in p.relations:
        row = [0] * len(p.generators)
        for gen, exp in word:
            row[index[gen]] += exp
        if any(row):
            rows.append(row)
    return smith_divisors(rows, len(p.generators))


def homology_order_matches_determinant(g: PlumbingGraph) -> bool:
    """Cross-check: product of nonzero divisors against |det|."""
    divisors = abelianization_invariants(mumford_presentation(g))
    prod = 1
    for d in divisors:
        if d:
            prod *= d
    return prod == abs(tree_determinant(g))
