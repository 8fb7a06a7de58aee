import random
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

from plumbcalc import PlumbingGraph, is_negative_definite, parse_graph

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def e8() -> PlumbingGraph:
    return parse_graph((DATA / "e8.plumb").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def example31() -> PlumbingGraph:
    return parse_graph((DATA / "example31.plumb").read_text(encoding="utf-8"))


def random_tree(rng: random.Random, n: int,
                wmin: int = -9, wmax: int = -2) -> PlumbingGraph:
    """Uniform random attachment tree with uniform weights."""
    verts = [(f"v{i}", rng.randint(wmin, wmax)) for i in range(n)]
    edges = [(f"v{rng.randrange(i)}", f"v{i}") for i in range(1, n)]
    return PlumbingGraph.build(verts, edges)


def random_nd_tree(rng: random.Random, n: int,
                   wmin: int = -9, wmax: int = -2) -> PlumbingGraph:
    while True:
        g = random_tree(rng, n, wmin, wmax)
        if is_negative_definite(g):
            return g


def gauss_determinant(matrix) -> Fraction:
    """Plain fractional Gaussian elimination, kept independent of the
    library's fraction-free determinant for cross-checking."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return det


_E8_LEG_LENGTHS = (4, 1, 2)


def e8_subsets_bruteforce(g: PlumbingGraph):
    """All-8-subsets reference for the proper-E8 finder: returns True when
    some 8 vertices, all of weight -2, induce the E8 star inside a graph
    strictly larger than 8 vertices."""
    if len(g) <= 8:
        return False
    neg2 = [v for v in g.ids if g.weight(v) == -2]
    for subset in combinations(neg2, 8):
        chosen = set(subset)
        deg = {v: sum(1 for u in g.neighbors(v) if u in chosen)
               for v in subset}
        if sorted(deg.values()) != [1, 1, 1, 2, 2, 2, 2, 3]:
            continue
        center = next(v for v in subset if deg[v] == 3)
        lengths = []
        ok = True
        for start in g.neighbors(center):
            if start not in chosen:
                continue
            length, prev, cur = 1, center, start
            while True:
                nxt = [u for u in g.neighbors(cur) if u in chosen
                       and u != prev]
                if not nxt:
                    break
                if len(nxt) > 1:
                    ok = False
                    break
                prev, cur = cur, nxt[0]
                length += 1
            lengths.append(length)
        if ok and sorted(lengths) == sorted(_E8_LEG_LENGTHS):
            return True
    return False
