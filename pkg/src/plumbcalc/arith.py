"""Exact rational arithmetic helpers: Hirzebruch-Jung continued fractions,
tree determinants by leaf elimination, fraction-free elimination, and
integer Smith normal form.

Everything here is exact; no floating point appears anywhere in the
package.  Rationals are ``fractions.Fraction`` and integers are plain
Python ints, so values are arbitrary precision throughout.
"""

from __future__ import annotations

from fractions import Fraction

from .graph import PlumbingGraph, intersection_matrix


class ArithmeticDomainError(ValueError):
    """Input outside an operation's domain (zero tail, zero slope, ...)."""


def hj_value(entries) -> Fraction:
    """Evaluate the nested fraction a1 - 1/(a2 - 1/(... - 1/ak)).

    Raises ArithmeticDomainError if some proper tail evaluates to zero,
    since the next division would be undefined.
    """
    entries = list(entries)
    if not entries:
        raise ArithmeticDomainError("empty continued fraction")
    value = Fraction(entries[-1])
    for a in reversed(entries[:-1]):
        if value == 0:
            raise ArithmeticDomainError(
                "continued fraction tail evaluates to zero")
        value = a - 1 / value
    return value


def hj_expand(r) -> list[int]:
    """Canonical Hirzebruch-Jung expansion of a nonzero rational.

    The leading entry is floor(r) (r itself for integers); each remaining
    tail is -1/(r - floor(r)) and lies strictly below -1, so every entry
    after the first is <= -2.  In particular every entry of the expansion
    of r < -1 is <= -2, and values in (-1, 0) expand with a leading -1.
    """
    r = Fraction(r)
    if r == 0:
        raise ArithmeticDomainError("0 has no Hirzebruch-Jung expansion here")
    entries: list[int] = []
    while True:
        if r.denominator == 1:
            entries.append(int(r))
            return entries
        a = r.numerator // r.denominator
        entries.append(a)
        r = -1 / (r - a)


def format_rational(x) -> str:
    """Serialize as ``p/q``, or just ``p`` for integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ArithmeticDomainError(f"bad rational {text!r}: {e}") from None


def generic_determinant(matrix) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix.

    Used as the fallback when leaf elimination meets a zero pivot, and as
    an independent cross-check of tree_determinant.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def tree_determinant(g: PlumbingGraph) -> int:
    """Determinant of the intersection matrix, by leaf elimination.

    Repeatedly strip a leaf, multiplying its current (rational) diagonal
    entry into an accumulator and adding -1/entry to its neighbour.  A zero
    diagonal entry at a leaf forces the generic fraction-free fallback.
    A zero result is exact and signals b_1 > 0 for the plumbed manifold.
    """
    entries = {v: Fraction(w) for v, w in g.vertices}
    adj = {v: set(g.neighbors(v)) for v in g.ids}
    alive = list(g.ids)
    acc = Fraction(1)
    while len(alive) > 1:
        leaf = next(v for v in alive if len(adj[v]) == 1)
        if entries[leaf] == 0:
            return generic_determinant(intersection_matrix(g))
        (parent,) = adj[leaf]
        entries[parent] -= 1 / entries[leaf]
        acc *= entries[leaf]
        adj[parent].discard(leaf)
        alive.remove(leaf)
    acc *= entries[alive[0]]
    assert acc.denominator == 1
    return int(acc)


def smith_divisors(rows, ncols: int) -> list[int]:
    """Elementary divisors of an integer matrix.

    Returns ``ncols`` non-negative integers d1 | d2 | ... with trailing
    zeros for the rank deficit; the product of the nonzero divisors equals
    |det| when the matrix is square and nonsingular.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    divisors = []
    t = 0
    while t < min(nrows, ncols):
        # Locate the nonzero entry of least magnitude in the submatrix.
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if m[i][j] != 0 and (pivot is None
                                     or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        # Reduce row/column t against the pivot until both are clear.
        while True:
            p = m[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                q = m[i][t] // p
                if q:
                    for j in range(t, ncols):
                        m[i][j] -= q * m[t][j]
                if m[i][t] != 0:
                    dirty = True
            for j in range(t + 1, ncols):
                q = m[t][j] // p
                if q:
                    for i in range(t, nrows):
                        m[i][j] -= q * m[i][t]
                if m[t][j] != 0:
                    dirty = True
            if not dirty:
                break
            # A smaller remainder appeared off the pivot; bring it in.
            best = (t, t)
            for i in range(t, nrows):
                for j in range(t, ncols):
                    if m[i][j] != 0 and abs(m[i][j]) < abs(m[best[0]][best[1]]):
                        best = (i, j)
            i, j = best
            m[t], m[i] = m[i], m[t]
            for row in m:
                row[t], row[j] = row[j], row[t]
        # Divisibility: the pivot must divide every remaining entry.
        p = m[t][t]
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if m[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(t, ncols):
                m[t][j] += m[offender][j]
            continue
        divisors.append(abs(p))
        t += 1
    divisors += [0] * (ncols - len(divisors))
    return divisors
