import random
from fractions import Fraction

import pytest

from plumbcalc import (ArithmeticDomainError, format_rational,
                       generic_determinant, hj_expand, hj_value,
                       intersection_matrix, parse_rational, smith_divisors,
                       tree_determinant)
from conftest import gauss_determinant, random_tree


class TestHirzebruchJung:
    def test_values(self):
        assert hj_value([-2, -2]) == Fraction(-3, 2)
        assert hj_value([-3]) == -3
        assert hj_value([-2, -2, -2, -2]) == Fraction(-5, 4)

    def test_expand_examples(self):
        assert hj_expand(Fraction(-3, 2)) == [-2, -2]
        assert hj_expand(Fraction(-7)) == [-7]
        assert hj_expand(Fraction(-5, 4)) == [-2, -2, -2, -2]

    def test_expand_in_unit_interval_leads_with_minus_one(self):
        entries = hj_expand(Fraction(-1, 3))
        assert entries[0] == -1
        assert hj_value(entries) == Fraction(-1, 3)

    def test_tail_entries_bounded(self):
        rng = random.Random(5)
        for _ in range(300):
            r = Fraction(rng.randint(-400, -101), rng.randint(1, 100))
            entries = hj_expand(r)
            assert all(a <= -2 for a in entries[1:])
            if r < -1:
                assert all(a <= -2 for a in entries)

    def test_roundtrip(self):
        rng = random.Random(9)
        for _ in range(500):
            r = Fraction(rng.randint(-300, 300), rng.randint(1, 300))
            if r == 0:
                continue
            assert hj_value(hj_expand(r)) == r

    def test_zero_tail_rejected(self):
        with pytest.raises(ArithmeticDomainError):
            hj_value([-2, -2, 0])  # the tail -2 - 1/0 is undefined

    def test_format_parse(self):
        assert format_rational(Fraction(-273, 1481)) == "-273/1481"
        assert format_rational(Fraction(-3)) == "-3"
        assert parse_rational("-3/2") == Fraction(-3, 2)
        assert parse_rational("5") == 5


class TestDeterminants:
    def test_tree_vs_generic(self):
        rng = random.Random(13)
        for _ in range(100):
            g = random_tree(rng, rng.randint(1, 10), -6, 2)
            m = intersection_matrix(g)
            det = tree_determinant(g)
            assert det == generic_determinant(m)
            assert det == gauss_determinant(m)

    def test_goldens(self, e8, example31):
        assert tree_determinant(e8) == 1
        assert tree_determinant(example31) == 1481

    def test_generic_handles_zero_pivot(self):
        assert generic_determinant([[0, 1], [1, 0]]) == -1
        assert generic_determinant([[0, 0], [0, 0]]) == 0


class TestSmith:
    def test_examples(self):
        assert smith_divisors([[2]], 1) == [2]
        assert smith_divisors([[2, 0], [0, 3]], 2) == [1, 6]

    def test_divisibility_chain(self):
        rng = random.Random(17)
        for _ in range(50):
            n = rng.randint(1, 5)
            rows = [[rng.randint(-4, 4) for _ in range(n)]
                    for _ in range(rng.randint(1, 6))]
            divs = smith_divisors(rows, n)
            nonzero = [d for d in divs if d]
            for a, b in zip(nonzero, nonzero[1:]):
                assert b % a == 0
            assert all(d >= 0 for d in divs)
