import random
from fractions import Fraction

import pytest

from polyspace.lp import Unbounded, maximize


def test_small_known_optimum():
    # max x + y with x + 2y <= 4, 3x + y <= 6
    value, x = maximize([1, 1], [[1, 2], [3, 1]], [4, 6])
    assert value == Fraction(14, 5)
    assert x == [Fraction(8, 5), Fraction(6, 5)]


def test_rational_data():
    value, x = maximize([1], [[Fraction(2, 3)]], [Fraction(1, 2)])
    assert value == Fraction(3, 4) and x == [Fraction(3, 4)]


def test_unbounded_and_bad_rhs():
    with pytest.raises(Unbounded):
        maximize([1, 0], [[0, 1]], [1])
    with pytest.raises(ValueError):
        maximize([1], [[1]], [-1])


def test_degenerate_zero_optimum():
    value, _ = maximize([1, 1], [[1, -1], [-1, 1], [1, 1]], [0, 0, 0])
    assert value == 0


def test_agrees_with_scipy_on_random_programs():
    scipy_opt = pytest.importorskip("scipy.optimize")
    rng = random.Random(7)
    for _ in range(60):
        nv, m = rng.randint(1, 4), rng.randint(1, 5)
        A = [[rng.randint(-3, 5) for _ in range(nv)] for _ in range(m)]
        A.append([1] * nv)  # keeps the program bounded
        b = [rng.randint(0, 6) for _ in range(m)] + [10]
        c = [rng.randint(-2, 4) for _ in range(nv)]
        value, x = maximize(c, A, b)
        for row, rhs in zip(A, b):
            assert sum(a * xi for a, xi in zip(row, x)) <= rhs
        assert all(xi >= 0 for xi in x)
        res = scipy_opt.linprog([-ci for ci in c], A_ub=A, b_ub=b, bounds=[(0, None)] * nv, method="highs")
        assert abs(float(value) + res.fun) < 1e-7
