import pytest

import oracles
from polyspace.homology import a_vector, betti, euler_characteristic, euler_from_betti
from polyspace.morse import euler_bookkeeping


@pytest.mark.parametrize(
    "lengths, expected",
    [((1, 1, 1, 1, 1), (1, 4, 0)), ((1, 3, 3, 3, 4, 5), (1, 5, 3, 0)), ((1, 1, 1, 5), (0, 0))],
)
def test_a_vector(lengths, expected):
    assert a_vector(lengths) == expected
    assert oracles.a_vector(lengths) == expected


def test_betti_surfaces():
    assert betti((1, 1, 1, 1, 1)) == (1, 8, 1)  # genus 4
    assert betti((1, 1, 2, 2, 3)) == (1, 4, 1)  # genus 2
    assert betti((1, 1, 4, 4, 5)) == (2, 4, 2)  # two 2-tori


def test_betti_small_cases():
    assert betti((1, 1, 1, 5)) == ()
    assert betti((1, 2, 2, 4)) == (1, 1)  # circle
    assert betti((1, 1, 1)) == (2,)  # a triangle and its mirror image


@pytest.mark.parametrize("lengths, chi", [((1, 1, 1, 1, 1), -6), ((1, 1, 2, 2, 3), -2), ((1, 2, 2, 4), 0)])
def test_euler_characteristic(lengths, chi):
    assert euler_characteristic(lengths) == chi


def test_betti_is_palindromic_and_euler_matches(catalogs):
    for n in (4, 5, 6, 7):
        for e in catalogs(n):
            b = e.betti
            assert b == tuple(reversed(b))
            if n % 2 == 0:
                assert euler_from_betti(b) == 0


def test_euler_agrees_with_critical_point_count(catalogs):
    # independent route: handle counts of the cobordism that shrinks edge 1
    for n in (5, 7):
        for e in catalogs(n):
            chi, predicted = euler_bookkeeping(e.representative)
            assert chi == predicted, e.representative
