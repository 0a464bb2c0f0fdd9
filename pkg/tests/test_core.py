from fractions import Fraction

import pytest

import oracles
from polyspace import core
from polyspace.core import Shortness, mask_of, members
from polyspace.errors import DimensionMismatch, InvalidLengthVector, NonGeneric


def sets(masks):
    return {members(m) for m in masks}


@pytest.mark.parametrize(
    "lengths, J, expected",
    [
        ((1, 1, 1, 1, 1), {1, 2}, Shortness.SHORT),
        ((1, 1, 1, 1), {1, 2}, Shortness.DEGENERATE),
        ((1, 2, 2, 2), {2, 3}, Shortness.LONG),
    ],
)
def test_classify_subset(lengths, J, expected):
    assert core.classify_subset(lengths, mask_of(J)) is expected


@pytest.mark.parametrize(
    "lengths, expected",
    [((1, 1, 1, 1, 1), True), ((1, 1, 1, 1), False), ((1, 3, 3, 4, 4, 6), True), ((3, 3, 1, 2, 1), False)],
)
def test_is_generic(lengths, expected):
    assert core.is_generic(lengths) is expected


def test_order_and_track():
    assert core.order_and_track((2, 1, 3)) == ((1, 2, 3), (2, 1, 3))
    assert core.order_and_track((1, 1, 2)) == ((1, 1, 2), (1, 2, 3))
    assert core.order_and_track((3, 3, 1, 2)) == ((1, 2, 3, 3), (3, 4, 1, 2))


def test_short_sets_examples():
    assert sets(core.short_sets((1, 1, 2, 2, 3), 1)) == {(1,), (2,)}
    assert core.short_sets((1, 1, 1, 1, 1), 2) == frozenset()
    assert core.short_sets((1, 2, 2, 2), 0) == frozenset({0})


def test_short_sets_pull_back_to_original_indices():
    # the largest entry sits first: strata are reported in the caller's indices
    assert sets(core.short_sets((3, 1, 1, 2, 2), 1)) == {(2,), (3,)}


@pytest.mark.parametrize("J1, J2, expected", [({1, 3}, {2, 4}, True), ({2, 3}, {1, 4}, False), ({1}, {3}, True)])
def test_poset_leq(J1, J2, expected):
    assert core.poset_leq(mask_of(J1), mask_of(J2)) is expected
    assert oracles.poset_leq(J1, J2) is expected


def test_chamber_signature_examples():
    assert sets(core.chamber_signature((1, 1, 2, 2, 3))) == {(), (1,), (2,)}
    assert sets(core.chamber_signature((2, 2, 3, 5, 5))) == {(), (1,), (2,), (3,)}
    assert len(core.chamber_signature((1, 1, 1, 5))) == 0


def test_chamber_signature_string():
    assert str(core.chamber_signature((1, 1, 2, 2, 3))) == "{{}, {1}, {2}}"


def test_chamber_signature_rejects_walls():
    with pytest.raises(NonGeneric):
        core.chamber_signature((1, 1, 1, 1))


def test_genetic_code_examples():
    code = lambda v: sets(core.genetic_code(core.chamber_signature(v)))
    assert code((1, 1, 2, 2, 3)) == {(2,)}
    assert code((1, 1, 1, 1, 1)) == {(4,)}
    assert code((1, 3, 3, 3, 4, 5)) == {(1, 4), (5,)}


def test_down_closure_inverts_genetic_code():
    sig = core.chamber_signature((1, 3, 3, 3, 4, 5))
    assert core.down_closure(core.genetic_code(sig), 6) == sig


def test_same_chamber_examples():
    assert core.same_chamber((1, 1, 2, 2, 3), (2, 2, 1, 3, 1))
    assert core.same_chamber((1, 1, 1, 2, 2), (2, 2, 3, 5, 5))
    assert not core.same_chamber((1, 1, 1, 1, 1), (1, 1, 2, 2, 3))
    with pytest.raises(DimensionMismatch):
        core.same_chamber((1, 1, 1), (1, 1, 1, 1, 1))


def test_length_parsing():
    assert core.parse_lengths("1/2, 1, 3/2") == (Fraction(1, 2), Fraction(1), Fraction(3, 2))
    for bad in ("1,0,1", "1,2", "1,-1,2", "a,b,c"):
        with pytest.raises(InvalidLengthVector):
            core.parse_lengths(bad)
    with pytest.raises(InvalidLengthVector):
        core.as_lengths([1.0, 2.0, 3.0])


def test_rational_and_scaled_vectors_agree():
    assert core.chamber_signature((Fraction(1, 2), Fraction(1, 2), 1, 1, Fraction(3, 2))) == core.chamber_signature(
        (1, 1, 2, 2, 3)
    )


def test_signature_matches_brute_force_on_examples():
    for v in [(1, 1, 2, 2, 3), (1, 3, 3, 4, 4, 6), (2, 3, 5, 7, 7, 9, 10), (1, 1, 1, 1, 1, 1, 1)]:
        assert oracles.as_tuples(core.chamber_signature(v)) == oracles.signature(v)
