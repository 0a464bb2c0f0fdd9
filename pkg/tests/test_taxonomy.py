import itertools

import pytest

import oracles
from polyspace import core
from polyspace.core import mask_of
from polyspace.errors import NonGeneric, NotSpecial, OutOfRange
from polyspace.taxonomy import (
    ChamberClass,
    annihilator_rank_combinatorial,
    annihilator_table,
    bettispecial_crosscheck,
    bettispecial_from_signature,
    classify,
    classify_signature,
    d_invariants,
    extension_free_count,
    parse_class_tag,
    possible_types,
    sametype_separation,
)


@pytest.mark.parametrize(
    "lengths, tag",
    [
        ((1, 1, 1, 1, 1), "special{1,2,3}"),
        ((1, 1, 1, 1, 3), "normal"),
        ((1, 3, 3, 4, 4, 6), "special{2,4,5}"),
        ((1, 1, 1, 5), "empty"),
        ((1, 1, 4, 4, 5), "disconnected"),
    ],
)
def test_classify_examples(lengths, tag):
    assert classify(lengths).tag() == tag
    assert parse_class_tag(tag) == classify(lengths)


def test_classify_display_and_errors():
    assert str(classify((1, 1, 1, 1, 1))) == "Special type {1,2,3}"
    assert str(classify((1, 1, 1, 1, 3))) == "Normal"
    with pytest.raises(NonGeneric):
        classify((1, 1, 1, 1))
    with pytest.raises(ValueError):
        parse_class_tag("weird")


def _ann_oracle(lengths, k, i):
    """Literal count with tuple subsets from the brute-force signature."""
    sig = oracles.signature(lengths)
    Sk = [J for J in sig if len(J) == k]
    upper = [J for J in sig if len(J) == k + i]
    return sum(1 for I in Sk if not any(set(I) <= set(J) for J in upper))


@pytest.mark.parametrize(
    "lengths, k, i, expected",
    [((1, 3, 3, 3, 4, 5), 1, 1, 1), ((1, 3, 3, 4, 4, 6), 1, 1, 2), ((1, 1, 1, 1, 1), 1, 1, 0)],
)
def test_annihilator_examples(lengths, k, i, expected):
    assert annihilator_rank_combinatorial(lengths, k, i) == expected


def test_literal_count_differs_at_top_degree():
    # on the genus-4 surface every class pairs nontrivially with some degree-one class;
    # the count that ignores S_{n-4} reports all four vertices instead
    sig = core.chamber_signature((1, 1, 1, 1, 1))
    assert extension_free_count(sig, 1, 1) == 4 == _ann_oracle((1, 1, 1, 1, 1), 1, 1)
    assert annihilator_rank_combinatorial((1, 1, 1, 1, 1), 1, 1) == 0


def test_annihilator_range():
    with pytest.raises(OutOfRange):
        annihilator_rank_combinatorial((1, 1, 1, 1, 1), 1, 2)
    with pytest.raises(OutOfRange):
        annihilator_rank_combinatorial((1, 3, 3, 4, 4, 6), 0, 1)


def test_annihilator_matches_literal_count_below_top(catalogs):
    for n in (5, 6, 7):
        for e in catalogs(n):
            if e.class_tag in ("empty", "disconnected"):
                continue
            for (k, i), r in annihilator_table(e.signature):
                if k + i < n - 3:
                    assert r == _ann_oracle(e.representative, k, i)


@pytest.mark.parametrize(
    "lengths, expected",
    [((1, 1, 1, 1, 1), (0, 0, 0)), ((1, 3, 3, 3, 4, 5), (1, 0, 1)), ((1, 3, 3, 4, 4, 6), (2, 0, 2))],
)
def test_d_invariants(lengths, expected):
    assert d_invariants(lengths).as_tuple() == expected


def test_d_invariants_need_special():
    with pytest.raises(NotSpecial):
        d_invariants((1, 1, 1, 1, 3))
    with pytest.raises(NotSpecial):
        bettispecial_crosscheck((1, 1, 1, 1, 3))


@pytest.mark.parametrize("lengths", [(1, 1, 1, 1, 1), (1, 3, 3, 4, 4, 6), (1, 3, 3, 3, 4, 5)])
def test_crosscheck_examples(lengths):
    r = bettispecial_crosscheck(lengths)
    assert r.passed
    assert r.b1_actual == r.b1_formula


def test_crosscheck_values():
    assert bettispecial_crosscheck((1, 1, 1, 1, 1)).b1_formula == 8
    assert bettispecial_crosscheck((1, 3, 3, 4, 4, 6)).b1_formula == 7
    r = bettispecial_crosscheck((1, 3, 3, 3, 4, 5))
    assert (r.b1_formula, r.b2_formula) == (8, 8)


def test_crosscheck_all_special_chambers(catalogs):
    for n in (5, 6, 7):
        for e in catalogs(n):
            if e.class_tag.startswith("special"):
                assert bettispecial_from_signature(e.signature).passed, e.representative


def test_sametype_separation(catalogs):
    for n in (5, 6, 7):
        rep = sametype_separation(catalogs(n).signatures())
        assert rep.passed and rep.checked > 0
    single = sametype_separation([core.chamber_signature((1, 1, 1, 1, 1))])
    assert single.passed and single.checked == 1


def test_special_structure(catalogs):
    for n in (5, 6, 7):
        counts = {}
        for e in catalogs(n):
            cls = classify_signature(e.signature)
            if not cls.is_special:
                continue
            v = e.representative
            assert core.classify_subset(v, mask_of([n - 3, n - 2, n - 1])) is core.Shortness.LONG
            assert cls.type in possible_types(n)
            if n >= 6:
                assert cls.type != mask_of([n - 5, n - 3, n - 1])
            below = e.signature.stratum(n - 4)
            for a, b in itertools.combinations(below, 2):
                assert core.poset_leq(a, b) or core.poset_leq(b, a)
            counts[cls.type] = counts.get(cls.type, 0) + 1
        assert counts[mask_of([n - 4, n - 3, n - 2])] == 1


def test_chamber_class_members():
    c = ChamberClass("special", mask_of([2, 4, 5]))
    assert c.type_members() == (2, 4, 5)
    assert ChamberClass("normal").type_members() == ()
