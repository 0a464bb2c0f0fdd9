"""Randomized invariants.  Integer vectors with odd total are always generic."""

from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

import oracles
from polyspace import core
from polyspace.chambers import realizable
from polyspace.exterior import (
    RingPresentation,
    SimplicialComplex,
    complex_isomorphic,
    face_ring,
    graded_rank,
    multiply,
    normal_form,
)
from polyspace.homology import a_vector, betti, euler_characteristic, euler_from_betti
from polyspace.morse import check_subset_bijection, index_census
from polyspace.presentations import present_h1, torus_image_ranks
from polyspace.taxonomy import classify
from polyspace.walker import fingerprint

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def generic_vectors(draw, min_n=3, max_n=7, max_entry=20):
    n = draw(st.integers(min_n, max_n))
    v = draw(st.lists(st.integers(1, max_entry), min_size=n, max_size=n))
    if sum(v) % 2 == 0:
        v[draw(st.integers(0, n - 1))] += 1
    return tuple(v)


@SETTINGS
@given(generic_vectors(), st.randoms(use_true_random=False), st.integers(1, 9))
def test_signature_invariant_under_permutation_and_scaling(v, rnd, c):
    w = list(v)
    rnd.shuffle(w)
    sig = core.chamber_signature(v)
    assert core.chamber_signature(w) == sig
    assert core.chamber_signature([Fraction(x, c) for x in v]) == sig
    assert oracles.as_tuples(sig) == oracles.signature(v)


@SETTINGS
@given(generic_vectors())
def test_signature_is_down_closed(v):
    sig = oracles.as_tuples(core.chamber_signature(v))
    for J in sig:
        for j in J:
            assert tuple(x for x in J if x != j) in sig
        # shifting an element down keeps the set short
        for a in J:
            for b in range(1, a):
                if b not in J:
                    assert tuple(sorted(set(J) - {a} | {b})) in sig


@SETTINGS
@given(generic_vectors())
def test_genetic_code_round_trip_and_witness(v):
    sig = core.chamber_signature(v)
    n = len(v)
    code = core.genetic_code(sig)
    assert core.down_closure(code, n) == sig
    if len(sig):
        w = realizable(n, code)
        assert w is not None and core.chamber_signature(w) == sig


@SETTINGS
@given(generic_vectors(min_n=3, max_n=8))
def test_poincare_symmetry_and_euler(v):
    b = betti(v)
    assert b == tuple(reversed(b))
    assert euler_from_betti(b) == euler_characteristic(v)
    if len(v) % 2 == 0:
        assert euler_characteristic(v) == 0
    assert sum(a_vector(v)) == len(core.chamber_signature(v))


@SETTINGS
@given(generic_vectors(min_n=5, max_n=7, max_entry=12))
def test_balanced_embedding_random(v):
    cls = classify(v)
    assume(cls.kind not in ("empty", "disconnected"))
    ph = present_h1(v)
    assert torus_image_ranks(ph) == a_vector(v)


@SETTINGS
@given(generic_vectors(min_n=4, max_n=8, max_entry=25))
def test_morse_bijection_random(v):
    v = tuple(sorted(v))
    assert check_subset_bijection(v).passed
    a, b = index_census(v)
    assert a == b


@SETTINGS
@given(generic_vectors(min_n=4, max_n=7), st.randoms(use_true_random=False))
def test_fingerprint_chamber_constant(v, rnd):
    w = list(v)
    rnd.shuffle(w)
    assert fingerprint(v) == fingerprint(w)


@st.composite
def presentations(draw):
    g = draw(st.integers(1, 5))
    rels = []
    for _ in range(draw(st.integers(0, 4))):
        d = draw(st.integers(1, g))
        monos = draw(st.lists(st.sampled_from([sum(1 << i for i in c) for c in _combos(g, d)]),
                              min_size=1, max_size=3, unique=True))
        rels.append(tuple((draw(st.integers(-2, 2).filter(bool)), m) for m in monos))
    return RingPresentation(tuple(f"g{i}" for i in range(g)), tuple(rels))


def _combos(g, d):
    import itertools

    return list(itertools.combinations(range(g), d))


@SETTINGS
@given(presentations(), st.randoms(use_true_random=False))
def test_graded_rank_matches_dense_oracle_and_relation_order(p, rnd):
    rels = oracles.presentation_relations(p)
    shuffled = list(p.relations)
    rnd.shuffle(shuffled)
    q = RingPresentation(p.generators, tuple(shuffled))
    for k in range(p.ngens + 1):
        r = graded_rank(p, k)
        assert r == oracles.quotient_rank(p.ngens, rels, k)
        assert r == graded_rank(q, k)


@SETTINGS
@given(presentations(), st.data())
def test_multiplication_graded_commutative(p, data):
    def elem(deg):
        monos = [sum(1 << i for i in c) for c in _combos(p.ngens, deg)]
        chosen = data.draw(st.lists(st.sampled_from(monos), min_size=1, max_size=3, unique=True))
        return {m: Fraction(data.draw(st.integers(-3, 3))) for m in chosen}

    d1 = data.draw(st.integers(0, p.ngens))
    d2 = data.draw(st.integers(0, p.ngens - d1))
    x, y = elem(d1), elem(d2)
    xy = multiply(p, x, y)
    yx = multiply(p, y, x)
    sign = (-1) ** (d1 * d2)
    assert xy == normal_form(p, {m: sign * c for m, c in yx.items()})


@st.composite
def complexes(draw):
    nv = draw(st.integers(1, 6))
    facets = draw(st.lists(st.integers(1, (1 << nv) - 1), min_size=1, max_size=5))
    return SimplicialComplex(tuple(f"v{i}" for i in range(nv)), tuple(facets))


@SETTINGS
@given(complexes(), st.randoms(use_true_random=False))
def test_complex_isomorphism_under_relabeling(d, rnd):
    nv = len(d.vertices)
    perm = list(range(nv))
    rnd.shuffle(perm)
    moved = SimplicialComplex(
        d.vertices, tuple(sum(1 << perm[i] for i in range(nv) if F >> i & 1) for F in d.facets)
    )
    m = complex_isomorphic(d, moved)
    assert m is not None
    assert complex_isomorphic(moved, d) is not None
    assert complex_isomorphic(d, d) is not None
    # face ring ranks equal face counts
    f = d.f_vector()
    p = face_ring(d)
    assert tuple(graded_rank(p, k) for k in range(len(f))) == f
