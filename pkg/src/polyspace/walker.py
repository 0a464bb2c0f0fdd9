"""Empirical check that ring-level invariants tell chambers apart.

Every pair of chambers for a given n is assigned the first tier that
separates it:

1. Betti numbers;
2. the full fingerprint (Betti numbers, ranks of the degree-one generated
   subring, annihilator ranks, chamber class);
3. the isomorphism class of the simplicial complex whose face ring the
   cohomology determines (normal chambers, and type {n-3,n-2,n-1});
4. pairs of special chambers of one type, which are covered by rigidity
   results for that type and listed rather than dropped.

Anything else is reported as unexplained.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import core
from .chambers import enumerate_chambers
from .core import ChamberSignature, members
from .errors import OutOfRange, Unsupported
from .exterior import (
    RingPresentation,
    _position,
    _rank_of_vectors,
    complex_isomorphic,
    graded_ranks,
    is_zero,
    multiply_elements,
    normal_form,
    standard_monomials,
)
from .homology import a_vector_from_signature, betti_from_signature
from .presentations import coned_complex, present_from_signature, tilde_complex
from .taxonomy import NORMAL, annihilator_table, classify_signature, type_case

MAX_WALKER_N = 7


@dataclass(frozen=True)
class Fingerprint:
    n: int
    betti: tuple[int, ...]
    h1_ranks: tuple[int, ...]
    ann_table: tuple  # ((k, i), rank) pairs
    class_tag: str

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "betti": list(self.betti),
            "h1_ranks": list(self.h1_ranks),
            "ann_table": {f"{k},{i}": r for (k, i), r in self.ann_table},
            "class": self.class_tag,
        }

    def serialize(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def fingerprint_from_signature(sig: ChamberSignature) -> Fingerprint:
    cls = classify_signature(sig)
    try:
        h1 = present_from_signature(sig).ranks()
    except Unsupported:
        h1 = ()
    return Fingerprint(sig.n, betti_from_signature(sig), h1, annihilator_table(sig), cls.tag())


def fingerprint(lengths: Sequence) -> Fingerprint:
    return fingerprint_from_signature(core.chamber_signature(lengths))


# ---------------------------------------------------------------------------
# pairwise verification


TIER_BETTI = 1
TIER_FINGERPRINT = 2
TIER_COMPLEX = 3
TIER_RIGIDITY = 4
UNEXPLAINED = 0


@dataclass(frozen=True)
class PairResult:
    first: int
    second: int
    tier: int
    witness: str

    def to_json(self, reps) -> dict:
        return {
            "chambers": [[core.format_rational(q) for q in reps[self.first]],
                         [core.format_rational(q) for q in reps[self.second]]],
            "tier": self.tier,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class WalkerReport:
    n: int
    representatives: tuple
    pairs: tuple[PairResult, ...]

    def count(self, tier: int) -> int:
        return sum(1 for p in self.pairs if p.tier == tier)

    @property
    def unexplained(self) -> tuple[PairResult, ...]:
        return tuple(p for p in self.pairs if p.tier == UNEXPLAINED)

    @property
    def residuals(self) -> tuple[PairResult, ...]:
        return tuple(p for p in self.pairs if p.tier == TIER_RIGIDITY)

    @property
    def tier1_suffices(self) -> bool:
        return all(p.tier == TIER_BETTI for p in self.pairs)

    @property
    def betti_collisions(self) -> int:
        return sum(1 for p in self.pairs if p.tier != TIER_BETTI)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "chambers": len(self.representatives),
            "pairs": len(self.pairs),
            "tiers": {str(t): self.count(t) for t in (1, 2, 3, 4)},
            "unexplained": len(self.unexplained),
            "results": [p.to_json(self.representatives) for p in self.pairs],
        }


def _rigidity_tag(n: int, cls) -> str:
    case, i = type_case(n, cls.type)
    if case == 1:
        return "single-chamber type {n-4,n-3,n-2}"
    if case == 2:
        return "same-type rigidity {n-4,n-3,n-1}"
    if case == 3:
        return "face-ring rigidity {n-3,n-2,n-1}"
    return f"same-type rigidity {{i,n-2,n-1}}, i={i}"


def _complex_for(sig: ChamberSignature):
    """Complex whose face ring the cohomology determines, with a tag, or None."""
    cls = classify_signature(sig)
    if cls.kind == NORMAL:
        return tilde_complex(sig), "tilde-complex (normal)"
    if cls.is_special and type_case(sig.n, cls.type)[0] == 3:
        return coned_complex(sig), "coned tilde-complex {n-3,n-2,n-1}"
    return None


def _separate(sigs, prints, i: int, j: int) -> PairResult:
    s1, s2 = sigs[i], sigs[j]
    f1, f2 = prints[i], prints[j]
    if f1.betti != f2.betti:
        return PairResult(i, j, TIER_BETTI, f"betti {f1.betti} vs {f2.betti}")
    if f1 != f2:
        for name in ("class_tag", "h1_ranks", "ann_table"):
            if getattr(f1, name) != getattr(f2, name):
                return PairResult(i, j, TIER_FINGERPRINT, name)
    c1, c2 = _complex_for(s1), _complex_for(s2)
    if c1 is not None and c2 is not None and c1[1] == c2[1]:
        iso = complex_isomorphic(c1[0], c2[0])
        if iso is None:
            return PairResult(i, j, TIER_COMPLEX, c1[1])
        # isomorphic complexes have the same face counts
        assert a_vector_from_signature(s1) == a_vector_from_signature(s2), "complex iso changed face counts"
        return PairResult(i, j, UNEXPLAINED, f"isomorphic {c1[1]}")
    cls1, cls2 = classify_signature(s1), classify_signature(s2)
    if cls1.is_special and cls1 == cls2:
        return PairResult(i, j, TIER_RIGIDITY, _rigidity_tag(s1.n, cls1))
    return PairResult(i, j, UNEXPLAINED, "no separating invariant")


def verify_walker(n: int, jobs: Optional[int] = None) -> WalkerReport:
    if not 3 <= n <= MAX_WALKER_N:
        raise OutOfRange(f"verify_walker supports 3 <= n <= {MAX_WALKER_N}, got {n}")
    catalog = enumerate_chambers(n, jobs)
    sigs = [e.signature for e in catalog]
    reps = tuple(e.representative for e in catalog)
    prints = [fingerprint_from_signature(s) for s in sigs]
    pairs = tuple(_separate(sigs, prints, i, j) for i, j in itertools.combinations(range(len(sigs)), 2))
    return WalkerReport(n, reps, pairs)


# ---------------------------------------------------------------------------
# signed generator correspondences between presentations


def _generator_profiles(p: RingPresentation) -> list:
    """For each generator x, the ranks of x times the ring in each degree."""
    top = len(graded_ranks(p))
    out = []
    for g in range(p.ngens):
        x = {1 << g: Fraction(1)}
        prof = []
        for k in range(top):
            vecs = []
            for m in standard_monomials(p, k):
                prod = multiply_elements(x, {m: Fraction(1)})
                vecs.append(prod)
            reduced = []
            for v in vecs:
                nf = normal_form(p, v) if v else {}
                pos = _position(p.ngens, k + 1)
                reduced.append({pos[m]: c for m, c in nf.items()})
            prof.append(_rank_of_vectors(reduced))
        out.append(tuple(prof))
    return out


def _map_element(mapping, x):
    """Image of an element under generator g -> sign * h."""
    out: dict = {}
    for m, c in x.items():
        term = {0: Fraction(c)}
        for g in members(m):
            h, s = mapping[g - 1]
            term = multiply_elements(term, {1 << h: Fraction(s)})
        for mm, cc in term.items():
            out[mm] = out.get(mm, 0) + cc
    return {m: c for m, c in out.items() if c}


def presentation_equivalent_monomial(p1: RingPresentation, p2: RingPresentation) -> Optional[dict]:
    """A map generator -> (generator, sign) inducing a ring isomorphism, or None.

    None only rules out isomorphisms of this signed-permutation form.
    """
    g = p1.ngens
    if g != p2.ngens or graded_ranks(p1) != graded_ranks(p2):
        return None
    prof1, prof2 = _generator_profiles(p1), _generator_profiles(p2)
    if sorted(prof1) != sorted(prof2):
        return None
    rels = [{m: Fraction(c) for c, m in rel} for rel in p1.relations]
    # each relation is checked once all its generators are assigned
    last = []
    for r in rels:
        support = 0
        for m in r:
            support |= m
        last.append(max(members(support)) - 1)
    checks = [[r for r, l in zip(rels, last) if l == k] for k in range(g)]
    mapping: list = [None] * g
    used = [False] * g

    def search(k: int) -> bool:
        if k == g:
            return True
        for h in range(g):
            if used[h] or prof2[h] != prof1[k]:
                continue
            for s in (1, -1):
                mapping[k] = (h, s)
                used[h] = True
                if all(is_zero(p2, _map_element(mapping, r)) for r in checks[k]) and search(k + 1):
                    return True
                used[h] = False
                mapping[k] = None
        return False

    if not search(0):
        return None
    # ideal of p1 maps into ideal of p2 and the quotients have equal ranks,
    # so the induced map is an isomorphism
    return {p1.generators[k]: (p2.generators[h], s) for k, (h, s) in enumerate(mapping)}
