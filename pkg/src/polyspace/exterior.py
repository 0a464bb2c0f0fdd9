"""Quotients of exterior algebras by ideals generated by square-free relations.

A monomial is a bitmask over generator positions (bit ``i`` is generator
``i``), always written with indices ascending.  Products pick up the Koszul
sign of the sorting permutation.  Ranks are computed over the rationals by
sparse elimination, with the leading term of a row being its lexicographically
smallest monomial.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

from .core import members, popcount

Monomial = int
Element = dict  # Monomial -> Fraction, homogeneous


def koszul_sign(a: Monomial, b: Monomial) -> int:
    """Sign of x_a * x_b = sign * x_{a|b}; zero when the monomials overlap."""
    if a & b:
        return 0
    swaps = 0
    x = b
    while x:
        low = x & -x
        swaps += popcount(a & ~((low << 1) - 1))
        x ^= low
    return -1 if swaps & 1 else 1


def monomial_mul(a: Monomial, b: Monomial) -> tuple[int, Monomial]:
    return koszul_sign(a, b), a | b


def multiply_elements(x: Mapping, y: Mapping) -> Element:
    out: dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            s = koszul_sign(a, b)
            if s:
                m = a | b
                v = out.get(m, 0) + s * ca * cb
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return out


@lru_cache(maxsize=None)
def monomials(g: int, k: int) -> tuple[Monomial, ...]:
    """Degree-k monomials on g generators in lexicographic order of index tuples."""
    if k < 0 or k > g:
        return ()
    return tuple(sum(1 << i for i in c) for c in itertools.combinations(range(g), k))


@lru_cache(maxsize=None)
def _position(g: int, k: int) -> dict:
    return {m: i for i, m in enumerate(monomials(g, k))}


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class RingPresentation:
    """Exterior algebra on named degree-one generators modulo relations.

    Each relation is a tuple of ``(coefficient, monomial)`` pairs of a common
    degree.
    """

    generators: tuple[str, ...]
    relations: tuple[tuple[tuple[int, Monomial], ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        rels = []
        for rel in self.relations:
            terms: dict = {}
            for c, m in rel:
                if m >> len(self.generators):
                    raise ValueError("relation uses an unknown generator")
                terms[m] = terms.get(m, 0) + c
            terms = {m: c for m, c in terms.items() if c}
            if not terms:
                continue
            if len({popcount(m) for m in terms}) != 1:
                raise ValueError("relations must be homogeneous")
            if popcount(next(iter(terms))) == 0:
                raise ValueError("relations must have positive degree")
            rels.append(tuple(sorted(((c, m) for m, c in terms.items()), key=lambda t: members(t[1]))))
        object.__setattr__(self, "relations", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def mono(self, *names: str) -> Monomial:
        return sum(1 << self.index(x) for x in names)

    def element(self, terms: Mapping[Sequence[str] | str, int]) -> Element:
        """Build an element from ``{("A_1", "A_2"): 1, ...}``; signs follow the given order."""
        out: dict = {}
        for names, c in terms.items():
            if isinstance(names, str):
                names = (names,)
            sign, m = 1, 0
            for x in names:
                s, m = monomial_mul(m, 1 << self.index(x))
                sign *= s
            if sign:
                out[m] = out.get(m, 0) + sign * Fraction(c)
        return {m: c for m, c in out.items() if c}

    def generator(self, name: str) -> Element:
        return {1 << self.index(name): Fraction(1)}

    def format_element(self, x: Mapping) -> str:
        if not x:
            return "0"
        parts = []
        for m in sorted(x, key=members):
            c = x[m]
            word = "*".join(self.generators[i - 1] for i in members(m)) or "1"
            if c == 1:
                parts.append(word)
            elif c == -1:
                parts.append("-" + word)
            else:
                parts.append(f"{c}*{word}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relations": [
                [{"coeff": c, "monomial": [i - 1 for i in members(m)]} for c, m in rel]
                for rel in self.relations
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RingPresentation":
        rels = tuple(
            tuple((int(t["coeff"]), sum(1 << i for i in t["monomial"])) for t in rel)
            for rel in data["relations"]
        )
        return cls(tuple(data["generators"]), rels)


class _Echelon:
    """Sparse row echelon form over Q; rows keyed by their leading position."""

    def __init__(self):
        self.rows: dict = {}

    def reduce(self, vec: Mapping) -> dict:
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        heap = list(vec)
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = vec.get(k)
            if not c:
                continue
            row = self.rows.get(k)
            if row is None:
                continue
            for j, v in row.items():
                nv = vec.get(j, 0) - c * v
                if nv:
                    if j not in vec:
                        heapq.heappush(heap, j)
                    vec[j] = nv
                else:
                    vec.pop(j, None)
        return vec

    def add(self, vec: Mapping) -> bool:
        r = self.reduce(vec)
        if not r:
            return False
        lead = min(r)
        c = r[lead]
        self.rows[lead] = {k: v / c for k, v in r.items()}
        return True

    def __len__(self):
        return len(self.rows)


@lru_cache(maxsize=256)
def _ideal_slice(p: RingPresentation, k: int) -> _Echelon:
    """Echelon basis of the degree-k part of the ideal, in monomial positions."""
    g = p.ngens
    pos = _position(g, k)
    ech = _Echelon()
    for rel in p.relations:
        d = popcount(rel[0][1])
        if d > k:
            continue
        for m in monomials(g, k - d):
            row: dict = {}
            for c, t in rel:
                s = koszul_sign(t, m)
                if s:
                    i = pos[t | m]
                    row[i] = row.get(i, 0) + s * c
            if any(row.values()):
                ech.add(row)
                if len(ech) == len(pos):
                    return ech
    return ech


def graded_rank(p: RingPresentation, k: int) -> int:
    if k < 0 or k > p.ngens:
        return 0
    return comb(p.ngens, k) - len(_ideal_slice(p, k))


def graded_ranks(p: RingPresentation, top: Optional[int] = None) -> tuple[int, ...]:
    """Ranks in degrees 0..top, or up to the last nonzero degree when top is None."""
    if top is not None:
        return tuple(graded_rank(p, k) for k in range(top + 1))
    out = [graded_rank(p, k) for k in range(p.ngens + 1)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def standard_monomials(p: RingPresentation, k: int) -> tuple[Monomial, ...]:
    """Monomials that are not leading terms of the ideal: a basis of degree k."""
    lead = _ideal_slice(p, k).rows
    return tuple(m for i, m in enumerate(monomials(p.ngens, k)) if i not in lead)


def normal_form(p: RingPresentation, x: Mapping) -> Element:
    """Canonical representative of a homogeneous element modulo the ideal."""
    if not x:
        return {}
    degs = {popcount(m) for m, c in x.items() if c}
    if not degs:
        return {}
    if len(degs) != 1:
        raise ValueError("element is not homogeneous")
    (k,) = degs
    mons = monomials(p.ngens, k)
    pos = _position(p.ngens, k)
    red = _ideal_slice(p, k).reduce({pos[m]: c for m, c in x.items()})
    return {mons[i]: c for i, c in red.items()}


def multiply(p: RingPresentation, x: Mapping, y: Mapping) -> Element:
    return normal_form(p, multiply_elements(x, y))


def is_zero(p: RingPresentation, x: Mapping) -> bool:
    return not normal_form(p, x)


def _rank_of_vectors(vectors: Iterable[Mapping]) -> int:
    ech = _Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def annihilator_rank_ring(p: RingPresentation, deg: int, power: int) -> int:
    """Dimension of {x in degree deg : x * m = 0 for every monomial m of degree power}."""
    if deg < 0 or power < 0:
        raise ValueError("degrees must be nonnegative")
    basis = standard_monomials(p, deg)
    targets = monomials(p.ngens, power)
    tdeg = deg + power
    tpos = _position(p.ngens, tdeg)
    width = len(tpos)
    slice_ = _ideal_slice(p, tdeg) if tdeg <= p.ngens else None
    vectors = []
    for s in basis:
        vec: dict = {}
        for t, m in enumerate(targets):
            sign = koszul_sign(s, m)
            if not sign:
                continue
            red = slice_.reduce({tpos[s | m]: sign})
            for i, c in red.items():
                vec[t * width + i] = c
        vectors.append(vec)
    return len(basis) - _rank_of_vectors(vectors)


def subring_ranks(p: RingPresentation, elements: Sequence[Mapping], top: Optional[int] = None) -> tuple[int, ...]:
    """Graded ranks of the subring generated by the given degree-one elements."""
    elements = [dict(e) for e in elements if e]
    top = p.ngens if top is None else top
    out = [1]
    for k in range(1, top + 1):
        vecs = []
        for combo in itertools.combinations(elements, k):
            prod = combo[0]
            for e in combo[1:]:
                prod = multiply_elements(prod, e)
            nf = normal_form(p, prod)
            pos = _position(p.ngens, k)
            vecs.append({pos[m]: c for m, c in nf.items()})
        out.append(_rank_of_vectors(vecs))
    return tuple(out)


# ---------------------------------------------------------------------------
# simplicial complexes


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertices are named; faces are bitmasks over vertex positions."""

    vertices: tuple[str, ...]
    facets: tuple[int, ...]
    _faces: frozenset = field(default=frozenset(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        facets = set(self.facets)
        maximal = tuple(
            sorted((F for F in facets if not any(F != G and F & G == F for G in facets)), key=members)
        )
        object.__setattr__(self, "facets", maximal)
        faces = set()
        for F in maximal:
            sub = F
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & F
        if not faces:
            faces.add(0)
        object.__setattr__(self, "_faces", frozenset(faces))

    @classmethod
    def from_faces(cls, vertices: Sequence[str], faces: Iterable[Iterable[str]]) -> "SimplicialComplex":
        index = {v: i for i, v in enumerate(vertices)}
        masks = [sum(1 << index[v] for v in F) for F in faces]
        return cls(tuple(vertices), tuple(masks))

    def faces(self) -> frozenset:
        return self._faces

    def is_face(self, mask: int) -> bool:
        return mask in self._faces

    def f_vector(self) -> tuple[int, ...]:
        """Face counts by number of vertices (starting with the empty face)."""
        counts = [0] * (len(self.vertices) + 1)
        for F in self._faces:
            counts[popcount(F)] += 1
        while len(counts) > 1 and counts[-1] == 0:
            counts.pop()
        return tuple(counts)

    def minimal_nonfaces(self) -> tuple[int, ...]:
        out = set()
        nv = len(self.vertices)
        for v in range(nv):
            if not self.is_face(1 << v):
                out.add(1 << v)
        for F in self._faces:
            for v in range(nv):
                G = F | (1 << v)
                if G == F or G in self._faces:
                    continue
                if all(self.is_face(G & ~(1 << u)) for u in range(nv) if G >> u & 1):
                    out.add(G)
        return tuple(sorted(out, key=lambda m: (popcount(m), members(m))))


def face_ring(delta: SimplicialComplex) -> RingPresentation:
    rels = tuple(((1, m),) for m in delta.minimal_nonfaces())
    return RingPresentation(delta.vertices, rels)


def complex_isomorphic(d1: SimplicialComplex, d2: SimplicialComplex) -> Optional[dict]:
    """A vertex bijection carrying faces onto faces, or None.

    Backtracking over vertices, restricted to candidates with equal
    face-count profiles.
    """
    nv = len(d1.vertices)
    if nv != len(d2.vertices) or d1.f_vector() != d2.f_vector():
        return None

    def profiles(d):
        prof = [[0] * (nv + 1) for _ in range(nv)]
        for F in d.faces():
            for v in members(F):
                prof[v - 1][popcount(F)] += 1
        return [tuple(p) for p in prof]

    p1, p2 = profiles(d1), profiles(d2)
    if sorted(p1) != sorted(p2):
        return None
    order = sorted(range(nv), key=lambda v: (sum(1 for u in range(nv) if p1[u] == p1[v]), -sum(p1[v])))
    rank = {v: i for i, v in enumerate(order)}
    # faces of d1 checked once their last vertex (in search order) is placed
    checks = [[] for _ in range(nv)]
    for F in d1.faces():
        if F:
            last = max(members(F), key=lambda v: rank[v - 1])
            checks[rank[last - 1]].append(F)
    image = [-1] * nv
    used = [False] * nv

    def transport(F):
        return sum(1 << image[v - 1] for v in members(F))

    def search(depth):
        if depth == nv:
            return True
        v = order[depth]
        for w in range(nv):
            if used[w] or p2[w] != p1[v]:
                continue
            image[v] = w
            used[w] = True
            if all(d2.is_face(transport(F)) for F in checks[depth]) and search(depth + 1):
                return True
            used[w] = False
            image[v] = -1
        return False

    if not search(0):
        return None
    mapping = {d1.vertices[v]: d2.vertices[image[v]] for v in range(nv)}
    moved = {transport(F) for F in d1.faces()}
    assert moved == set(d2.faces()), "vertex map does not transport faces"
    return mapping
