"""Presentations of the subring generated in degree one, H*_(1), for every
connected chamber, together with the images of the torus generators.

Generators are named ``A_j``, ``B_j``, ``B`` or ``X_j``.  A generator that a
relation kills outright is dropped instead of being carried as a zero symbol;
the remaining names keep their original indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import core
from .core import ChamberSignature, Mask, mask_of, members, popcount
from .errors import NotSpecial, Unsupported, WrongType
from .exterior import (
    RingPresentation,
    SimplicialComplex,
    face_ring,
    graded_rank,
    graded_ranks,
    is_zero,
    multiply_elements,
    subring_ranks,
)
from .homology import betti_from_signature
from .taxonomy import DISCONNECTED, EMPTY, NORMAL, ChamberClass, classify_signature, type_case


@dataclass(frozen=True)
class PresentedCohomology:
    n: int
    chamber_class: ChamberClass
    presentation: RingPresentation
    torus_images: tuple  # ((j, element), ...) for j = 1..n-1
    deficit_degree: int
    extended: tuple = ()  # indices whose image is a consistent choice rather than forced

    @property
    def generator_roles(self) -> tuple[str, ...]:
        return self.presentation.generators

    def ranks(self) -> tuple[int, ...]:
        """Graded ranks in degrees 0..n-3."""
        return graded_ranks(self.presentation, self.n - 3)

    def image(self, j: int) -> dict:
        return dict(self.torus_images)[j]

    def to_json(self) -> dict:
        p = self.presentation
        return {
            "n": self.n,
            "class": self.chamber_class.tag(),
            "presentation": p.to_json(),
            "torus_images": {
                f"X_{j}": [
                    {"coeff": core.format_rational(c), "monomial": [i - 1 for i in members(m)]}
                    for m, c in sorted(x.items(), key=lambda t: members(t[0]))
                ]
                for j, x in self.torus_images
            },
            "extended_images": [f"X_{j}" for j in self.extended],
            "deficit_degree": self.deficit_degree,
            "graded_ranks": list(self.ranks()),
        }


# ---------------------------------------------------------------------------
# building blocks


class _Builder:
    """Collects relations over a fixed list of generator names."""

    def __init__(self, names: Sequence[str]):
        self.names = list(names)
        self.pos = {x: i for i, x in enumerate(self.names)}
        self.relations: list[dict] = []

    def mono(self, names: Sequence[str]) -> dict:
        x = {0: Fraction(1)}
        for name in names:
            x = multiply_elements(x, {1 << self.pos[name]: Fraction(1)})
        return x

    def add(self, element: Mapping):
        if element:
            self.relations.append(dict(element))

    def add_monomial(self, names: Sequence[str]):
        self.add(self.mono(names))

    def build(self) -> tuple[RingPresentation, dict]:
        """Drop generators killed by a degree-one monomial relation.

        Returns the presentation and a map from old generator names to their
        new positions (absent when dropped).
        """
        dead = set()
        for rel in self.relations:
            if len(rel) == 1:
                (m,) = rel
                if popcount(m) == 1:
                    dead.add(m.bit_length() - 1)
        keep = [i for i in range(len(self.names)) if i not in dead]
        newpos = {old: new for new, old in enumerate(keep)}
        rels = []
        for rel in self.relations:
            terms = []
            for m, c in rel.items():
                if any(m >> d & 1 for d in dead):
                    continue
                nm = sum(1 << newpos[i - 1] for i in members(m))
                # the relabelling keeps the relative order, so no sign change
                terms.append((int(c), nm))
            if terms:
                rels.append(tuple(terms))
        names = tuple(self.names[i] for i in keep)
        return RingPresentation(names, tuple(rels)), {self.names[i]: newpos[i] for i in keep}


def _image(p: RingPresentation, where: dict, terms: Mapping[str, int]) -> dict:
    out = {}
    for name, c in terms.items():
        if name in where:
            out[1 << where[name]] = Fraction(c)
    return out


def _long_sets(sig: ChamberSignature) -> list[Mask]:
    """Subsets J of 1..n-1 with J+{n} long, i.e. J outside the signature."""
    return [J for J in range(1 << (sig.n - 1)) if J not in sig]


def _minimal_by_inclusion(masks) -> list[Mask]:
    masks = sorted(set(masks), key=core.mask_key)
    out = []
    for J in masks:
        if not any(K & J == K for K in out):
            out.append(J)
    return out


def _a_names(J: Mask) -> list[str]:
    return [f"A_{j}" for j in members(J)]


# ---------------------------------------------------------------------------
# complexes attached to a chamber


def tilde_complex(sig: ChamberSignature, prefix: str = "X") -> SimplicialComplex:
    """The simplicial complex of nonempty members of the signature, on vertices S_1."""
    verts = [members(m)[0] for m in sig.stratum(1)]
    index = {v: i for i, v in enumerate(verts)}
    faces = [sum(1 << index[v] for v in members(J)) for J in sig if J]
    return SimplicialComplex(tuple(f"{prefix}_{v}" for v in verts), tuple(faces))


def balanced_from_signature(sig: ChamberSignature) -> RingPresentation:
    return face_ring(tilde_complex(sig))


def balanced_subalgebra(lengths: Sequence) -> RingPresentation:
    return balanced_from_signature(core.chamber_signature(lengths))


def coned_complex(sig: ChamberSignature) -> SimplicialComplex:
    """Tilde complex plus one vertex B coning off the vertices 1..n-4."""
    base = tilde_complex(sig, "A")
    n = sig.n
    verts = base.vertices + ("B",)
    b = 1 << (len(verts) - 1)
    cone = sum(1 << i for i, v in enumerate(base.vertices) if int(v.split("_")[1]) <= n - 4)
    return SimplicialComplex(verts, base.facets + (cone | b,))


# ---------------------------------------------------------------------------
# presentations per class


def _normal(sig: ChamberSignature, cls: ChamberClass) -> PresentedCohomology:
    p = balanced_from_signature(sig)
    images = []
    for j in range(1, sig.n):
        name = f"X_{j}"
        images.append((j, p.generator(name) if name in p.generators else {}))
    return PresentedCohomology(sig.n, cls, p, tuple(images), sig.n - 4)


def _type_i(sig: ChamberSignature, cls: ChamberClass, i: int) -> PresentedCohomology:
    """Type {i, n-2, n-1} with i <= n-4."""
    n = sig.n
    R = list(range(i, n - 2))
    names = [f"A_{j}" for j in range(1, n)] + [f"B_{j}" for j in R]
    bld = _Builder(names)
    top = {n - 2, n - 1}
    longs = _long_sets(sig)
    a_R = bld.mono([f"A_{j}" for j in R])
    b_R = bld.mono([f"B_{j}" for j in R])
    sign = (-1) ** (n - 2 - i)
    balanced = {m: c for m, c in a_R.items()}
    for m, c in b_R.items():
        balanced[m] = balanced.get(m, 0) + sign * c
    if i == 1:
        bld.add(balanced)
        for j in range(1, n):
            for k in R:
                bld.add_monomial([f"A_{j}", f"B_{k}"])
            for k in top:
                if k != j:
                    bld.add_monomial([f"A_{j}", f"A_{k}"])
        for k in range(1, n):
            if mask_of([k]) not in sig:
                bld.add_monomial([f"A_{k}"])
    else:
        fam1 = [J for J in longs if set(members(J)) & top]
        fam2 = [J for J in longs if not set(members(J)) & top]
        for J in _minimal_by_inclusion(fam1):
            bld.add_monomial(_a_names(J))
        Rmask = mask_of(R)
        for J in _minimal_by_inclusion(fam2):
            assert J & Rmask == Rmask, "long set misses the balanced block"
            bld.add(multiply_elements(bld.mono(_a_names(J & ~Rmask)), balanced))
        for j in range(i, n):
            for k in R:
                bld.add_monomial([f"A_{j}", f"B_{k}"])
    p, where = bld.build()
    images = []
    for j in range(1, n):
        if i <= j <= n - 3:
            images.append((j, _image(p, where, {f"A_{j}": 1, f"B_{j}": -1})))
        else:
            images.append((j, _image(p, where, {f"A_{j}": 1})))
    return PresentedCohomology(n, cls, p, tuple(images), n - 4)


def _type_n4_n3_n1(sig: ChamberSignature, cls: ChamberClass) -> PresentedCohomology:
    n = sig.n
    T3 = [n - 4, n - 3, n - 2]
    names = [f"A_{j}" for j in range(1, n)] + [f"B_{j}" for j in T3]
    bld = _Builder(names)
    T3m = mask_of(T3)
    for J in _minimal_by_inclusion(J for J in _long_sets(sig) if not J & T3m):
        bld.add_monomial(_a_names(J))
    for p_, q in itertools.combinations(T3, 2):
        bld.add_monomial([f"A_{p_}", f"A_{q}"])
        bld.add_monomial([f"B_{p_}", f"B_{q}"])
    for p_ in T3:
        for q in T3:
            if p_ != q:
                bld.add_monomial([f"A_{p_}", f"B_{q}"])
    for j in range(1, n - 1):
        if mask_of([j, n - 1]) not in sig:
            bld.add_monomial([f"A_{n - 1}", f"A_{j}"])
    for j in T3:
        bld.add_monomial([f"A_{n - 1}", f"B_{j}"])
    ab = {t: bld.mono([f"A_{t}", f"B_{t}"]) for t in T3}
    for hi, lo in ((n - 2, n - 3), (n - 3, n - 4)):
        rel = dict(ab[hi])
        for m, c in ab[lo].items():
            rel[m] = rel.get(m, 0) - c
        bld.add(rel)
    p, where = bld.build()
    # only j <= n-5 and j = n-1 are forced; A_j - B_j on the middle block
    # mirrors the other types and reproduces all face counts
    images = []
    for j in range(1, n):
        if j in T3:
            images.append((j, _image(p, where, {f"A_{j}": 1, f"B_{j}": -1})))
        else:
            images.append((j, _image(p, where, {f"A_{j}": 1})))
    return PresentedCohomology(n, cls, p, tuple(images), n - 4, tuple(T3))


def _type_top(sig: ChamberSignature, cls: ChamberClass) -> PresentedCohomology:
    """Type {n-3, n-2, n-1}: a face ring with one extra generator B."""
    n = sig.n
    bld = _Builder([f"A_{j}" for j in range(1, n)] + ["B"])
    for J in _minimal_by_inclusion(_long_sets(sig)):
        bld.add_monomial(_a_names(J))
    for j in range(n - 3, n):
        bld.add_monomial([f"A_{j}", "B"])
    p, where = bld.build()
    images = tuple((j, _image(p, where, {f"A_{j}": 1})) for j in range(1, n))
    return PresentedCohomology(n, cls, p, images, n - 4)


def _type_bottom(sig: ChamberSignature, cls: ChamberClass) -> PresentedCohomology:
    """Type {n-4, n-3, n-2}: a torus of dimension n-5 times a genus-4 surface."""
    n = sig.n
    surf = list(range(n - 4, n))
    names = [f"A_{j}" for j in range(1, n - 4)] + [f"A_{p}" for p in surf] + [f"B_{p}" for p in surf]
    bld = _Builder(names)
    for p_, q in itertools.combinations(surf, 2):
        bld.add_monomial([f"A_{p_}", f"A_{q}"])
        bld.add_monomial([f"B_{p_}", f"B_{q}"])
    for p_ in surf:
        for q in surf:
            if p_ != q:
                bld.add_monomial([f"A_{p_}", f"B_{q}"])
    for p_, q in zip(surf, surf[1:]):
        rel = dict(bld.mono([f"A_{p_}", f"B_{p_}"]))
        for m, c in bld.mono([f"A_{q}", f"B_{q}"]).items():
            rel[m] = rel.get(m, 0) - c
        bld.add(rel)
    p, where = bld.build()
    images = tuple((j, _image(p, where, {f"A_{j}": 1})) for j in range(1, n))
    return PresentedCohomology(n, cls, p, images, n - 4)


def present_from_signature(sig: ChamberSignature) -> PresentedCohomology:
    cls = classify_signature(sig)
    if cls.kind in (EMPTY, DISCONNECTED):
        raise Unsupported(f"no ring presentation is built for {cls.kind} chambers")
    if cls.kind == NORMAL:
        return _normal(sig, cls)
    case, i = type_case(sig.n, cls.type)
    if case == 1:
        return _type_bottom(sig, cls)
    if case == 2:
        return _type_n4_n3_n1(sig, cls)
    if case == 3:
        return _type_top(sig, cls)
    return _type_i(sig, cls, i)


def present_h1(lengths: Sequence) -> PresentedCohomology:
    return present_from_signature(core.chamber_signature(lengths))


# ---------------------------------------------------------------------------
# checks


def torus_image_ranks(ph: PresentedCohomology) -> tuple[int, ...]:
    """Graded ranks of the subring generated by the torus images, degrees 0..n-3."""
    images = [x for _, x in ph.torus_images]
    return subring_ranks(ph.presentation, images, top=ph.n - 3)


def expected_deficit(sig: ChamberSignature) -> int:
    """Number of classes x_k, k near n, whose Poincare duals are missing in degree n-4."""
    cls = classify_signature(sig)
    if not cls.is_special:
        raise NotSpecial(f"chamber {sig} is not special")
    n = sig.n
    case, _ = type_case(n, cls.type)
    if case == 1:
        return 0
    if case == 2:
        return int(mask_of([n - 1]) in sig)
    if case == 3:
        return sum(1 for k in (n - 3, n - 2, n - 1) if mask_of([k]) in sig)
    return sum(1 for k in (n - 2, n - 1) if mask_of([k]) in sig)


def deficit_from_signature(sig: ChamberSignature) -> int:
    cls = classify_signature(sig)
    if not cls.is_special:
        raise NotSpecial(f"chamber {sig} is not special")
    ph = present_from_signature(sig)
    b = betti_from_signature(sig)
    k = sig.n - 4
    return b[k] - graded_rank(ph.presentation, k)


def h1_deficit(lengths: Sequence) -> int:
    return deficit_from_signature(core.chamber_signature(lengths))


# ---------------------------------------------------------------------------
# right-angled Artin group graphs


@dataclass(frozen=True)
class RaagGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def adjacent(self, u: str, v: str) -> bool:
        return (u, v) in self._edge_set or (v, u) in self._edge_set

    @property
    def _edge_set(self):
        s = self.__dict__.get("_es")
        if s is None:
            s = frozenset(self.edges)
            object.__setattr__(self, "_es", s)
        return s

    def flag_complex(self) -> SimplicialComplex:
        nv = len(self.vertices)
        adj = [0] * nv
        idx = {v: i for i, v in enumerate(self.vertices)}
        for u, v in self.edges:
            adj[idx[u]] |= 1 << idx[v]
            adj[idx[v]] |= 1 << idx[u]
        cliques = []

        def grow(clique, cands):
            if not cands:
                cliques.append(clique)
                return
            for v in members(cands):
                bit = 1 << (v - 1)
                if clique and bit < (clique & -clique):
                    continue
                grow(clique | bit, cands & adj[v - 1] & ~((bit << 1) - 1))

        # Bron-Kerbosch would also do; graphs here have at most ~15 vertices
        for v in range(nv):
            grow(1 << v, adj[v] & ~((1 << (v + 1)) - 1))
        return SimplicialComplex(self.vertices, tuple(cliques))


def _raag_type(sig: ChamberSignature) -> int:
    cls = classify_signature(sig)
    n = sig.n
    if cls.is_special and n >= 6:
        case, i = type_case(n, cls.type)
        if case == 4 and i <= n - 5:
            return i
        if case == 4 and i == n - 4 and n >= 7 and mask_of([n - 4, n - 3]) in sig:
            return i
    raise WrongType(
        "the graph is defined for type {i,n-2,n-1} with i <= n-5, "
        "or i = n-4 with {n-4,n-3,n} short"
    )


def raag_from_signature(sig: ChamberSignature) -> RaagGraph:
    i = _raag_type(sig)
    n = sig.n
    k = len(sig.stratum(1))
    a = [f"a_{j}" for j in range(1, k + 1)]
    b = [f"b_{j}" for j in range(i, n - 2)]
    edges = []
    for j, m in itertools.combinations(range(1, n - 2), 2):
        edges.append((f"a_{j}", f"a_{m}"))
    for j in range(1, i):
        for m in range(i, n - 2):
            edges.append((f"a_{j}", f"b_{m}"))
    for j, m in itertools.combinations(range(i, n - 2), 2):
        edges.append((f"b_{j}", f"b_{m}"))
    for j in range(1, i):
        for m in range(n - 2, k + 1):
            if mask_of([j, m]) in sig:
                edges.append((f"a_{j}", f"a_{m}"))
    return RaagGraph(tuple(a + b), tuple(edges))


def raag_graph(lengths: Sequence) -> RaagGraph:
    return raag_from_signature(core.chamber_signature(lengths))


@dataclass(frozen=True)
class RaagReport:
    nonedge_failures: tuple
    flag_ranks: tuple
    ring_ranks: tuple

    @property
    def passed(self) -> bool:
        if self.nonedge_failures:
            return False
        width = max(len(self.flag_ranks), len(self.ring_ranks))
        f = self.flag_ranks + (0,) * (width - len(self.flag_ranks))
        r = self.ring_ranks + (0,) * (width - len(self.ring_ranks))
        return all(x >= y for x, y in zip(f, r))


def raag_consistency_from_signature(sig: ChamberSignature) -> RaagReport:
    graph = raag_from_signature(sig)
    ph = present_from_signature(sig)
    p = ph.presentation

    def role(v: str) -> str:
        return v.upper()

    failures = []
    for u, v in itertools.combinations(graph.vertices, 2):
        if graph.adjacent(u, v):
            continue
        if role(u) not in p.generators or role(v) not in p.generators:
            continue
        prod = p.element({(role(u), role(v)): 1})
        if not is_zero(p, prod):
            failures.append((u, v))
    flag = graded_ranks(face_ring(graph.flag_complex()))
    return RaagReport(tuple(failures), flag, ph.ranks())


def raag_consistency(lengths: Sequence) -> RaagReport:
    return raag_consistency_from_signature(core.chamber_signature(lengths))
