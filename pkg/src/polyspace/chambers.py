"""Chamber realizability by exact LP and enumeration of all chambers for small n."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import core
from .core import ChamberSignature, Mask, lower_covers, members, popcount, upper_covers
from .errors import InvalidAntichain, OutOfRange, Unrealizable
from .lp import maximize

MAX_ENUM_N = 9


@dataclass(frozen=True)
class RealizabilityProblem:
    """Strict linear constraints on an ordered length vector.

    Each mask in ``must_be_short`` is a subset J of {1..n-1} such that J+{n}
    must be short; each mask in ``must_be_long`` must make J+{n} long.
    """

    n: int
    must_be_short: tuple[Mask, ...]
    must_be_long: tuple[Mask, ...]

    def __post_init__(self):
        if set(self.must_be_short) & set(self.must_be_long):
            raise ValueError("a subset cannot be both short and long")
        limit = 1 << (self.n - 1)
        if any(m >= limit for m in self.must_be_short + self.must_be_long):
            raise ValueError(f"masks must lie inside 1..{self.n - 1}")

    @classmethod
    def for_family(cls, n: int, family: Iterable[Mask]) -> "RealizabilityProblem":
        """Constraints pinning down a down-closed family exactly.

        Since sums are monotone along the partial order for ordered vectors,
        it suffices to make the maximal members short and the minimal
        non-members long.
        """
        fam = frozenset(family)
        ground = n - 1
        maximal = [J for J in fam if not any(K in fam for K in upper_covers(J, ground))]
        if not fam:
            minimal_out = [0]
        else:
            cands = {K for J in fam for K in upper_covers(J, ground)} - fam
            minimal_out = [K for K in cands if all(L in fam for L in lower_covers(K))]
        return cls(n, core.sort_masks(maximal), core.sort_masks(minimal_out))

    def _row(self, J: Mask, sign: int) -> list:
        # sign * (sum over J+{n} minus sum over the rest), in the variables
        # (delta, y_1..y_n) with l_i = delta + y_1 + ... + y_i
        n = self.n
        c = [(1 if (J >> (i - 1) & 1) or i == n else -1) * sign for i in range(1, n + 1)]
        suffix = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            suffix[i] = suffix[i + 1] + c[i]
        return [suffix[0] + 1] + suffix[:n]

    def solve(self) -> Optional[tuple[Fraction, ...]]:
        """Maximize the common slack; return an ordered witness or None."""
        n = self.n
        A = [self._row(J, 1) for J in self.must_be_short]
        A += [self._row(K, -1) for K in self.must_be_long]
        b = [0] * len(A)
        A.append([1] * (n + 1))  # scale: the largest entry is at most 1
        b.append(1)
        c = [1] + [0] * n
        value, x = maximize(c, A, b)
        if value <= 0:
            return None
        delta, y = x[0], x[1:]
        out, acc = [], delta
        for v in y:
            acc += v
            out.append(acc)
        return tuple(out)


def _family_witness(n: int, family: Iterable[Mask]):
    return RealizabilityProblem.for_family(n, family).solve()


def _check_code(n: int, code: Sequence[Mask]) -> tuple[Mask, ...]:
    code = tuple(code)
    limit = 1 << (n - 1)
    for J in code:
        if J < 0 or J >= limit:
            raise InvalidAntichain(f"{core.format_mask(J)} is not a subset of 1..{n - 1}")
    if len(set(code)) != len(code) or not core.is_antichain(code):
        raise InvalidAntichain("genetic code members must be pairwise incomparable")
    return code


def realizable(n: int, code: Sequence[Mask]) -> Optional[tuple[Fraction, ...]]:
    """Ordered generic witness whose genetic code is ``code``, or None."""
    if n < 3:
        raise OutOfRange("n must be at least 3")
    code = _check_code(n, code)
    if any(popcount(J) > n - 3 for J in code):
        return None
    sig = core.down_closure(code, n)
    return _family_witness(n, sig.shorts)


def _small_integer_vector(n: int, witness: Sequence[Fraction], target: ChamberSignature):
    """Round a witness to small integers while staying in the chamber."""
    top = witness[-1]
    for scale in range(n, 400):
        v = tuple(max(1, round(x / top * scale)) for x in witness)
        if core._generic_weights(v) and core.ChamberSignature(n, core._ordered_shorts(v)) == target:
            return tuple(Fraction(x) for x in v)
    den = 1
    for x in witness:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return tuple(Fraction(int(x * den)) for x in witness)


def representative(sig: ChamberSignature) -> tuple[Fraction, ...]:
    witness = _family_witness(sig.n, sig.shorts)
    if witness is None or core.chamber_signature(witness) != sig:
        raise Unrealizable(f"no length vector has signature {sig}")
    return _small_integer_vector(sig.n, witness, sig)


# ---------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class CatalogEntry:
    genetic_code: tuple[Mask, ...]
    signature: ChamberSignature
    representative: tuple[Fraction, ...]
    betti: tuple[int, ...]
    class_tag: str

    def to_json(self) -> dict:
        return {
            "n": self.signature.n,
            "genetic_code": [list(members(m)) for m in self.genetic_code],
            "signature": self.signature.to_lists(),
            "representative": [core.format_rational(q) for q in self.representative],
            "betti": list(self.betti),
            "class": self.class_tag,
        }


@dataclass(frozen=True)
class ChamberCatalog:
    n: int
    entries: tuple[CatalogEntry, ...]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def signatures(self) -> list[ChamberSignature]:
        return [e.signature for e in self.entries]


def signature_sort_key(sig: ChamberSignature):
    return [core.mask_key(m) for m in sig.shorts]


def _expand(args) -> list:
    """Realizable families obtained by adding one minimal non-member."""
    n, family = args
    ground = n - 1
    if not family:
        cands = {0}
    else:
        cands = {K for J in family for K in upper_covers(J, ground)} - family
    out = []
    for K in sorted(cands, key=core.mask_key):
        if popcount(K) > n - 3 or not all(L in family for L in lower_covers(K)):
            continue
        child = family | {K}
        witness = _family_witness(n, child)
        if witness is not None:
            out.append((child, witness))
    return out


def _default_jobs() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _enumerate_witnesses(n: int, jobs: Optional[int] = None) -> dict:
    """Map each chamber signature for n to an LP witness, level by level.

    Every nonempty realizable family arises from a realizable family with one
    fewer member: growing the last entry of an ordered vector makes the sets
    J+{n} long one at a time.  So a breadth-first search from the empty
    family, adding one minimal non-member at a time and keeping only
    LP-feasible children, reaches every chamber.
    """
    if not 3 <= n <= MAX_ENUM_N:
        raise OutOfRange(f"chamber enumeration supports 3 <= n <= {MAX_ENUM_N}, got {n}")
    jobs = jobs or _default_jobs()
    start = frozenset()
    found = {start: _family_witness(n, start)}
    level = [start]
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        while level:
            tasks = [(n, fam) for fam in level]
            if pool is not None and len(tasks) > 8:
                chunk = max(1, len(tasks) // (4 * jobs))
                results = list(pool.map(_expand, tasks, chunksize=chunk))
            else:
                results = [_expand(t) for t in tasks]
            level = []
            for children in results:
                for child, witness in children:
                    if child not in found:
                        found[child] = witness
                        level.append(child)
    finally:
        if pool is not None:
            pool.shutdown()
    return {ChamberSignature(n, tuple(f)): w for f, w in found.items()}


def enumerate_signatures(n: int, jobs: Optional[int] = None) -> list[ChamberSignature]:
    return sorted(_enumerate_witnesses(n, jobs), key=signature_sort_key)


def _entry(args) -> CatalogEntry:
    from .homology import betti_from_signature
    from .taxonomy import classify_signature

    sig, witness = args
    rep = _small_integer_vector(sig.n, witness, sig)
    return CatalogEntry(
        core.genetic_code(sig), sig, rep, betti_from_signature(sig), classify_signature(sig).tag()
    )


def catalog_entry(sig: ChamberSignature) -> CatalogEntry:
    witness = _family_witness(sig.n, sig.shorts)
    if witness is None:
        raise Unrealizable(f"no length vector has signature {sig}")
    return _entry((sig, witness))


def entry_for_lengths(lengths: Sequence) -> CatalogEntry:
    """Catalog entry whose representative is the sorted input vector."""
    from .homology import betti_from_signature
    from .taxonomy import classify_signature

    sig = core.chamber_signature(lengths)
    rep, _ = core.order_and_track(lengths)
    return CatalogEntry(
        core.genetic_code(sig), sig, rep, betti_from_signature(sig), classify_signature(sig).tag()
    )


def enumerate_chambers(n: int, jobs: Optional[int] = None) -> ChamberCatalog:
    found = _enumerate_witnesses(n, jobs)
    items = sorted(found.items(), key=lambda kv: signature_sort_key(kv[0]))
    jobs = jobs or _default_jobs()
    if jobs > 1 and len(items) > 64:
        with ProcessPoolExecutor(jobs) as pool:
            entries = list(pool.map(_entry, items, chunksize=max(1, len(items) // (4 * jobs))))
    else:
        entries = [_entry(it) for it in items]
    return ChamberCatalog(n, tuple(entries))
