"""Short/long subset calculus for length vectors.

Subsets of the ground set {1, ..., n} are encoded as integer bitmasks where
element ``i`` is stored in bit ``i - 1``.  All comparisons are done on integer
weights obtained by clearing denominators, so no floating point arithmetic is
ever involved.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InvalidLengthVector, NonGeneric

MAX_N = 24

Mask = int
Lengths = tuple  # tuple of Fraction


# ---------------------------------------------------------------------------
# masks


def mask_of(indices: Iterable[int]) -> Mask:
    m = 0
    for i in indices:
        if not 1 <= i <= MAX_N:
            raise ValueError(f"index {i} outside 1..{MAX_N}")
        m |= 1 << (i - 1)
    return m


def members(mask: Mask) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: Mask) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> Mask:
    return (1 << n) - 1


def mask_key(mask: Mask):
    """Sort key: by cardinality, then lexicographically on the sorted members."""
    return (popcount(mask), members(mask))


def sort_masks(masks: Iterable[Mask]) -> tuple[Mask, ...]:
    return tuple(sorted(set(masks), key=mask_key))


def format_mask(mask: Mask) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


# ---------------------------------------------------------------------------
# length vectors


def as_lengths(values: Iterable) -> Lengths:
    """Validate and convert to a tuple of exact positive rationals."""
    out = []
    for v in values:
        if isinstance(v, float):
            raise InvalidLengthVector("floating point lengths are not accepted; use Fraction or 'p/q'")
        q = Fraction(v)
        if q <= 0:
            raise InvalidLengthVector(f"length {q} is not positive")
        out.append(q)
    if len(out) < 3:
        raise InvalidLengthVector(f"need at least 3 lengths, got {len(out)}")
    if len(out) > MAX_N:
        raise InvalidLengthVector(f"at most {MAX_N} lengths are supported, got {len(out)}")
    return tuple(out)


def parse_lengths(text: str) -> Lengths:
    """Parse ``"1,1,2,2,3"`` or ``"1/2, 3/4, 1"`` into a length vector."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        values = [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidLengthVector(f"cannot parse lengths {text!r}: {exc}") from None
    return as_lengths(values)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def integer_weights(lengths: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to coprime positive integers (same chamber)."""
    lengths = as_lengths(lengths)
    den = 1
    for q in lengths:
        den = den * q.denominator // math.gcd(den, q.denominator)
    ints = [int(q * den) for q in lengths]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(v // g for v in ints)


def _subset_sums(weights: Sequence[int]) -> list[int]:
    sums = [0] * (1 << len(weights))
    for m in range(1, len(sums)):
        low = m & -m
        sums[m] = sums[m ^ low] + weights[low.bit_length() - 1]
    return sums


# ---------------------------------------------------------------------------
# short / long


class Shortness(enum.Enum):
    SHORT = "short"
    LONG = "long"
    DEGENERATE = "degenerate"


def classify_subset(lengths: Sequence, J: Mask) -> Shortness:
    lengths = as_lengths(lengths)
    if J >> len(lengths):
        raise ValueError(f"subset {format_mask(J)} is not contained in 1..{len(lengths)}")
    inside = sum(q for i, q in enumerate(lengths) if J >> i & 1)
    outside = sum(lengths) - inside
    if inside < outside:
        return Shortness.SHORT
    if inside > outside:
        return Shortness.LONG
    return Shortness.DEGENERATE


def _generic_weights(w: Sequence[int]) -> bool:
    total = sum(w)
    if total % 2:
        return True
    half = total // 2
    # every subset of {1..n} either avoids n or contains it
    last = w[-1]
    for s in _subset_sums(w[:-1]):
        if s == half or s + last == half:
            return False
    return True


def is_generic(lengths: Sequence) -> bool:
    return _generic_weights(integer_weights(lengths))


def order_and_track(lengths: Sequence) -> tuple[Lengths, tuple[int, ...]]:
    """Stable sort; ``sigma[j-1]`` is the original index of the j-th smallest entry."""
    lengths = as_lengths(lengths)
    sigma = tuple(sorted(range(1, len(lengths) + 1), key=lambda i: lengths[i - 1]))
    return tuple(lengths[i - 1] for i in sigma), sigma


def is_ordered(lengths: Sequence) -> bool:
    return all(a <= b for a, b in zip(lengths, lengths[1:]))


def _require_generic(w: Sequence[int]) -> None:
    if not _generic_weights(w):
        raise NonGeneric(f"length vector {tuple(w)} (scaled) lies on a wall")


def _ordered_shorts(w: Sequence[int]) -> tuple[Mask, ...]:
    """All J in {1..n-1} with J+{n} short, for sorted integer weights."""
    total = sum(w)
    last = w[-1]
    return tuple(m for m, s in enumerate(_subset_sums(w[:-1])) if 2 * (s + last) < total)


def short_sets(lengths: Sequence, k: int) -> frozenset[Mask]:
    """The k-th stratum: k-subsets J of {1..n-1} with J+{n} short.

    For an unordered vector the strata of the sorted vector are pulled back to
    the original indices.
    """
    ordered, sigma = order_and_track(lengths)
    w = integer_weights(ordered)
    _require_generic(w)
    out = set()
    for m in _ordered_shorts(w):
        if popcount(m) != k:
            continue
        out.add(mask_of(sigma[i - 1] for i in members(m)))
    return frozenset(out)


# ---------------------------------------------------------------------------
# the shifted partial order on subsets


def poset_leq(J1: Mask, J2: Mask) -> bool:
    """J1 <= J2 iff an order-preserving injection J1 -> J2 with x <= phi(x) exists."""
    a, b = members(J1), members(J2)
    if len(a) > len(b):
        return False
    off = len(b) - len(a)
    return all(x <= b[off + t] for t, x in enumerate(a))


@lru_cache(maxsize=None)
def lower_covers(mask: Mask) -> tuple[Mask, ...]:
    """Immediate predecessors: drop element 1, or move some j down to a free j-1."""
    out = []
    if mask & 1:
        out.append(mask ^ 1)
    for j in members(mask):
        if j >= 2 and not mask >> (j - 2) & 1:
            out.append(mask ^ (1 << (j - 1)) ^ (1 << (j - 2)))
    return tuple(out)


@lru_cache(maxsize=None)
def upper_covers(mask: Mask, ground: int) -> tuple[Mask, ...]:
    """Immediate successors inside {1..ground}."""
    out = []
    if not mask & 1:
        out.append(mask | 1)
    for j in members(mask):
        if j < ground and not mask >> j & 1:
            out.append(mask ^ (1 << (j - 1)) ^ (1 << j))
    return tuple(out)


# ---------------------------------------------------------------------------
# chambers


@dataclass(frozen=True)
class ChamberSignature:
    """The family of J in {1..n-1} with J+{n} short, for the ordered representative."""

    n: int
    shorts: tuple[Mask, ...]

    def __post_init__(self):
        object.__setattr__(self, "shorts", sort_masks(self.shorts))

    def __contains__(self, J: Mask) -> bool:
        return J in self._set

    def __len__(self):
        return len(self.shorts)

    def __iter__(self):
        return iter(self.shorts)

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.shorts)
            object.__setattr__(self, "_cached_set", s)
        return s

    def stratum(self, k: int) -> tuple[Mask, ...]:
        return tuple(m for m in self.shorts if popcount(m) == k)

    def a_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.n - 2)
        for m in self.shorts:
            counts[popcount(m)] += 1
        return tuple(counts)

    def to_lists(self) -> list[list[int]]:
        return [list(members(m)) for m in self.shorts]

    def __str__(self):
        return "{" + ", ".join(format_mask(m) if m else "{}" for m in self.shorts) + "}"


GeneticCode = tuple  # tuple of masks, sorted with mask_key


def chamber_signature(lengths: Sequence) -> ChamberSignature:
    ordered, _ = order_and_track(lengths)
    w = integer_weights(ordered)
    _require_generic(w)
    return ChamberSignature(len(w), _ordered_shorts(w))


def maximal_elements(masks: Iterable[Mask]) -> GeneticCode:
    masks = sort_masks(masks)
    return tuple(J for J in masks if not any(J != K and poset_leq(J, K) for K in masks))


def minimal_elements(masks: Iterable[Mask]) -> tuple[Mask, ...]:
    masks = sort_masks(masks)
    return tuple(J for J in masks if not any(J != K and poset_leq(K, J) for K in masks))


def genetic_code(sig: ChamberSignature) -> GeneticCode:
    return maximal_elements(sig.shorts)


def is_antichain(masks: Iterable[Mask]) -> bool:
    masks = list(masks)
    return all(
        not poset_leq(a, b) for i, a in enumerate(masks) for j, b in enumerate(masks) if i != j
    )


def down_closure(antichain: Iterable[Mask], n: int) -> ChamberSignature:
    antichain = tuple(antichain)
    shorts = [I for I in range(1 << (n - 1)) if any(poset_leq(I, J) for J in antichain)]
    return ChamberSignature(n, tuple(shorts))


def same_chamber(l1: Sequence, l2: Sequence) -> bool:
    l1, l2 = as_lengths(l1), as_lengths(l2)
    if len(l1) != len(l2):
        raise DimensionMismatch(f"length vectors have sizes {len(l1)} and {len(l2)}")
    return chamber_signature(l1) == chamber_signature(l2)
