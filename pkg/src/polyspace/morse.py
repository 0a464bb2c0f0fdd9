"""Critical-point bookkeeping for shrinking the first edge.

Along l_t = (l_1 - t, l_2, ..., l_{n-1}, l_n + t) the chamber changes exactly
when some J+{n}, J inside {2..n-1}, turns from short to long.  Each such event
is a critical point of the cobordism between the two ends, indexed by the
complementary subset of {2..n-1}.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import core
from .core import Mask, mask_of, members, popcount
from .errors import NotOrdered, OutOfRange
from .homology import euler_characteristic
from .taxonomy import ChamberClass, classify, classify_signature, type_case


@dataclass(frozen=True)
class CriticalPoint:
    J: Mask
    index: int
    t: Fraction
    u: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "J": list(members(self.J)),
            "index": self.index,
            "t": core.format_rational(self.t),
            "u": list(self.u),
        }


def _prepare(lengths: Sequence) -> tuple[Fraction, ...]:
    lengths = core.as_lengths(lengths)
    if not core.is_ordered(lengths):
        raise NotOrdered(f"length vector {tuple(map(str, lengths))} is not sorted ascending")
    core._require_generic(core.integer_weights(lengths))
    return lengths


def _signed_sum(lengths, J: Mask) -> Fraction:
    """sum_{j=2..n} u_j l_j with u_j = -1 exactly for j in J."""
    return sum((-q if J >> (j - 1) & 1 else q) for j, q in enumerate(lengths[1:], start=2))


def critical_points(lengths: Sequence) -> list[CriticalPoint]:
    """Critical points q_J, sorted by critical value then by J."""
    lengths = _prepare(lengths)
    n = len(lengths)
    l1 = lengths[0]
    out = []
    for r in range(n - 1):
        for combo in itertools.combinations(range(2, n), r):
            J = mask_of(combo)
            if core.classify_subset(lengths, J) is not core.Shortness.SHORT:
                continue
            if core.classify_subset(lengths, J | 1) is not core.Shortness.LONG:
                continue
            s = _signed_sum(lengths, J)
            # 2t(l_1 + s) = l_1^2 - s^2 with u_1 = +1; l_1 + s > 0 here
            t = (l1 * l1 - s * s) / (2 * (l1 + s))
            u = tuple(-1 if J >> (j - 1) & 1 else 1 for j in range(1, n + 1))
            out.append(CriticalPoint(J, r, t, u))
    out.sort(key=lambda q: (q.t, core.mask_key(q.J)))
    return out


def admissible_epsilon(lengths: Sequence) -> Fraction:
    """Half the smallest gap between l_1 and a chamber-changing time.

    Walls along l_t sit at t = (l_1 - s)/2 for signed sums s with |s| < l_1,
    so every one of them lies strictly below l_1 - epsilon.
    """
    lengths = _prepare(lengths)
    n = len(lengths)
    l1 = lengths[0]
    gaps = [l1]
    for J in range(0, 1 << (n - 2)):
        s = _signed_sum(lengths, J << 1)
        if -l1 < s < l1:
            gaps.append((l1 + s) / 2)
    return min(gaps) / 2


def shrunk_vector(lengths: Sequence, epsilon: Fraction) -> tuple[Fraction, ...]:
    """l_t at t = l_1 - epsilon."""
    lengths = core.as_lengths(lengths)
    t = lengths[0] - epsilon
    return (lengths[0] - t,) + tuple(lengths[1:-1]) + (lengths[-1] + t,)


@dataclass(frozen=True)
class ReductionStep:
    source: tuple[Fraction, ...]
    target: tuple[Fraction, ...]
    epsilon: Fraction
    source_class: ChamberClass
    target_class: ChamberClass
    expected_target_type: Optional[Mask]

    @property
    def type_claim_holds(self) -> Optional[bool]:
        """None when no type is predicted for the target."""
        if self.expected_target_type is None:
            return None
        return self.target_class.is_special and self.target_class.type == self.expected_target_type

    def to_json(self) -> dict:
        return {
            "source": [core.format_rational(q) for q in self.source],
            "target": [core.format_rational(q) for q in self.target],
            "epsilon": core.format_rational(self.epsilon),
            "source_class": self.source_class.tag(),
            "target_class": self.target_class.tag(),
            "expected_target_type": (
                list(members(self.expected_target_type)) if self.expected_target_type is not None else None
            ),
            "type_claim_holds": self.type_claim_holds,
        }


def _expected_type(n: int, cls: ChamberClass) -> Optional[Mask]:
    if not cls.is_special:
        return None
    case, i = type_case(n, cls.type)
    m = n - 1
    if case == 4 and i >= 2:
        return mask_of([i - 1, m - 2, m - 1])
    if case == 2 and n >= 6:
        return mask_of([m - 4, m - 3, m - 1])
    return None


def reduction(lengths: Sequence) -> ReductionStep:
    lengths = _prepare(lengths)
    n = len(lengths)
    if n < 5:
        raise OutOfRange("the reduction step needs n >= 5")
    target = tuple(lengths[1:-1]) + (lengths[-1] + lengths[0],)
    src = classify(lengths)
    return ReductionStep(
        lengths, target, admissible_epsilon(lengths), src, classify(target), _expected_type(n, src)
    )


@dataclass(frozen=True)
class BijectionReport:
    signature: tuple[Mask, ...]
    shrunk_signature: tuple[Mask, ...]
    difference: tuple[Mask, ...]
    expected: tuple[Mask, ...]
    epsilon: Fraction

    @property
    def included(self) -> bool:
        return set(self.shrunk_signature) <= set(self.signature)

    @property
    def passed(self) -> bool:
        return self.included and set(self.difference) == set(self.expected)

    def to_json(self) -> dict:
        def fmt(ms):
            return [list(members(m)) for m in ms]

        return {
            "passed": self.passed,
            "epsilon": core.format_rational(self.epsilon),
            "signature": fmt(self.signature),
            "shrunk_signature": fmt(self.shrunk_signature),
            "difference": fmt(self.difference),
            "expected": fmt(self.expected),
        }


def _ordered_family(lengths: Sequence) -> tuple[Mask, ...]:
    w = core.integer_weights(lengths)
    core._require_generic(w)
    return core.sort_masks(core._ordered_shorts(w))


def check_subset_bijection(lengths: Sequence) -> BijectionReport:
    lengths = _prepare(lengths)
    n = len(lengths)
    eps = admissible_epsilon(lengths)
    before = _ordered_family(lengths)
    after = _ordered_family(shrunk_vector(lengths, eps))
    inner = mask_of(range(2, n))
    diff = core.sort_masks(set(before) - set(after))
    expected = core.sort_masks(inner & ~q.J for q in critical_points(lengths))
    return BijectionReport(before, after, diff, expected, eps)


def index_census(lengths: Sequence) -> tuple[Counter, Counter]:
    """(indices of critical points, n-2-|K| over the removed subsets K)."""
    lengths = _prepare(lengths)
    n = len(lengths)
    rep = check_subset_bijection(lengths)
    by_points = Counter(q.index for q in critical_points(lengths))
    by_sets = Counter(n - 2 - popcount(K) for K in rep.difference)
    return by_points, by_sets


def euler_bookkeeping(lengths: Sequence) -> tuple[int, int]:
    """(chi of the space, chi predicted from critical indices).

    The shrunk end is a product with a circle, so it contributes nothing.  Read
    from that end the handle indices are n-2-|J|; for odd n the boundary of the
    odd-dimensional cobordism has twice its Euler characteristic.
    """
    lengths = _prepare(lengths)
    n = len(lengths)
    chi = euler_characteristic(lengths)
    if n % 2 == 0:
        return chi, 0
    predicted = 2 * sum((-1) ** (n - 2 - q.index) for q in critical_points(lengths))
    return chi, predicted
