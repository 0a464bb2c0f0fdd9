"""Chamber classes (empty, disconnected, normal, special of a given type) and
annihilator-rank invariants computed from short subsets."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence

from . import core
from .core import ChamberSignature, Mask, mask_of, members, popcount
from .errors import NotSpecial, OutOfRange
from .homology import betti_from_signature

EMPTY = "empty"
DISCONNECTED = "disconnected"
NORMAL = "normal"
SPECIAL = "special"


@dataclass(frozen=True)
class ChamberClass:
    kind: str
    type: Optional[Mask] = None  # three-element subset of 1..n-1 for special chambers

    @property
    def is_special(self) -> bool:
        return self.kind == SPECIAL

    def type_members(self) -> tuple[int, ...]:
        return members(self.type) if self.type is not None else ()

    def tag(self) -> str:
        if self.kind == SPECIAL:
            return "special" + core.format_mask(self.type)
        return self.kind

    def __str__(self):
        if self.kind == SPECIAL:
            return f"Special type {core.format_mask(self.type)}"
        return self.kind.capitalize()


def parse_class_tag(tag: str) -> ChamberClass:
    if tag.startswith(SPECIAL):
        inner = tag[len(SPECIAL):].strip("{}")
        return ChamberClass(SPECIAL, mask_of(int(x) for x in inner.split(",")))
    if tag not in (EMPTY, DISCONNECTED, NORMAL):
        raise ValueError(f"unknown class tag {tag!r}")
    return ChamberClass(tag)


def _largest(masks: Sequence[Mask]) -> Mask:
    for J in masks:
        if all(core.poset_leq(K, J) for K in masks):
            return J
    raise AssertionError("stratum is not totally ordered")


def classify_signature(sig: ChamberSignature) -> ChamberClass:
    n = sig.n
    if not len(sig):
        return ChamberClass(EMPTY)
    if sig.stratum(n - 3):
        return ChamberClass(DISCONNECTED)
    below = sig.stratum(n - 4) if n >= 4 else ()
    if not below:
        return ChamberClass(NORMAL)
    top = _largest(below)
    return ChamberClass(SPECIAL, core.full_mask(n - 1) & ~top)


def classify(lengths: Sequence) -> ChamberClass:
    return classify_signature(core.chamber_signature(lengths))


def possible_types(n: int) -> list[Mask]:
    """All three-subsets that can occur as the type of a special chamber."""
    out = [mask_of([i, n - 2, n - 1]) for i in range(1, n - 2)]
    if n >= 5:
        out += [mask_of([n - 4, n - 3, n - 1]), mask_of([n - 4, n - 3, n - 2])]
    return out


# ---------------------------------------------------------------------------
# annihilator ranks


def _check_range(n: int, k: int, i: int) -> None:
    if k < 1 or i < 1 or k + i > n - 3:
        raise OutOfRange(f"need k >= 1, i >= 1 and k + i <= {n - 3}; got k={k}, i={i}")


def _uncovered(sig: ChamberSignature, k: int, level: int) -> int:
    upper = sig.stratum(level)
    return sum(1 for I in sig.stratum(k) if not any(I & J == I for J in upper))


def extension_free_count(sig: ChamberSignature, k: int, i: int) -> int:
    """#{I in S_k : I is contained in no member of S_{k+i}}."""
    _check_range(sig.n, k, i)
    return _uncovered(sig, k, k + i)


def annihilator_rank_from_signature(sig: ChamberSignature, k: int, i: int) -> int:
    """Rank of {x in H^k : x * y_1 ... y_i = 0 for all y_j in H^1}.

    Below the top degree this is the extension-free count.  When k+i = n-3
    and S_{n-4} is nonempty there are degree-one classes Y_J (J in S_{n-4}),
    and X_I * X_K * Y_J hits the top class whenever I is inside J, so those I
    drop out as well.
    """
    n = sig.n
    _check_range(n, k, i)
    if k + i == n - 3 and not sig.stratum(n - 3):
        # S_{n-3} is empty here, so only S_{n-4} constrains
        return _uncovered(sig, k, n - 4)
    return _uncovered(sig, k, k + i)


def annihilator_rank_combinatorial(lengths: Sequence, k: int, i: int) -> int:
    return annihilator_rank_from_signature(core.chamber_signature(lengths), k, i)


def _rank_or_zero(sig: ChamberSignature, k: int, i: int) -> int:
    if k < 1 or i < 1 or k + i > sig.n - 3:
        return 0
    return annihilator_rank_from_signature(sig, k, i)


@dataclass(frozen=True)
class DInvariants:
    d1: int
    d2: int
    d3: int

    def as_tuple(self):
        return (self.d1, self.d2, self.d3)


def d_invariants_from_signature(sig: ChamberSignature) -> DInvariants:
    if not classify_signature(sig).is_special:
        raise NotSpecial(f"chamber {sig} is not special")
    n = sig.n
    return DInvariants(
        _rank_or_zero(sig, 1, n - 5), _rank_or_zero(sig, 2, n - 6), _rank_or_zero(sig, n - 5, 1)
    )


def d_invariants(lengths: Sequence) -> DInvariants:
    return d_invariants_from_signature(core.chamber_signature(lengths))


def annihilator_table(sig: ChamberSignature) -> tuple:
    """All in-range ranks as a sorted tuple of ((k, i), rank)."""
    n = sig.n
    return tuple(
        ((k, i), annihilator_rank_from_signature(sig, k, i))
        for k in range(1, n - 3)
        for i in range(1, n - 2 - k)
    )


# ---------------------------------------------------------------------------
# closed-form Betti cross-check for special chambers


@dataclass(frozen=True)
class CrosscheckReport:
    type: Mask
    case: int
    b1_formula: int
    b1_actual: int
    b2_formula: Optional[int]
    b2_actual: Optional[int]

    @property
    def passed(self) -> bool:
        if self.b1_formula != self.b1_actual:
            return False
        return self.b2_formula is None or self.b2_formula == self.b2_actual


def type_case(n: int, T: Mask) -> tuple[int, Optional[int]]:
    """Which family a special type belongs to: (case number, i for case 4)."""
    if n >= 5 and T == mask_of([n - 4, n - 3, n - 2]):
        return 1, None
    if n >= 5 and T == mask_of([n - 4, n - 3, n - 1]):
        return 2, None
    if T == mask_of([n - 3, n - 2, n - 1]):
        return 3, None
    low = members(T)[0]
    if T == mask_of([low, n - 2, n - 1]) and low <= n - 4:
        return 4, low
    raise AssertionError(f"unexpected type {core.format_mask(T)} for n={n}")


def bettispecial_from_signature(sig: ChamberSignature) -> CrosscheckReport:
    cls = classify_signature(sig)
    if not cls.is_special:
        raise NotSpecial(f"chamber {sig} is not special")
    n = sig.n
    d = d_invariants_from_signature(sig)
    b = betti_from_signature(sig)
    case, i = type_case(n, cls.type)
    b2 = None
    if case == 1:
        b1 = n + 3
        b2 = comb(n - 5, 2) + 8 * (n - 5) + 1
    elif case == 2:
        b1 = n + 1 + d.d1
        b2 = comb(n - 5, 2) + 6 * (n - 5) + 1 + d.d2 + d.d3
    elif case == 3:
        b1 = n - 3 + d.d1
    else:
        b1 = 2 * n - 5 - i + d.d1
        if i <= n - 5:
            b2 = comb(n - 3, 2) + sum(range(i - 1, n - 3)) + d.d2 + d.d3
    b2_actual = b[2] if b2 is not None else None
    return CrosscheckReport(cls.type, case, b1, b[1], b2, b2_actual)


def bettispecial_crosscheck(lengths: Sequence) -> CrosscheckReport:
    return bettispecial_from_signature(core.chamber_signature(lengths))


@dataclass(frozen=True)
class SeparationReport:
    checked: int
    violations: tuple  # ((betti, d), types) for each clash

    @property
    def passed(self) -> bool:
        return not self.violations


def sametype_separation(signatures: Iterable[ChamberSignature]) -> SeparationReport:
    """Special chambers sharing Betti numbers and d-invariants must share a type."""
    groups: dict = {}
    checked = 0
    for sig in signatures:
        cls = classify_signature(sig)
        if not cls.is_special:
            continue
        checked += 1
        key = (betti_from_signature(sig), d_invariants_from_signature(sig).as_tuple())
        groups.setdefault(key, set()).add(cls.type)
    bad = tuple(
        (key, tuple(sorted(types, key=core.mask_key)))
        for key, types in sorted(groups.items())
        if len(types) > 1
    )
    return SeparationReport(checked, bad)
