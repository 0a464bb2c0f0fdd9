"""Betti numbers of planar polygon spaces from short-subset counts."""

from __future__ import annotations

from typing import Sequence

from . import core
from .core import ChamberSignature


def a_vector_from_signature(sig: ChamberSignature) -> tuple[int, ...]:
    return sig.a_vector()


def betti_from_signature(sig: ChamberSignature) -> tuple[int, ...]:
    """b_k = a_k + a_{n-3-k}; the empty tuple when the space is empty."""
    if not len(sig):
        return ()
    a = sig.a_vector()
    top = sig.n - 3
    return tuple(a[k] + a[top - k] for k in range(top + 1))


def a_vector(lengths: Sequence) -> tuple[int, ...]:
    return a_vector_from_signature(core.chamber_signature(lengths))


def betti(lengths: Sequence) -> tuple[int, ...]:
    return betti_from_signature(core.chamber_signature(lengths))


def euler_from_betti(b: Sequence[int]) -> int:
    return sum((-1) ** k * v for k, v in enumerate(b))


def euler_characteristic(lengths: Sequence) -> int:
    return euler_from_betti(betti(lengths))
