"""A small exact simplex solver over the rationals.

Only the case needed for chamber realizability is supported: maximize ``c.x``
subject to ``A x <= b`` and ``x >= 0`` with ``b >= 0``, so the slack basis is
feasible from the start.  Bland's rule guarantees termination.

The tableau is kept in integers by fraction-free (integer) pivoting: every
entry is the true value times the last pivot, and each update divides exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


class Unbounded(Exception):
    pass


def _integer_row(values) -> tuple[list[int], int]:
    """Scale a rational row to integers; returns (row, scale)."""
    fr = [Fraction(v) for v in values]
    den = 1
    for q in fr:
        den = den * q.denominator // math.gcd(den, q.denominator)
    return [int(q * den) for q in fr], den


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence):
    """Return ``(optimum, x)`` as exact Fractions.

    Raises ``Unbounded`` if the objective is unbounded above and ``ValueError``
    if some right-hand side is negative.
    """
    nvar = len(c)
    m = len(A)
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("right-hand sides must be nonnegative")
    width = nvar + m
    flat = [v for arow in A for v in arow] + list(b)
    # scaling every row by a common factor keeps the slack basis an identity
    ints, _ = _integer_row(flat) if flat else ([], 1)
    det = 1
    rows = []
    for r, arow in enumerate(A):
        if len(arow) != nvar:
            raise ValueError("constraint row has wrong length")
        row = ints[r * nvar:(r + 1) * nvar] + [0] * m + [ints[m * nvar + r]]
        row[nvar + r] = 1
        rows.append(row)
    cint, _ = _integer_row(c)
    # objective row holds reduced costs (times det); pivot while any is positive
    obj = cint + [0] * (m + 1)
    basis = [nvar + r for r in range(m)]

    while True:
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        for r, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                if leave is None:
                    leave = r
                    continue
                # compare row[-1]/a with rows[leave][-1]/rows[leave][enter]
                lhs = row[-1] * rows[leave][enter]
                rhs = rows[leave][-1] * a
                if lhs < rhs or (lhs == rhs and basis[r] < basis[leave]):
                    leave = r
        if leave is None:
            raise Unbounded("objective is unbounded")
        prow = rows[leave]
        piv = prow[enter]
        for r, row in enumerate(rows):
            if r != leave:
                f = row[enter]
                rows[r] = [(v * piv - f * pv) // det for v, pv in zip(row, prow)]
        f = obj[enter]
        obj = [(v * piv - f * pv) // det for v, pv in zip(obj, prow)]
        det = piv
        basis[leave] = enter

    # true tableau entries are the stored ones divided by det
    x = [Fraction(0)] * nvar
    for r, var in enumerate(basis):
        if var < nvar:
            x[var] = Fraction(rows[r][-1], det)
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return value, x
