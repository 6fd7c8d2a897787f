"""Exact rank and right-kernel computations.

Over the rationals, rows are scaled to integers and reduced by integer
elimination that keeps every row primitive, so entries stay integral and small.  Over any
other field (prime fields, quadratic extensions) plain Gaussian elimination
is used.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from .fields import QQ, field_of


def _infer_field(matrix):
    for row in matrix:
        for x in row:
            if not isinstance(x, (int, Fraction)):
                return field_of(x)
    return QQ


def _integer_rows(matrix) -> list[list[int]]:
    rows = []
    for row in matrix:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        rows.append([int(x * den) for x in row])
    return rows


def _primitive_echelon(rows: list[list[int]], ncols: int):
    """Integer row echelon form; returns (echelon rows, pivot columns).

    Each elimination step forms ``a*row - b*pivot_row`` with ``a/b`` the
    reduced ratio of the pivot entries and then divides the new row by the
    gcd of its entries.  Keeping rows primitive stops the coefficient growth
    that plain fraction-free elimination shows on these sparse matrices.
    The pivot is the entry of least absolute value in its column.
    """
    m = [r[:] for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        p = min((i for i in range(r, len(m)) if m[i][c]), key=lambda i: abs(m[i][c]), default=None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        pc = pr[c]
        for i in range(r + 1, len(m)):
            row = m[i]
            f = row[c]
            if not f:
                continue
            g = gcd(pc, f)
            a, b = pc // g, f // g
            new = [a * x - b * y for x, y in zip(row, pr)]
            content = reduce(gcd, new, 0)
            if content > 1:
                new = [x // content for x in new]
            m[i] = new
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _field_echelon(matrix, ncols: int, field):
    m = [[field(x) for x in row] for row in matrix]
    m = [row for row in m if any(row)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        pr = m[r]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], pr)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def echelon(matrix: Sequence[Sequence], field=None, ncols: int | None = None):
    """Row echelon form ``(rows, pivot_columns)`` over the given (or inferred) field."""
    matrix = [list(r) for r in matrix]
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    field = field or _infer_field(matrix)
    if field == QQ:
        return _primitive_echelon(_integer_rows(matrix), ncols)
    return _field_echelon(matrix, ncols, field)


def rank(matrix: Sequence[Sequence], field=None) -> int:
    matrix = [list(r) for r in matrix]
    if not matrix or not matrix[0]:
        return 0
    return len(echelon(matrix, field)[1])


def nullspace(matrix: Sequence[Sequence], field=None, ncols: int | None = None) -> list[list]:
    """Basis of the right kernel ``{v : M v = 0}``.

    Over QQ each basis vector is scaled to coprime integers (as Fractions)
    with a positive last nonzero entry.  One basis vector per free column.
    """
    matrix = [list(r) for r in matrix]
    if ncols is None:
        if not matrix:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(matrix[0])
    field = field or _infer_field(matrix)
    rows, pivots = echelon(matrix, field, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            row = rows[i]
            s = field.zero
            for j in range(pc + 1, ncols):
                if row[j] and v[j]:
                    s = s + row[j] * v[j]
            v[pc] = -s / field(row[pc])
        if field == QQ:
            v = primitive_vector(v)
        basis.append(v)
    return basis


def rational_rows(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Rational rows spanning the same space as the rows and their conjugates.

    A row over a quadratic field ``QQ(sqrt m)`` is first divided by its
    leading entry; if that makes it rational it contributes one row,
    otherwise it contributes its two coordinate parts ``a`` and ``b`` (from
    ``a + b sqrt m``).  The rank is preserved when the input is closed under
    conjugation, which is how conjugate points enter a matrix.
    """
    out = []
    for row in matrix:
        if all(isinstance(x, (int, Fraction)) for x in row):
            out.append([Fraction(x) for x in row])
            continue
        lead = next((x for x in row if x), None)
        if lead is None:
            out.append([Fraction(0)] * len(row))
            continue
        scaled = [x / lead for x in row]
        parts_a = [Fraction(x.a) if hasattr(x, "b") else Fraction(x) for x in scaled]
        parts_b = [Fraction(x.b) if hasattr(x, "b") else Fraction(0) for x in scaled]
        out.append(parts_a)
        if any(parts_b):
            out.append(parts_b)
    return out


def primitive_vector(v: Sequence) -> list[Fraction]:
    """Scale a rational vector to coprime integers with positive last nonzero entry."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return v
    last = next(x for x in reversed(ints) if x)
    if last < 0:
        g = -g
    return [Fraction(x // g) for x in ints]


def mat_vec(matrix: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in matrix:
        s = 0
        for a, b in zip(row, v):
            s = s + a * b
        out.append(s)
    return out


def is_proportional(u: Sequence, v: Sequence) -> bool:
    """True when ``u`` and ``v`` span the same line (or are both zero)."""
    if len(u) != len(v):
        return False
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if u[i] * v[j] - u[j] * v[i] != 0:
                return False
    return any(u) == any(v)
