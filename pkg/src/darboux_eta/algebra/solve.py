"""Common zeros of bivariate polynomials over the base field.

A random invertible linear change of coordinates makes the first
polynomial monic in the second variable and separates the first
coordinates of the common zeros.  Those coordinates are roots of a gcd of
resultants; each is lifted by a univariate gcd in the second variable.
Roots in quadratic extensions of the rationals are produced together with
their conjugates; anything else is reported as unresolved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .fields import QQ, PrimeField
from .poly import Polynomial, resultant
from .numberfield import NumberField, ReducibleModulus, split_modulus
from .univariate import field_roots, poly_gcd, quadratic_roots, squarefree_part, trim

DEFAULT_SEED = 7


class SolveError(ArithmeticError):
    pass


@dataclass
class CommonZeros:
    """Points ``(x, y)``.

    Coordinates lie in the base field, a quadratic field (each conjugate
    listed), or a :class:`NumberField` whose generator is a generic root of
    a resultant factor (one entry standing for all conjugates; see
    :func:`orbit_size`).  ``unresolved`` lists degrees of factors that could
    not be followed.
    """

    points: list = dc_field(default_factory=list)
    unresolved: list = dc_field(default_factory=list)
    change: tuple = (0, 0)


def univariate_coefficients(f: Polynomial, var_index: int) -> list:
    """Coefficient list (constant first) of a polynomial involving one variable only."""
    deg = max((e[var_index] for e in f.terms), default=-1)
    out = [f.field.zero] * (deg + 1)
    for e, c in f.terms.items():
        if any(k for i, k in enumerate(e) if i != var_index):
            raise SolveError("expected a univariate polynomial")
        out[e[var_index]] = c
    return out


def _random_change(rng: random.Random):
    while True:
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        if 1 - a * b != 0 and (a, b) != (0, 0):
            return a, b


def _roots_with_fields(report, base):
    out = [(r, base) for r, _ in report.roots]
    for fac, _ in report.quadratic:
        K, (r1, r2) = quadratic_roots(fac, base)
        out.append((r1, K))
        out.append((r2, K))
    return out


class _NotSeparated(Exception):
    pass


def _lift(moved, s0, K, field, a, b):
    """The common zero over ``s = s0`` (in moved coordinates), mapped back; None if there is none."""
    vs = moved[0].variables
    gy = []
    for h in moved:
        hK = h if K == field else h.change_field(K)
        hs = hK.compose({vs[0]: Polynomial.constant(s0, vs, K)})
        if hs:
            gy = poly_gcd(gy, univariate_coefficients(hs, 1), K)
    gy = trim(gy)
    if len(gy) <= 1:
        return None  # the resultant root lifts to no common zero
    gy = squarefree_part(gy, K)
    if len(gy) > 2:
        raise _NotSeparated
    t0 = -gy[0] / gy[1]
    return (s0 + t0 * a, s0 * b + t0)


def orbit_size(value) -> int:
    """Number of conjugate points a coordinate stands for (a generic root of a factor)."""
    K = getattr(value, "field", None)
    return K.degree if isinstance(K, NumberField) else 1


def common_zeros(polys: Sequence[Polynomial], seed: int = DEFAULT_SEED, tries: int = 8) -> CommonZeros:
    """All common zeros of bivariate polynomials over the base field (and, over QQ,
    quadratic extensions).  The zero set must be finite."""
    polys = [p for p in polys if p]
    if not polys:
        raise SolveError("every polynomial is zero")
    field = polys[0].field
    if not (field == QQ or isinstance(field, PrimeField)):
        raise SolveError(f"zero finding is implemented over QQ and prime fields, not {field}")
    vs = polys[0].variables
    if any(p.is_constant() for p in polys):
        return CommonZeros()
    rng = random.Random(seed)
    x, y = (Polynomial.variable(v, vs, field) for v in vs)
    for _ in range(tries):
        a, b = _random_change(rng)
        # new coordinates (s, t) with x = s + a t, y = b s + t
        moved = [p.compose({vs[0]: x + y * a, vs[1]: x * b + y}) for p in polys]
        lead = moved[0]
        if lead.degree_in(vs[1]) != lead.degree():
            continue
        others = moved[1:]
        g = None
        for i, other in enumerate(others):
            res = resultant(lead, other, vs[1])
            if not res and len(others) > 1:
                # other shares a factor with lead; a combination with the next
                # polynomial keeps the span (1 + k P is invertible for k > 1)
                k = rng.randint(2, 5)
                res = resultant(lead, other + others[(i + 1) % len(others)] * k, vs[1])
            r = univariate_coefficients(res, 0)
            g = r if g is None else poly_gcd(g, r, field)
        if g is None:
            raise SolveError("need at least two polynomials")
        g = trim(g)
        if not g:
            raise SolveError("the polynomials share a common factor")
        if len(g) == 1:
            return CommonZeros(change=(a, b))
        report = field_roots(g, field)
        result = CommonZeros(change=(a, b))
        try:
            for s0, K in _roots_with_fields(report, field):
                point = _lift(moved, s0, K, field, a, b)
                if point is not None:
                    result.points.append(point)
            queue = list(report.leftover)
            while queue:
                h = queue.pop()
                if len(trim(h)) == 2:
                    s0 = -h[0] / h[1]
                    K = field
                else:
                    K = NumberField(field, h)
                    s0 = K.generator
                try:
                    point = _lift(moved, s0, K, field, a, b)
                except ReducibleModulus as exc:
                    queue.extend(split_modulus(h, exc.factor, field))
                    continue
                if point is not None:
                    result.points.append(point)
        except _NotSeparated:
            continue
        return result
    raise SolveError("could not separate the common zeros by a linear change")


__all__ = ["CommonZeros", "SolveError", "common_zeros", "orbit_size", "univariate_coefficients"]
