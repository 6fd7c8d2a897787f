"""Square-freeness and coprimality tests without multivariate gcds.

A plane curve is reduced exactly when its restriction to a general line is
square-free, and two affine polynomials share a factor exactly when their
resultant vanishes after a shear that makes both leading coefficients
constant.  Both tests draw their random choices from a seeded generator so
runs are reproducible.
"""

from __future__ import annotations

import random

from .fields import PrimeField
from .poly import Polynomial, resultant
from .univariate import is_squarefree as univariate_squarefree

DEFAULT_SEED = 20_240_611


def _random_scalar(field, rng: random.Random, bound: int = 97):
    if isinstance(field, PrimeField):
        return field(rng.randrange(field.p))
    return field(rng.randint(-bound, bound))


def restrict_to_line(F: Polynomial, p, q) -> list:
    """Coefficients (constant first) of ``t -> F(p + t q)`` for homogeneous or affine ``F``."""
    t = Polynomial.variable("t", ("t",), F.field)
    images = {v: t * b + a for v, a, b in zip(F.variables, p, q)}
    G = F.compose(images, ("t",))
    deg = G.degree()
    return [G.coefficient((k,)) for k in range(deg + 1)]


def is_squarefree_curve(F: Polynomial, tries: int = 30, seed: int = DEFAULT_SEED) -> bool:
    """Whether the homogeneous polynomial ``F`` has no repeated factor.

    A square-free restriction to some line certifies the answer ``True``;
    ``False`` means every sampled line gave a repeated root.
    """
    if F.degree() <= 1:
        return bool(F)
    rng = random.Random(seed)
    n = F.nvars
    for _ in range(tries):
        p = [_random_scalar(F.field, rng) for _ in range(n)]
        q = [_random_scalar(F.field, rng) for _ in range(n)]
        coeffs = restrict_to_line(F, p, q)
        if len(coeffs) - 1 != F.degree():
            continue
        if univariate_squarefree(coeffs, F.field):
            return True
    return False


def shear(f: Polynomial, c, var_from: str = "x", var_to: str = "y") -> Polynomial:
    """``f(x + c y, y)`` (affine, or with Z untouched in homogeneous variables)."""
    vs = f.variables
    images = {var_from: Polynomial.variable(var_from, vs, f.field) + Polynomial.variable(var_to, vs, f.field) * c}
    return f.compose(images)


def coprime(f: Polynomial, g: Polynomial, seed: int = DEFAULT_SEED, tries: int = 8) -> bool:
    """Whether two affine polynomials in ``(x, y)`` have no common factor."""
    if not f or not g:
        other = g if not f else f
        return other.is_constant() and bool(other)
    if f.is_constant() or g.is_constant():
        return True
    rng = random.Random(seed)
    x, y = f.variables
    for _ in range(tries):
        c = _random_scalar(f.field, rng)
        fs, gs = shear(f, c, x, y), shear(g, c, x, y)
        if fs.degree_in(y) != fs.degree() or gs.degree_in(y) != gs.degree():
            continue
        return bool(resultant(fs, gs, y))
    raise ArithmeticError("no admissible shear found")


def vanishing_order(coeffs: list) -> int:
    """Order of vanishing at 0 of a univariate coefficient list."""
    for k, c in enumerate(coeffs):
        if c:
            return k
    return len(coeffs) if coeffs else 0

