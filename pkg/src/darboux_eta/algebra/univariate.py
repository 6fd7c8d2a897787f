"""Dense univariate polynomials over a field and root extraction.

Polynomials are lists of coefficients, constant term first.  Root finding
over the rationals locates candidates numerically with mpmath and then
certifies every linear or quadratic factor by exact division, so numerics
never decide an answer.  Over a prime field the roots are enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

import mpmath

from .fields import QQ, PrimeField, QuadraticField, squarefree_rational


def trim(f: list) -> list:
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def degree(f: list) -> int:
    return len(trim(f)) - 1


def poly_sub(f: list, g: list) -> list:
    n = max(len(f), len(g))
    zero = 0
    return trim([(f[i] if i < len(f) else zero) - (g[i] if i < len(g) else zero) for i in range(n)])


def poly_mul(f: list, g: list) -> list:
    if not f or not g:
        return []
    out = [f[0] * 0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
    return trim(out)


def poly_divmod(f: list, g: list, field) -> tuple[list, list]:
    f, g = trim(f), trim(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    f = [field(c) for c in f]
    inv = field.one / field(g[-1])
    q = [field.zero] * max(len(f) - len(g) + 1, 0)
    r = f[:]
    while len(r) >= len(g) and r:
        k = len(r) - len(g)
        c = r[-1] * inv
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = r[k + i] - c * b
        r = trim(r)
    return trim(q), r


def poly_gcd(f: list, g: list, field) -> list:
    """Monic gcd."""
    a, b = trim([field(c) for c in f]), trim([field(c) for c in g])
    while b:
        a, b = b, poly_divmod(a, b, field)[1]
    if not a:
        return []
    inv = field.one / a[-1]
    return [c * inv for c in a]


def derivative(f: list) -> list:
    return trim([f[i] * i for i in range(1, len(f))])


def squarefree_part(f: list, field) -> list:
    """``f / gcd(f, f')``, monic.  Valid in characteristic 0 or when deg f < p."""
    f = trim(f)
    g = poly_gcd(f, derivative(f), field)
    q, r = poly_divmod(f, g, field)
    inv = field.one / q[-1]
    return [c * inv for c in q]


def is_squarefree(f: list, field) -> bool:
    f = trim(f)
    if degree(f) <= 0:
        return True
    return degree(poly_gcd(f, derivative(f), field)) == 0


def evaluate(f: list, x):
    acc = 0 * x
    for c in reversed(f):
        acc = acc * x + c
    return acc


def multiplicity(f: list, factor: list, field) -> int:
    """Largest k with ``factor**k`` dividing ``f``."""
    k = 0
    f = trim(f)
    while f:
        q, r = poly_divmod(f, factor, field)
        if r:
            break
        f = q
        k += 1
    return k


@dataclass
class RootReport:
    """Factorization of a univariate polynomial into certified pieces.

    ``roots`` holds ``(root, multiplicity)`` for roots in the base field;
    ``quadratic`` holds ``(monic quadratic coefficients, multiplicity)`` for
    irreducible quadratic factors; ``unresolved`` lists the degrees of the
    leftover square-free factors whose roots were not certified and
    ``leftover`` holds those factors themselves.
    """

    roots: list = dc_field(default_factory=list)
    quadratic: list = dc_field(default_factory=list)
    unresolved: list = dc_field(default_factory=list)
    leftover: list = dc_field(default_factory=list)

    def add_leftover(self, g: list):
        self.unresolved.append(degree(g))
        self.leftover.append(g)


def _to_integer_poly(f: list) -> list[int]:
    f = [Fraction(c) for c in trim(f)]
    den = 1
    for c in f:
        den = lcm(den, c.denominator)
    return [int(c * den) for c in f]


def _numeric_roots(ints: list[int]):
    digits = max(len(str(abs(c))) for c in ints if c)
    deg = len(ints) - 1
    for attempt in range(4):
        dps = max(40, 2 * digits + 20) * (attempt + 1)
        with mpmath.workdps(dps):
            try:
                roots = mpmath.polyroots(
                    list(reversed(ints)), maxsteps=200 + 100 * deg * (attempt + 1), extraprec=4 * dps
                )
                return roots, dps
            except mpmath.libmp.libhyper.NoConvergence:
                continue
    return None, 0


def _close_to_real(z, tol) -> bool:
    return abs(mpmath.im(z)) <= tol * (1 + abs(z))


def _rational_guess(x, bound: int) -> Fraction:
    text = mpmath.nstr(mpmath.re(x), mpmath.mp.dps - 5, strip_zeros=False)
    return Fraction(text).limit_denominator(bound)


def rational_roots(f: list) -> RootReport:
    """Certified rational roots and rational quadratic factors of ``f`` over QQ."""
    f = trim([Fraction(c) for c in f])
    report = RootReport()
    if degree(f) <= 0:
        return report
    g = squarefree_part(f, QQ)
    if degree(g) == 1:
        root = -g[0] / g[1]
        report.roots.append((root, multiplicity(f, [-root, Fraction(1)], QQ)))
        return report
    ints = _to_integer_poly(g)
    lead = abs(ints[-1])
    approx, dps = _numeric_roots(ints)
    if approx is None:
        report.add_leftover(g)
        return report
    with mpmath.workdps(dps):
        g = _certify_candidates(f, g, approx, lead, report)
    if degree(g) >= 1:
        report.add_leftover(g)
    return report


def _certify_candidates(f, g, approx, lead, report):
    tol = mpmath.mpf(10) ** (-(mpmath.mp.dps // 3))
    remaining = []
    for r in approx:
        if _close_to_real(r, tol):
            cand = _rational_guess(r, lead)
            if evaluate(g, cand) == 0:
                fac = [-cand, Fraction(1)]
                report.roots.append((cand, multiplicity(f, fac, QQ)))
                g = poly_divmod(g, fac, QQ)[0]
                continue
        remaining.append(r)
    used = set()
    for i in range(len(remaining)):
        if i in used:
            continue
        for j in range(i + 1, len(remaining)):
            if j in used:
                continue
            s_, p_ = remaining[i] + remaining[j], remaining[i] * remaining[j]
            if not (_close_to_real(s_, tol) and _close_to_real(p_, tol)):
                continue
            fac = [_rational_guess(p_, lead * lead), -_rational_guess(s_, lead * lead), Fraction(1)]
            q, r = poly_divmod(g, fac, QQ)
            if not r:
                report.quadratic.append((fac, multiplicity(f, fac, QQ)))
                g = q
                used.update((i, j))
                break
    return g


def quadratic_roots(fac: list, base=QQ):
    """Both roots of a monic irreducible quadratic ``x^2 + b x + c`` in its splitting field."""
    c, b, _ = fac
    disc = b * b - 4 * c
    if base == QQ:
        m = squarefree_rational(disc)
        K = QuadraticField(QQ, m)
        scale = QQ.sqrt(Fraction(disc) / m)
    else:
        K = QuadraticField(base, disc)
        scale = base.one
    half = base(Fraction(1, 2)) if base == QQ else base.one / base(2)
    r1 = K.element(-b * half, scale * half)
    return K, (r1, r1.conjugate())


def field_roots(f: list, field) -> RootReport:
    """Roots in ``field``; enumeration for prime fields, certified numerics for QQ."""
    if field == QQ:
        return rational_roots(f)
    f = trim([field(c) for c in f])
    report = RootReport()
    if degree(f) <= 0:
        return report
    if isinstance(field, PrimeField):
        if field.p > 100_000:
            raise ValueError("root enumeration only for small primes")
        rest = squarefree_part(f, field) if degree(f) < field.p else f
        for x in field.elements():
            if evaluate(rest, x) == 0:
                report.roots.append((x, multiplicity(f, [-x, field.one], field)))
                rest = poly_divmod(rest, [-x, field.one], field)[0]
        if degree(rest) > 0:
            report.add_leftover(rest)
        return report
    if isinstance(field, QuadraticField):
        g = squarefree_part(f, field)
        if degree(g) == 1:
            root = -g[0] / g[1]
            report.roots.append((root, multiplicity(f, [-root, field.one], field)))
        elif degree(g) == 2:
            c, b, _ = g
            disc = b * b - 4 * c
            s = field.sqrt(disc)
            if s is None:
                report.add_leftover(g)
            else:
                for root in ((-b + s) / 2, (-b - s) / 2):
                    report.roots.append((root, multiplicity(f, [-root, field.one], field)))
        else:
            report.add_leftover(g)
        return report
    raise ValueError(f"root finding not supported over {field}")
