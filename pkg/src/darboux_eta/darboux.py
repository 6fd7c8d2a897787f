"""The inverse problem: forms that admit a given curve configuration.

A form ``omega = P dx + Q dy`` has integral curves ``C_1, ..., C_r`` with
cofactors ``K_i dx^dy`` exactly when ``C_ix Q - C_iy P - C_i K_i = 0`` for
every ``i``.  In homogeneous coordinates this is a linear system in the
coefficients of ``P, Q`` (degree ``d``) and ``K_i`` (degree ``d - 1``), so the
space of solutions in a fixed degree is a kernel computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb
from typing import Sequence

from .algebra.fields import QQ
from .algebra.forms import AFFINE, Form1, Form2, exterior_derivative, gradient, wedge
from .algebra.linalg import nullspace
from .algebra.poly import NotDivisible, Polynomial, exact_divide, monomials
from .algebra.structure import coprime, is_squarefree_curve
from .projective import HOMOGENEOUS, LinearChange, affine_part, homogenize_polynomial


class ConfigurationError(ValueError):
    """Invalid curve configuration (multiple factors, component at infinity, ...)."""


class NotIntegralCurve(NotDivisible):
    """``dC ^ omega`` is not divisible by ``C``."""


@dataclass(frozen=True)
class CurveConfiguration:
    """Ordered reduced components ``C_1, ..., C_r``, homogeneous in ``(X, Y, Z)``.

    The line at infinity ``Z = 0`` is never a component; it is handled
    separately by the chart at infinity.
    """

    components: tuple
    names: tuple = ()
    check: bool = dc_field(default=True, compare=False)

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ConfigurationError("a configuration needs at least one component")
        names = tuple(self.names) or tuple(f"C{i + 1}" for i in range(len(comps)))
        if len(names) != len(comps):
            raise ConfigurationError("one name per component required")
        object.__setattr__(self, "names", names)
        fields = {C.field for C in comps}
        if len(fields) != 1:
            raise ConfigurationError("components over different fields")
        for name, C in zip(names, comps):
            if C.variables != HOMOGENEOUS:
                raise ConfigurationError(f"{name} must be a polynomial in {HOMOGENEOUS}")
            if not C.is_homogeneous() or C.degree() < 1:
                raise ConfigurationError(f"{name} is not a homogeneous polynomial of positive degree")
            if not any(e[2] == 0 for e in C.terms):
                raise ConfigurationError(f"{name} contains the line at infinity Z = 0 as a factor")
        if self.check and not is_squarefree_curve(self.product):
            raise ConfigurationError("the configuration has a multiple factor or repeated component")

    @classmethod
    def from_affine(cls, components: Sequence[Polynomial], names: Sequence[str] = (), check: bool = True):
        return cls(tuple(homogenize_polynomial(c) for c in components), tuple(names), check)

    @property
    def field(self):
        return self.components[0].field

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def degrees(self) -> tuple:
        return tuple(C.degree() for C in self.components)

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    @property
    def product(self) -> Polynomial:
        out = self.components[0]
        for C in self.components[1:]:
            out = out * C
        return out

    def affine_components(self) -> tuple:
        return tuple(affine_part(C) for C in self.components)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def transform(self, change: LinearChange) -> "CurveConfiguration":
        return CurveConfiguration(
            tuple(change.apply_polynomial(C) for C in self.components), self.names, check=False
        )

    def change_field(self, field, convert=None) -> "CurveConfiguration":
        return CurveConfiguration(
            tuple(C.change_field(field, convert) for C in self.components), self.names, check=False
        )


@dataclass(frozen=True)
class DarbouxSolution:
    """Homogeneous ``P, Q`` of degree ``d`` and cofactors ``K_i`` of degree ``d - 1``."""

    P: Polynomial
    Q: Polynomial
    cofactors: tuple
    degree: int

    def form(self) -> Form1:
        """The affine form ``P(x, y, 1) dx + Q(x, y, 1) dy``."""
        return Form1(AFFINE, (affine_part(self.P), affine_part(self.Q)), self.degree)

    def affine_cofactors(self) -> tuple:
        return tuple(Form2(AFFINE, affine_part(K), self.degree - 1) for K in self.cofactors)


@dataclass(frozen=True)
class SolutionSpace:
    degree: int
    basis: tuple
    trivial: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def trivial_dimension(self) -> int:
        return len(self.trivial)

    @property
    def dimension_mod_trivial(self) -> int:
        return self.dimension - self.trivial_dimension


def darboux_matrix(cfg: CurveConfiguration) -> list[list[Polynomial]]:
    """Rows ``(C_iX, C_iY, 0, ..., C_i, ..., 0)``; acts on ``(Q, -P, -K_1, ..., -K_r)``."""
    zero = Polynomial.zero(HOMOGENEOUS, cfg.field)
    rows = []
    for i, C in enumerate(cfg.components):
        row = [C.diff("X"), C.diff("Y")] + [zero] * cfg.r
        row[2 + i] = C
        rows.append(row)
    return rows


def _cofactor_homogeneous(C: Polynomial, P: Polynomial, Q: Polynomial) -> Polynomial:
    return exact_divide(C.diff("X") * Q - C.diff("Y") * P, C)


def solve_inverse(cfg: CurveConfiguration, d: int) -> SolutionSpace:
    """All forms of degree ``d`` having every component as an integral curve."""
    if d < 1:
        raise ValueError("degree must be at least 1")
    field = cfg.field
    mons_d = monomials(3, d)
    mons_k = monomials(3, d - 1)
    n_d, n_k = len(mons_d), len(mons_k)
    # unknown layout: Q | P | K_1 | ... | K_r
    ncols = 2 * n_d + cfg.r * n_k
    rows = []
    for i, C in enumerate(cfg.components):
        CX, CY = C.diff("X"), C.diff("Y")
        eq: dict = {}

        def add(poly, col, sign):
            for e, c in poly.terms.items():
                row = eq.setdefault(e, {})
                row[col] = row.get(col, 0) + sign * c

        for j, m in enumerate(mons_d):
            add(_shift(CX, m), j, 1)
            add(_shift(CY, m), n_d + j, -1)
        for j, m in enumerate(mons_k):
            add(_shift(C, m), 2 * n_d + i * n_k + j, -1)
        for row in eq.values():
            dense = [field.zero] * ncols
            for col, v in row.items():
                dense[col] = v
            rows.append(dense)
    kernel = nullspace(rows, field, ncols) if rows else _identity(ncols, field)
    basis = []
    for v in kernel:
        Q = Polynomial(dict(zip(mons_d, v[:n_d])), HOMOGENEOUS, field)
        P = Polynomial(dict(zip(mons_d, v[n_d:2 * n_d])), HOMOGENEOUS, field)
        Ks = tuple(
            Polynomial(dict(zip(mons_k, v[2 * n_d + i * n_k: 2 * n_d + (i + 1) * n_k])), HOMOGENEOUS, field)
            for i in range(cfg.r)
        )
        basis.append(DarbouxSolution(P, Q, Ks, d))
    return SolutionSpace(d, tuple(basis), tuple(trivial_forms(cfg, d)))


def _shift(poly: Polynomial, m: tuple) -> Polynomial:
    return Polynomial._raw(
        {tuple(a + b for a, b in zip(e, m)): c for e, c in poly.terms.items()}, poly.variables, poly.field
    )


def _identity(n, field):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def trivial_forms(cfg: CurveConfiguration, d: int) -> list[DarbouxSolution]:
    """Basis ``F * dC`` of the trivial forms, ``F`` running over monomials of degree ``d - e + 1``."""
    C = cfg.product
    k = d - C.degree() + 1
    if k < 0:
        return []
    CX, CY = C.diff("X"), C.diff("Y")
    out = []
    for m in monomials(3, k):
        P, Q = _shift(CX, m), _shift(CY, m)
        Ks = tuple(_cofactor_homogeneous(Ci, P, Q) for Ci in cfg.components)
        out.append(DarbouxSolution(P, Q, Ks, d))
    return out


def check_solution(cfg: CurveConfiguration, sol: DarbouxSolution) -> bool:
    """The Darboux matrix applied to ``(Q, -P, -K_1, ..., -K_r)`` is exactly zero."""
    vec = [sol.Q, -sol.P] + [-K for K in sol.cofactors]
    for row in darboux_matrix(cfg):
        total = Polynomial.zero(HOMOGENEOUS, cfg.field)
        for a, b in zip(row, vec):
            total = total + a * b
        if total:
            return False
    return True


def _as_affine(C: Polynomial) -> Polynomial:
    return affine_part(C) if C.variables == HOMOGENEOUS else C


def cofactor(C: Polynomial, omega: Form1) -> Form2:
    """``K`` with ``dC ^ omega = C K``; ``C`` affine or homogeneous."""
    C = _as_affine(C)
    num = wedge(gradient(C, omega.chart), omega)
    try:
        K = exact_divide(num.coefficient, C)
    except NotDivisible as exc:
        raise NotIntegralCurve(f"{C} is not an integral curve of the form", exc.remainder) from None
    return Form2(omega.chart, K, max(omega.degree - 1, K.degree(), 0))


def is_integral_curve(C: Polynomial, omega: Form1) -> bool:
    try:
        cofactor(C, omega)
    except NotIntegralCurve:
        return False
    return True


def expected_dimension(e: int, d: int, degX: int) -> int:
    """Lower bound for the dimension of forms of degree ``d`` with integral curve of degree ``e``."""
    first = comb(d - e + 3, 2) if e <= d + 1 else 0
    return first + comb(d + 1, 2) - (e - 1) ** 2 + degX


@dataclass(frozen=True)
class RelationCheck:
    """Outcome of testing ``sum(l_i K_i) + l_{r+1} d(omega) == 0``.

    ``exponents`` are integrating-factor exponents ``alpha_i`` with
    ``sum(alpha_i K_i) = -d(omega)`` when the last coefficient is nonzero,
    otherwise first-integral exponents with ``sum(l_i K_i) = 0``.
    """

    coefficients: tuple
    verified: bool
    remainder: Polynomial
    kind: str
    exponents: tuple


def verify_relation(omega: Form1, cfg: CurveConfiguration, lam: Sequence) -> RelationCheck:
    """Check a linear relation among the cofactors and ``d(omega)`` symbolically."""
    lam = tuple(lam)
    if len(lam) != cfg.r + 1:
        raise ValueError(f"need {cfg.r + 1} coefficients, got {len(lam)}")
    if not any(lam):
        raise ValueError("the relation vector must be nonzero")
    field = omega.field
    total = exterior_derivative(omega).coefficient * lam[-1]
    for C, l in zip(cfg.components, lam[:-1]):
        total = total + cofactor(C, omega).coefficient * l
    last = field(lam[-1])
    if last:
        kind = "integrating factor"
        exponents = tuple(field(l) / last for l in lam[:-1])
    else:
        kind = "first integral"
        exponents = tuple(field(l) for l in lam[:-1])
    return RelationCheck(lam, not total, total, kind, exponents)


def cofactor_additivity_check(C: Polynomial, D: Polynomial, omega: Form1) -> bool:
    """``K_C + K_D == K_{CD}`` for coprime integral curves ``C`` and ``D``."""
    C, D = _as_affine(C), _as_affine(D)
    if not coprime(C, D):
        raise ConfigurationError("the two curves share a common factor")
    KC, KD = cofactor(C, omega), cofactor(D, omega)
    KCD = cofactor(C * D, omega)
    return KCD.coefficient == KC.coefficient + KD.coefficient


def scale_to_integers(sol: DarbouxSolution) -> DarbouxSolution:
    """Rescale a rational solution so that all coefficients are coprime integers."""
    if sol.P.field != QQ:
        return sol
    from math import gcd, lcm

    polys = [sol.P, sol.Q, *sol.cofactors]
    den, num = 1, 0
    for p in polys:
        for c in p.terms.values():
            den = lcm(den, c.denominator)
    for p in polys:
        for c in p.terms.values():
            num = gcd(num, (c * den).numerator)
    f = Fraction(den, num or 1)
    return DarbouxSolution(sol.P * f, sol.Q * f, tuple(K * f for K in sol.cofactors), sol.degree)
