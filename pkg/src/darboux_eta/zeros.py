"""Zeros of a polynomial 1-form and the counting formulas that bound them.

The bound on zeros outside an integral curve comes from the second Chern
class of the syzygy bundle of ``(C_x, C_y, C)``; the count at infinity
from the Euler syzygy when the curve meets the line at infinity mildly.
Zeros themselves are found exactly: affine zeros as common zeros of the
two coefficients, zeros at infinity as roots of ``X P_s + Y Q_s`` (top
degree parts), each with its local intersection multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra.fields import QQ, PrimeField, field_of
from .algebra.numberfield import NumberField, ReducibleModulus, split_modulus
from .algebra.forms import Form1, exterior_derivative
from .algebra.poly import Polynomial
from .algebra.solve import SolveError, common_zeros, orbit_size
from .algebra.structure import coprime
from .algebra.univariate import field_roots, quadratic_roots, trim
from .darboux import cofactor
from .geometry import local_intersection, translate
from .projective import HOMOGENEOUS, LinearChange, ProjPoint, homogenize_polynomial, prime


class ZeroError(ArithmeticError):
    pass


class _NotApplicable:
    """Marker for a counting formula whose hypotheses fail."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotApplicable"

    def __bool__(self):
        return False


NOT_APPLICABLE = _NotApplicable()


# ---------------------------------------------------------------------------
# counting formulas


def chern_c2_kernel(r: int, c1E: int, c2E: int, c1L: int, ell: int) -> tuple[int, int]:
    """Chern classes ``(c1, c2)`` of the kernel of ``E -> L`` whose cokernel has length ``ell``.

    ``r`` is the rank of ``E``; the kernel has rank ``r - 1``.
    """
    if r < 1:
        raise ValueError("E must have positive rank")
    c1K = c1E - c1L
    c2K = c2E - c1E * c1L + c1L * c1L - ell
    return c1K, c2K


def syzygy_bundle_classes(s: int, d: int) -> tuple[int, int, int]:
    """``(c1(E), c2(E), c1(L))`` for ``E = O(s)+O(s)+O(s-1)`` mapping to ``L = O(s+d-1)``."""
    return 3 * s - 1, 3 * s * s - 2 * s, s + d - 1


def zeros_outside_bound(s: int, d: int, degX: int) -> int:
    """Upper bound for the zeros (with multiplicity) of a degree-``s`` form outside an
    integral curve of degree ``d`` whose singular scheme has degree ``degX``."""
    return s * s + d * (d - s - 1) - degX


def zeros_at_infinity_count(s: int, d: int, degX_inf: int, char_ok: bool = True):
    """``s - 1`` zeros at infinity (with multiplicity) when the hypotheses hold, else
    :data:`NOT_APPLICABLE`."""
    if degX_inf <= d - s - 2 and char_ok:
        return s - 1
    return NOT_APPLICABLE


# ---------------------------------------------------------------------------
# zero finding


@dataclass(frozen=True)
class Zero:
    point: ProjPoint
    multiplicity: int
    on_curve: bool
    at_infinity: bool
    orbit: int = 1  # number of conjugate points this entry stands for

    @property
    def location(self) -> str:
        if self.on_curve:
            return "on curve"
        if self.at_infinity:
            return "at infinity"
        return "outside"

    def __str__(self):
        orbit = f" and {self.orbit - 1} conjugates" if self.orbit > 1 else ""
        return f"{self.point}{orbit} x{self.multiplicity} ({self.location})"


@dataclass
class ZeroReport:
    """Zeros of a form sorted into: on the curve, on the line at infinity only, elsewhere."""

    zeros: list = dc_field(default_factory=list)
    unresolved: list = dc_field(default_factory=list)
    bound: int | None = None

    @property
    def outside(self) -> list:
        """Zeros off the configuration and off the line at infinity."""
        return [z for z in self.zeros if not z.on_curve and not z.at_infinity]

    @property
    def on_curve(self) -> list:
        return [z for z in self.zeros if z.on_curve]

    @property
    def at_infinity_only(self) -> list:
        return [z for z in self.zeros if z.at_infinity and not z.on_curve]

    @property
    def off_curve_weighted(self) -> int:
        """Multiplicity-weighted count of zeros off the curve (the line at infinity included)."""
        return sum(z.multiplicity * z.orbit for z in self.zeros if not z.on_curve)

    @property
    def off_curve_count(self) -> int:
        return sum(z.orbit for z in self.zeros if not z.on_curve)

    @property
    def total_weighted(self) -> int:
        return sum(z.multiplicity * z.orbit for z in self.zeros)

    @property
    def within_bound(self) -> bool | None:
        if self.bound is None or self.unresolved:
            return None
        return self.off_curve_weighted <= self.bound


def _affine_multiplicity(P: Polynomial, Q: Polynomial, pt) -> int:
    return local_intersection(translate(P, pt), translate(Q, pt))


def _infinity_zeros(omega: Form1) -> list:
    """``(point, multiplicity, orbit)`` for points ``(X : Y : 0)`` where the closure of the form vanishes."""
    s = omega.degree
    P = homogenize_polynomial(omega.P, s)
    Q = homogenize_polynomial(omega.Q, s)
    X, Y, _ = (Polynomial.variable(v, HOMOGENEOUS, omega.field) for v in HOMOGENEOUS)
    H = (X * P + Y * Q).compose({"Z": Polynomial.zero(HOMOGENEOUS, omega.field)})
    if not H:
        raise ZeroError("the form vanishes on the whole line at infinity")
    deg = s + 1
    coeffs = trim([H.coefficient((deg - k, k, 0)) for k in range(deg + 1)])  # H(1, t, 0)
    candidates = []
    if len(coeffs) - 1 < deg:
        candidates.append(ProjPoint(0, 1, 0))
    queue = []
    if len(coeffs) > 1:
        report = field_roots(coeffs, omega.field)
        queue = list(report.leftover)
        for t0, _ in report.roots:
            candidates.append(ProjPoint(1, t0, 0))
        for fac, _ in report.quadratic:
            K, (r1, r2) = quadratic_roots(fac, omega.field)
            candidates.extend([ProjPoint(K.one, r1, K.zero), ProjPoint(K.one, r2, K.zero)])
    out = [(pt, _infinity_multiplicity(omega, pt), 1) for pt in candidates]
    while queue:
        h = trim(queue.pop())
        if len(h) == 2:
            pt = ProjPoint(1, -h[0] / h[1], 0)
            out.append((pt, _infinity_multiplicity(omega, pt), 1))
            continue
        K = NumberField(omega.field, h)
        pt = ProjPoint(K.one, K.generator, K.zero)
        try:
            out.append((pt, _infinity_multiplicity(omega, pt), K.degree))
        except ReducibleModulus as exc:
            queue.extend(split_modulus(h, exc.factor, omega.field))
    return out


def _infinity_multiplicity(omega: Form1, pt: ProjPoint) -> int:
    if not pt.coords[0]:
        change = LinearChange(((0, 1), (1, 0)))
        omega = change.apply_form(omega)
        pt = change.apply_point(pt)
    A, B = prime(omega).coefficients
    loc = pt.infinity_chart()
    return local_intersection(translate(A, loc), translate(B, loc))


def find_zeros(omega: Form1, components: Sequence[Polynomial] = (), degX: int | None = None) -> ZeroReport:
    """All zeros of ``omega`` over its base field (quadratic extensions over QQ).

    ``components`` are the integral curves used to classify zeros; with
    ``degX`` given the report carries the bound on zeros off the curve.
    """
    field = omega.field
    if not (field == QQ or isinstance(field, PrimeField)):
        raise ZeroError(f"zero finding is implemented over QQ and prime fields, not {field}")
    P, Q = omega.P, omega.Q
    if not P or not Q:
        raise ZeroError("a coefficient vanishes identically: the zero set is not finite")
    if not coprime(P, Q):
        raise ZeroError("P and Q share a factor: the zero set is not finite")
    try:
        found = common_zeros([P, Q]) if P.degree() >= Q.degree() else common_zeros([Q, P])
    except SolveError as exc:
        raise ZeroError(str(exc)) from None
    report = ZeroReport(unresolved=list(found.unresolved))
    comps = [C if C.variables == HOMOGENEOUS else homogenize_polynomial(C) for C in components]

    def on_curve(pt: ProjPoint) -> bool:
        return any(not C.evaluate(pt.coords) for C in comps)

    for x0, y0 in found.points:
        pt = ProjPoint(x0, y0, field_of(x0).one)
        m = _affine_multiplicity(P, Q, (x0, y0))
        report.zeros.append(Zero(pt, m, on_curve(pt), False, max(orbit_size(x0), orbit_size(y0))))
    for pt, m, orbit in _infinity_zeros(omega):
        report.zeros.append(Zero(pt, m, on_curve(pt), True, orbit))
    if degX is not None and comps:
        d = sum(C.degree() for C in comps)
        report.bound = zeros_outside_bound(omega.degree, d, degX)
    return report


def cofactor_vanishing_check(omega: Form1, components: Sequence[Polynomial], a: ProjPoint) -> bool:
    """At a zero ``a`` off every curve, all cofactors vanish (and so does the
    exterior derivative whenever a Darboux relation holds)."""
    comps = [C if C.variables == HOMOGENEOUS else homogenize_polynomial(C) for C in components]
    if any(not C.evaluate(a.coords) for C in comps):
        raise ZeroError(f"{a} lies on an integral curve")
    if a.at_infinity:
        raise ZeroError("the check is stated for affine zeros")
    pt = a.affine()
    if any(omega.evaluate(pt)):
        raise ZeroError(f"{a} is not a zero of the form")
    return all(not cofactor(C, omega).coefficient.evaluate(pt) for C in comps)


def exterior_derivative_vanishes(omega: Form1, a: ProjPoint) -> bool:
    return not exterior_derivative(omega).coefficient.evaluate(a.affine())


__all__ = [
    "NOT_APPLICABLE",
    "Zero",
    "ZeroError",
    "ZeroReport",
    "chern_c2_kernel",
    "cofactor_vanishing_check",
    "exterior_derivative_vanishes",
    "find_zeros",
    "syzygy_bundle_classes",
    "zeros_at_infinity_count",
    "zeros_outside_bound",
]
