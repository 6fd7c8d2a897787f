"""Projective points, homogenization and the chart at infinity.

Homogeneous polynomials use the variables ``(X, Y, Z)``.  The affine chart
``Z != 0`` has coordinates ``x = X/Z, y = Y/Z`` and the chart at infinity
``X != 0`` has coordinates ``y = Y/X, z = Z/X``; the transition map from the
chart at infinity to the affine chart is ``(y, z) -> (1/z, y/z)``.

The *prime* of an affine object is its expression in the chart at infinity,
scaled by the power of ``z`` that clears the poles on the line ``z = 0``:

* polynomial ``F`` of degree ``d``: ``F' = F^h(1, y, z)``;
* 1-form ``P dx + Q dy`` of degree ``s``: ``Q' z dy - (P' + y Q') dz``;
* 2-form ``f dx^dy`` of degree ``d``: ``f^h(1, y, z) dy^dz``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra.fields import QQ, FieldError, field_of
from .algebra.forms import AFFINE, INFINITY, Form1, Form2
from .algebra.poly import Polynomial

HOMOGENEOUS = ("X", "Y", "Z")


class ProjectiveError(ValueError):
    pass


class ProjPoint:
    """A point ``(X : Y : Z)`` of the projective plane, compared up to scaling."""

    __slots__ = ("coords", "_canonical")

    def __init__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ProjectiveError("a projective point needs three coordinates")
        coords = tuple(Fraction(c) if isinstance(c, int) else c for c in coords)
        if not any(coords):
            raise ProjectiveError("(0:0:0) is not a projective point")
        self.coords = coords
        self._canonical = None

    @property
    def field(self):
        fields = {field_of(c) for c in self.coords if not isinstance(c, (int, Fraction))}
        if not fields:
            return QQ
        if len(fields) > 1:
            raise ProjectiveError(f"coordinates over several fields: {fields}")
        return fields.pop()

    def canonical(self) -> tuple:
        """Representative with first nonzero coordinate equal to one."""
        if self._canonical is None:
            lead = next(c for c in self.coords if c)
            self._canonical = tuple(c / lead for c in self.coords)
        return self._canonical

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        a, b = self.coords, other.coords
        try:
            return all(a[i] * b[j] == a[j] * b[i] for i in range(3) for j in range(i + 1, 3))
        except FieldError:
            return False  # coordinates in different extensions: never the same point

    def __hash__(self):
        return hash(self.canonical())

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    @property
    def at_infinity(self) -> bool:
        return not self.coords[2]

    def affine(self) -> tuple:
        """Coordinates ``(x, y)`` in the affine chart."""
        X, Y, Z = self.coords
        if not Z:
            raise ProjectiveError(f"{self} lies on the line at infinity")
        return (X / Z, Y / Z)

    def infinity_chart(self) -> tuple:
        """Coordinates ``(y, z)`` in the chart at infinity."""
        X, Y, Z = self.coords
        if not X:
            raise ProjectiveError(f"{self} is not in the chart X != 0")
        return (Y / X, Z / X)

    def conjugate(self) -> "ProjPoint":
        return ProjPoint(*(c.conjugate() if hasattr(c, "conjugate") and not isinstance(c, (int, Fraction)) else c for c in self.coords))

    def primitive(self) -> tuple:
        """Coprime integer representative for rational points (for display)."""
        from .algebra.linalg import primitive_vector

        if self.field != QQ:
            return self.canonical()
        v = primitive_vector(self.coords)
        if next(c for c in v if c) < 0:
            v = [-c for c in v]
        return tuple(int(c) for c in v)

    def __str__(self):
        if self.field == QQ:
            return "(" + ":".join(str(c) for c in self.primitive()) + ")"
        return "(" + " : ".join(str(c) for c in self.canonical()) + ")"

    __repr__ = __str__


_POINT_RE = re.compile(r"^\s*\(?(.*?)\)?\s*$")


def parse_point(text: str, field=QQ) -> ProjPoint:
    """Parse ``(a : b : c)`` with integer or rational entries."""
    body = _POINT_RE.match(text.replace("−", "-")).group(1)
    parts = [p.strip() for p in body.split(":")]
    if len(parts) != 3:
        raise ProjectiveError(f"cannot parse projective point {text!r}")
    try:
        values = [field(Fraction(p)) for p in parts]
    except ValueError:
        raise ProjectiveError(f"cannot parse projective point {text!r}") from None
    return ProjPoint(*values)


# homogenization


def homogenize_polynomial(f: Polynomial, degree: int | None = None) -> Polynomial:
    """``Z^d f(X/Z, Y/Z)`` for an affine polynomial in ``(x, y)``."""
    if f.variables != AFFINE.coordinates:
        raise ProjectiveError(f"expected affine variables (x, y), got {f.variables}")
    d = f.degree() if degree is None else degree
    if f and d < f.degree():
        raise ProjectiveError(f"target degree {d} below actual degree {f.degree()}")
    terms = {(a, b, d - a - b): c for (a, b), c in f.terms.items()}
    return Polynomial(terms, HOMOGENEOUS, f.field)


def affine_part(F: Polynomial) -> Polynomial:
    """``F(x, y, 1)``."""
    _require_homogeneous_vars(F)
    out: dict = {}
    for (a, b, _), c in F.terms.items():
        out[(a, b)] = out.get((a, b), 0) + c
    return Polynomial(out, AFFINE.coordinates, F.field)


def infinity_part(F: Polynomial) -> Polynomial:
    """``F(1, y, z)`` in the chart at infinity."""
    _require_homogeneous_vars(F)
    out: dict = {}
    for (_, b, c_), c in F.terms.items():
        out[(b, c_)] = out.get((b, c_), 0) + c
    return Polynomial(out, INFINITY.coordinates, F.field)


def from_infinity_chart(f: Polynomial, degree: int | None = None) -> Polynomial:
    """Homogenize a chart-at-infinity polynomial with respect to ``X``."""
    if f.variables != INFINITY.coordinates:
        raise ProjectiveError(f"expected variables (y, z), got {f.variables}")
    d = f.degree() if degree is None else degree
    return Polynomial({(d - b - c_, b, c_): c for (b, c_), c in f.terms.items()}, HOMOGENEOUS, f.field)


def _require_homogeneous_vars(F: Polynomial):
    if F.variables != HOMOGENEOUS:
        raise ProjectiveError(f"expected homogeneous variables {HOMOGENEOUS}, got {F.variables}")


@dataclass(frozen=True)
class HomogeneousForm:
    """Homogenized coefficients of a polynomial, 1-form or 2-form.

    ``kind`` is ``"polynomial"``, ``"form1"`` or ``"form2"``; the
    coefficients are multiplied by ``Z^d``, ``Z^(d+2)`` or ``Z^(d+3)``
    respectively, where ``d`` is the coefficient degree used.
    """

    kind: str
    coefficients: tuple
    degree: int

    @property
    def extra(self) -> int:
        return {"polynomial": 0, "form1": 2, "form2": 3}[self.kind]


def homogenize(f, target_degree: int | None = None) -> HomogeneousForm:
    """Homogenize a Polynomial, Form1 or Form2 (affine chart) to the given degree."""
    if isinstance(f, Polynomial):
        d = f.degree() if target_degree is None else target_degree
        return HomogeneousForm("polynomial", (homogenize_polynomial(f, max(d, 0)),), max(d, 0))
    if isinstance(f, Form1):
        _require_affine(f)
        d = f.degree if target_degree is None else target_degree
        coeffs = tuple(_times_z(homogenize_polynomial(c, d), 2) for c in f.coefficients)
        return HomogeneousForm("form1", coeffs, d)
    if isinstance(f, Form2):
        _require_affine(f)
        d = f.degree if target_degree is None else target_degree
        return HomogeneousForm("form2", (_times_z(homogenize_polynomial(f.coefficient, d), 3),), d)
    raise TypeError(f"cannot homogenize {type(f).__name__}")


def dehomogenize(h: HomogeneousForm):
    """Inverse of :func:`homogenize` (sets ``Z = 1``)."""
    parts = tuple(affine_part(c) for c in h.coefficients)
    if h.kind == "polynomial":
        return parts[0]
    if h.kind == "form1":
        return Form1(AFFINE, parts, h.degree)
    return Form2(AFFINE, parts[0], h.degree)


def _times_z(F: Polynomial, k: int) -> Polynomial:
    return Polynomial({(a, b, c + k): v for (a, b, c), v in F.terms.items()}, HOMOGENEOUS, F.field)


def _require_affine(f):
    if f.chart != AFFINE:
        raise ProjectiveError(f"expected an affine-chart form, got {f.chart}")


def eval_homogeneous(h: HomogeneousForm, a: ProjPoint):
    """Evaluate a single-coefficient homogeneous value at a representative of ``a``.

    The result depends on the representative through a fixed power of the
    scaling factor, so only ratios of values of equal degree are meaningful.
    """
    if h.kind == "form1":
        raise ProjectiveError("a 1-form has two coefficients; evaluate them separately")
    return h.coefficients[0].evaluate(a.coords)


# the prime operator


def prime(f, degree: int | None = None):
    """Express an affine polynomial or form in the chart at infinity."""
    if isinstance(f, Polynomial):
        return infinity_part(homogenize_polynomial(f, degree))
    if isinstance(f, Form1):
        _require_affine(f)
        s = f.degree if degree is None else degree
        P1 = infinity_part(homogenize_polynomial(f.P, s))
        Q1 = infinity_part(homogenize_polynomial(f.Q, s))
        y, z = (Polynomial.variable(v, INFINITY.coordinates, f.field) for v in INFINITY.coordinates)
        return Form1(INFINITY, (Q1 * z, -(P1 + y * Q1)), s + 1)
    if isinstance(f, Form2):
        _require_affine(f)
        d = f.degree if degree is None else degree
        return Form2(INFINITY, infinity_part(homogenize_polynomial(f.coefficient, d)), d)
    raise TypeError(f"cannot take the prime of {type(f).__name__}")


# linear changes of (X, Y) fixing Z


@dataclass(frozen=True)
class LinearChange:
    """The map ``(X, Y, Z) -> (a X + b Y, c X + d Y, Z)``.

    Points move forward; a curve ``F`` is carried to ``F o A^-1`` so that
    its zero set moves with the points; an affine form is pushed forward
    the same way.
    """

    matrix: tuple

    @classmethod
    def identity(cls):
        return cls(((1, 0), (0, 1)))

    @property
    def det(self):
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def inverse(self) -> "LinearChange":
        (a, b), (c, d) = self.matrix
        det = Fraction(self.det)
        return LinearChange(((d / det, -b / det), (-c / det, a / det)))

    def apply_point(self, p: ProjPoint) -> ProjPoint:
        (a, b), (c, d) = self.matrix
        X, Y, Z = p.coords
        return ProjPoint(a * X + b * Y, c * X + d * Y, Z)

    def apply_polynomial(self, F: Polynomial) -> Polynomial:
        """Homogeneous ``F`` in (X, Y, Z) mapped to ``F o A^-1``."""
        _require_homogeneous_vars(F)
        (a, b), (c, d) = self.inverse().matrix
        X, Y, Z = (Polynomial.variable(v, HOMOGENEOUS, F.field) for v in HOMOGENEOUS)
        return F.compose({"X": X * a + Y * b, "Y": X * c + Y * d, "Z": Z})

    def apply_form(self, w: Form1) -> Form1:
        """Push an affine 1-form forward: new (P, Q) = (A^-1)^T (P, Q) o A^-1."""
        _require_affine(w)
        (a, b), (c, d) = self.inverse().matrix
        x, y = (Polynomial.variable(v, AFFINE.coordinates, w.field) for v in AFFINE.coordinates)
        sub = {"x": x * a + y * b, "y": x * c + y * d}
        P = w.P.compose(sub)
        Q = w.Q.compose(sub)
        return Form1(AFFINE, (P * a + Q * c, P * b + Q * d), w.degree)


def x_chart_change(point: ProjPoint, method: str = "shear") -> LinearChange:
    """A change fixing Z that moves ``point`` into the chart ``X != 0``.

    ``method="shear"`` uses ``X -> X + Y``; ``method="swap"`` exchanges X and Y.
    """
    X, Y, _ = point.coords
    if X:
        return LinearChange.identity()
    if not Y:
        raise ProjectiveError(f"{point} is (0:0:1); no change fixing Z moves it off X = 0")
    if method == "swap":
        return LinearChange(((0, 1), (1, 0)))
    if method == "shear":
        return LinearChange(((1, 1), (0, 1)))
    raise ValueError(f"unknown method {method!r}")


def move_point_into_x_chart(cfg, point: ProjPoint, forms: Iterable[Form1] = (), method: str = "shear"):
    """Apply :func:`x_chart_change` to a configuration, forms and the point.

    ``cfg`` is either an object with a ``transform(change)`` method or a
    sequence of homogeneous polynomials.  Returns ``(cfg, point, forms)``.
    """
    change = x_chart_change(point, method)
    if hasattr(cfg, "transform"):
        new_cfg = cfg.transform(change)
    else:
        new_cfg = [change.apply_polynomial(F) for F in cfg]
    return new_cfg, change.apply_point(point), tuple(change.apply_form(w) for w in forms)


def monomial_evaluation_matrix(points: Sequence[ProjPoint], degree: int) -> list[list]:
    """Rows: points; columns: monomials of the given degree in (X, Y, Z)."""
    from .algebra.poly import monomials

    exps = monomials(3, degree)
    rows = []
    for p in points:
        X, Y, Z = p.coords
        rows.append([X ** a * Y ** b * Z ** c for a, b, c in exps])
    return rows
