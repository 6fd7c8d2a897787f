"""The eta invariants of a form at a point and the integrability certificate.

For a form ``omega`` with integral curves ``C_1, ..., C_r`` the value at a
point ``a`` is the projective tuple of cofactor values and ``d(omega)``.
At a point on the line at infinity the primed variant adds the line
``z = 0`` as an extra integral curve of the form expressed in the chart at
infinity.  Stacking one primed row per special point together with the row
``(1, deg C_1, ..., deg C_r, deg(omega) + 2)`` gives a matrix whose kernel
yields a linear relation between the cofactors and ``d(omega)``.

All two-forms in the chart at infinity use the basis ``dy ^ dz``; values
are projective, so the choice only affects signs of whole rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb
from typing import Sequence

from .algebra.fields import QQ, QuadElement
from .algebra.forms import INFINITY, Form1, Form2, differential, exterior_derivative, wedge
from .algebra.linalg import is_proportional, nullspace, primitive_vector, rank, rational_rows
from .algebra.poly import NotDivisible, Polynomial, exact_divide
from .darboux import CurveConfiguration, RelationCheck, cofactor, verify_relation
from .geometry import GeometryError, PointOnConfig, local_data
from .projective import (
    HOMOGENEOUS,
    ProjPoint,
    homogenize,
    infinity_part,
    monomial_evaluation_matrix,
    move_point_into_x_chart,
    prime,
)


class EtaError(ValueError):
    """A point or form does not satisfy the hypotheses of the eta machinery."""


class NotAZero(EtaError):
    pass


class GeometricMismatch(EtaError):
    """A computed row is not proportional to the row predicted by the singularity type."""


# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True)
class EtaValue:
    """A projective tuple; ``(0 : ... : 0)`` is allowed and equals only itself."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def degenerate(self) -> bool:
        return not any(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if not isinstance(other, EtaValue):
            return NotImplemented
        if len(self) != len(other):
            return False
        if self.degenerate or other.degenerate:
            return self.degenerate and other.degenerate
        return is_proportional(self.entries, other.entries)

    def __hash__(self):
        return hash(len(self.entries))

    def normalized(self) -> tuple:
        """Coprime integers for rational tuples, else division by the first nonzero entry."""
        if self.degenerate:
            return self.entries
        if all(isinstance(x, (int, Fraction)) for x in self.entries):
            v = primitive_vector(self.entries)
            if next(x for x in v if x) < 0:
                v = [-x for x in v]
            return tuple(int(x) for x in v)
        lead = next(x for x in self.entries if x)
        scaled = tuple(x / lead for x in self.entries)
        if all(isinstance(x, QuadElement) and not x.b for x in scaled):
            return EtaValue(tuple(Fraction(getattr(x, "a", x)) for x in scaled)).normalized()
        return scaled

    def __str__(self):
        return "(" + " : ".join(str(x) for x in self.normalized()) + ")"


def k_z(omega: Form1) -> Form2:
    """Cofactor of the line ``z = 0`` for the form expressed in the chart at infinity."""
    w1 = prime(omega)
    num = wedge(differential("z", INFINITY, omega.field), w1)
    z = Polynomial.variable("z", INFINITY.coordinates, omega.field)
    try:
        q = exact_divide(num.coefficient, z)
    except NotDivisible as exc:  # impossible for a primed form
        raise AssertionError("dz ^ omega' is not divisible by z") from exc
    return Form2(INFINITY, q, max(w1.degree - 1, 0))


def _infinity_component(C):
    """A homogeneous component in the chart at infinity (variables ``y, z``)."""
    if C.variables != HOMOGENEOUS:
        C = homogenize(C).coefficients[0]
    return infinity_part(C)


def eta_at(omega: Form1, cfg: CurveConfiguration | Sequence, a: ProjPoint) -> EtaValue:
    """``(K_1^h(a) : ... : K_r^h(a) : (d omega)^h(a))``.

    Every entry has the same homogeneous degree, so the tuple is a
    well-defined projective value.  At a point with ``X != 0`` the
    homogeneous values are computed through the chart at infinity.
    """
    components = cfg.components if hasattr(cfg, "components") else tuple(cfg)
    s = omega.degree
    ks = [cofactor(C, omega).with_degree(max(s - 1, 0)) for C in components]
    dw = exterior_derivative(omega).with_degree(max(s - 1, 0))
    values = ks + [dw]
    if a.coords[2]:
        pt = a.affine()
        return EtaValue(tuple(v.coefficient.evaluate(pt) for v in values))
    if not a.coords[0]:
        raise EtaError(f"{a} is not in the chart X != 0; move it first")
    pt = a.infinity_chart()
    return EtaValue(tuple(prime(v).coefficient.evaluate(pt) for v in values))


@dataclass(frozen=True)
class PrimedData:
    """The form and curves in the chart at infinity, with their cofactors."""

    form: Form1
    components: tuple
    k_z: Form2
    cofactors: tuple
    d_form: Form2


def primed_data(omega: Form1, components: Sequence) -> PrimedData:
    w1 = prime(omega)
    comps = tuple(_infinity_component(C) for C in components)
    return PrimedData(w1, comps, k_z(omega), tuple(cofactor(C, w1) for C in comps), exterior_derivative(w1))


def eta_prime_at(omega: Form1, cfg: CurveConfiguration | Sequence, a: ProjPoint) -> EtaValue:
    """``(K_z(a) : K_{C_1'}(a) : ... : K_{C_r'}(a) : d(omega')(a))`` in the chart at infinity.

    ``a`` must have ``X != 0``; use :func:`eta_prime_row` for points with
    ``X = 0``, which moves them into that chart first.
    """
    components = cfg.components if hasattr(cfg, "components") else tuple(cfg)
    if not a.coords[0]:
        raise EtaError(f"{a} is not in the chart X != 0; move it first")
    data = primed_data(omega, components)
    pt = a.infinity_chart()
    vals = [data.k_z] + list(data.cofactors) + [data.d_form]
    return EtaValue(tuple(v.coefficient.evaluate(pt) for v in vals))


def project_eta(eta_prime: EtaValue | Sequence, degrees: Sequence[int], s: int) -> EtaValue:
    """Project from ``(1 : deg C_1 : ... : deg C_r : s + 2)`` onto ``k_z = 0``."""
    v = tuple(eta_prime)
    if len(v) != len(degrees) + 2:
        raise ValueError("eta' needs one entry for z, one per component and one for d(omega)")
    kz = v[0]
    comps = tuple(k - e * kz for k, e in zip(v[1:-1], degrees))
    return EtaValue(comps + (v[-1] - (s + 2) * kz,))


def center_row(degrees: Sequence[int], s: int) -> tuple:
    return (1, *degrees, s + 2)


def geometric_row(point: PointOnConfig, r: int) -> EtaValue:
    """Row predicted by the quasi-homogeneous weights of the singularity at ``point``.

    Each curve through the point contributes the sum of the weighted degrees
    of its branches; absent curves contribute 0; the last entry is the sum
    of the weights.
    """
    if not point.singularity.is_simple or not point.degrees:
        raise GeometryError(f"no quasi-homogeneous data at {point.label or point.point}")
    degs = point.degrees
    row = [degs.get("z", 0)] + [degs.get(i, 0) for i in range(r)] + [point.singularity.weight_sum]
    return EtaValue(tuple(Fraction(x) for x in row))


def omega_vanishes(omega: Form1, a: ProjPoint) -> bool:
    """Whether the projective closure of ``omega`` vanishes at ``a``."""
    if a.coords[2]:
        return not any(omega.evaluate(a.affine()))
    if not a.coords[0]:
        X, Y, _ = a.coords
        # the top-degree part X P_s + Y Q_s vanishes at (X : Y : 0)
        s = omega.degree
        P = homogenize(omega.P, s).coefficients[0]
        Q = homogenize(omega.Q, s).coefficients[0]
        return not (X * P.evaluate(a.coords) + Y * Q.evaluate(a.coords))
    return not any(prime(omega).evaluate(a.infinity_chart()))


def eta_prime_row(omega: Form1, cfg: CurveConfiguration, a: ProjPoint) -> EtaValue:
    """The row of the matrix for ``a``: primed values at infinity, ``(0, eta)`` elsewhere."""
    if a.coords[2]:
        return EtaValue((0 * a.coords[2],) + eta_at(omega, cfg, a).entries)
    if not a.coords[0]:
        cfg, a, (omega,) = move_point_into_x_chart(cfg, a, (omega,))
    return eta_prime_at(omega, cfg, a)


# ---------------------------------------------------------------------------
# the matrix


@dataclass
class EtaRow:
    label: str
    point: ProjPoint | None
    computed: EtaValue | None
    geometric: EtaValue | None
    tag: str = ""

    @property
    def value(self) -> EtaValue:
        """The computed value if available, otherwise the geometric prediction."""
        return self.computed if self.computed is not None else self.geometric


@dataclass
class EtaMatrix:
    """Rows for the special points plus the projection-center row."""

    columns: tuple
    rows: list
    center: tuple

    @property
    def width(self) -> int:
        return len(self.columns)

    def point_rows(self, source: str = "value") -> list[list]:
        return [list(getattr(row, source)) for row in self.rows]

    def rational_matrix(self, source: str = "value") -> list[list[Fraction]]:
        """Point rows (split over conjugates where needed) followed by the center row."""
        rows = rational_rows(self.point_rows(source))
        return rows + [[Fraction(x) for x in self.center]]

    def printable(self, source: str = "value") -> list[tuple]:
        out = []
        for row in self.rows:
            out.append(EtaValue(getattr(row, source)).normalized())
        out.append(tuple(self.center))
        return out


def _as_point_data(cfg, item, index: int) -> tuple[str, ProjPoint, PointOnConfig | None]:
    if isinstance(item, PointOnConfig):
        return item.label, item.point, item
    label, pt = item if isinstance(item, tuple) else ("", item)
    try:
        data = local_data(cfg, pt, label)
    except GeometryError:
        data = None
    return label, pt, data


def assemble_M(omega: Form1, cfg: CurveConfiguration, points: Sequence, check_geometry: bool = True) -> EtaMatrix:
    """Build the matrix of primed values at the given special points.

    ``points`` are :class:`PointOnConfig` objects, ``ProjPoint`` objects or
    ``(label, ProjPoint)`` pairs.  The form must vanish at every point.  With
    type data available, each computed row must be proportional to the row
    predicted by the singularity type, or vanish entirely.
    """
    columns = ("z",) + tuple(cfg.names) + ("d omega",)
    rows = []
    for k, item in enumerate(points):
        label, pt, data = _as_point_data(cfg, item, k)
        if not omega_vanishes(omega, pt):
            raise NotAZero(f"point {label or pt} is not a zero of the form")
        computed = eta_prime_row(omega, cfg, pt)
        geometric = None
        tag = ""
        if data is not None and data.singularity.is_simple and data.degrees:
            geometric = geometric_row(data, cfg.r)
            tag = data.singularity.tag
            if check_geometry and not computed.degenerate and computed != geometric:
                raise GeometricMismatch(
                    f"row at {label or pt} ({tag}) is {computed}, expected a multiple of {geometric}"
                )
        rows.append(EtaRow(label, pt, computed, geometric, tag))
    return EtaMatrix(columns, rows, center_row(cfg.degrees, omega.degree))


def geometric_matrix(cfg: CurveConfiguration, points: Sequence, s: int) -> EtaMatrix:
    """The matrix predicted from singularity types alone (no form needed)."""
    columns = ("z",) + tuple(cfg.names) + ("d omega",)
    rows = []
    for k, item in enumerate(points):
        label, pt, data = _as_point_data(cfg, item, k)
        if data is None:
            raise GeometryError(f"no type data at {label or pt}")
        rows.append(EtaRow(label, pt, None, geometric_row(data, cfg.r), data.singularity.tag))
    return EtaMatrix(columns, rows, center_row(cfg.degrees, s))


# ---------------------------------------------------------------------------
# certificates


def points_not_on_curve(points: Sequence[ProjPoint], m: int) -> bool:
    """Whether no curve of degree ``m`` passes through all the points.

    Points over a quadratic field must come with their conjugates.
    """
    if m < 0:
        return True
    pts = [p.point if isinstance(p, PointOnConfig) else p for p in points]
    if not pts:
        return comb(m + 2, 2) == 0
    rows = rational_rows(monomial_evaluation_matrix(pts, m))
    return rank(rows, QQ) == comb(m + 2, 2)


@dataclass
class IntegrabilityCertificate:
    """Outcome of the four-stage integrability test.

    The stages are the rank bound, the general-position test, kernel
    extraction and the symbolic relation check.  Later stages still run when
    the general-position test fails, so the report shows every outcome.
    ``kernel`` is a primitive integer kernel vector of the matrix;
    ``relation`` is its tail, the coefficients of the cofactors and
    ``d(omega)``.
    """

    matrix: EtaMatrix
    rank: int
    rank_ok: bool
    general_position: bool = False
    kernel: tuple | None = None
    kernel_dimension: int = 0
    relation: tuple | None = None
    check: RelationCheck | None = None
    failed_stages: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    @property
    def identity_verified(self) -> bool:
        return self.check is not None and self.check.verified

    @property
    def verified(self) -> bool:
        return self.rank_ok and self.general_position and self.identity_verified

    @property
    def exponents(self) -> tuple | None:
        return self.check.exponents if self.check is not None else None


def _normalize_kernel(v) -> tuple:
    v = primitive_vector(v)
    # sign convention: first nonzero cofactor entry positive
    lead = next((x for x in v[1:] if x), next(x for x in v if x))
    if lead < 0:
        v = [-x for x in v]
    return tuple(int(x) for x in v)


def certify(omega: Form1, cfg: CurveConfiguration, points: Sequence, matrix: EtaMatrix | None = None) -> IntegrabilityCertificate:
    """Rank test, general-position test, kernel extraction and the symbolic relation check."""
    M = matrix if matrix is not None else assemble_M(omega, cfg, points)
    rows = M.rational_matrix("value")
    rk = rank(rows, QQ)
    cert = IntegrabilityCertificate(M, rk, rk <= cfg.r + 1)
    if not cert.rank_ok:
        cert.failed_stages.append("rank")
        return cert
    pts = [row.point for row in M.rows if row.point is not None]
    cert.general_position = points_not_on_curve(pts, omega.degree - 1)
    if not cert.general_position:
        cert.failed_stages.append("general position")
        cert.notes.append("the points lie on a curve of degree deg(omega) - 1")
    basis = nullspace(rows, QQ, ncols=M.width)
    cert.kernel_dimension = len(basis)
    for v in basis:
        kernel = _normalize_kernel(v)
        relation = kernel[1:]
        if not any(relation):
            cert.notes.append(f"kernel vector {kernel} has no cofactor part")
            continue
        check = verify_relation(omega, cfg, relation)
        cert.kernel, cert.relation, cert.check = kernel, relation, check
        if check.verified:
            return cert
    if cert.kernel is None:
        cert.failed_stages.append("kernel")
    else:
        cert.failed_stages.append("relation")
        if cert.general_position:
            cert.notes.append("the symbolic relation failed although the rank and position tests passed")
    return cert


def _fmt(values) -> str:
    return "(" + ", ".join(str(x) for x in values) + ")"


def certificate_report(cert: IntegrabilityCertificate) -> str:
    """Plain-text certificate: matrix, kernel, relation, exponents and the verdict."""
    M = cert.matrix
    lines = ["columns: " + ", ".join(M.columns)]
    for row, printed in zip(M.rows + [None], M.printable()):
        name = "center" if row is None else (row.label or str(row.point))
        tag = "" if row is None or not row.tag else f" {row.tag}"
        lines.append(f"  {name}{tag}: " + " ".join(str(x) for x in printed))
    lines.append(f"rank: {cert.rank} (bound {len(M.columns) - 1})")
    lines.append(f"points off every curve of degree deg(omega) - 1: {cert.general_position}")
    if cert.kernel is not None:
        lines.append(f"kernel: {_fmt(cert.kernel)}")
        lines.append(f"relation: {_fmt(cert.relation)}")
    if cert.check is not None:
        lines.append(f"{cert.check.kind} exponents: {_fmt(cert.check.exponents)}")
        lines.append(f"identity verified: {cert.check.verified}")
    if cert.failed_stages:
        lines.append("failed stages: " + ", ".join(cert.failed_stages))
    lines.extend(cert.notes)
    lines.append(f"verified: {cert.verified}")
    return "\n".join(lines)


__all__ = [
    "EtaError",
    "EtaMatrix",
    "EtaRow",
    "EtaValue",
    "GeometricMismatch",
    "IntegrabilityCertificate",
    "NotAZero",
    "PrimedData",
    "assemble_M",
    "center_row",
    "certificate_report",
    "certify",
    "eta_at",
    "eta_prime_at",
    "eta_prime_row",
    "geometric_matrix",
    "geometric_row",
    "k_z",
    "omega_vanishes",
    "points_not_on_curve",
    "primed_data",
    "project_eta",
]
