"""Local singularity analysis of plane curve configurations.

Local intersection numbers are computed with Fulton's algorithm, which
works directly with the axioms of the intersection number at the origin
(no gcds, no global elimination).  Milnor numbers are intersection numbers
of the two partial derivatives.  Simple (ADE) singularities are recognized
from the multiplicity, the tangent cone and the Milnor number, and every
germ is decorated with quasi-homogeneous weights and the weighted degrees
of its branches.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .algebra.fields import QQ, field_of
from .algebra.linalg import rank
from .algebra.solve import SolveError, common_zeros
from .algebra.poly import Polynomial, monomials, parse_polynomial
from .algebra.univariate import field_roots, poly_divmod, quadratic_roots, squarefree_part, trim
from .projective import HOMOGENEOUS, ProjPoint

LOCAL = ("u", "v")
LINE_AT_INFINITY = "z"


class GeometryError(ValueError):
    pass


class NonIsolated(GeometryError):
    """The two curves share a component through the point."""


# ---------------------------------------------------------------------------
# ADE data

_SIMPLE_E = {6: ((4, 3), (12,)), 7: ((3, 2), (3, 6)), 8: ((5, 3), (15,))}


def ade_weights(tag: str) -> tuple[tuple[int, int], tuple[int, ...]]:
    """Reduced weights ``(w_x, w_y)`` and branch weighted degrees for a simple type."""
    family, n = tag[0], int(tag[1:])
    if family == "A" and n >= 1:
        if n % 2 == 0:
            weights, branches = (n + 1, 2), (2 * n + 2,)
        else:
            weights, branches = (n + 1, 2), (n + 1, n + 1)
    elif family == "D" and n >= 4:
        if n % 2 == 1:
            weights, branches = (n - 2, 2), (2, 2 * n - 4)
        else:
            weights, branches = (n - 2, 2), (2, n - 2, n - 2)
    elif family == "E" and n in _SIMPLE_E:
        weights, branches = _SIMPLE_E[n]
    else:
        raise GeometryError(f"unsupported singularity type {tag!r}")
    g = gcd(*weights, *branches)
    return (weights[0] // g, weights[1] // g), tuple(b // g for b in branches)


def normal_form(tag: str, variables: Sequence[str] = ("x", "y"), field=QQ) -> Polynomial:
    """A local equation for a simple singularity type."""
    family, n = tag[0], int(tag[1:])
    if family == "A":
        text = f"x^2 - y^{n + 1}"
    elif family == "D":
        text = f"y*(x^2 - y^{n - 2})"
    elif tag == "E6":
        text = "x^3 - y^4"
    elif tag == "E7":
        text = "x*(x^2 - y^3)"
    elif tag == "E8":
        text = "x^3 - y^5"
    else:
        raise GeometryError(f"no normal form for {tag!r}")
    return parse_polynomial(text, ("x", "y"), field).rename(variables)


@dataclass(frozen=True)
class SingularityType:
    tag: str
    milnor: int
    weights: tuple | None = None
    branch_degrees: tuple = ()

    @property
    def tjurina(self) -> int:
        # equal to the Milnor number for quasi-homogeneous germs
        return self.milnor

    @property
    def is_simple(self) -> bool:
        return self.tag not in ("Smooth", "Unsupported")

    @property
    def branches(self) -> int:
        return len(self.branch_degrees)

    @property
    def weighted_degree(self) -> int:
        return sum(self.branch_degrees)

    @property
    def weight_sum(self) -> int:
        return sum(self.weights) if self.weights else 0

    @classmethod
    def simple(cls, tag: str) -> "SingularityType":
        weights, branches = ade_weights(tag)
        return cls(tag, int(tag[1:]), weights, branches)

    def __str__(self):
        return self.tag


SMOOTH = SingularityType("Smooth", 0, (1, 1), (1,))


# ---------------------------------------------------------------------------
# local germs


def chart_index(point: ProjPoint) -> int:
    """Coordinate used to dehomogenize: Z if nonzero, else X, else Y."""
    for i in (2, 0, 1):
        if point.coords[i]:
            return i
    raise GeometryError("zero point")


def dehomogenize_at(F: Polynomial, index: int) -> Polynomial:
    """Set homogeneous coordinate ``index`` to 1; result in the local variables (u, v)."""
    if F.variables != HOMOGENEOUS:
        raise GeometryError(f"expected a homogeneous polynomial in {HOMOGENEOUS}")
    keep = [i for i in range(3) if i != index]
    out: dict = {}
    for e, c in F.terms.items():
        k = (e[keep[0]], e[keep[1]])
        out[k] = out.get(k, 0) + c
    return Polynomial(out, LOCAL, F.field)


def local_point(point: ProjPoint, index: int) -> tuple:
    keep = [i for i in range(3) if i != index]
    c = point.coords[index]
    return (point.coords[keep[0]] / c, point.coords[keep[1]] / c)


def point_field(point: ProjPoint):
    return point.field


def translate(f: Polynomial, at: Sequence, field=None) -> Polynomial:
    """``f(u + a, v + b)`` with coefficients moved into ``field`` if needed.

    Without ``field``, a coordinate in an extension field selects that field.
    """
    if field is None:
        field = next((field_of(c) for c in at if not isinstance(c, (int, Fraction))), f.field)
    if f.field != field:
        f = f.change_field(field)
    u, v = (Polynomial.variable(n, f.variables, field) for n in f.variables)
    a, b = at
    return f.compose({f.variables[0]: u + a, f.variables[1]: v + b})


def germ(F: Polynomial, point: ProjPoint) -> Polynomial:
    """Local equation of the homogeneous ``F`` at ``point``, moved to the origin."""
    idx = chart_index(point)
    f = dehomogenize_at(F, idx)
    return translate(f, local_point(point, idx), point.field if point.field != QQ else f.field)


def line_at_infinity_germ(point: ProjPoint, field=QQ) -> Polynomial:
    if point.coords[2]:
        raise GeometryError(f"{point} is not on the line at infinity")
    Z = Polynomial.variable("Z", HOMOGENEOUS, field)
    return germ(Z, point)


def _at_origin(f: Polynomial):
    return f.constant_term()


def _restrict_v0(f: Polynomial) -> list:
    """Coefficients of ``f(u, 0)``, constant first."""
    deg = max((e[0] for e in f.terms if e[1] == 0), default=-1)
    return [f.coefficient((k, 0)) for k in range(deg + 1)]


def _divide_by_v(f: Polynomial) -> Polynomial:
    return Polynomial._raw({(a, b - 1): c for (a, b), c in f.terms.items()}, f.variables, f.field)


def _lowest(coeffs: list) -> int:
    return next(k for k, c in enumerate(coeffs) if c)


def local_intersection(F: Polynomial, G: Polynomial, max_steps: int = 100_000) -> int:
    """Intersection number of two plane curve germs at the origin (Fulton's algorithm)."""
    if F.variables != G.variables:
        raise GeometryError("germs in different variables")
    total = 0
    for _ in range(max_steps):
        if _at_origin(F) or _at_origin(G):
            return total
        if not F or not G:
            raise NonIsolated("a germ vanishes identically")
        f0, g0 = trim(_restrict_v0(F)), trim(_restrict_v0(G))
        if not f0 and not g0:
            raise NonIsolated("the curves share the component v = 0 through the point")
        if not f0:
            F, G, f0, g0 = G, F, g0, f0
        if not g0:
            # G = v * H:  I(F, G) = I(F, v) + I(F, H)
            total += _lowest(f0)
            G = _divide_by_v(G)
            continue
        if len(f0) > len(g0):
            F, G, f0, g0 = G, F, g0, f0
        r, s = len(f0) - 1, len(g0) - 1
        factor = g0[-1] / f0[-1]
        shift = Polynomial.monomial((s - r, 0), F.variables, F.field, factor)
        G = G - shift * F
        if not G:
            raise NonIsolated("the curves share a component through the point")
    raise GeometryError("intersection computation did not terminate")


def milnor_of_germ(f: Polynomial) -> int:
    u, v = f.variables
    try:
        return local_intersection(f.diff(u), f.diff(v))
    except NonIsolated:
        raise NonIsolated("the singular locus is not isolated at the point") from None


def _homogeneous_input(C: Polynomial, a) -> tuple[Polynomial, ProjPoint | None]:
    if C.variables == HOMOGENEOUS:
        if not isinstance(a, ProjPoint):
            a = ProjPoint(*a)
        return C, a
    return C, None


def _local(C: Polynomial, a) -> Polynomial:
    """Germ at ``a`` for homogeneous C with a ProjPoint, or a 2-variable C with an affine point."""
    if C.variables == HOMOGENEOUS:
        point = a if isinstance(a, ProjPoint) else ProjPoint(*a)
        return germ(C, point)
    if isinstance(a, ProjPoint):
        raise GeometryError("affine polynomial given with a projective point")
    coords = tuple(a)
    fields = {getattr(c, "field", None) for c in coords} - {None}
    field = fields.pop() if fields else C.field
    return translate(C, coords, field).rename(LOCAL)


def milnor_number(C: Polynomial, a) -> int:
    """Milnor number of ``C`` at ``a`` (0 at smooth points); ``a`` must lie on ``C``."""
    f = _local(C, a)
    if f.constant_term():
        raise GeometryError(f"the point {a} is not on the curve")
    return milnor_of_germ(f)


def intersection_multiplicity(C: Polynomial, D: Polynomial, a) -> int:
    """Local intersection number of ``C`` and ``D`` at ``a``."""
    f, g = _local(C, a), _local(D, a)
    return local_intersection(f, g)


def multiplicity(C: Polynomial, a) -> int:
    return _local(C, a).order()


# ---------------------------------------------------------------------------
# classification


def _binary_form_root_multiplicities(T: Polynomial) -> list[int]:
    """Multiplicities of the distinct linear factors of a binary form over the algebraic closure."""
    deg = T.degree()
    field = T.field
    coeffs = trim([T.coefficient((k, deg - k)) for k in range(deg + 1)])  # T(t, 1)
    mults = []
    if deg - (len(coeffs) - 1):
        mults.append(deg - (len(coeffs) - 1))  # the factor v^k
    # counts[k] = number of distinct roots of multiplicity > k
    counts = []
    rest = coeffs
    while len(rest) > 1:
        sf = squarefree_part(rest, field)
        counts.append(len(sf) - 1)
        rest = poly_divmod(rest, sf, field)[0]
    for k, c in enumerate(counts):
        nxt = counts[k + 1] if k + 1 < len(counts) else 0
        mults.extend([k + 1] * (c - nxt))
    return sorted(mults, reverse=True)


def classify_germ(f: Polynomial) -> SingularityType:
    """ADE type of the germ ``f`` at the origin."""
    if f.constant_term():
        raise GeometryError("the origin is not on the curve")
    m = f.order()
    if m == 1:
        return SMOOTH
    try:
        mu = milnor_of_germ(f)
    except NonIsolated:
        return SingularityType("Unsupported", -1)
    if m == 2:
        return SingularityType.simple(f"A{mu}")
    if m == 3:
        roots = _binary_form_root_multiplicities(f.homogeneous_part(3))
        if len(roots) == 3:
            return SingularityType.simple("D4") if mu == 4 else SingularityType("Unsupported", mu)
        if len(roots) == 2:
            return SingularityType.simple(f"D{mu}") if mu >= 5 else SingularityType("Unsupported", mu)
        if mu in (6, 7, 8):
            return SingularityType.simple(f"E{mu}")
    return SingularityType("Unsupported", mu)


def classify_ade(C: Polynomial, a) -> SingularityType:
    """ADE type of ``C`` at ``a`` (homogeneous with a ProjPoint, or affine with a point)."""
    return classify_germ(_local(C, a))


def modified_tjurina(t: int, i: int) -> int:
    if i < 1:
        raise ValueError("the intersection number with the line at infinity must be positive")
    return t + i - 1


def branch_assignment(sing: SingularityType, component_germs: Sequence[Polynomial]) -> tuple:
    """Weighted degree carried by each component through a simple singular point.

    The branches are distributed over the components so that every component
    ``j`` gets weighted degree ``d_j`` with Milnor number
    ``(d_j/w_x - 1)(d_j/w_y - 1)`` and pairwise intersections
    ``d_j d_k / (w_x w_y)``.  The degree vector must be unique.
    """
    if not sing.is_simple:
        raise GeometryError(f"cannot assign branches for type {sing.tag}")
    wx, wy = sing.weights
    n = len(component_germs)
    mus = [milnor_of_germ(g) for g in component_germs]
    inter = {
        (j, k): local_intersection(component_germs[j], component_germs[k])
        for j in range(n)
        for k in range(j + 1, n)
    }
    found = set()
    for assignment in itertools.product(range(n), repeat=sing.branches):
        if set(assignment) != set(range(n)):
            continue
        degs = [0] * n
        for b, j in zip(sing.branch_degrees, assignment):
            degs[j] += b
        if any((Fraction(d, wx) - 1) * (Fraction(d, wy) - 1) != mu for d, mu in zip(degs, mus)):
            continue
        if any(Fraction(degs[j] * degs[k], wx * wy) != I for (j, k), I in inter.items()):
            continue
        found.add(tuple(degs))
    if len(found) != 1:
        raise GeometryError(
            f"branch assignment for {sing.tag} is {'ambiguous' if found else 'inconsistent'}: {sorted(found)}"
        )
    return found.pop()


# ---------------------------------------------------------------------------
# deg X by the Hilbert function


def hilbert_function_value(generators: Sequence[Polynomial], degree: int) -> int:
    """``dim (k[X,Y,Z]/I)_degree`` for the ideal generated by homogeneous polynomials."""
    cols = monomials(3, degree)
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for g in generators:
        k = degree - g.degree()
        if k < 0 or not g:
            continue
        for m in monomials(3, k):
            row = [0] * len(cols)
            for e, c in g.terms.items():
                row[index[(e[0] + m[0], e[1] + m[1], e[2] + m[2])]] = c
            rows.append(row)
    r = rank(rows, generators[0].field) if rows else 0
    return len(cols) - r


def deg_X(C: Polynomial) -> int:
    """Degree of the scheme defined by ``(C_X, C_Y, C)``, from the stabilized Hilbert function."""
    if C.variables != HOMOGENEOUS or not C.is_homogeneous():
        raise GeometryError("deg_X needs a homogeneous polynomial in (X, Y, Z)")
    e = C.degree()
    gens = [C.diff("X"), C.diff("Y"), C]
    values = [hilbert_function_value(gens, k) for k in (3 * e - 1, 3 * e, 3 * e + 1)]
    if len(set(values)) != 1:
        raise GeometryError(f"Hilbert function did not stabilize: {values}")
    return values[0]


# ---------------------------------------------------------------------------
# singular points of a configuration


@dataclass(frozen=True)
class PointOnConfig:
    """A point of the configuration together with its local data.

    ``components`` are indices into the configuration; ``on_infinity`` marks
    the line at infinity as an additional curve through the point.
    ``degrees`` maps each curve through the point (component index, or
    ``"z"`` for the line at infinity) to its weighted degree.
    """

    point: ProjPoint
    components: tuple
    on_infinity: bool
    singularity: SingularityType
    degrees: dict = dc_field(default_factory=dict, compare=False, hash=False)
    label: str = ""
    intersections: dict = dc_field(default_factory=dict, compare=False, hash=False)

    @property
    def curve_count(self) -> int:
        return len(self.components) + (1 if self.on_infinity else 0)

    def __str__(self):
        name = f"{self.label} " if self.label else ""
        return f"{name}{self.point} {self.singularity.tag}"


def _components_through(cfg, point: ProjPoint) -> tuple:
    return tuple(i for i, C in enumerate(cfg.components) if not C.evaluate(point.coords))


def local_data(cfg, point: ProjPoint, label: str = "") -> PointOnConfig:
    """Classify the union of the curves through ``point`` (the line at infinity included)."""
    comps = _components_through(cfg, point)
    at_inf = point.at_infinity
    if not comps:
        raise GeometryError(f"point {label or point} does not lie on the configuration")
    germs = [germ(cfg.components[i], point) for i in comps]
    keys: list = list(comps)
    if at_inf:
        germs.append(line_at_infinity_germ(point, germs[0].field))
        keys.append(LINE_AT_INFINITY)
    union = germs[0]
    for g in germs[1:]:
        union = union * g
    sing = classify_germ(union)
    degrees = {}
    inter = {}
    for j in range(len(germs)):
        for k in range(j + 1, len(germs)):
            inter[(keys[j], keys[k])] = local_intersection(germs[j], germs[k])
    if sing.is_simple:
        degs = branch_assignment(sing, germs)
        degrees = dict(zip(keys, degs))
    return PointOnConfig(point, comps, at_inf, sing, degrees, label, inter)


def is_transverse_pair(p: PointOnConfig) -> bool:
    """Exactly two distinct curves crossing transversally (a node of two curves)."""
    return p.singularity.tag == "A1" and p.curve_count == 2


@dataclass
class SingularSearch:
    points: list
    unresolved: list


def _points_over(values_report, base_field):
    """Turn a RootReport into a list of (value, field) including conjugate roots of quadratics."""
    out = [(r, base_field) for r, _ in values_report.roots]
    for fac, _ in values_report.quadratic:
        K, (r1, r2) = quadratic_roots(fac, base_field)
        out.append((r1, K))
        out.append((r2, K))
    return out


def affine_singular_points(C: Polynomial, seed: int = 7, tries: int = 8) -> SingularSearch:
    """Singular points of the affine curve ``C(x, y) = 0`` over the base field and
    quadratic extensions (common zeros of ``C, C_x, C_y``)."""
    if C.field != QQ:
        raise GeometryError("automatic singular point search is implemented over QQ")
    vs = C.variables
    try:
        found = common_zeros([C, C.diff(vs[0]), C.diff(vs[1])], seed=seed, tries=tries)
    except SolveError as exc:
        raise GeometryError(str(exc)) from None
    points = [ProjPoint(x0, y0, field_of(x0).one) for x0, y0 in found.points]
    return SingularSearch(points, found.unresolved)


def points_at_infinity(C: Polynomial) -> SingularSearch:
    """Points of the homogeneous curve ``C`` on ``Z = 0``, over QQ and quadratic extensions."""
    B = {(e[0], e[1]): c for e, c in C.terms.items() if e[2] == 0}
    deg = C.degree()
    coeffs = [B.get((deg - k, k), 0) for k in range(deg + 1)]  # B(1, t), t = Y/X
    points = []
    if not coeffs[-1]:
        # X divides B: the point (0:1:0)
        points.append(ProjPoint(0, 1, 0))
    report = field_roots(trim(coeffs), QQ) if len(trim(coeffs)) > 1 else None
    unresolved = []
    if report is not None:
        unresolved = list(report.unresolved)
        for t0, K in _points_over(report, QQ):
            points.append(ProjPoint(K.one, t0, K.zero))
    return SingularSearch(points, unresolved)


def configuration_singular_points(cfg) -> SingularSearch:
    """Singular points of the union of the configuration and the line at infinity."""
    C = cfg.product
    from .projective import affine_part

    aff = affine_singular_points(affine_part(C))
    inf = points_at_infinity(C)
    return SingularSearch(aff.points + inf.points, aff.unresolved + inf.unresolved)


def eta_geometric_points(cfg, extra_declared: Sequence = ()) -> list[PointOnConfig]:
    """Quasi-homogeneous singular points of the configuration (line at infinity included),
    minus transverse crossings of exactly two curves.

    ``extra_declared`` holds ``(label, ProjPoint)`` pairs or ProjPoints; a
    declared point must lie on the configuration and is labelled in the
    output.  Points found by the search but not declared are kept unlabelled.
    """
    declared = []
    for item in extra_declared:
        label, pt = item if isinstance(item, tuple) else ("", item)
        if not any(not C.evaluate(pt.coords) for C in cfg.components):
            raise GeometryError(f"declared point {label or pt} does not lie on the configuration")
        declared.append((label, pt))
    search = configuration_singular_points(cfg)
    candidates = [(lbl, p) for lbl, p in declared]
    for p in search.points:
        if not any(p == q for _, q in candidates):
            candidates.append(("", p))
    out = []
    for label, p in candidates:
        data = local_data(cfg, p, label)
        if data.singularity.tag == "Smooth":
            continue
        if not data.singularity.is_simple:
            raise GeometryError(f"point {label or p} has an unsupported singularity")
        if is_transverse_pair(data):
            continue
        out.append(data)
    return out


def tjurina_sum(points: Sequence[PointOnConfig], cfg) -> int:
    """``sum t(P) + sum t_z(P)`` over the singular points of the curve (not of its union with z)."""
    total = 0
    C = cfg.product
    for p in points:
        g = germ(C, p.point)
        t = milnor_of_germ(g) if g.order() > 1 else 0
        if p.on_infinity:
            i = local_intersection(g, line_at_infinity_germ(p.point, g.field))
            total += modified_tjurina(t, i)
        else:
            total += t
    return total


def singular_points_with_data(cfg) -> list[PointOnConfig]:
    """All points of the search (affine singular points of C, all points of C at infinity)."""
    search = configuration_singular_points(cfg)
    return [local_data(cfg, p) for p in search.points]


__all__ = [
    "GeometryError",
    "NonIsolated",
    "PointOnConfig",
    "SingularityType",
    "ade_weights",
    "branch_assignment",
    "classify_ade",
    "classify_germ",
    "configuration_singular_points",
    "deg_X",
    "eta_geometric_points",
    "intersection_multiplicity",
    "local_data",
    "local_intersection",
    "milnor_number",
    "modified_tjurina",
    "multiplicity",
    "normal_form",
    "points_at_infinity",
    "affine_singular_points",
    "singular_points_with_data",
    "tjurina_sum",
    "SMOOTH",
    "germ",
    "milnor_of_germ",
    "line_at_infinity_germ",
    "is_transverse_pair",
    "hilbert_function_value",
]
