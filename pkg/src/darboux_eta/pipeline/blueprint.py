"""The construction pipeline: from a curve configuration to a certified center.

Stages run in a fixed order.  ``curve`` checks the sextic (reduced, degree,
simple singularities with Milnor sum 18); ``bitangent`` checks that ``z = 0``
meets the curve with multiplicity at least two in two distinct points;
``solve`` finds the degree-``s`` form; ``certify`` tests the rank of the
primed matrix and the position of its points and verifies the relation
(conditions a and b); ``zeros`` looks for a zero off the curves and the line
at infinity (condition c); ``frommer`` reduces modulo ``p``, normalizes at
that zero and computes focal values with their Jacobian rank (condition d).
The family condition is recorded from the data, not verified.

For a fixture the report also compares every computed value with the
printed one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from ..algebra.fields import QQ, FieldError, FieldOfDefinition
from ..algebra.forms import Form1
from ..algebra.linalg import nullspace, primitive_vector
from ..algebra.poly import Polynomial, monomials
from ..algebra.univariate import poly_gcd
from ..darboux import ConfigurationError, CurveConfiguration, scale_to_integers, solve_inverse
from ..eta import EtaValue, assemble_M, certify
from ..frommer import DEFAULT_COUNT, FrommerError, focal_jacobian, normalize
from ..geometry import (
    GeometryError,
    classify_germ,
    eta_geometric_points,
    germ,
    line_at_infinity_germ,
    local_data,
    local_intersection,
    milnor_of_germ,
    points_at_infinity,
    singular_points_with_data,
    tjurina_sum,
    translate,
)
from ..projective import HOMOGENEOUS, ProjPoint, monomial_evaluation_matrix
from ..zeros import ZeroError, find_zeros

SUBMAXIMAL_MILNOR = 18
EXPECTED_RANK = 11


class StageFailure(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.message = message


# ---------------------------------------------------------------------------
# standalone helpers


def implicitize(forms: Sequence[Polynomial], expected_degree: int | None = None) -> Polynomial:
    """Equation of the image of ``(s:t) -> (f0 : f1 : f2)``.

    Interpolates: the curve equation spans the kernel of the evaluation
    matrix of degree-``m`` monomials at enough parameter values, for the
    smallest ``m`` with a nonzero kernel.  The result is checked symbolically.
    """
    if len(forms) != 3:
        raise ValueError("a plane parametrization needs three forms")
    field = forms[0].field
    degs = {f.degree() for f in forms}
    if len(degs) != 1 or not all(f.is_homogeneous() for f in forms):
        raise ValueError("the forms must be homogeneous of one degree")
    (n,) = degs
    vs = forms[0].variables
    univariate = [[f.coefficient((n - k, k)) for k in range(n + 1)] for f in forms]
    g = poly_gcd(poly_gcd(univariate[0], univariate[1], field), univariate[2], field)
    # a common factor s or t is invisible to the gcd in t
    shared_s = all(not f.coefficient((0, n)) for f in forms)
    shared_t = all(not f.coefficient((n, 0)) for f in forms)
    if len(g) > 1 or shared_s or shared_t:
        raise ValueError("the forms share a common factor: the parametrization is degenerate")
    degree = expected_degree if expected_degree is not None else n
    for m in range(1, degree + 1):
        needed = len(monomials(3, m)) + 2
        params = [(field.one, field.zero)] + [(field(k), field.one) for k in range(needed)]
        points = [ProjPoint(*(f.evaluate(st) for f in forms)) for st in params]
        kernel = nullspace(monomial_evaluation_matrix(points, m), field)
        if not kernel:
            continue
        if len(kernel) != 1:
            raise ValueError(f"kernel of dimension {len(kernel)} in degree {m}: degenerate parametrization")
        if m != degree:
            raise ValueError(f"the image has degree {m}, expected {degree}")
        v = primitive_vector(kernel[0]) if field == QQ else kernel[0]
        F = Polynomial(dict(zip(monomials(3, m), v)), HOMOGENEOUS, field)
        if F.compose(dict(zip(HOMOGENEOUS, forms)), vs):
            raise ValueError("interpolated equation does not vanish on the parametrization")
        return F
    raise ValueError(f"no curve of degree at most {degree} contains the image")


def contact_factor(M: Sequence[Sequence[Polynomial]], C: Polynomial):
    """The scalar ``c`` with ``det M = c C``, or None."""
    if len(M) != 2 or any(len(row) != 2 for row in M):
        raise ValueError("expected a 2x2 matrix")
    if M[0][1] != M[1][0]:
        raise ValueError("the matrix is not symmetric")
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if not det or not C:
        return None
    e = next(iter(C.terms))
    c = det.coefficient(e) / C.terms[e]
    return c if c and det == C * c else None


def contact_matrix_check(M: Sequence[Sequence[Polynomial]], C: Polynomial) -> bool:
    """Whether ``det M`` is a nonzero scalar multiple of ``C``."""
    return contact_factor(M, C) is not None


def forms_proportional(w1: Form1, w2: Form1):
    """The scalar ``c`` with ``w1 = c w2``, or None."""
    a = list(w1.P.terms.items()) + list(w1.Q.terms.items())
    if not a or w1.is_zero() or w2.is_zero():
        return None
    e, c1 = next(iter(w1.P.terms.items())) if w1.P else next(iter(w1.Q.terms.items()))
    c2 = (w2.P if w1.P else w2.Q).coefficient(e)
    if not c2:
        return None
    c = c1 / c2
    return c if w1.P == w2.P * c and w1.Q == w2.Q * c else None


def translate_form(w: Form1, point: Sequence) -> Form1:
    return Form1.affine(translate(w.P, point), translate(w.Q, point))


def matrix_matches(computed: Sequence[Sequence], expected: Sequence[Sequence]) -> bool:
    """Rows agree as multisets, each computed row proportional to its printed partner."""
    if len(computed) != len(expected):
        return False
    remaining = [list(r) for r in expected]
    for row in computed:
        hit = next((k for k, e in enumerate(remaining) if EtaValue(row) == EtaValue(e)), None)
        if hit is None:
            return False
        remaining.pop(hit)
    return True


def same_up_to_sign(u: Sequence, v: Sequence) -> bool:
    return list(u) == list(v) or list(u) == [-x for x in v]


# ---------------------------------------------------------------------------
# reports


@dataclass
class StageResult:
    name: str
    passed: bool | None  # None: recorded, not verified
    summary: str
    data: dict = dc_field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"stage": self.name, "passed": self.passed, "summary": self.summary, "data": self.data}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class PipelineReport:
    name: str
    stages: list = dc_field(default_factory=list)
    checks: list = dc_field(default_factory=list)
    halted: str | None = None
    omega: Form1 | None = None
    certificate: object = None
    zeros: object = None
    focal: object = None

    @property
    def ok(self) -> bool:
        return self.halted is None and all(s.passed is not False for s in self.stages)

    def stage(self, name: str) -> StageResult | None:
        return next((s for s in self.stages if s.name == name), None)

    def check(self, name: str) -> Check | None:
        return next((c for c in self.checks if c.name == name), None)

    def text(self) -> str:
        lines = [f"construction: {self.name}"]
        for s in self.stages:
            mark = {True: "PASS", False: "FAIL", None: "NOTE"}[s.passed]
            lines.append(f"[{mark}] {s.name}: {s.summary}")
        if self.halted:
            lines.append(f"halted at stage {self.halted}")
        for c in self.checks:
            lines.append(f"[{'PASS' if c.passed else 'FAIL'}] check {c.name}: {c.detail}")
        lines.append(f"all stages passed: {self.ok}")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {
            "construction": self.name,
            "ok": self.ok,
            "halted": self.halted,
            "stages": [s.as_dict() for s in self.stages],
            "checks": [c.as_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


def _point_text(p) -> str:
    return str(p)


def _fraction_text(x) -> str:
    return str(Fraction(x)) if isinstance(x, (int, Fraction)) else str(x)


# ---------------------------------------------------------------------------
# stages


@dataclass
class BlueprintInput:
    """What the pipeline needs, independent of where it came from."""

    name: str
    cfg: CurveConfiguration
    degree: int = 3
    prime: int = 29
    declared: list = dc_field(default_factory=list)  # (label, ProjPoint, type or None)
    family: str = ""


def _curve_stage(inp: BlueprintInput, state: dict) -> StageResult:
    cfg = inp.cfg
    C = cfg.product
    points = singular_points_with_data(cfg)
    milnor, types, simple = 0, [], True
    for p in points:
        g = germ(C, p.point)
        if g.order() < 2:
            continue
        mu = milnor_of_germ(g)
        sing = classify_germ(g)
        simple = simple and sing.is_simple
        milnor += mu
        types.append(f"{sing.tag} at {_point_text(p.point)}")
    degX = tjurina_sum(points, cfg)
    state["degX"] = degX
    d = cfg.total_degree
    ok = d == 2 * inp.degree and simple and milnor == SUBMAXIMAL_MILNOR
    summary = f"reduced, degree {d}, Milnor sum {milnor}, " + ("simple" if simple else "not simple")
    data = {"degree": d, "milnor_sum": milnor, "simple": simple, "singularities": types, "deg_X": degX}
    return StageResult("curve", ok, summary, data)


def _bitangent_stage(inp: BlueprintInput, state: dict) -> StageResult:
    C = inp.cfg.product
    search = points_at_infinity(C)
    contacts = []
    for p in search.points:
        g = germ(C, p)
        i = local_intersection(g, line_at_infinity_germ(p, g.field))
        contacts.append((p, i))
    tangent = [p for p, i in contacts if i >= 2]
    ok = len(tangent) >= 2 and not search.unresolved
    data = {
        "intersections": [{"point": _point_text(p), "multiplicity": i} for p, i in contacts],
        "unresolved_degrees": list(search.unresolved),
    }
    summary = f"{len(tangent)} points of contact order at least 2 with z = 0"
    return StageResult("bitangent", ok, summary, data)


def _solve_stage(inp: BlueprintInput, state: dict) -> StageResult:
    space = solve_inverse(inp.cfg, inp.degree)
    if space.dimension != 1:
        raise StageFailure("solve", f"solution space in degree {inp.degree} has dimension {space.dimension}, expected 1")
    omega = scale_to_integers(space.basis[0]).form()
    state["omega"] = omega
    return StageResult("solve", True, f"unique form of degree {inp.degree}", {"omega": str(omega), "dimension": 1})


def _declared_types(inp: BlueprintInput) -> list:
    problems = []
    for label, pt, tag in inp.declared:
        try:
            data = local_data(inp.cfg, pt, label)
        except GeometryError as exc:
            problems.append(f"{label}: {exc}")
            continue
        if tag is not None and data.singularity.tag != tag:
            problems.append(f"{label} at {pt}: declared {tag}, found {data.singularity.tag}")
    return problems


def _certify_stage(inp: BlueprintInput, state: dict) -> StageResult:
    problems = _declared_types(inp)
    if problems:
        raise StageFailure("certify", "declared points disagree: " + "; ".join(problems))
    omega = state["omega"]
    labelled = [(label, pt) for label, pt, _ in inp.declared]
    try:
        points = eta_geometric_points(inp.cfg, labelled)
    except GeometryError as exc:
        raise StageFailure("certify", str(exc)) from None
    matrix = assemble_M(omega, inp.cfg, points)
    cert = certify(omega, inp.cfg, points, matrix)
    state["certificate"] = cert
    rows = [
        {"label": row.label, "point": _point_text(row.point), "type": row.tag, "row": [_fraction_text(x) for x in EtaValue(row.value).normalized()]}
        for row in matrix.rows
    ]
    data = {
        "columns": list(matrix.columns),
        "rows": rows,
        "center": list(matrix.center),
        "rank": cert.rank,
        "rank_bound": inp.cfg.r + 1,
        "general_position": cert.general_position,
        "kernel": list(cert.kernel) if cert.kernel else None,
        "identity_verified": cert.identity_verified,
        "exponents": [_fraction_text(x) for x in cert.exponents] if cert.exponents else None,
        "failed": list(cert.failed_stages),
    }
    summary = (
        f"rank {cert.rank} (bound {inp.cfg.r + 1}), kernel {cert.kernel}, "
        f"points in general position: {cert.general_position}, identity verified: {cert.identity_verified}"
    )
    return StageResult("certify", cert.verified, summary, data)


def _zeros_stage(inp: BlueprintInput, state: dict) -> StageResult:
    omega = state["omega"]
    try:
        report = find_zeros(omega, inp.cfg.components, state.get("degX"))
    except ZeroError as exc:
        raise StageFailure("zeros", str(exc)) from None
    state["zeros"] = report
    outside = report.outside
    rational = [z for z in outside if z.point.field == QQ]
    state["center"] = rational[0].point if rational else None
    data = {
        "outside": [{"point": _point_text(z.point), "multiplicity": z.multiplicity, "orbit": z.orbit} for z in outside],
        "total_with_multiplicity": report.total_weighted,
        "off_curve_with_multiplicity": report.off_curve_weighted,
        "bound_off_curve": report.bound,
        "within_bound": report.within_bound,
        "unresolved_degrees": list(report.unresolved),
    }
    summary = "zeros outside C and z = 0: " + (", ".join(_point_text(z.point) for z in outside) or "none")
    return StageResult("zeros", bool(outside), summary, data)


def _frommer_stage(inp: BlueprintInput, state: dict, count: int) -> StageResult:
    center = state.get("center")
    if center is None:
        raise StageFailure("frommer", "no rational zero outside the curve to normalize at")
    try:
        form = normalize(state["omega"], center, inp.prime)
    except (FrommerError, FieldOfDefinition, FieldError) as exc:
        raise StageFailure("frommer", f"normalization at {center} failed: {exc}") from None
    report = focal_jacobian(form, count)
    state["focal"] = report
    ok = report.all_vanish and report.rank == EXPECTED_RANK
    data = {
        "prime": inp.prime,
        "zero": _point_text(center),
        "normalized": str(form),
        "focal_values": [int(v) for v in report.values],
        "jacobian_rank": report.rank,
    }
    summary = f"GF({inp.prime}) at {center}: {count} focal values vanish: {report.all_vanish}, Jacobian rank {report.rank}"
    return StageResult("frommer", ok, summary, data)


def _family_stage(inp: BlueprintInput, state: dict) -> StageResult:
    return StageResult("family", None, inp.family or "declared, not verified", {})


STAGES = ("curve", "bitangent", "solve", "certify", "zeros", "frommer", "family")


def run_stages(inp: BlueprintInput, keep_going: bool = False, frommer: bool = True, count: int = DEFAULT_COUNT) -> tuple[PipelineReport, dict]:
    report = PipelineReport(inp.name)
    state: dict = {}
    runners = {
        "curve": _curve_stage,
        "bitangent": _bitangent_stage,
        "solve": _solve_stage,
        "certify": _certify_stage,
        "zeros": _zeros_stage,
        "frommer": lambda i, s: _frommer_stage(i, s, count),
        "family": _family_stage,
    }
    # later stages need the form, so a failure before it always halts
    needs = {"certify": "omega", "zeros": "omega", "frommer": "omega"}
    for name in STAGES:
        if name == "frommer" and not frommer:
            continue
        if name in needs and needs[name] not in state:
            report.halted = report.halted or name
            break
        try:
            result = runners[name](inp, state)
        except StageFailure as exc:
            report.stages.append(StageResult(name, False, exc.message))
            report.halted = name
            if name == "solve" or not keep_going:
                break
            continue
        except (GeometryError, ConfigurationError) as exc:
            report.stages.append(StageResult(name, False, str(exc)))
            report.halted = name
            break
        report.stages.append(result)
        if result.passed is False and not keep_going:
            report.halted = name
            break
    report.omega = state.get("omega")
    report.certificate = state.get("certificate")
    report.zeros = state.get("zeros")
    report.focal = state.get("focal")
    return report, state


def _fixture_input(fx) -> BlueprintInput:
    declared = [(p.label, p.point, p.type) for p in fx.points]
    family = ""
    if fx.parameters:
        family = "one-parameter family, member " + ", ".join(f"{k} = {v}" for k, v in fx.parameters.items())
    return BlueprintInput(fx.id, fx.configuration(), fx.degree, fx.prime, declared, family)


def _fixture_checks(fx, report: PipelineReport, state: dict) -> list:
    checks = []
    omega = state.get("omega")
    zeros = state.get("zeros")
    if fx.printed_form is not None and omega is not None:
        target = omega
        if fx.printed_translated:
            center = fx.expected_zero or state.get("center")
            target = translate_form(omega, center.affine()) if center is not None else None
        c = forms_proportional(target, fx.printed_form) if target is not None else None
        checks.append(Check("printed form", c is not None, f"computed = {c} * printed" if c is not None else "not proportional"))
    cert = state.get("certificate")
    if cert is not None and fx.expected_matrix:
        perm = fx.column_permutation()
        rows = [[row[k] for k in perm] for row in cert.matrix.point_rows("value")]
        rows.append([cert.matrix.center[k] for k in perm])
        expected = [list(r.row) for r in fx.expected_matrix]
        checks.append(Check("matrix", matrix_matches(rows, expected), f"columns {', '.join(fx.matrix_columns)}"))
    if cert is not None and fx.expected_kernel:
        kernel = None
        if cert.kernel is not None:
            perm = fx.column_permutation()
            kernel = [cert.kernel[k] for k in perm]
        ok = kernel is not None and same_up_to_sign(kernel, fx.expected_kernel)
        checks.append(Check("kernel", ok, f"computed {tuple(kernel) if kernel else None}, printed {fx.expected_kernel}"))
    if fx.expected_zero is not None and zeros is not None:
        outside = [z.point for z in zeros.outside]
        ok = any(p == fx.expected_zero for p in outside)
        found = ", ".join(_point_text(p) for p in outside) or "none"
        checks.append(Check("zero", ok, f"printed {fx.expected_zero}, found {found}"))
    if fx.normalized_form is not None:
        fr = focal_jacobian(fx.normalized_form, DEFAULT_COUNT)
        ok = fr.all_vanish and fr.rank == EXPECTED_RANK
        checks.append(Check("printed normalized form", ok, f"focal values vanish: {fr.all_vanish}, Jacobian rank {fr.rank}"))
    if fx.contact_matrix is not None:
        cm = fx.contact_matrix
        from .fixtures import parse_homogeneous

        M = [[parse_homogeneous(e) for e in row] for row in cm["entries"]]
        factor = contact_factor(M, fx.curves[cm["curve"]])
        ok = factor is not None and factor == Fraction(cm["factor"])
        checks.append(Check("contact matrix", ok, f"det M = {factor} * {cm['curve']}"))
    return checks


def run_blueprint(source, keep_going: bool = False, frommer: bool = True, count: int = DEFAULT_COUNT) -> PipelineReport:
    """Run every stage on a fixture, a job configuration or a :class:`BlueprintInput`.

    By default the first failing stage halts the run; ``keep_going`` records
    the failure and continues wherever the data allow.
    """
    from .config import JobConfig
    from .fixtures import ConstructionFixture

    if isinstance(source, ConstructionFixture):
        inp = _fixture_input(source)
    elif isinstance(source, JobConfig):
        inp = source.blueprint_input()
    elif isinstance(source, BlueprintInput):
        inp = source
    else:
        raise TypeError(f"cannot run the blueprint on {type(source).__name__}")
    report, state = run_stages(inp, keep_going, frommer, count)
    if isinstance(source, ConstructionFixture):
        report.checks = _fixture_checks(source, report, state)
    return report


__all__ = [
    "BlueprintInput",
    "Check",
    "PipelineReport",
    "STAGES",
    "StageFailure",
    "StageResult",
    "contact_factor",
    "contact_matrix_check",
    "forms_proportional",
    "implicitize",
    "matrix_matches",
    "run_blueprint",
    "translate_form",
]
