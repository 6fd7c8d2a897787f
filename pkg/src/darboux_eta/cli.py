"""Command-line interface.

Every command prints a plain-text report, or with ``--json`` a JSON object
whose keys are listed in the README.  Commands that take ``--config`` read
the line-oriented format of :mod:`darboux_eta.pipeline.config`.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra.fields import FieldError, parse_field
from .algebra.forms import Form1, parse_form1
from .darboux import cofactor, solve_inverse
from .eta import EtaError, assemble_M, certificate_report, certify, eta_at, eta_prime_at, project_eta
from .frommer import DEFAULT_COUNT, FrommerError, NormalizedForm, focal_jacobian, focal_values, normalize, reduce_form
from .geometry import GeometryError, eta_geometric_points
from .pipeline import ConfigError, FixtureError, load_config, load_fixture, run_blueprint
from .projective import ProjectiveError, parse_point
from .zeros import ZeroError, find_zeros


class CommandError(Exception):
    pass


def _value(x):
    """JSON-friendly scalar: integers stay integers, everything else is a string."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return str(x)


def _config(args):
    if not args.config:
        raise CommandError("--config is required")
    field = parse_field(args.field) if args.field else None
    return load_config(args.config, field)


def _form(args, job=None) -> Form1:
    """``--form`` names a form of the configuration, or is the form itself when no configuration is given."""
    if job is not None and args.form in job.forms:
        return job.form(args.form)
    if job is not None:
        raise CommandError(f"unknown form {args.form!r}")
    field = parse_field(args.field) if args.field else None
    return parse_form1(args.form, field=field)


# ---------------------------------------------------------------------------
# commands


def cmd_solve(args):
    job = _config(args)
    space = solve_inverse(job.configuration(), args.degree)
    lines = [
        f"degree: {args.degree}",
        f"dimension: {space.dimension}",
        f"trivial dimension: {space.trivial_dimension}",
    ]
    forms = []
    for i, sol in enumerate(space.basis):
        w = sol.form()
        cofs = [str(K) for K in sol.affine_cofactors()]
        lines.append(f"omega_{i + 1} = {w}")
        for name, K in zip(job.component_names(), cofs):
            lines.append(f"  cofactor {name} = {K}")
        forms.append({"omega": str(w), "P": str(w.P), "Q": str(w.Q), "cofactors": dict(zip(job.component_names(), cofs))})
    data = {
        "degree": args.degree,
        "dimension": space.dimension,
        "trivial_dimension": space.trivial_dimension,
        "basis": forms,
    }
    return "\n".join(lines), data


def cmd_cofactor(args):
    job = _config(args)
    C = job.curve(args.curve)
    w = _form(args, job)
    K = cofactor(C, w)
    text = f"cofactor of {args.curve} for {args.form}: {K}"
    return text, {"curve": args.curve, "form": args.form, "cofactor": str(K.coefficient)}


def cmd_eta(args):
    job = _config(args)
    w = _form(args, job)
    cfg = job.configuration()
    pt = job.point(args.point)
    if args.prime_chart:
        value = eta_prime_at(w, cfg, pt)
        projected = project_eta(value, cfg.degrees, w.degree)
        text = f"eta' at {pt}: {value}\nprojected: {projected}"
        data = {
            "point": str(pt),
            "chart": "infinity",
            "eta_prime": [_value(x) for x in value],
            "projected": [_value(x) for x in projected],
        }
        return text, data
    value = eta_at(w, cfg, pt)
    return f"eta at {pt}: {value}", {"point": str(pt), "chart": "affine", "eta": [_value(x) for x in value]}


def _certificate_dict(cert) -> dict:
    M = cert.matrix
    rows = []
    for row, printed in zip(M.rows + [None], M.printable()):
        rows.append({
            "label": "center" if row is None else row.label,
            "point": None if row is None or row.point is None else str(row.point),
            "type": None if row is None else row.tag,
            "row": [_value(x) for x in printed],
        })
    return {
        "columns": list(M.columns),
        "rows": rows,
        "rank": cert.rank,
        "rank_bound": len(M.columns) - 1,
        "general_position": cert.general_position,
        "kernel": list(cert.kernel) if cert.kernel is not None else None,
        "relation": [_value(x) for x in cert.relation] if cert.relation is not None else None,
        "exponents": [_value(x) for x in cert.exponents] if cert.exponents is not None else None,
        "identity_verified": cert.identity_verified,
        "failed_stages": list(cert.failed_stages),
        "verified": cert.verified,
    }


def cmd_certify(args):
    job = _config(args)
    job.verify_points()
    cfg = job.configuration()
    if args.form:
        w = _form(args, job)
    else:
        space = solve_inverse(cfg, job.degree)
        if space.dimension != 1:
            raise CommandError(f"degree {job.degree}: solution space has dimension {space.dimension}, expected 1")
        w = space.basis[0].form()
    # only points declared as part of the configuration (with a type or components)
    labelled = [(d.name, d.point) for d in job.points.values() if d.type or d.components]
    points = eta_geometric_points(cfg, labelled)
    cert = certify(w, cfg, points, assemble_M(w, cfg, points))
    return f"omega = {w}\n" + certificate_report(cert), dict(_certificate_dict(cert), omega=str(w))


def cmd_zeros(args):
    job = _config(args)
    w = _form(args, job)
    report = find_zeros(w, job.configuration().components)
    lines = [f"zeros of {args.form}:"]
    lines.extend(f"  {z}" for z in report.zeros)
    if report.unresolved:
        lines.append("unresolved factor degrees: " + ", ".join(map(str, report.unresolved)))
    lines.append("outside C and z = 0: " + (", ".join(str(z.point) for z in report.outside) or "none"))
    data = {
        "zeros": [
            {"point": str(z.point), "multiplicity": z.multiplicity, "orbit": z.orbit, "location": z.location}
            for z in report.zeros
        ],
        "outside": [str(z.point) for z in report.outside],
        "total_with_multiplicity": report.total_weighted,
        "off_curve_with_multiplicity": report.off_curve_weighted,
        "unresolved_degrees": list(report.unresolved),
    }
    return "\n".join(lines), data


def cmd_frommer(args):
    job = _config(args) if args.config else None
    w = _form(args, job)
    if args.at is not None:
        # a declared name is mapped by the substitution; literal text is already in the form's coordinates
        pt = job.point(args.at) if job is not None and args.at in job.points else parse_point(args.at)
        f = normalize(w, pt, args.prime)
    else:
        f = NormalizedForm.from_form(reduce_form(w, args.prime))
    run = focal_jacobian if args.jacobian else focal_values
    report = run(f, args.count, args.route)
    return f"normalized: {f}\n" + report.text(), dict(report.as_dict(), normalized=str(f))


def cmd_paper(args):
    fx = load_fixture(args.construction)
    report = run_blueprint(fx, keep_going=args.keep_going, frommer=not args.no_frommer)
    return report.text(), report.as_dict()


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="darboux-eta", description="Darboux forms, eta certificates and focal values.")
    parser.add_argument("--field", help="coefficient field, QQ or GF(p); overrides the configuration")
    parser.add_argument("--json", action="store_true", help="print a JSON report")
    # the same flags after the command name; SUPPRESS keeps a value given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="forms of a given degree with every curve invariant")
    p.add_argument("--config", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("cofactor", parents=[common], help="cofactor of a curve for a form")
    p.add_argument("--config", required=True)
    p.add_argument("--curve", required=True)
    p.add_argument("--form", required=True)
    p.set_defaults(run=cmd_cofactor)

    p = sub.add_parser("eta", parents=[common], help="eta value of a form at a point")
    p.add_argument("--config", required=True)
    p.add_argument("--form", required=True)
    p.add_argument("--point", required=True, help="a declared point name or (a:b:c) in original coordinates")
    p.add_argument("--prime-chart", action="store_true", help="evaluate in the chart at infinity and project")
    p.set_defaults(run=cmd_eta)

    p = sub.add_parser("certify", parents=[common], help="integrability certificate of a configuration")
    p.add_argument("--config", required=True)
    p.add_argument("--form", help="use this form instead of solving in the configured degree")
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("zeros", parents=[common], help="zeros of a form, sorted by location")
    p.add_argument("--config", required=True)
    p.add_argument("--form", required=True)
    p.set_defaults(run=cmd_zeros)

    p = sub.add_parser("frommer", parents=[common], help="focal values over GF(p)")
    p.add_argument("--config")
    p.add_argument("--form", required=True, help="a form name, or the form itself without --config")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--count", type=int, default=DEFAULT_COUNT)
    p.add_argument("--jacobian", action="store_true", help="also compute the Jacobian and its rank")
    p.add_argument("--at", help="normalize at this zero first: a declared point, or (a:b:c) in the form's coordinates")
    p.add_argument("--route", choices=("eigenbasis", "dense"))
    p.set_defaults(run=cmd_frommer)

    p = sub.add_parser("paper", parents=[common], help="run the pipeline on a stored construction")
    p.add_argument("--construction", required=True)
    p.add_argument("--keep-going", action="store_true", help="continue after a failing stage")
    p.add_argument("--no-frommer", action="store_true", help="skip the focal-value stage")
    p.set_defaults(run=cmd_paper)
    return parser


_ERRORS = (
    CommandError,
    ConfigError,
    FixtureError,
    FieldError,
    EtaError,
    GeometryError,
    ProjectiveError,
    ZeroError,
    FrommerError,
    OSError,
)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, data = args.run(args)
    except _ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)
    if args.command == "paper":
        return 0 if data["ok"] else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
