"""Line-oriented job configuration files.

One statement per line; ``#`` starts a comment::

    field QQ
    curve C4 = (x*y - z^2)^2 - x*z^3
    curve C2 = -x^2 - 4*x*y - 2*x*z - 4*y*z + 3*z^2
    substitute z = z - 4*y
    point B = (0:1:0) type D7 components C4 C2
    form w = (x^2 - y)*dx + 3*x*dy
    degree 3
    prime 29

Curves are homogeneous in ``x, y, z`` and points are written in the same
(original) coordinates; ``substitute`` lines are applied together to every
curve and point, and must send the intended bitangent to ``z = 0``.  Forms
are affine in ``x, y`` and live in the coordinates after substitution.
Curves may refer to earlier curves by name (``curve C = C4*C2``).
Declared types and components are checked before the data are used; only
points with a type or components count as points of the configuration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from ..algebra.fields import QQ, parse_field
from ..algebra.forms import parse_form1
from ..algebra.poly import parse_polynomial
from ..darboux import CurveConfiguration
from ..geometry import GeometryError, local_data
from ..projective import HOMOGENEOUS, ProjPoint, parse_point
from .blueprint import BlueprintInput
from .fixtures import TEXT_VARIABLES, Substitution


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(frozen=True)
class PointDecl:
    name: str
    point: ProjPoint  # working coordinates
    type: str | None = None
    components: tuple | None = None


@dataclass
class JobConfig:
    field: object = QQ
    curves: dict = dc_field(default_factory=dict)  # name -> homogeneous Polynomial, original coordinates
    substitution: Substitution = dc_field(default_factory=Substitution)
    forms: dict = dc_field(default_factory=dict)
    points: dict = dc_field(default_factory=dict)  # name -> PointDecl
    components: tuple | None = None
    degree: int = 3
    prime: int = 29
    name: str = "config"
    family: str = ""

    def component_names(self) -> tuple:
        return self.components if self.components is not None else tuple(self.curves)

    def configuration(self) -> CurveConfiguration:
        names = self.component_names()
        missing = [n for n in names if n not in self.curves]
        if missing:
            raise ConfigError(f"unknown components: {', '.join(missing)}")
        return CurveConfiguration(tuple(self.substitution.apply_curve(self.curves[n]) for n in names), names)

    def curve(self, name: str):
        if name not in self.curves:
            raise ConfigError(f"unknown curve {name!r}")
        return self.substitution.apply_curve(self.curves[name])

    def form(self, name: str):
        if name not in self.forms:
            raise ConfigError(f"unknown form {name!r}")
        return self.forms[name]

    def point(self, name_or_text: str) -> ProjPoint:
        if name_or_text in self.points:
            return self.points[name_or_text].point
        return self.substitution.apply_point(parse_point(name_or_text, self.field))

    def verify_points(self) -> None:
        """Check every declared point lies on its declared components with its declared type."""
        cfg = self.configuration()
        for decl in self.points.values():
            if decl.components is not None:
                for comp in decl.components:
                    if comp not in cfg.names:
                        raise ConfigError(f"point {decl.name}: unknown component {comp}")
                    if cfg.components[cfg.index(comp)].evaluate(decl.point.coords):
                        raise ConfigError(f"point {decl.name} does not lie on {comp}")
            if decl.type is not None:
                try:
                    found = local_data(cfg, decl.point, decl.name).singularity.tag
                except GeometryError as exc:
                    raise ConfigError(f"point {decl.name}: {exc}") from None
                if found != decl.type:
                    raise ConfigError(f"point {decl.name}: declared {decl.type}, found {found}")

    def blueprint_input(self) -> BlueprintInput:
        self.verify_points()
        declared = [(d.name, d.point, d.type) for d in self.points.values() if d.type or d.components]
        return BlueprintInput(self.name, self.configuration(), self.degree, self.prime, declared, self.family)


_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_ASSIGN = re.compile(rf"^({_NAME})\s*=\s*(.+)$")
_POINT = re.compile(rf"^({_NAME})\s*=\s*(\([^)]*\))\s*(.*)$")


def parse_config(text: str, name: str = "config", field=None) -> JobConfig:
    """Parse a configuration; ``field`` overrides the ``field`` statement."""
    job = JobConfig(name=name)
    subs: dict = {}
    pending_points = []
    field_fixed = field is not None
    if field_fixed:
        job.field = field
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if keyword == "field":
                if not field_fixed:
                    job.field = parse_field(rest)
            elif keyword == "curve":
                m = _ASSIGN.match(rest)
                if not m:
                    raise ConfigError("expected 'curve NAME = POLYNOMIAL'", lineno)
                extra = {k: v.rename(TEXT_VARIABLES) for k, v in job.curves.items()}
                poly = parse_polynomial(m.group(2), TEXT_VARIABLES, job.field, extra)
                if not poly.is_homogeneous():
                    raise ConfigError(f"curve {m.group(1)} is not homogeneous", lineno)
                job.curves[m.group(1)] = poly.rename(HOMOGENEOUS)
            elif keyword == "substitute":
                m = _ASSIGN.match(rest)
                if not m:
                    raise ConfigError("expected 'substitute VAR = LINEAR FORM'", lineno)
                subs[m.group(1)] = m.group(2)
            elif keyword == "form":
                m = _ASSIGN.match(rest)
                if not m:
                    raise ConfigError("expected 'form NAME = P*dx + Q*dy'", lineno)
                job.forms[m.group(1)] = parse_form1(m.group(2), field=job.field)
            elif keyword == "point":
                m = _POINT.match(rest)
                if not m:
                    raise ConfigError("expected 'point NAME = (a:b:c) [type T] [components C ...]'", lineno)
                pending_points.append((lineno, m.group(1), m.group(2), m.group(3)))
            elif keyword == "components":
                job.components = tuple(rest.split())
            elif keyword == "degree":
                job.degree = int(rest)
            elif keyword == "prime":
                job.prime = int(rest)
            elif keyword == "family":
                job.family = rest
            elif keyword == "name":
                job.name = rest
            else:
                raise ConfigError(f"unknown statement {keyword!r}", lineno)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(str(exc), lineno) from None
    try:
        job.substitution = Substitution.parse(subs, job.field)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    for lineno, pname, ptext, tail in pending_points:
        words = tail.split()
        ptype, comps = None, None
        k = 0
        while k < len(words):
            if words[k] == "type" and k + 1 < len(words):
                ptype = words[k + 1]
                k += 2
            elif words[k] == "components":
                comps = tuple(words[k + 1:])
                break
            else:
                raise ConfigError(f"unexpected {words[k]!r} in point statement", lineno)
        try:
            pt = job.substitution.apply_point(parse_point(ptext, job.field))
        except ValueError as exc:
            raise ConfigError(str(exc), lineno) from None
        job.points[pname] = PointDecl(pname, pt, ptype, comps)
    return job


def load_config(path: str, field=None) -> JobConfig:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stem = path.rsplit("/", 1)[-1].rsplit(".", 1)[0]
    return parse_config(text, stem, field)


__all__ = ["ConfigError", "JobConfig", "PointDecl", "load_config", "parse_config"]
