"""Checked-in construction data and the coordinate changes it uses.

A fixture stores curve equations in their original coordinates, a linear
substitution that sends the chosen bitangent to ``z = 0``, declared points
and the values the construction is expected to reproduce.  Text uses the
lowercase variables ``x, y, z``; a named parameter (``lambda``) is replaced
by its value before parsing.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources
from typing import Mapping

from ..algebra.fields import QQ, parse_field
from ..algebra.forms import Form1
from ..algebra.linalg import nullspace
from ..algebra.poly import Polynomial, parse_polynomial
from ..darboux import CurveConfiguration
from ..frommer import NormalizedForm, parse_normalized
from ..projective import HOMOGENEOUS, ProjPoint, parse_point

TEXT_VARIABLES = ("x", "y", "z")
PARAMETER_VARIABLES = ("s", "t")


class FixtureError(ValueError):
    pass


def substitute_parameters(text: str, parameters: Mapping[str, object]) -> str:
    for name, value in parameters.items():
        text = re.sub(rf"\b{re.escape(name)}\b", f"({value})", text)
    return text


def parse_homogeneous(text: str, field=QQ, parameters: Mapping[str, object] = {}) -> Polynomial:
    """A polynomial in ``x, y, z`` as a polynomial in the homogeneous variables."""
    return parse_polynomial(substitute_parameters(text, parameters), TEXT_VARIABLES, field).rename(HOMOGENEOUS)


@dataclass(frozen=True)
class Substitution:
    """Replace homogeneous variables by linear forms: ``old = S new``.

    Curves are pulled back (``F -> F o S``) and points move by ``S^-1`` so
    that incidence is preserved.
    """

    images: tuple = ()  # (variable, linear Polynomial) pairs

    @classmethod
    def parse(cls, mapping: Mapping[str, str], field=QQ, parameters: Mapping[str, object] = {}) -> "Substitution":
        images = []
        for var, text in mapping.items():
            if var not in TEXT_VARIABLES:
                raise FixtureError(f"cannot substitute for {var!r}")
            image = parse_homogeneous(text, field, parameters)
            if not image.is_homogeneous() or image.degree() != 1:
                raise FixtureError(f"substitution {var} -> {text} is not a linear form")
            images.append((HOMOGENEOUS[TEXT_VARIABLES.index(var)], image))
        sub = cls(tuple(images))
        if not nullspace(sub.matrix) == []:
            raise FixtureError("the substitution is not invertible")
        return sub

    @property
    def mapping(self) -> dict:
        return dict(self.images)

    @property
    def matrix(self) -> list[list]:
        rows = []
        mapping = self.mapping
        for i, v in enumerate(HOMOGENEOUS):
            image = mapping.get(v)
            if image is None:
                rows.append([Fraction(int(i == j)) for j in range(3)])
            else:
                rows.append([image.coefficient(tuple(int(k == j) for k in range(3))) for j in range(3)])
        return rows

    def apply_curve(self, F: Polynomial) -> Polynomial:
        return F.compose(self.mapping) if self.images else F

    def apply_point(self, p: ProjPoint) -> ProjPoint:
        if not self.images:
            return p
        # solve S q = c p for (q, c)
        S = self.matrix
        aug = [list(row) + [-c] for row, c in zip(S, p.coords)]
        (kernel,) = nullspace(aug)
        return ProjPoint(*kernel[:3])


@dataclass(frozen=True)
class DeclaredPoint:
    label: str
    point: ProjPoint  # in working coordinates
    type: str | None = None


@dataclass(frozen=True)
class ExpectedRow:
    label: str
    row: tuple


@dataclass
class ConstructionFixture:
    id: str
    title: str
    field: object
    parameters: dict
    curves: dict  # name -> homogeneous Polynomial, original coordinates
    components: tuple
    line_at_infinity: Polynomial
    substitution: Substitution
    points: list
    matrix_columns: tuple
    expected_matrix: list
    expected_kernel: tuple
    expected_zero: ProjPoint | None
    printed_form: Form1 | None
    printed_translated: bool
    normalized_form: NormalizedForm | None
    contact_matrix: dict | None
    degree: int
    prime: int
    aliases: tuple = ()
    line_name: str = "z"
    raw: dict = dc_field(default_factory=dict, repr=False)

    def configuration(self) -> CurveConfiguration:
        """Components in working coordinates (the bitangent moved to ``z = 0``)."""
        comps = tuple(self.substitution.apply_curve(self.curves[n]) for n in self.components)
        return CurveConfiguration(comps, self.components)

    def working_line(self) -> Polynomial:
        return self.substitution.apply_curve(self.line_at_infinity)

    def column_names(self) -> tuple:
        """Column names of the computed matrix: the line at infinity, components, d omega."""
        return (self.line_name,) + tuple(self.components) + ("domega",)

    def column_permutation(self) -> list[int]:
        """Index of each printed column within the computed column order."""
        names = self.column_names()
        return [names.index(c) for c in self.matrix_columns]


def _parse_param_point(text: str, parameters) -> tuple:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = (substitute_parameters(part, parameters) for part in body.split(":"))
    return tuple(Fraction(parse_polynomial(part, (), QQ).coefficient(())) for part in parts)


def fixture_from_dict(data: Mapping) -> ConstructionFixture:
    from .blueprint import implicitize

    field = parse_field(data.get("field", "QQ"))
    params = dict(data.get("parameters", {}))
    curves = {name: parse_homogeneous(text, field, params) for name, text in data.get("curves", {}).items()}
    parametrizations = {}
    for name, forms in data.get("parametrized_curves", {}).items():
        polys = [parse_polynomial(substitute_parameters(f, params), PARAMETER_VARIABLES, field) for f in forms]
        parametrizations[name] = polys
        curves[name] = implicitize(polys)
    components = tuple(data["components"])
    line_name = data.get("line_at_infinity_name", "z")
    if line_name != "z":
        line = curves[line_name]
    else:
        line = parse_homogeneous(data["line_at_infinity"], field, params)
    sub = Substitution.parse(data.get("substitution", {}), field, params)
    if sub.apply_curve(line).terms.keys() != {(0, 0, 1)}:
        raise FixtureError(f"{data['id']}: the substitution does not send the line at infinity to z = 0")
    points = []
    for item in data.get("points", []):
        if "parameter" in item:
            st = _parse_param_point(item["parameter"], params)
            forms = parametrizations[item["curve"]]
            orig = ProjPoint(*(f.evaluate(st) for f in forms))
        else:
            orig = parse_point(substitute_parameters(item["point"], params))
        points.append(DeclaredPoint(item["label"], sub.apply_point(orig), item.get("type")))
    printed, translated = None, False
    if "printed_form" in data:
        pf = data["printed_form"]
        P = parse_polynomial(pf["P"], TEXT_VARIABLES[:2], field)
        Q = parse_polynomial(pf["Q"], TEXT_VARIABLES[:2], field)
        printed, translated = Form1.affine(P, Q), bool(pf.get("translated_to_zero", False))
    normalized = None
    if "normalized_form" in data:
        nf = data["normalized_form"]
        normalized = parse_normalized(nf["P"], nf["Q"], nf["prime"])
    zero = parse_point(data["expected_zero"]) if data.get("expected_zero") else None
    return ConstructionFixture(
        id=data["id"],
        title=data.get("title", ""),
        field=field,
        parameters=params,
        curves=curves,
        components=components,
        line_at_infinity=line,
        substitution=sub,
        points=points,
        matrix_columns=tuple(data.get("matrix_columns", ())),
        expected_matrix=[ExpectedRow(r["label"], tuple(r["row"])) for r in data.get("expected_matrix", [])],
        expected_kernel=tuple(data.get("expected_kernel", ())),
        expected_zero=zero,
        printed_form=printed,
        printed_translated=translated,
        normalized_form=normalized,
        contact_matrix=data.get("contact_matrix"),
        degree=int(data.get("degree", 3)),
        prime=int(data.get("prime", 29)),
        aliases=tuple(data.get("aliases", ())),
        line_name=line_name,
        raw=dict(data),
    )


def _data_files():
    return resources.files(__package__).joinpath("data")


def fixture_ids() -> list[str]:
    ids = [p.name[: -len(".json")] for p in _data_files().iterdir() if p.name.endswith(".json")]
    return sorted(ids, key=lambda s: [int(part) for part in s.split("_")])


def _raw(identifier: str) -> dict:
    for name in fixture_ids():
        data = json.loads(_data_files().joinpath(f"{name}.json").read_text())
        if identifier == data["id"] or identifier in data.get("aliases", ()):
            return data
    raise FixtureError(f"unknown construction {identifier!r}; known: {', '.join(fixture_ids())}")


def load_fixture(identifier: str, parameters: Mapping[str, object] | None = None) -> ConstructionFixture:
    """Load a construction by id (or alias), optionally overriding its parameters."""
    data = _raw(identifier)
    if parameters:
        data = dict(data, parameters=dict(data.get("parameters", {}), **parameters))
    return fixture_from_dict(data)


__all__ = [
    "ConstructionFixture",
    "DeclaredPoint",
    "ExpectedRow",
    "FixtureError",
    "Substitution",
    "fixture_from_dict",
    "fixture_ids",
    "load_fixture",
    "parse_homogeneous",
    "substitute_parameters",
]
