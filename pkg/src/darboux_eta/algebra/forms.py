"""Polynomial differential 1-forms and 2-forms in a named chart.

Two charts are used: the affine chart with coordinates ``(x, y)`` and the
chart at infinity with coordinates ``(y, z)``.  A 1-form stores one
coefficient per coordinate differential; a 2-form stores the single
coefficient of ``du ^ dv`` for the chart coordinates ``(u, v)`` in order,
i.e. ``dx ^ dy`` or ``dy ^ dz``.

Forms carry a nominal degree.  It defaults to the largest coefficient
degree but may be set higher, which matters when forms are homogenized.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .poly import Polynomial, exact_divide


class ChartMismatch(ValueError):
    """Raised when forms from different charts are combined."""


@dataclass(frozen=True)
class Chart:
    name: str
    coordinates: tuple[str, str]

    def __str__(self):
        return self.name


AFFINE = Chart("affine-xy", ("x", "y"))
INFINITY = Chart("infinity-yz", ("y", "z"))


def _common_degree(*polys: Polynomial) -> int:
    return max((p.degree() for p in polys), default=-1)


@dataclass(frozen=True)
class Form1:
    """``a du + b dv`` in the chart with coordinates ``(u, v)``."""

    chart: Chart
    coefficients: tuple[Polynomial, Polynomial]
    nominal_degree: int | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        a, b = self.coefficients
        for c in (a, b):
            if c.variables != self.chart.coordinates:
                raise ChartMismatch(
                    f"coefficient variables {c.variables} do not match chart {self.chart}"
                )
        if a.field != b.field:
            raise ValueError("coefficients over different fields")
        actual = _common_degree(a, b)
        if self.nominal_degree is None:
            object.__setattr__(self, "nominal_degree", max(actual, 0))
        elif self.nominal_degree < actual:
            raise ValueError(f"nominal degree {self.nominal_degree} below actual degree {actual}")

    @classmethod
    def affine(cls, P: Polynomial, Q: Polynomial, degree: int | None = None) -> "Form1":
        """``P dx + Q dy``."""
        return cls(AFFINE, (P, Q), degree)

    @property
    def field(self):
        return self.coefficients[0].field

    @property
    def degree(self) -> int:
        return self.nominal_degree

    @property
    def P(self) -> Polynomial:
        return self.coefficients[0]

    @property
    def Q(self) -> Polynomial:
        return self.coefficients[1]

    def is_zero(self) -> bool:
        return not self.coefficients[0] and not self.coefficients[1]

    def __add__(self, other: "Form1") -> "Form1":
        _same_chart(self, other)
        return Form1(
            self.chart,
            (self.coefficients[0] + other.coefficients[0], self.coefficients[1] + other.coefficients[1]),
            max(self.nominal_degree, other.nominal_degree),
        )

    def __neg__(self) -> "Form1":
        return Form1(self.chart, (-self.coefficients[0], -self.coefficients[1]), self.nominal_degree)

    def __sub__(self, other: "Form1") -> "Form1":
        return self + (-other)

    def scale(self, c) -> "Form1":
        a, b = self.coefficients
        return Form1(self.chart, (a * c, b * c), self.nominal_degree)

    def multiply(self, f: Polynomial) -> "Form1":
        a, b = self.coefficients
        return Form1(self.chart, (a * f, b * f))

    def evaluate(self, point) -> tuple:
        return tuple(c.evaluate(point) for c in self.coefficients)

    def map_coefficients(self, fn) -> "Form1":
        a, b = self.coefficients
        return Form1(self.chart, (fn(a), fn(b)), self.nominal_degree)

    def __str__(self) -> str:
        u, v = self.chart.coordinates
        a, b = self.coefficients
        return f"({a})*d{u} + ({b})*d{v}"


@dataclass(frozen=True)
class Form2:
    """``f du ^ dv`` in the chart with coordinates ``(u, v)``."""

    chart: Chart
    coefficient: Polynomial
    nominal_degree: int | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        if self.coefficient.variables != self.chart.coordinates:
            raise ChartMismatch(
                f"coefficient variables {self.coefficient.variables} do not match chart {self.chart}"
            )
        actual = self.coefficient.degree()
        if self.nominal_degree is None:
            object.__setattr__(self, "nominal_degree", max(actual, 0))
        elif self.nominal_degree < actual:
            raise ValueError(f"nominal degree {self.nominal_degree} below actual degree {actual}")

    @property
    def field(self):
        return self.coefficient.field

    @property
    def degree(self) -> int:
        return self.nominal_degree

    def is_zero(self) -> bool:
        return not self.coefficient

    def __add__(self, other: "Form2") -> "Form2":
        _same_chart(self, other)
        return Form2(
            self.chart,
            self.coefficient + other.coefficient,
            max(self.nominal_degree, other.nominal_degree),
        )

    def __neg__(self) -> "Form2":
        return Form2(self.chart, -self.coefficient, self.nominal_degree)

    def __sub__(self, other: "Form2") -> "Form2":
        return self + (-other)

    def scale(self, c) -> "Form2":
        return Form2(self.chart, self.coefficient * c, self.nominal_degree)

    def with_degree(self, degree: int) -> "Form2":
        return Form2(self.chart, self.coefficient, degree)

    def evaluate(self, point):
        return self.coefficient.evaluate(point)

    def divide(self, f: Polynomial) -> "Form2":
        """Exact division of the coefficient; raises NotDivisible otherwise."""
        return Form2(self.chart, exact_divide(self.coefficient, f))

    def __str__(self) -> str:
        u, v = self.chart.coordinates
        return f"({self.coefficient})*d{u}^d{v}"


def _same_chart(f, g):
    if f.chart != g.chart:
        raise ChartMismatch(f"chart mismatch: {f.chart} vs {g.chart}")


def wedge(f: Form1, g: Form1) -> Form2:
    """``(a1 du + a2 dv) ^ (b1 du + b2 dv) = (a1 b2 - a2 b1) du ^ dv``."""
    _same_chart(f, g)
    a1, a2 = f.coefficients
    b1, b2 = g.coefficients
    return Form2(f.chart, a1 * b2 - a2 * b1)


def exterior_derivative(f: Form1) -> Form2:
    """``d(a du + b dv) = (b_u - a_v) du ^ dv``."""
    u, v = f.chart.coordinates
    a, b = f.coefficients
    return Form2(f.chart, b.diff(u) - a.diff(v))


def gradient(C: Polynomial, chart: Chart = AFFINE) -> Form1:
    """The exact 1-form ``dC``."""
    u, v = chart.coordinates
    return Form1(chart, (C.diff(u), C.diff(v)))


def differential(name: str, chart: Chart, field=None) -> Form1:
    """The coordinate differential ``du`` or ``dv`` as a Form1."""
    from .fields import QQ

    field = field or QQ
    zero = Polynomial.zero(chart.coordinates, field)
    one = Polynomial.constant(1, chart.coordinates, field)
    if name == chart.coordinates[0]:
        return Form1(chart, (one, zero))
    if name == chart.coordinates[1]:
        return Form1(chart, (zero, one))
    raise ValueError(f"{name} is not a coordinate of {chart}")


def parse_form1(text: str, chart: Chart = AFFINE, field=None) -> Form1:
    """Parse ``(P)*dx + (Q)*dy`` (or the ``dy``/``dz`` version at infinity).

    The text must be linear in the differentials; any arrangement is fine,
    e.g. ``3*x*dy - 2*y*dx``.
    """
    from .fields import QQ
    from .poly import parse_polynomial

    field = field or QQ
    u, v = chart.coordinates
    du, dv = f"d{u}", f"d{v}"
    names = chart.coordinates + (du, dv)
    poly = parse_polynomial(text, names, field)
    parts = {du: {}, dv: {}}
    for exp, c in poly.terms.items():
        ku, kv = exp[2], exp[3]
        if ku + kv != 1:
            raise ValueError(f"{text!r} is not linear in {du}, {dv}")
        parts[du if ku else dv][exp[:2]] = c
    return Form1(
        chart,
        (Polynomial(parts[du], chart.coordinates, field), Polynomial(parts[dv], chart.coordinates, field)),
    )
