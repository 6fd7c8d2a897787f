"""Exact fields, polynomials, differential forms and linear algebra."""

from .fields import (
    GF,
    QQ,
    Dual,
    FieldError,
    FieldOfDefinition,
    FpElement,
    PrimeField,
    QuadElement,
    QuadraticField,
    RationalField,
    field_of,
    parse_field,
)
from .forms import (
    AFFINE,
    INFINITY,
    Chart,
    ChartMismatch,
    Form1,
    Form2,
    exterior_derivative,
    gradient,
    parse_form1,
    wedge,
)
from .linalg import echelon, nullspace, primitive_vector, rank, rational_rows
from .numberfield import NFElement, NumberField, ReducibleModulus
from .poly import NotDivisible, Polynomial, divmod_lex, exact_divide, monomials, parse_polynomial, resultant

__all__ = [
    "AFFINE",
    "INFINITY",
    "GF",
    "QQ",
    "Chart",
    "ChartMismatch",
    "Dual",
    "FieldError",
    "FieldOfDefinition",
    "Form1",
    "Form2",
    "FpElement",
    "NFElement",
    "NotDivisible",
    "NumberField",
    "Polynomial",
    "PrimeField",
    "QuadElement",
    "QuadraticField",
    "RationalField",
    "ReducibleModulus",
    "divmod_lex",
    "echelon",
    "exact_divide",
    "exterior_derivative",
    "field_of",
    "gradient",
    "monomials",
    "nullspace",
    "parse_field",
    "parse_form1",
    "parse_polynomial",
    "primitive_vector",
    "rank",
    "rational_rows",
    "resultant",
    "wedge",
]
