import random
from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import assume, given, settings, strategies as st

from darboux_eta.algebra import (
    AFFINE,
    GF,
    INFINITY,
    QQ,
    ChartMismatch,
    Dual,
    FieldError,
    Form1,
    NotDivisible,
    NumberField,
    Polynomial,
    exact_divide,
    exterior_derivative,
    gradient,
    nullspace,
    parse_field,
    parse_form1,
    parse_polynomial,
    rank,
    resultant,
    wedge,
)
from darboux_eta.algebra.solve import common_zeros
from darboux_eta.algebra.univariate import field_roots
from helpers import affine, form, random_poly

small = st.integers(min_value=-9, max_value=9)


# fields


def test_rationals_are_stored_in_lowest_terms():
    v = QQ(Fraction(4, -6))
    assert v == Fraction(-2, 3) and v.denominator == 3


def test_prime_field_reduces_into_range(f29):
    assert int(f29(-1)) == 28
    assert int(f29(30)) == 1
    assert f29(3) / f29(3) == f29(1)


def test_prime_field_square_roots(f29):
    r = f29.sqrt(f29(-1))
    assert r * r == f29(-1)
    assert not f29.is_square(f29(2))


def test_parse_field():
    assert parse_field("QQ") == QQ
    assert parse_field("GF(29)") == GF(29)
    with pytest.raises(FieldError):
        parse_field("GF(30)")
    with pytest.raises(FieldError):
        parse_field("RR")


@given(st.lists(small, min_size=1, max_size=6), small)
def test_dual_evaluation_gives_value_and_derivative(coeffs, a):
    f = Polynomial({(k,): c for k, c in enumerate(coeffs)}, ("x",), QQ)
    assume(not f.is_constant())
    value = f.evaluate((Dual(QQ(a), QQ(1)),))
    assert value.a == f.evaluate((a,))
    assert value.b == f.diff("x").evaluate((a,))


def test_dual_epsilon_squares_to_zero(f29):
    eps = Dual(f29(0), f29(1))
    assert eps * eps == Dual(f29(0), f29(0))


# polynomials


def test_parse_and_print_round_trip():
    f = parse_polynomial("(x*y - z^2)^2 - x*z^3", ("x", "y", "z"))
    g = parse_polynomial(str(f), ("x", "y", "z"))
    assert f == g
    assert f.degree() == 4 and f.is_homogeneous()


def test_no_zero_coefficients_are_stored():
    f = affine("x + y - x")
    assert f == affine("y")
    assert all(c for c in f.terms.values())


def test_exact_divide_examples():
    assert exact_divide(affine("6*(x^2 - y^3)"), affine("x^2 - y^3")) == affine("6")
    assert exact_divide(affine("x^2 - 1"), affine("x - 1")) == affine("x + 1")
    with pytest.raises(NotDivisible) as info:
        exact_divide(affine("x^2 + 1"), affine("x - 1"))
    assert info.value.remainder


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_exact_divide_inverts_multiplication(seed):
    rng = random.Random(seed)
    a = random_poly(rng, ("x", "y"), 3, QQ)
    b = random_poly(rng, ("x", "y"), 3, QQ)
    if not b:
        b = affine("1")
    assert exact_divide(a * b, b) == a


# resultants


def test_resultant_of_two_lines():
    assert resultant(affine("y - x"), affine("y + x"), "y") == affine("2*x")


def test_resultant_matches_sympy_oracle():
    x, y = sympy.symbols("x y")
    oracle = sympy.resultant(x**2 - y**3, 3 * y**2, y)
    assert oracle == 27 * x**4
    assert resultant(affine("x^2 - y^3"), affine("3*y^2"), "y") == affine("27*x^4")


def test_resultant_of_common_factor_is_zero():
    f = affine("x*y + y^2 - 3")
    assert not resultant(f, f, "y")


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_resultant_agrees_with_sympy_on_random_input(seed):
    rng = random.Random(seed)
    f = random_poly(rng, ("x", "y"), 3, QQ, terms=4, bound=5)
    g = random_poly(rng, ("x", "y"), 3, QQ, terms=4, bound=5)
    if f.degree_in("y") < 1 or g.degree_in("y") < 1:
        return
    # the determinant of sympy's Sylvester matrix; sympy.resultant can differ from it by a sign
    y = sympy.Symbol("y")
    sf, sg = (sympy.sympify(str(p).replace("^", "**")) for p in (f, g))
    oracle = sylvester(sf, sg, y).det()
    ours = sympy.sympify(str(resultant(f, g, "y")).replace("^", "**"))
    assert sympy.expand(oracle - ours) == 0


# linear algebra


def test_nullspace_small_examples():
    assert nullspace([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []
    assert len(nullspace([[0, 0], [0, 0]])) == 2


def test_nullspace_of_printed_matrix_contains_the_printed_kernel():
    M = [[2, 6, 0, 5], [0, 10, 2, 7], [2, 2, 0, 3], [0, 2, 2, 3], [0, 2, 2, 3], [0, 2, 2, 3], [1, 4, 2, 5]]
    (v,) = nullspace(M)
    assert [int(c) for c in v] in ([2, 1, 2, -2], [-2, -1, -2, 2])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_plus_nullity_is_column_count(rows):
    basis = nullspace(rows)
    assert rank(rows) + len(basis) == 4
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in rows)


def test_nullspace_over_prime_field(f29):
    M = [[f29(1), f29(2)], [f29(2), f29(4)]]
    (v,) = nullspace(M, f29)
    assert f29(1) * v[0] + f29(2) * v[1] == 0


# forms


def test_wedge_of_cusp_gradient_and_form():
    w = wedge(form("2*x*dx - 3*y^2*dy"), form("-2*y*dx + 3*x*dy"))
    assert w.coefficient == affine("6*(x^2 - y^3)")


def test_wedge_at_infinity_uses_dy_dz():
    f = parse_form1("dz - 3*y^2*dy", INFINITY)
    g = parse_form1("3*z*dy - y*dz", INFINITY)
    expected = parse_polynomial("-3*(z - y^3)", INFINITY.coordinates)
    assert wedge(f, g).coefficient == expected


def test_wedge_refuses_mixed_charts():
    with pytest.raises(ChartMismatch):
        wedge(form("dx"), parse_form1("dz", INFINITY))


def test_exterior_derivative_examples():
    assert exterior_derivative(form("3*x*dy - 2*y*dx")).coefficient == affine("5")
    w = parse_form1("3*z*dy - y*dz", INFINITY)
    assert exterior_derivative(w).coefficient == parse_polynomial("-4", INFINITY.coordinates)


def _random_form(rng, field=QQ):
    return Form1(AFFINE, (random_poly(rng, ("x", "y"), 3, field), random_poly(rng, ("x", "y"), 3, field)))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_wedge_is_antisymmetric_and_bilinear(seed):
    rng = random.Random(seed)
    f, g, h = (_random_form(rng) for _ in range(3))
    assert wedge(f, g).coefficient == -wedge(g, f).coefficient
    assert not wedge(f, f).coefficient
    c = QQ(rng.randint(-5, 5))
    assert wedge(f.scale(c) + h, g).coefficient == wedge(f, g).coefficient * c + wedge(h, g).coefficient


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_exact_forms_are_closed(seed):
    C = random_poly(random.Random(seed), ("x", "y"), 5, QQ)
    assert not exterior_derivative(gradient(C)).coefficient


def test_parse_form_rejects_nonlinear_differentials():
    with pytest.raises(ValueError):
        form("dx*dy")


# root finding and number fields


def test_field_roots_over_rationals():
    report = field_roots([Fraction(-2), Fraction(-1), Fraction(1)], QQ)  # t^2 - t - 2
    assert sorted(r for r, _ in report.roots) == [-1, 2]


def test_number_field_generator_satisfies_its_modulus():
    K = NumberField(QQ, [Fraction(-2), Fraction(0), Fraction(0), Fraction(1)])  # r^3 - 2
    r = K.generator
    assert r * r * r == K(2)
    assert (r + K(1)) / (r + K(1)) == K.one


def test_common_zeros_of_a_line_and_a_circle():
    found = common_zeros([affine("x^2 + y^2 - 25"), affine("x - 3")])
    points = sorted((p[0], p[1]) for p in found.points)
    assert points == [(3, -4), (3, 4)]


def test_common_zeros_follow_conjugate_orbits():
    # the three complex cube roots of 2 on the diagonal
    found = common_zeros([affine("x^3 - 2"), affine("y - x")])
    from darboux_eta.algebra.solve import orbit_size

    assert sum(orbit_size(p[0]) for p in found.points) == 3
