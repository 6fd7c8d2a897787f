import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from darboux_eta.algebra import AFFINE, INFINITY, QQ, Form1, Form2, wedge
from darboux_eta.algebra.poly import parse_polynomial
from darboux_eta.darboux import is_integral_curve
from darboux_eta.projective import (
    HOMOGENEOUS,
    LinearChange,
    ProjectiveError,
    ProjPoint,
    dehomogenize,
    eval_homogeneous,
    from_infinity_chart,
    homogenize,
    monomial_evaluation_matrix,
    move_point_into_x_chart,
    parse_point,
    prime,
)
from helpers import affine, form, homogeneous, random_poly


def infinity(text):
    return parse_polynomial(text, INFINITY.coordinates)


# points


def test_points_compare_up_to_scaling():
    assert ProjPoint(2, 4, 6) == ProjPoint(1, 2, 3)
    assert ProjPoint(1, 2, 3) != ProjPoint(1, 2, 4)
    assert hash(ProjPoint(-2, -4, -6)) == hash(ProjPoint(1, 2, 3))


def test_zero_vector_is_not_a_point():
    with pytest.raises(ProjectiveError):
        ProjPoint(0, 0, 0)


def test_parse_point_accepts_unicode_minus_and_rationals():
    assert parse_point("(1600:−576:225)") == ProjPoint(1600, -576, 225)
    assert parse_point("(1/2 : 1 : 0)") == ProjPoint(1, 2, 0)
    with pytest.raises(ProjectiveError):
        parse_point("(1:2)")


def test_point_charts():
    p = ProjPoint(2, 4, 8)
    assert p.affine() == (Fraction(1, 4), Fraction(1, 2))
    assert p.infinity_chart() == (2, 4)
    with pytest.raises(ProjectiveError):
        ProjPoint(1, 0, 0).affine()
    assert str(ProjPoint(Fraction(1, 2), Fraction(-1, 3), 1)) == "(3:-2:6)"


# homogenization


def test_homogenize_cusp():
    h = homogenize(affine("x^2 - y^3"))
    assert h.kind == "polynomial" and h.degree == 3
    assert h.coefficients[0] == homogeneous("X^2*Z - Y^3")


def test_homogenize_two_form_uses_z_cubed():
    h = homogenize(Form2(AFFINE, affine("5"), 0))
    assert h.coefficients[0] == homogeneous("5*Z^3")


def test_homogenize_one_form_multiplies_by_z_squared():
    h = homogenize(form("3*x*dy - 2*y*dx"))
    assert h.coefficients == (homogeneous("-2*Y*Z^2"), homogeneous("3*X*Z^2"))


def test_eval_homogeneous_examples():
    h = homogenize(affine("x^2 - y^3"))
    assert eval_homogeneous(h, ProjPoint(1, 1, 1)) == 0
    assert eval_homogeneous(h, ProjPoint(1, 0, 0)) == 0
    assert eval_homogeneous(h, ProjPoint(0, 1, 0)) == -1
    with pytest.raises(ProjectiveError):
        eval_homogeneous(homogenize(form("dx")), ProjPoint(0, 0, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_homogenization_is_multiplicative_and_invertible(seed):
    rng = random.Random(seed)
    f = random_poly(rng, ("x", "y"), 4, QQ)
    g = random_poly(rng, ("x", "y"), 3, QQ)
    if not f or not g:
        return
    hf, hg, hfg = (homogenize(p).coefficients[0] for p in (f, g, f * g))
    assert hf * hg == hfg
    assert dehomogenize(homogenize(f)) == f
    w = Form1(AFFINE, (f, g))
    assert dehomogenize(homogenize(w)).coefficients == w.coefficients


# the prime operator


def test_prime_of_basic_forms():
    assert prime(form("dx")).coefficients == (infinity("0"), infinity("-1"))
    assert prime(form("dy")).coefficients == (infinity("z"), infinity("-y"))


def test_prime_of_cusp_form_and_curve():
    w = prime(form("3*x*dy - 2*y*dx"))
    assert w.chart == INFINITY
    assert w.coefficients == (infinity("3*z"), infinity("-y"))
    assert prime(affine("x^2 - y^3")) == infinity("z - y^3")


def test_prime_keeps_invariant_curves_invariant():
    w = prime(form("3*x*dy - 2*y*dx"))
    C = prime(affine("x^2 - y^3"))
    assert is_integral_curve(C, w)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_prime_is_multiplicative_on_polynomials(seed):
    rng = random.Random(seed)
    f = random_poly(rng, ("x", "y"), 3, QQ)
    g = random_poly(rng, ("x", "y"), 3, QQ)
    if not f or not g:
        return
    assert prime(f) * prime(g) == prime(f * g)
    assert from_infinity_chart(prime(f), f.degree()) == homogenize(f).coefficients[0]


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_prime_preserves_the_cofactor_relation(seed):
    # dC ^ w = K C dx^dy holds in one chart exactly when it holds in the other
    rng = random.Random(seed)
    C = random_poly(rng, ("x", "y"), 2, QQ, terms=4)
    if C.degree() < 1:
        return
    H = random_poly(rng, ("x", "y"), 2, QQ, terms=3)
    # w = H dC is invariant for C
    dC = Form1(AFFINE, (C.diff("x"), C.diff("y")))
    w = Form1(AFFINE, (dC.P * H, dC.Q * H))
    assert is_integral_curve(C, w)
    assert is_integral_curve(prime(C), prime(w))


# linear changes


def test_shear_moves_point_into_x_chart():
    cfg = [homogeneous("X"), homogeneous("Y*Z - X^2")]
    new_cfg, p, _ = move_point_into_x_chart(cfg, ProjPoint(0, 1, 0))
    assert p == ProjPoint(1, 1, 0)
    assert all(not F.evaluate(p.coords) for F in new_cfg)


def test_swap_moves_point_into_x_chart():
    _, p, _ = move_point_into_x_chart([homogeneous("X")], ProjPoint(0, 1, 0), method="swap")
    assert p == ProjPoint(1, 0, 0)


def test_points_already_in_chart_are_untouched():
    cfg = [homogeneous("Y")]
    new_cfg, p, _ = move_point_into_x_chart(cfg, ProjPoint(3, 0, 1))
    assert new_cfg == cfg and p == ProjPoint(3, 0, 1)


def test_origin_cannot_be_moved():
    with pytest.raises(ProjectiveError):
        move_point_into_x_chart([homogeneous("X")], ProjPoint(0, 0, 1))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=-4, max_value=4), st.integers(min_value=-4, max_value=4), st.integers(min_value=-4, max_value=4))
def test_linear_change_moves_curves_points_and_forms_together(a, b, c):
    change = LinearChange(((1, a), (b, c)))
    if change.det == 0:
        return
    C = homogeneous("X^2*Z - Y^3")
    p = ProjPoint(1, 1, 1)
    assert not change.apply_polynomial(C).evaluate(change.apply_point(p).coords)
    w = change.apply_form(form("3*x*dy - 2*y*dx"))
    assert is_integral_curve(dehomogenize(homogenize_poly(change.apply_polynomial(C))), w)
    assert change.inverse().apply_point(change.apply_point(p)) == p


def homogenize_poly(F):
    from darboux_eta.projective import HomogeneousForm

    return HomogeneousForm("polynomial", (F,), F.degree())


def test_monomial_evaluation_matrix_of_conic_points():
    # five points on X Z = Y^2 give a rank-deficient 6-column matrix only with a sixth conic point
    from darboux_eta.algebra import rank

    pts = [ProjPoint(t * t, t, 1) for t in range(5)] + [ProjPoint(1, 0, 0)]
    M = monomial_evaluation_matrix(pts, 2)
    assert len(M) == 6 and len(M[0]) == 6
    assert rank(M) == 5
    assert rank(monomial_evaluation_matrix(pts[:5] + [ProjPoint(0, 1, 0)], 2)) == 6


def test_wedge_in_both_charts_matches_homogenized_coefficient():
    # the cusp example: 6 (x^2 - y^3) in the affine chart, -3 (z - y^3) after the prime
    dC = form("2*x*dx - 3*y^2*dy")
    w = form("3*x*dy - 2*y*dx")
    assert wedge(dC, w).coefficient == affine("6*x^2 - 6*y^3")
    dCp = Form1(INFINITY, (infinity("-3*y^2"), infinity("1")))
    assert wedge(dCp, prime(w)).coefficient == infinity("-3*z + 3*y^3")
    assert HOMOGENEOUS == ("X", "Y", "Z")
