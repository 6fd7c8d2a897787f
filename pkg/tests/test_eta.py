from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from darboux_eta.algebra import GF, QQ, exterior_derivative, rank
from darboux_eta.darboux import CurveConfiguration, cofactor, solve_inverse
from darboux_eta.eta import (
    EtaMatrix,
    EtaRow,
    EtaValue,
    NotAZero,
    assemble_M,
    center_row,
    certificate_report,
    certify,
    eta_at,
    eta_prime_at,
    geometric_row,
    k_z,
    points_not_on_curve,
    project_eta,
)
from darboux_eta.geometry import eta_geometric_points, local_data
from darboux_eta.projective import ProjPoint, move_point_into_x_chart, prime
from helpers import FIXTURE_IDS, affine, fixture, form, homogeneous, integral_pair

CUSP = CurveConfiguration((homogeneous("X^2*Z - Y^3"),))


@lru_cache(maxsize=None)
def solved(ident):
    """Configuration, its unique Darboux form and its eta-geometric points."""
    fx = fixture(ident)
    cfg = fx.configuration()
    space = solve_inverse(cfg, fx.degree)
    assert space.dimension == 1
    return cfg, space.basis[0].form(), tuple(eta_geometric_points(cfg))


# values


def test_eta_values_are_projective():
    assert EtaValue((6, 5)) == EtaValue((-6, -5))
    assert EtaValue((6, 5)) != EtaValue((5, 6))
    assert EtaValue((0, 0)) == EtaValue((0, 0))
    assert EtaValue((0, 0)) != EtaValue((1, 0))
    assert EtaValue((-3, -3, -4)).normalized() == (3, 3, 4)


def test_k_z_examples():
    assert k_z(form("3*x*dy - 2*y*dx")).coefficient == prime(affine("-3"))
    # the prime of dx is -dz, so dz ^ (dx)' vanishes
    assert k_z(form("dx")).coefficient == prime(affine("0"))


# the cusp worked example


def test_cusp_eta_at_origin(cusp_form):
    assert eta_at(cusp_form, CUSP, ProjPoint(0, 0, 1)) == EtaValue((6, 5))
    assert tuple(eta_at(cusp_form, CUSP, ProjPoint(0, 0, 1))) == (6, 5)


def test_cusp_eta_prime_at_infinity(cusp_form):
    value = eta_prime_at(cusp_form, CUSP, ProjPoint(1, 0, 0))
    assert tuple(value) == (-3, -3, -4)  # dy^dz basis; (3:3:4) projectively
    assert value == EtaValue((3, 3, 4))


def test_cusp_projection_and_direct_value_agree(cusp_form):
    value = eta_prime_at(cusp_form, CUSP, ProjPoint(1, 0, 0))
    projected = project_eta(value, (3,), 1)
    assert tuple(projected) == (6, 5)
    assert projected == eta_at(cusp_form, CUSP, ProjPoint(1, 0, 0)) == EtaValue((-6, -5))


def test_project_eta_examples():
    assert project_eta((3, 3, 4), (3,), 1) == EtaValue((-6, -5))
    assert tuple(project_eta((0, 2, 7), (3,), 1)) == (2, 7)
    assert project_eta((0, 0, 0), (3,), 1).degenerate
    with pytest.raises(ValueError):
        project_eta((1, 2), (3,), 1)


def test_center_row():
    assert center_row((3,), 1) == (1, 3, 3)
    assert center_row((4, 2), 3) == (1, 4, 2, 5)


def test_geometric_rows_from_singularity_types():
    cusp = local_data(CUSP, ProjPoint(0, 0, 1))
    assert geometric_row(cusp, 1) == EtaValue((0, 6, 5))
    star = CurveConfiguration((homogeneous("X*Y*(X - Y)"),))
    d4 = local_data(star, ProjPoint(0, 0, 1))
    assert d4.singularity.tag == "D4"
    assert geometric_row(d4, 1) == EtaValue((0, 3, 2))
    flex = local_data(CUSP, ProjPoint(1, 0, 0))
    assert geometric_row(flex, 1) == EtaValue((3, 3, 4))


def test_single_cusp_matrix(cusp_form):
    M = assemble_M(cusp_form, CUSP, [("O", ProjPoint(0, 0, 1))])
    assert M.printable() == [(0, 6, 5), (1, 3, 3)]


def test_assemble_refuses_points_that_are_not_zeros(cusp_form):
    with pytest.raises(NotAZero):
        assemble_M(cusp_form, CUSP, [ProjPoint(1, 1, 1)])


# general position


def test_points_not_on_curve_examples():
    five = [ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(0, 0, 1), ProjPoint(1, 1, 1), ProjPoint(1, 2, 3)]
    assert not points_not_on_curve(five, 2)
    collinear = [ProjPoint(1, 0, 1), ProjPoint(2, 0, 1), ProjPoint(5, 0, 1)]
    assert not points_not_on_curve(collinear, 1)
    assert points_not_on_curve(collinear[:2] + [ProjPoint(0, 1, 1)], 1)
    assert points_not_on_curve(five + [ProjPoint(2, -1, 5)], 2)


# the constructions


@pytest.mark.parametrize("ident", FIXTURE_IDS)
def test_computed_rows_match_singularity_types(ident):
    cfg, w, points = solved(ident)
    M = assemble_M(w, cfg, points)  # raises on a mismatch
    for row in M.rows:
        assert row.computed.degenerate or row.geometric is None or row.computed == row.geometric


def test_certificate_of_construction_11_2():
    cfg, w, points = solved("11_2")
    cert = certify(w, cfg, points)
    assert cert.rank == 3 and cert.rank_ok
    assert cert.kernel == (2, 1, 2, -2)
    assert cert.identity_verified
    assert cert.exponents == (Fraction(-1, 2), Fraction(-1))
    # the six points lie on a conic, so the general-position stage fails
    assert not cert.general_position
    assert cert.failed_stages == ["general position"]
    assert not cert.verified
    assert "rank: 3" in certificate_report(cert)


@pytest.mark.parametrize("ident, kernel", [("11_53", (3, 2, 1, 6, -6)), ("11_59", (2, 2, 2, 1, -2))])
def test_certificate_kernels(ident, kernel):
    cfg, w, points = solved(ident)
    cert = certify(w, cfg, points)
    assert cert.kernel == kernel and cert.identity_verified


def _scaled(M: EtaMatrix, factors) -> EtaMatrix:
    rows = [
        EtaRow(r.label, r.point, EtaValue(tuple(x * f for x in r.computed)), r.geometric, r.tag)
        for r, f in zip(M.rows, factors)
    ]
    return EtaMatrix(M.columns, rows, M.center)


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(min_value=-7, max_value=7).filter(bool), min_size=8, max_size=8))
def test_certificate_is_invariant_under_row_scaling(factors):
    cfg, w, points = solved("11_2")
    M = assemble_M(w, cfg, points)
    scaled = _scaled(M, factors)
    assert rank(scaled.rational_matrix(), QQ) == rank(M.rational_matrix(), QQ)
    a, b = certify(w, cfg, points, M), certify(w, cfg, points, scaled)
    assert (a.rank, a.kernel, a.identity_verified, a.general_position) == (b.rank, b.kernel, b.identity_verified, b.general_position)


@pytest.mark.parametrize("ident", FIXTURE_IDS)
def test_projection_of_eta_prime_is_eta(ident):
    cfg, w, points = solved(ident)
    checked = 0
    for p in points:
        if not p.point.at_infinity:
            continue
        c, a, (v,) = move_point_into_x_chart(cfg, p.point, (w,))
        direct = eta_at(v, c, a)
        assert project_eta(eta_prime_at(v, c, a), c.degrees, v.degree) == direct
        checked += 1
    assert checked


# prime identities


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_prime_identities_hold_symbolically(seed):
    C, w = integral_pair(seed)
    s, e = w.degree, C.degree()
    Kz = k_z(w).coefficient
    w1 = prime(w)
    K_prime = prime(cofactor(C, w).with_degree(s - 1)).coefficient
    assert K_prime == cofactor(prime(C), w1).coefficient - Kz * e
    dw_prime = prime(exterior_derivative(w).with_degree(s - 1)).coefficient
    assert dw_prime == exterior_derivative(w1).coefficient - Kz * (s + 2)


def test_values_over_a_prime_field_print_projectively():
    F = GF(29)
    value = EtaValue((F(6), F(5)))
    assert value.normalized() == (F(1), F(5) / F(6))
    assert str(value) == "(1 : -4)"
