import random

import pytest
from hypothesis import given, settings, strategies as st

from darboux_eta.algebra import QQ
from darboux_eta.darboux import CurveConfiguration
from darboux_eta.geometry import (
    GeometryError,
    ade_weights,
    classify_ade,
    deg_X,
    eta_geometric_points,
    intersection_multiplicity,
    local_data,
    milnor_number,
    modified_tjurina,
    normal_form,
    tjurina_sum,
)
from darboux_eta.projective import ProjPoint
from helpers import FIXTURE_IDS, affine, fixture, homogeneous

ORIGIN = (0, 0)
SIMPLE_TYPES = [f"A{n}" for n in range(1, 9)] + [f"D{n}" for n in range(4, 10)] + ["E6", "E7", "E8"]


# Milnor numbers and classification


def test_milnor_number_examples():
    assert milnor_number(affine("x^2 - y^3"), ORIGIN) == 2
    assert milnor_number(affine("x^2 - y^3"), (1, 1)) == 0
    assert milnor_number(affine("x^2 - y^6"), ORIGIN) == 5


def test_milnor_number_needs_a_point_on_the_curve():
    with pytest.raises(GeometryError):
        milnor_number(affine("x^2 - y^3"), (1, 0))


def test_milnor_number_of_projective_curve():
    assert milnor_number(homogeneous("X^2*Z - Y^3"), ProjPoint(0, 0, 1)) == 2
    assert milnor_number(homogeneous("X^2*Z - Y^3"), ProjPoint(1, 0, 0)) == 0


def test_classification_examples():
    assert classify_ade(affine("x^2 - y^4"), ORIGIN).tag == "A3"
    assert classify_ade(affine("x*y*(x + y)"), ORIGIN).tag == "D4"
    assert classify_ade(affine("x^3 - y^5"), ORIGIN).tag == "E8"
    assert classify_ade(affine("x + y^2"), ORIGIN).tag == "Smooth"


def test_non_simple_germs_are_unsupported():
    assert not classify_ade(affine("x^4 - y^4"), ORIGIN).is_simple
    assert not classify_ade(affine("x^2"), ORIGIN).is_simple


@pytest.mark.parametrize("tag", SIMPLE_TYPES)
def test_normal_forms_classify_as_themselves(tag):
    sing = classify_ade(normal_form(tag), ORIGIN)
    assert sing.tag == tag
    assert sing.milnor == int(tag[1:])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SIMPLE_TYPES), st.integers(min_value=0, max_value=10**6))
def test_classification_is_invariant_under_linear_changes(tag, seed):
    rng = random.Random(seed)
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if a * d - b * c:
            break
    f = normal_form(tag)
    g = f.compose({"x": affine(f"{a}*x + {b}*y"), "y": affine(f"{c}*x + {d}*y")})
    assert classify_ade(g, ORIGIN).tag == tag


def test_ade_weights_are_reduced():
    assert ade_weights("A2") == ((3, 2), (6,))
    assert ade_weights("A3") == ((2, 1), (2, 2))
    assert ade_weights("D5") == ((3, 2), (2, 6))
    assert ade_weights("E7") == ((3, 2), (3, 6))
    with pytest.raises(GeometryError):
        ade_weights("D3")


# intersection numbers


def test_intersection_multiplicity_examples():
    assert intersection_multiplicity(affine("y"), affine("y - x^3"), ORIGIN) == 3
    assert intersection_multiplicity(affine("x"), affine("y"), ORIGIN) == 1
    assert intersection_multiplicity(affine("y"), affine("y - x^2"), ORIGIN) == 2
    assert intersection_multiplicity(affine("y"), affine("y - 1"), ORIGIN) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6))
def test_intersection_number_is_symmetric_and_additive(m, n, k):
    f = affine(f"y - x^{m}")
    g = affine(f"y + x^{n}")
    h = affine(f"x - 2*y^{k}")
    assert intersection_multiplicity(f, g, ORIGIN) == intersection_multiplicity(g, f, ORIGIN) == min(m, n)
    assert intersection_multiplicity(f, g * h, ORIGIN) == (
        intersection_multiplicity(f, g, ORIGIN) + intersection_multiplicity(f, h, ORIGIN)
    )


def test_modified_tjurina():
    assert modified_tjurina(0, 1) == 0
    assert modified_tjurina(2, 3) == 4
    with pytest.raises(ValueError):
        modified_tjurina(1, 0)


# deg X


def test_deg_x_examples():
    assert deg_X(homogeneous("X^2 + Y^2 - Z^2")) == 0
    assert deg_X(homogeneous("X^2*Z - Y^3")) == 4


@pytest.mark.parametrize("ident", FIXTURE_IDS)
def test_deg_x_of_every_construction_is_twenty(ident):
    assert deg_X(fixture(ident).configuration().product) == 20


def test_tjurina_sum_agrees_with_deg_x_for_the_cusp():
    cfg = CurveConfiguration((homogeneous("X^2*Z - Y^3"),))
    pts = [local_data(cfg, ProjPoint(0, 0, 1)), local_data(cfg, ProjPoint(1, 0, 0))]
    assert tjurina_sum(pts, cfg) == 4


# configurations


def test_local_data_at_the_cusp_at_infinity():
    cfg = CurveConfiguration((homogeneous("X^2*Z - Y^3"),))
    data = local_data(cfg, ProjPoint(1, 0, 0))
    assert data.on_infinity
    # a smooth branch with contact 3 to the line at infinity
    assert data.singularity.tag == "A5"
    assert data.intersections[(0, "z")] == 3


@pytest.mark.parametrize("ident, count", [("11_2", 6), ("11_25", 7)])
def test_eta_geometric_point_counts(ident, count):
    fx = fixture(ident)
    assert len(eta_geometric_points(fx.configuration())) == count


def test_transverse_crossings_are_not_eta_geometric():
    cfg = CurveConfiguration((homogeneous("X"), homogeneous("Y")))
    assert eta_geometric_points(cfg) == []


def test_declared_points_must_lie_on_the_configuration():
    cfg = CurveConfiguration((homogeneous("X"), homogeneous("Y")))
    with pytest.raises(GeometryError):
        eta_geometric_points(cfg, [("P", ProjPoint(1, 1, 1))])


def test_declared_points_keep_their_labels():
    cfg = CurveConfiguration((homogeneous("X^2*Z - Y^3"),))
    pts = eta_geometric_points(cfg, [("O", ProjPoint(0, 0, 1))])
    labels = {p.label: p.singularity.tag for p in pts}
    assert labels["O"] == "A2"
    assert QQ(1) == 1
