"""Acceptance criteria, one PASS/FAIL line per check (run with ``-s`` to see them).

Checks that fail on the stored data are kept as they are and marked as
strict expected failures, so the suite stays green while the FAIL lines
remain visible; a strict mark turns into an error if such a check ever passes.
"""

import random
import time
from collections import defaultdict
from functools import lru_cache

import pytest

from darboux_eta.algebra import exterior_derivative
from darboux_eta.darboux import (
    CurveConfiguration,
    cofactor,
    cofactor_additivity_check,
    expected_dimension,
    solve_inverse,
)
from darboux_eta.eta import EtaValue, eta_at, eta_prime_at, k_z, project_eta
from darboux_eta.frommer import NormalizedForm, focal_jacobian, focal_values, normalize
from darboux_eta.geometry import classify_ade, deg_X, local_data, normal_form, singular_points_with_data, tjurina_sum
from darboux_eta.pipeline import run_blueprint
from darboux_eta.projective import ProjPoint, prime
from darboux_eta.zeros import NOT_APPLICABLE, chern_c2_kernel, syzygy_bundle_classes, zeros_at_infinity_count, zeros_outside_bound
from helpers import (
    FIXTURE_IDS,
    affine,
    fixture,
    form,
    hamiltonian_params,
    homogeneous,
    integral_pair,
    line_pair,
    random_params,
    reversible_params,
)

RESULTS = defaultdict(list)
SIMPLE_TYPES = [f"A{n}" for n in range(1, 9)] + [f"D{n}" for n in range(4, 10)] + ["E6", "E7", "E8"]


def record(criterion, name, ok):
    ok = bool(ok)
    print(f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {name}")
    RESULTS[criterion].append(ok)
    return ok


@lru_cache(maxsize=None)
def construction(ident):
    """Pipeline report without the focal stage, and its wall time."""
    fx = fixture(ident)
    start = time.perf_counter()
    space = solve_inverse(fx.configuration(), fx.degree)
    report = run_blueprint(fx, keep_going=True, frommer=False)
    return space.dimension, report, time.perf_counter() - start


def construction_checks(ident, limit):
    dimension, report, elapsed = construction(ident)
    cert = report.certificate
    checks = {
        "solution space of dimension 1": dimension == 1,
        "printed form": report.check("printed form").passed,
        "printed matrix up to row scaling": report.check("matrix").passed,
        "printed kernel": report.check("kernel").passed,
        "printed zero outside the curves": report.check("zero").passed,
        "relation verified symbolically": cert.identity_verified,
        "points not on a conic": cert.general_position,
        f"runtime {elapsed:.1f} s < {limit} s": elapsed < limit,
    }
    return checks


# criterion 1: the cusp


def test_criterion_1_cusp_example():
    start = time.perf_counter()
    w = form("3*x*dy - 2*y*dx")
    cfg = CurveConfiguration((homogeneous("X^2*Z - Y^3"),))
    origin, far = ProjPoint(0, 0, 1), ProjPoint(1, 0, 0)
    checks = {
        "cofactor is 6": cofactor(affine("x^2 - y^3"), w).coefficient == affine("6"),
        "d omega is 5": exterior_derivative(w).coefficient == affine("5"),
        "eta at the origin is (6:5)": eta_at(w, cfg, origin) == EtaValue((6, 5)),
        "eta' at (1:0:0) is (3:3:4)": eta_prime_at(w, cfg, far) == EtaValue((3, 3, 4)),
        "projection from (1:3:3) gives (6:5)": project_eta(eta_prime_at(w, cfg, far), (3,), 1) == EtaValue((6, 5)),
        "direct eta at (1:0:0) is (-6:-5)": eta_at(w, cfg, far) == EtaValue((-6, -5)),
    }
    elapsed = time.perf_counter() - start
    checks[f"runtime {elapsed:.2f} s < 1 s"] = elapsed < 1
    assert all([record(1, name, ok) for name, ok in checks.items()])


# criterion 2: construction 11_2


def test_criterion_2_construction_11_2():
    checks = construction_checks("11_2", 60)
    general = checks.pop("points not on a conic")
    assert all([record(2, name, ok) for name, ok in checks.items()])
    record(2, "six points not on a conic", general)


@pytest.mark.xfail(strict=True, reason="the six eta-geometric points of 11_2 lie on a conic")
def test_criterion_2_general_position():
    assert construction_checks("11_2", 60)["points not on a conic"]


# criterion 3: the remaining constructions

KNOWN_FAILURES = {("11_27", "printed zero outside the curves"), ("11_18", "printed zero outside the curves")}


@pytest.mark.parametrize("ident", ["11_25", "11_59", "11_27", "11_18", "11_53"])
def test_criterion_3_constructions(ident):
    checks = construction_checks(ident, 120)
    general = checks.pop("points not on a conic")
    failures = []
    for name, ok in checks.items():
        if not record(3, f"{ident} {name}", ok) and (ident, name) not in KNOWN_FAILURES:
            failures.append(name)
    print(f"INFO criterion 3: {ident} points not on a conic: {general}")
    assert not failures


@pytest.mark.xfail(strict=True, reason="the printed zero is not a zero of the printed form")
@pytest.mark.parametrize("ident", ["11_27", "11_18"])
def test_criterion_3_printed_zero(ident):
    assert construction_checks(ident, 120)["printed zero outside the curves"]


def test_criterion_3_kernels_agree_across_charts():
    kernels = []
    for ident in ("11_59", "11_27", "11_18"):
        fx = fixture(ident)
        cert = construction(ident)[1].certificate
        kernels.append(tuple(cert.kernel[k] for k in fx.column_permutation()))
    assert record(3, "11_59/27/18 kernels equal after column permutation", len(set(kernels)) == 1)
    assert kernels[0] == (2, 2, 2, 1, -2)


# criterion 4: focal values


def normalized_forms():
    for ident in ("11_2", "11_25", "11_53"):
        yield f"{ident} printed", lambda ident=ident: fixture(ident).normalized_form
    # no normalized form is printed for the three charts of 11_59; normalize at the computed zero
    for ident in ("11_59", "11_27", "11_18"):
        yield f"{ident} computed", lambda ident=ident: _normalize_computed(ident)


def _normalize_computed(ident):
    report = construction(ident)[1]
    (zero,) = [z.point for z in report.zeros.outside]
    return normalize(report.omega, zero, 29)


@pytest.mark.parametrize("label, make", list(normalized_forms()), ids=lambda v: v if isinstance(v, str) else "")
def test_criterion_4_focal_values(label, make):
    f = make()
    start = time.perf_counter()
    report = focal_jacobian(f)
    elapsed = time.perf_counter() - start
    checks = {
        "13 focal values vanish": report.all_vanish and len(report.values) == 13,
        "Jacobian rank 11": report.rank == 11,
        f"runtime {elapsed:.1f} s < 30 s": elapsed < 30,
    }
    assert all([record(4, f"{label} {name}", ok) for name, ok in checks.items()])


# criterion 5: counting formulas


def test_criterion_5_formulas():
    expansion = all(
        chern_c2_kernel(3, *syzygy_bundle_classes(s, d), ell)[1] == s * s + d * (d - s - 1) - ell
        for s in range(1, 11)
        for d in range(1, 11)
        for ell in range(31)
    )
    checks = {
        "expected_dimension(6,3,20) = 1": expected_dimension(6, 3, 20) == 1,
        "expected_dimension(6,3,19) = 0": expected_dimension(6, 3, 19) == 0,
        "zeros_outside_bound(3,6,20) = 1": zeros_outside_bound(3, 6, 20) == 1,
        "zeros_at_infinity_count(3,6,1,true) = 2": zeros_at_infinity_count(3, 6, 1, True) == 2,
        "zeros_at_infinity_count(3,6,2,true) not applicable": zeros_at_infinity_count(3, 6, 2, True) is NOT_APPLICABLE,
        "chern expansion for s, d <= 10 and l <= 30": expansion,
    }
    assert all([record(5, name, ok) for name, ok in checks.items()])


# criterion 6: property suites


def _prime_identities(seed):
    C, w = integral_pair(seed)
    s, e = w.degree, C.degree()
    Kz = k_z(w).coefficient
    w1 = prime(w)
    K_prime = prime(cofactor(C, w).with_degree(s - 1)).coefficient
    dw_prime = prime(exterior_derivative(w).with_degree(s - 1)).coefficient
    return (
        K_prime == cofactor(prime(C), w1).coefficient - Kz * e
        and dw_prime == exterior_derivative(w1).coefficient - Kz * (s + 2)
    )


def test_criterion_6_property_suites():
    cusp = CurveConfiguration((homogeneous("X^2*Z - Y^3"),))
    cusp_points = [local_data(cusp, ProjPoint(0, 0, 1)), local_data(cusp, ProjPoint(1, 0, 0))]
    fixture_degx = []
    for ident in FIXTURE_IDS:
        cfg = fixture(ident).configuration()
        fixture_degx.append(deg_X(cfg.product) == tjurina_sum(singular_points_with_data(cfg), cfg) == 20)
    rng = random.Random(2024)
    checks = {
        "cofactor additivity on 30 line pairs over GF(29)": all(cofactor_additivity_check(*line_pair(seed)) for seed in range(30)),
        "prime identities on 30 integral pairs": all(_prime_identities(seed) for seed in range(30)),
        "classify_ade on every simple normal form": all(classify_ade(normal_form(t), (0, 0)).tag == t for t in SIMPLE_TYPES),
        "deg_X = Tjurina sum = 4 for the cuspidal cubic": deg_X(cusp.product) == tjurina_sum(cusp_points, cusp) == 4,
        "deg_X = Tjurina sum = 20 for every construction": all(fixture_degx),
        "Hamiltonian forms have 13 vanishing focal values": all(
            focal_values(NormalizedForm(29, hamiltonian_params(rng))).all_vanish for _ in range(20)
        ),
        "reversible forms have 13 vanishing focal values": all(
            focal_values(NormalizedForm(29, reversible_params(rng))).all_vanish for _ in range(20)
        ),
        "eigenbasis and dense routes agree on 50 vectors": all(
            focal_values(f, route="eigenbasis").values == focal_values(f, route="dense").values
            for f in (NormalizedForm(29, random_params(rng)) for _ in range(50))
        ),
    }
    assert all([record(6, name, ok) for name, ok in checks.items()])


def test_summary():
    """One line per criterion; criteria 2 and 3 carry the documented failures."""
    for criterion in sorted(RESULTS):
        status = "PASS" if all(RESULTS[criterion]) else "FAIL"
        print(f"{status} criterion {criterion} ({sum(RESULTS[criterion])}/{len(RESULTS[criterion])} checks)")
    print("NOTE criterion 7: full-space point counts are out of scope")
