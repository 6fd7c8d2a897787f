"""Shared helpers for the test suite."""

import random

from functools import lru_cache

import sympy

from darboux_eta.algebra import AFFINE, GF, QQ, Form1, Polynomial, parse_form1, parse_polynomial
from darboux_eta.frommer import MONOMIALS
from darboux_eta.pipeline import load_fixture, run_blueprint
from darboux_eta.pipeline.fixtures import parse_homogeneous

FIXTURE_IDS = ("11_2", "11_25", "11_59", "11_27", "11_18", "11_53")


def affine(text, field=None):
    return parse_polynomial(text, AFFINE.coordinates, field) if field else parse_polynomial(text, AFFINE.coordinates)


def homogeneous(text, field=None):
    """Homogeneous polynomial in X, Y, Z; the text may use either case."""
    text = text.lower()
    return parse_homogeneous(text, field) if field else parse_homogeneous(text)


def form(text, field=None):
    return parse_form1(text, field=field)


@lru_cache(maxsize=None)
def fixture(identifier):
    return load_fixture(identifier)


@lru_cache(maxsize=None)
def blueprint(identifier):
    """Pipeline report for a stored construction, computed once per session."""
    return run_blueprint(fixture(identifier), keep_going=True)


def random_poly(rng, variables, degree, field, terms=6, bound=28):
    """A random polynomial with at most ``terms`` monomials of total degree at most ``degree``."""
    out = {}
    for _ in range(terms):
        e = [0] * len(variables)
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(len(variables))] += 1
        out[tuple(e)] = field(rng.randint(-bound, bound))
    return Polynomial(out, variables, field)


def integral_pair(seed):
    """A random curve C and a form w = A dC + C beta, for which C is an integral curve."""
    rng = random.Random(seed)
    while True:
        C = random_poly(rng, ("x", "y"), 3, QQ, terms=4, bound=6)
        if C.degree() >= 1:
            break
    A = random_poly(rng, ("x", "y"), 2, QQ, terms=3, bound=6)
    beta = Form1(AFFINE, (random_poly(rng, ("x", "y"), 2, QQ, terms=3, bound=6), random_poly(rng, ("x", "y"), 2, QQ, terms=3, bound=6)))
    w = Form1(AFFINE, (C.diff("x") * A + C * beta.P, C.diff("y") * A + C * beta.Q))
    if not w.P and not w.Q:
        w = Form1(AFFINE, (C.diff("x"), C.diff("y")))
    return C, w


def line_pair(seed, p=29):
    """Two non-proportional random lines over GF(p) and a form with both as integral curves."""
    F = GF(p)
    rng = random.Random(seed)

    def line():
        while True:
            a, b, c = (F(rng.randrange(p)) for _ in range(3))
            if a or b:
                return affine("x", F) * a + affine("y", F) * b + affine("1", F) * c

    while True:
        L1, L2 = line(), line()
        if L1.diff("x") * L2.diff("y") != L1.diff("y") * L2.diff("x"):
            break
    lam = F(rng.randrange(1, p))
    w = Form1(AFFINE, (L2.diff("x") * L1 - L1.diff("x") * L2 * lam, L2.diff("y") * L1 - L1.diff("y") * L2 * lam))
    return L1, L2, w


def random_params(rng, p=29):
    return tuple(rng.randrange(p) for _ in range(2 * len(MONOMIALS)))


def hamiltonian_params(rng, p=29):
    """Parameters of dH for H = (x^2 + y^2)/2 + a random cubic and quartic."""
    F = GF(p)
    x, y = sympy.symbols("x y")
    H = sum(rng.randrange(p) * x**i * y**(k - i) for k in (3, 4) for i in range(k + 1))
    Hx, Hy = sympy.Poly(sympy.diff(H, x), x, y), sympy.Poly(sympy.diff(H, y), x, y)
    a = [F(int(Hx.coeff_monomial(x**i * y**j))) for i, j in MONOMIALS]
    b = [F(int(Hy.coeff_monomial(x**i * y**j))) for i, j in MONOMIALS]
    return tuple(a + b)


def reversible_params(rng, p=29):
    """P even and Q odd in y: the form is invariant under the reflection y -> -y."""
    a = [rng.randrange(p) if j % 2 == 0 else 0 for i, j in MONOMIALS]
    b = [rng.randrange(p) if j % 2 == 1 else 0 for i, j in MONOMIALS]
    return tuple(a + b)
