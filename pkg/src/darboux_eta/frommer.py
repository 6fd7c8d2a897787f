"""Normalized degree-3 forms and focal values over a prime field.

A normalized form is ``(x + A) dx + (y + B) dy`` with ``A, B`` of degrees 2
and 3.  Focal values come from building a formal first integral
``F = (x^2 + y^2)/2 + F_3 + F_4 + ...`` degree by degree.  With
``D(F) = y F_x - x F_y`` the degree-``k`` part of ``dF ^ omega`` is
``D(F_k) + R_k``, where ``R_k`` only involves ``F_{k-1}`` and ``F_{k-2}``.
For odd ``k`` the equation ``D(F_k) = -R_k`` has a unique solution; for even
``k`` the component of ``R_k`` along ``(x^2 + y^2)^{k/2}`` cannot be removed
and is the focal value ``eta_{k/2 - 1}``.

Two independent routes are implemented.  The eigenbasis route works in
``u = x + iy, v = x - iy`` where ``D(u^a v^b) = i (b - a) u^a v^b``; it needs
``i`` in the field.  The dense route solves with the matrix of ``D`` in the
monomial basis and reads the focal value off the mean over the unit circle.
Both fix the free part of ``F_k`` the same way (zero mean over the circle),
so they return identical values.

Scalars may be dual numbers: running with ``Dual(c, 1)`` in one parameter
slot yields the derivative of every focal value along that parameter.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .algebra.fields import GF, Dual, FieldOfDefinition, PrimeField
from .algebra.forms import AFFINE, Form1
from .algebra.linalg import rank
from .algebra.poly import Polynomial
from .geometry import translate
from .projective import ProjPoint

# exponents (i, j) of x^i y^j, in parameter order: a_ij for these, then b_ij
MONOMIALS = ((2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3))
N_PARAMETERS = 2 * len(MONOMIALS)
DEFAULT_COUNT = 13


class FrommerError(ArithmeticError):
    pass


class NoCenterCertificate(FrommerError):
    """The linear part at the zero is not symmetric, so no normalization exists."""


def parameter_names() -> list[str]:
    return [f"{c}{i}{j}" for c in "ab" for i, j in MONOMIALS]


@dataclass(frozen=True)
class NormalizedForm:
    """The 14 parameters of ``(x + sum a_ij x^i y^j) dx + (y + sum b_ij x^i y^j) dy`` over GF(p)."""

    p: int
    params: tuple

    def __post_init__(self):
        if len(self.params) != N_PARAMETERS:
            raise ValueError(f"expected {N_PARAMETERS} parameters, got {len(self.params)}")
        F = GF(self.p)
        object.__setattr__(self, "params", tuple(_coerce(c, F) for c in self.params))

    @property
    def field(self) -> PrimeField:
        return GF(self.p)

    @property
    def a(self) -> tuple:
        return self.params[: len(MONOMIALS)]

    @property
    def b(self) -> tuple:
        return self.params[len(MONOMIALS):]

    @classmethod
    def from_form(cls, omega: Form1) -> "NormalizedForm":
        """Read the parameters of a form that is already normalized."""
        F = omega.field
        if not isinstance(F, PrimeField):
            raise FrommerError("normalized forms live over a prime field")
        P, Q = omega.P, omega.Q
        if omega.degree > 3:
            raise FrommerError("the form has degree above 3")
        expected = {(0, 0): (0, 0), (1, 0): (1, 0), (0, 1): (0, 1)}
        for e, (p_val, q_val) in expected.items():
            if P.coefficient(e) != p_val or Q.coefficient(e) != q_val:
                raise FrommerError("the linear part is not x dx + y dy")
        return cls(F.p, tuple(P.coefficient(e) for e in MONOMIALS) + tuple(Q.coefficient(e) for e in MONOMIALS))

    def form(self) -> Form1:
        F = self.field
        x, y = (Polynomial.variable(v, AFFINE.coordinates, F) for v in AFFINE.coordinates)
        P, Q = x, y
        for (i, j), a, b in zip(MONOMIALS, self.a, self.b):
            m = x**i * y**j
            P = P + m * a
            Q = Q + m * b
        return Form1.affine(P, Q)

    def replace(self, index: int, value) -> "NormalizedForm":
        params = list(self.params)
        params[index] = value
        return NormalizedForm(self.p, tuple(params))

    def __str__(self):
        return self.form().__str__()


def _coerce(c, F: PrimeField):
    if isinstance(c, Dual):
        return Dual(F(c.a), F(c.b))
    return F(c)


# ---------------------------------------------------------------------------
# normalization


def reduce_form(omega: Form1, p: int) -> Form1:
    """Reduce a rational form modulo ``p``."""
    if isinstance(omega.field, PrimeField):
        if omega.field.p != p:
            raise FrommerError(f"form lives over {omega.field}, not GF({p})")
        return omega
    F = GF(p)
    return Form1.affine(omega.P.change_field(F), omega.Q.change_field(F))


def _congruence_to_identity(S, F: PrimeField):
    """``A`` with ``A^T S A = I`` for a symmetric invertible 2x2 ``S``."""
    (s11, s12), (_, s22) = S

    def q(v):
        return s11 * v[0] * v[0] + 2 * s12 * v[0] * v[1] + s22 * v[1] * v[1]

    def bilinear(v, w):
        return s11 * v[0] * w[0] + s12 * (v[0] * w[1] + v[1] * w[0]) + s22 * v[1] * w[1]

    det = s11 * s22 - s12 * s12
    if not det:
        raise FrommerError("the linear part at the zero is degenerate")
    if not F.is_square(det):
        raise FieldOfDefinition(f"the linear part is not congruent to the identity over {F}")
    # a vector of square length: the form represents every nonzero value
    candidates = [(F.one, F.zero), (F.zero, F.one)] + [(F.one, F(t)) for t in range(1, F.p)]
    for v in candidates:
        if q(v) and F.is_square(q(v)):
            break
    r = F.sqrt(q(v))
    v = (v[0] / r, v[1] / r)
    # the orthogonal complement of v
    w = (-(s12 * v[0] + s22 * v[1]), s11 * v[0] + s12 * v[1])
    if not w[0] and not w[1]:
        raise FrommerError("the linear part at the zero is degenerate")
    t = F.sqrt(q(w))
    if t is None:
        raise FieldOfDefinition(f"the linear part is not congruent to the identity over {F}")
    w = (w[0] / t, w[1] / t)
    assert bilinear(v, w) == 0
    return ((v[0], w[0]), (v[1], w[1]))


def linear_part(omega: Form1):
    P, Q = omega.P, omega.Q
    return ((P.coefficient((1, 0)), P.coefficient((0, 1))), (Q.coefficient((1, 0)), Q.coefficient((0, 1))))


def normalize(omega: Form1, a, p: int | None = None) -> NormalizedForm:
    """Move the zero ``a`` to the origin and bring the linear part to ``x dx + y dy``.

    ``a`` is an affine point (tuple or :class:`ProjPoint`).  Rational input
    is reduced modulo ``p`` first.
    """
    if p is None:
        if not isinstance(omega.field, PrimeField):
            raise FrommerError("a prime is needed to normalize a rational form")
        p = omega.field.p
    w = reduce_form(omega, p)
    F = w.field
    if isinstance(a, ProjPoint):
        if a.at_infinity:
            raise FrommerError("the zero must be affine")
        a = a.affine()
    a = tuple(F(c) for c in a)
    if any(c for c in w.evaluate(a)):
        raise FrommerError(f"{a} is not a zero of the form")
    P, Q = translate(w.P, a), translate(w.Q, a)
    S = linear_part(Form1.affine(P, Q))
    if S[0][1] != S[1][0]:
        raise NoCenterCertificate("no center certificate at this zero: the linear part is not symmetric")
    A = _congruence_to_identity(S, F)
    vs = P.variables
    x, y = (Polynomial.variable(v, vs, F) for v in vs)
    sub = {vs[0]: x * A[0][0] + y * A[0][1], vs[1]: x * A[1][0] + y * A[1][1]}
    P1, Q1 = P.compose(sub), Q.compose(sub)
    # coefficients transform by A^T
    P2 = P1 * A[0][0] + Q1 * A[1][0]
    Q2 = P1 * A[0][1] + Q1 * A[1][1]
    return NormalizedForm.from_form(Form1.affine(P2, Q2))


# ---------------------------------------------------------------------------
# homogeneous polynomials as coefficient lists: c[j] multiplies s^(k-j) t^j


def _hmul(f: list, g: list) -> list:
    out = [None] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            term = a * b
            out[i + j] = term if out[i + j] is None else out[i + j] + term
    return out


def _hadd(f: list, g: list) -> list:
    return [a if b is None else b if a is None else a + b for a, b in zip(f, g)]


def _d_first(f: list) -> list:
    k = len(f) - 1
    return [f[j] * (k - j) for j in range(k)]


def _d_second(f: list) -> list:
    return [f[j] * j for j in range(1, len(f))]


def _fill(f: list, zero) -> list:
    return [zero if c is None else c for c in f]


def _homogeneous_parts(coeffs: Sequence, zero) -> dict[int, list]:
    """Split parameters of one coefficient into degree-2 and degree-3 lists (x-power descending)."""
    parts = {2: [zero] * 3, 3: [zero] * 4}
    for (i, j), c in zip(MONOMIALS, coeffs):
        parts[i + j][j] = c
    return parts


def _obstruction(F: dict, N1: dict, N2: dict, k: int, zero) -> list:
    """Degree-``k`` part of ``F_s N1 + F_t N2`` from the nonlinear parts (degrees 2 and 3)."""
    R = [zero] * (k + 1)
    for j in (2, 3):
        Fk = F.get(k + 1 - j)
        if Fk is None:
            continue
        R = _hadd(R, _hadd(_hmul(_d_first(Fk), N1[j]), _hmul(_d_second(Fk), N2[j])))
    return _fill(R, zero)


# ---------------------------------------------------------------------------
# eigenbasis route


def _to_uv(f: list, half, half_minus_i) -> list:
    """Rewrite a homogeneous polynomial in x, y using x = (u+v)/2, y = -i(u-v)/2."""
    k = len(f) - 1
    X = [half, half]  # u + v over 2, in the basis u^(1-j) v^j
    Y = [half_minus_i, -half_minus_i]
    out = [f[0] * 0] * (k + 1)
    for j, c in enumerate(f):
        if not c:
            continue
        term = [c]
        for _ in range(k - j):
            term = _hmul(term, X)
        for _ in range(j):
            term = _hmul(term, Y)
        out = _hadd(out, _fill(term, f[0] * 0))
    return out


def _focal_eigen(params: Sequence, p: int, n: int) -> list:
    F = GF(p)
    i = F.sqrt(F(-1))
    if i is None:
        raise FieldOfDefinition(f"-1 is not a square in GF({p}); use the dense route")
    zero = Dual(F.zero, F.zero) if isinstance(params[0], Dual) else F.zero
    half = F.one / 2
    A = _homogeneous_parts(params[: len(MONOMIALS)], zero)
    B = _homogeneous_parts(params[len(MONOMIALS):], zero)
    # F_x Q - F_y P = F_u (Q - iP) + F_v (Q + iP)
    Nu, Nv = {}, {}
    for k in (2, 3):
        Au, Bu = _to_uv(A[k], half, -i * half), _to_uv(B[k], half, -i * half)
        Nu[k] = [b - a * i for a, b in zip(Au, Bu)]
        Nv[k] = [b + a * i for a, b in zip(Au, Bu)]
    # in the u, v basis list index j multiplies u^(k-j) v^j, so D(entry j) = i (j - (k-j)) entry j
    Fs = {2: [zero, half + zero, zero]}
    values = []
    for k in range(3, 2 * n + 3):
        R = _obstruction(Fs, Nu, Nv, k, zero)
        Fk = [zero] * (k + 1)
        for j in range(k + 1):
            w = 2 * j - k
            if w == 0:
                values.append(R[j])
            else:
                Fk[j] = -R[j] / (i * w)
        Fs[k] = Fk
        Fs.pop(k - 2, None)
    return values


# ---------------------------------------------------------------------------
# dense route


@lru_cache(maxsize=None)
def _mod_solve_matrix(k: int, p: int) -> list[list[int]]:
    """Matrix ``L`` (ints mod p) with ``F = L r`` solving ``D F = r`` for ``r`` in the image of ``D``;
    for even ``k`` the solution is the one with ``mean(F) = 0``."""
    size = k + 1
    # columns of D in the basis x^(k-j) y^j: D(x^(k-j) y^j) = (k-j) x^(k-j-1) y^(j+1) - j x^(k-j+1) y^(j-1)
    Dm = [[0] * size for _ in range(size)]
    for j in range(size):
        if j < k:
            Dm[j + 1][j] = (k - j) % p
        if j > 0:
            Dm[j - 1][j] = (-j) % p
    rows = [r[:] for r in Dm]
    if k % 2 == 0:
        rows.append([m % p for m in circle_means(k, p)])
    # Gauss-Jordan on [rows | I] to get a left inverse on the image
    m = len(rows)
    aug = [rows[r] + [1 if c == r else 0 for c in range(m)] for r in range(m)]
    pivots = []
    r = 0
    for c in range(size):
        piv = next((s for s in range(r, m) if aug[s][c] % p), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], p - 2, p)
        aug[r] = [v * inv % p for v in aug[r]]
        for s in range(m):
            if s != r and aug[s][c]:
                f = aug[s][c]
                aug[s] = [(v - f * w) % p for v, w in zip(aug[s], aug[r])]
        pivots.append(c)
        r += 1
    if len(pivots) != size:
        raise FrommerError(f"the rotation operator is not solvable in degree {k} modulo {p}")
    # F = (left inverse) applied to (r, 0)
    L = [[0] * size for _ in range(size)]
    for row, c in enumerate(pivots):
        for j in range(size):
            L[c][j] = aug[row][size + j]
    return L


def circle_means(k: int, p: int | None = None) -> list:
    """Mean of ``x^(k-j) y^j`` over the unit circle, for ``j = 0..k``."""

    def double_factorial(n):
        out = 1
        while n > 1:
            out *= n
            n -= 2
        return out

    means = []
    for j in range(k + 1):
        if j % 2 or (k - j) % 2:
            means.append(Fraction(0))
        else:
            means.append(Fraction(double_factorial(k - j - 1) * double_factorial(j - 1), double_factorial(k)))
    if p is None:
        return means
    return [m.numerator * pow(m.denominator, p - 2, p) % p for m in means]


def _focal_dense(params: Sequence, p: int, n: int) -> list:
    F = GF(p)
    zero = Dual(F.zero, F.zero) if isinstance(params[0], Dual) else F.zero
    half = F.one / 2
    A = _homogeneous_parts(params[: len(MONOMIALS)], zero)
    B = _homogeneous_parts(params[len(MONOMIALS):], zero)
    # F_x Q - F_y P with P, Q nonlinear parts
    N1 = {k: B[k] for k in (2, 3)}
    N2 = {k: [-c for c in A[k]] for k in (2, 3)}
    Fs = {2: [half + zero, zero, half + zero]}
    values = []
    for k in range(3, 2 * n + 3):
        R = _obstruction(Fs, N1, N2, k, zero)
        rhs = [-c for c in R]
        if k % 2 == 0:
            means = [F(m) for m in circle_means(k, p)]
            eta = zero
            for m, c in zip(means, R):
                eta = eta + c * m
            values.append(eta)
            # remove the obstruction: rhs + eta (x^2 + y^2)^{k/2}
            for j in range(0, k + 1, 2):
                rhs[j] = rhs[j] + eta * comb(k // 2, j // 2)
        L = _mod_solve_matrix(k, p)
        Fk = []
        for row in L:
            acc = zero
            for coeff, c in zip(row, rhs):
                if coeff:
                    acc = acc + c * F(coeff)
            Fk.append(acc)
        Fs[k] = Fk
        Fs.pop(k - 2, None)
    return values


def rotation_matrix(k: int, field) -> list[list]:
    """Matrix of ``D`` on degree-``k`` forms in the basis ``x^(k-j) y^j``."""
    size = k + 1
    Dm = [[field.zero] * size for _ in range(size)]
    for j in range(size):
        if j < k:
            Dm[j + 1][j] = field(k - j)
        if j > 0:
            Dm[j - 1][j] = field(-j)
    return Dm


# ---------------------------------------------------------------------------
# reports


@dataclass
class FocalReport:
    p: int
    values: list
    jacobian: list = dc_field(default_factory=list)
    rank: int | None = None
    route: str = "eigenbasis"

    @property
    def all_vanish(self) -> bool:
        return not any(self.values)

    def text(self) -> str:
        lines = [f"prime: {self.p}", f"route: {self.route}"]
        for j, v in enumerate(self.values, 1):
            lines.append(f"eta_{j} = {int(v)}")
        lines.append(f"all vanish: {self.all_vanish}")
        if self.rank is not None:
            lines.append(f"jacobian: {len(self.jacobian)} x {N_PARAMETERS}, rank {self.rank}")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        out = {"prime": self.p, "route": self.route, "focal_values": [int(v) for v in self.values], "all_vanish": self.all_vanish}
        if self.rank is not None:
            out["jacobian_rank"] = self.rank
            out["jacobian"] = [[int(c) for c in row] for row in self.jacobian]
        return out


def _check_prime(p: int, n: int):
    if p <= 2 * n + 2:
        raise FrommerError(f"GF({p}) is too small for {n} focal values; need p > {2 * n + 2}")


def default_route(p: int) -> str:
    return "eigenbasis" if GF(p).is_square(-1) else "dense"


def _run(params, p, n, route):
    if route == "eigenbasis":
        return _focal_eigen(params, p, n)
    if route == "dense":
        return _focal_dense(params, p, n)
    raise ValueError(f"unknown route {route!r}")


def focal_values(f: NormalizedForm, n: int = DEFAULT_COUNT, route: str | None = None) -> FocalReport:
    """The first ``n`` focal values of ``f``."""
    _check_prime(f.p, n)
    route = route or default_route(f.p)
    values = _run(f.params, f.p, n, route)
    if values and isinstance(values[0], Dual):
        values = [v.a for v in values]
    return FocalReport(f.p, values, route=route)


def focal_jacobian(f: NormalizedForm, n: int = DEFAULT_COUNT, route: str | None = None) -> FocalReport:
    """Focal values together with their ``n x 14`` Jacobian from dual-number runs."""
    _check_prime(f.p, n)
    route = route or default_route(f.p)
    F = f.field
    columns = []
    values = None
    for k in range(N_PARAMETERS):
        params = [Dual(c, F.one if idx == k else F.zero) for idx, c in enumerate(f.params)]
        run = _run(params, f.p, n, route)
        columns.append([v.b for v in run])
        values = [v.a for v in run]
    jac = [[columns[k][j] for k in range(N_PARAMETERS)] for j in range(n)]
    return FocalReport(f.p, values, jac, rank(jac, F), route)


def jacobian_rank(f: NormalizedForm, n: int = DEFAULT_COUNT, route: str | None = None) -> int:
    return focal_jacobian(f, n, route).rank


def parse_normalized(P: str, Q: str, p: int) -> NormalizedForm:
    """Normalized form from the text of its two coefficients."""
    from .algebra.poly import parse_polynomial

    F = GF(p)
    return NormalizedForm.from_form(Form1.affine(parse_polynomial(P, ("x", "y"), F), parse_polynomial(Q, ("x", "y"), F)))


__all__ = [
    "DEFAULT_COUNT",
    "FocalReport",
    "FrommerError",
    "MONOMIALS",
    "N_PARAMETERS",
    "NoCenterCertificate",
    "NormalizedForm",
    "circle_means",
    "default_route",
    "focal_jacobian",
    "focal_values",
    "jacobian_rank",
    "linear_part",
    "normalize",
    "parameter_names",
    "parse_normalized",
    "reduce_form",
    "rotation_matrix",
]
