"""Sparse multivariate polynomials over an exact field.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
field elements, together with an ordered tuple of variable names.  Binary
operations require both operands to share variables and field.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .fields import QQ, FieldError


class NotDivisible(ArithmeticError):
    """Inexact polynomial division; ``remainder`` is the nonzero witness."""

    def __init__(self, message: str, remainder: "Polynomial"):
        super().__init__(message)
        self.remainder = remainder


class Polynomial:
    __slots__ = ("variables", "terms", "field", "_hash")

    def __init__(self, terms: Mapping[tuple, object], variables: Sequence[str], field=QQ):
        self.variables = tuple(variables)
        self.field = field
        n = len(self.variables)
        clean = {}
        for exp, c in terms.items():
            exp = tuple(exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match variables {self.variables}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            c = field(c)
            if c:
                clean[exp] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, variables: tuple, field) -> "Polynomial":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.field = field
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, variables, field=QQ) -> "Polynomial":
        return cls._raw({}, tuple(variables), field)

    @classmethod
    def constant(cls, c, variables, field=QQ) -> "Polynomial":
        return cls({(0,) * len(tuple(variables)): c}, variables, field)

    @classmethod
    def variable(cls, name: str, variables, field=QQ) -> "Polynomial":
        variables = tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        if sum(exp) != 1:
            raise ValueError(f"unknown variable {name!r}")
        return cls({exp: 1}, variables, field)

    @classmethod
    def monomial(cls, exp, variables, field=QQ, coefficient=1) -> "Polynomial":
        return cls({tuple(exp): coefficient}, variables, field)

    def gens(self) -> list["Polynomial"]:
        return [Polynomial.variable(v, self.variables, self.field) for v in self.variables]

    # queries

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term; -1 for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self._index(var)
        return max((e[i] for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exp) -> object:
        return self.terms.get(tuple(exp), self.field.zero)

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def homogeneous_part(self, k: int) -> "Polynomial":
        return Polynomial._raw(
            {e: c for e, c in self.terms.items() if sum(e) == k}, self.variables, self.field
        )

    def leading_exponent(self) -> tuple:
        """Largest exponent in lex order (variables ordered as listed)."""
        return max(self.terms)

    def leading_coefficient(self):
        return self.terms[max(self.terms)] if self.terms else self.field.zero

    def _index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r} in {self.variables}") from None

    def _check(self, other: "Polynomial"):
        if other.variables != self.variables:
            raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")
        if other.field != self.field:
            raise FieldError(f"field mismatch {self.field} vs {other.field}")

    def _lift(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        try:
            return Polynomial.constant(self.field(other), self.variables, self.field)
        except (FieldError, TypeError):
            return None

    # arithmetic

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(out, self.variables, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self.terms.items()}, self.variables, self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = self.field(c)
        if not c:
            return Polynomial.zero(self.variables, self.field)
        return Polynomial._raw({e: a * c for e, a in self.terms.items()}, self.variables, self.field)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except (FieldError, TypeError):
                return NotImplemented
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial._raw({e: c for e, c in out.items() if c}, self.variables, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero scalar only; use :func:`exact_divide` for polynomials."""
        if isinstance(other, Polynomial):
            if other.is_constant() and other:
                return self.scale(self.field.one / other.constant_term())
            return exact_divide(self, other)
        c = self.field(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(self.field.one / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = Polynomial.constant(1, self.variables, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        return self.terms == lifted.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution

    def diff(self, var: str) -> "Polynomial":
        i = self._index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                v = c * e[i]
                if v:
                    out[tuple(d)] = v
        return Polynomial._raw(out, self.variables, self.field)

    def evaluate(self, point):
        """Evaluate at a point given as a sequence (in variable order) or a name mapping.

        Values may live in any ring that accepts the coefficients (extension
        fields, dual numbers).
        """
        if isinstance(point, Mapping):
            point = [point[v] for v in self.variables]
        point = list(point)
        if len(point) != self.nvars:
            raise ValueError("point has wrong arity")
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = point[i] ** k
            return cache[key]

        total = self.field.zero
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            total = total + t
        return total

    __call__ = evaluate

    def compose(self, mapping: Mapping[str, object], variables: Sequence[str] | None = None) -> "Polynomial":
        """Substitute polynomials (or scalars) for variables.

        ``mapping`` sends each variable name to a Polynomial in ``variables``
        (defaults to this polynomial's own variables) or a scalar; unmapped
        variables must also exist in the target variables.
        """
        target = tuple(variables) if variables is not None else self.variables
        images = []
        for v in self.variables:
            img = mapping.get(v) if v in mapping else None
            if img is None:
                if v in mapping:
                    raise ValueError(f"no image for {v}")
                img = Polynomial.variable(v, target, self.field)
            elif not isinstance(img, Polynomial):
                img = Polynomial.constant(img, target, self.field)
            elif img.variables != target:
                raise ValueError(f"image of {v} uses {img.variables}, expected {target}")
            images.append(img)
        result = Polynomial.zero(target, self.field)
        powers: dict = {}
        for e, c in self.terms.items():
            t = Polynomial.constant(c, target, self.field)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[i] ** k
                    t = t * powers[key]
            result = result + t
        return result

    def substitute(self, **values) -> "Polynomial":
        """Shorthand for :meth:`compose` keeping the same variables."""
        return self.compose(values)

    def with_variables(self, variables: Sequence[str]) -> "Polynomial":
        """Re-embed into a new variable tuple containing all variables actually used."""
        variables = tuple(variables)
        idx = []
        for i, v in enumerate(self.variables):
            if v in variables:
                idx.append((i, variables.index(v)))
            elif any(e[i] for e in self.terms):
                raise ValueError(f"variable {v} is used but missing from {variables}")
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for i, j in idx:
                new[j] = e[i]
            out[tuple(new)] = c
        return Polynomial._raw(out, variables, self.field)

    def rename(self, variables: Sequence[str]) -> "Polynomial":
        """Rename variables positionally."""
        variables = tuple(variables)
        if len(variables) != self.nvars:
            raise ValueError("rename needs the same number of variables")
        return Polynomial._raw(dict(self.terms), variables, self.field)

    def change_field(self, field, convert=None) -> "Polynomial":
        convert = convert or field
        return Polynomial({e: convert(c) for e, c in self.terms.items()}, self.variables, field)

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial({e: fn(c) for e, c in self.terms.items()}, self.variables, self.field)

    def coefficients_in(self, var: str) -> list["Polynomial"]:
        """Coefficients of powers of ``var`` (index = power), each free of ``var``."""
        i = self._index(var)
        deg = self.degree_in(var)
        out = [dict() for _ in range(max(deg + 1, 0))]
        for e, c in self.terms.items():
            k = e[i]
            rest = list(e)
            rest[i] = 0
            out[k][tuple(rest)] = c
        return [Polynomial._raw(t, self.variables, self.field) for t in out]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.field.one / self.leading_coefficient())

    def primitive(self) -> "Polynomial":
        """Over QQ: coprime integer coefficients with positive lex-leading coefficient.

        Over other fields: monic.
        """
        if not self.terms or self.field != QQ:
            return self.monic()
        from math import gcd, lcm

        coeffs = list(self.terms.values())
        den = 1
        for c in coeffs:
            den = lcm(den, c.denominator)
        g = 0
        for c in coeffs:
            g = gcd(g, (c * den).numerator)
        factor = Fraction(den, g)
        if self.leading_coefficient() < 0:
            factor = -factor
        return self.scale(factor)

    def is_proportional(self, other: "Polynomial"):
        """Return the scalar ``c`` with ``self == c * other`` or ``None``."""
        self._check(other)
        if not other.terms:
            return self.field.zero if not self.terms else None
        if set(self.terms) != set(other.terms):
            return None
        e0 = next(iter(other.terms))
        c = self.terms[e0] / other.terms[e0]
        if all(self.terms[e] == c * other.terms[e] for e in other.terms):
            return c
        return None

    # display

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            cs = str(c)
            negative = cs.startswith("-")
            if negative:
                cs = cs[1:]
            needs_paren = any(ch in cs for ch in "+- ") and not cs.lstrip("-").isdigit()
            if needs_paren:
                cs = f"({cs})"
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("-" if negative else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self}, vars={self.variables}, field={self.field})"


def exact_divide(num: Polynomial, den: Polynomial) -> Polynomial:
    """Return ``q`` with ``num == q * den`` or raise :class:`NotDivisible`."""
    q, r = divmod_lex(num, den)
    if r:
        raise NotDivisible(f"({num}) is not divisible by ({den})", r)
    return q


def divmod_lex(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Multivariate division by a single divisor in lex order."""
    num._check(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    lead = den.leading_exponent()
    lc_inv = den.field.one / den.terms[lead]
    rem = dict(num.terms)
    quot: dict = {}
    out_rem: dict = {}
    den_terms = list(den.terms.items())
    while rem:
        e = max(rem)
        c = rem[e]
        shift = tuple(a - b for a, b in zip(e, lead))
        if any(s < 0 for s in shift):
            out_rem[e] = c
            del rem[e]
            continue
        f = c * lc_inv
        quot[shift] = f
        for de, dc in den_terms:
            t = tuple(a + b for a, b in zip(de, shift))
            v = rem.get(t, 0) - f * dc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return (
        Polynomial._raw(quot, num.variables, num.field),
        Polynomial._raw(out_rem, num.variables, num.field),
    )


def bareiss_determinant(matrix: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    m = [list(row) for row in matrix]
    ref = m[0][0]
    one = Polynomial.constant(1, ref.variables, ref.field)
    sign = 1
    prev = one
    for k in range(n - 1):
        pivot_row = next((i for i in range(k, n) if m[i][k]), None)
        if pivot_row is None:
            return Polynomial.zero(ref.variables, ref.field)
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_divide(pk * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = m[i][k] * 0
        prev = pk
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester_matrix(f: Polynomial, g: Polynomial, var: str) -> list[list[Polynomial]]:
    """Sylvester matrix with the rows of ``f`` first, highest powers on the left."""
    fc = f.coefficients_in(var)
    gc = g.coefficients_in(var)
    m, n = len(fc) - 1, len(gc) - 1
    zero = Polynomial.zero(f.variables, f.field)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(fc)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(gc)):
            row[i + k] = c
        rows.append(row)
    return rows


def resultant(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Sylvester resultant of ``f`` and ``g`` eliminating ``var``.

    The result keeps the full variable tuple (it is free of ``var``).
    """
    f._check(g)
    if not f or not g:
        raise ValueError("resultant of a zero polynomial")
    m, n = f.degree_in(var), g.degree_in(var)
    if m == 0 and n == 0:
        return Polynomial.constant(1, f.variables, f.field)
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    return bareiss_determinant(sylvester_matrix(f, g, var))


# parsing

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Pow, ast.Div)


def _normalize_text(text: str) -> str:
    return (
        text.replace("^", "**")
        .replace("−", "-")
        .replace("·", "*")
        .replace("⋅", "*")
    )


def parse_polynomial(text: str, variables: Sequence[str], field=QQ, extra: Mapping[str, Polynomial] | None = None) -> Polynomial:
    """Parse a polynomial from text like ``(x*y - z^2)^2 - x*z^3``.

    Division is allowed only by nonzero constants.  ``extra`` supplies
    additional named polynomials (for example previously defined curves).
    """
    variables = tuple(variables)
    extra = dict(extra or {})
    try:
        tree = ast.parse(_normalize_text(text), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg}") from None

    def build(node) -> Polynomial:
        if isinstance(node, ast.Expression):
            return build(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Polynomial.constant(node.value, variables, field)
        if isinstance(node, ast.Name):
            if node.id in variables:
                return Polynomial.variable(node.id, variables, field)
            if node.id in extra:
                return extra[node.id]
            raise ValueError(f"unknown name {node.id!r} in {text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = build(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            left = build(node.left)
            if isinstance(node.op, ast.Pow):
                k = node.right
                if isinstance(k, ast.Constant) and isinstance(k.value, int) and k.value >= 0:
                    return left ** k.value
                raise ValueError("exponents must be nonnegative integer literals")
            right = build(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if not right.is_constant() or not right:
                raise ValueError("division only by nonzero constants")
            return left / right.constant_term()
        raise ValueError(f"unsupported syntax in polynomial {text!r}")

    return build(tree)


def monomials(nvars: int, degree: int) -> list[tuple]:
    """All exponent tuples of the given total degree, in descending lex order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def from_coefficients(coeffs: Iterable, exps: Sequence[tuple], variables, field=QQ) -> Polynomial:
    return Polynomial(dict(zip(exps, coeffs)), variables, field)
