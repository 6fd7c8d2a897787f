"""Simple algebraic extensions ``base[s] / (g)``.

Used to follow roots of a univariate factor that has no rational or
quadratic roots: the class of ``s`` is a generic root, and every
computation done with it holds for all conjugate roots at once.  The
modulus is expected to be irreducible; inverting a zero divisor raises
:class:`ReducibleModulus` carrying the factor that was found.
"""

from __future__ import annotations

from .fields import FieldError
from .univariate import poly_divmod, poly_gcd, poly_mul, poly_sub, trim


class ReducibleModulus(FieldError):
    def __init__(self, message: str, factor: list):
        super().__init__(message)
        self.factor = factor


def _extended_gcd(a: list, b: list, field):
    """``(g, u)`` with ``g = gcd(a, b)`` monic and ``u a = g mod b``."""
    r0, r1 = trim(a), trim(b)
    u0, u1 = [field.one], []
    while r1:
        q, r = poly_divmod(r0, r1, field)
        r0, r1 = r1, r
        u0, u1 = u1, poly_sub(u0, poly_mul(q, u1))
    inv = field.one / r0[-1]
    return [c * inv for c in r0], [c * inv for c in u0]


class NFElement:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field: "NumberField"):
        self.coeffs = tuple(coeffs)
        self.field = field

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise FieldError(f"mixing {self.field} and {other.field}")
            return other
        try:
            return self.field(other)
        except (TypeError, FieldError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.field.degree
        return NFElement([self.coeffs[i] + o.coeffs[i] for i in range(n)], self.field)

    __radd__ = __add__

    def __neg__(self):
        return NFElement([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field._reduce(poly_mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        K = self.field
        g, u = _extended_gcd(list(self.coeffs), K.modulus, K.base)
        if len(g) > 1:
            raise ReducibleModulus(f"modulus of {K} is reducible", g)
        return K._reduce(u)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        result = self.field.one
        for _ in range(abs(n)):
            result = result * base
        return result

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except FieldError:
            return False
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.coeffs, id(self.field)))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        text = ""
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            power = "" if k == 0 else self.field.symbol + (f"^{k}" if k > 1 else "")
            coeff = str(c)
            negative = coeff.startswith("-")
            coeff = coeff.lstrip("-")
            term = coeff if not power else (power if coeff == "1" else f"{coeff}*{power}")
            if text:
                text += (" - " if negative else " + ") + term
            else:
                text = ("-" if negative else "") + term
        if not text:
            return "0"
        return f"({text})" if sum(1 for c in self.coeffs if c) > 1 else text

    __str__ = __repr__


class NumberField:
    """``base[s]/(g)`` for a monic irreducible ``g`` of degree at least 2."""

    def __init__(self, base, modulus, symbol: str = "r"):
        g = trim([base(c) for c in modulus])
        if len(g) < 3:
            raise FieldError("the modulus must have degree at least 2")
        inv = base.one / g[-1]
        self.base = base
        self.modulus = [c * inv for c in g]
        self.degree = len(g) - 1
        self.symbol = symbol
        self.characteristic = base.characteristic
        self.name = f"{base}[{symbol}]/({self._modulus_text()})"

    def _modulus_text(self):
        return " + ".join(f"{c}*{self.symbol}^{k}" for k, c in enumerate(self.modulus) if c)

    def _reduce(self, f: list) -> NFElement:
        r = poly_divmod(f, self.modulus, self.base)[1] if len(trim(f)) > self.degree else trim(f)
        r = list(r) + [self.base.zero] * (self.degree - len(r))
        return NFElement(r, self)

    def __call__(self, value) -> NFElement:
        if isinstance(value, NFElement):
            if value.field != self:
                raise FieldError(f"cannot coerce {value!r} into {self}")
            return value
        if hasattr(value, "field") and not isinstance(value, type(self.base.one)):
            raise FieldError(f"cannot coerce {value!r} into {self}")
        return NFElement([self.base(value)] + [self.base.zero] * (self.degree - 1), self)

    @property
    def zero(self) -> NFElement:
        return NFElement([self.base.zero] * self.degree, self)

    @property
    def one(self) -> NFElement:
        return self(1)

    @property
    def generator(self) -> NFElement:
        return self._reduce([self.base.zero, self.base.one])

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.base == self.base and other.modulus == self.modulus

    def __hash__(self):
        return hash(("numberfield", tuple(self.modulus)))


def split_modulus(g: list, factor: list, field) -> tuple[list, list]:
    """Split ``g`` along a nontrivial factor found while inverting."""
    h = poly_gcd(g, factor, field)
    return h, poly_divmod(g, h, field)[0]


__all__ = ["NFElement", "NumberField", "ReducibleModulus", "split_modulus"]
