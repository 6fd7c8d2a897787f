"""Coefficient fields: rationals, prime fields, quadratic extensions and dual numbers.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field elements
are :class:`FpElement` instances reduced to ``[0, p)``.  Quadratic extensions
``K(sqrt(d))`` are needed for singular points that are only defined over a
quadratic extension, and dual numbers ``a + b*eps`` carry exact first
derivatives through polynomial evaluation.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache


class FieldError(ValueError):
    """Raised for invalid field specifications or cross-field arithmetic."""


class FieldOfDefinition(ArithmeticError):
    """Raised when an operation needs an element that does not exist in the field."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _isqrt_exact(n: int):
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


class RationalField:
    """The field of rational numbers; elements are ``Fraction`` values."""

    characteristic = 0
    name = "QQ"

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, (FpElement, QuadElement, Dual)):
            raise FieldError(f"cannot coerce {value!r} into QQ")
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def sqrt(self, a):
        """Exact square root, or ``None`` if ``a`` is not a rational square."""
        a = self(a)
        num = _isqrt_exact(a.numerator)
        den = _isqrt_exact(a.denominator)
        if num is None or den is None:
            return None
        return Fraction(num, den)

    def is_square(self, a) -> bool:
        return self.sqrt(a) is not None

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __reduce__(self):
        return (RationalField, ())


QQ = RationalField()


class FpElement:
    """An element of the prime field GF(p), stored as an integer in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    @property
    def field(self) -> "PrimeField":
        return GF(self.p)

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            den = other.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {other} vanishes mod {self.p}")
            return other.numerator * pow(den, -1, self.p) % self.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElement(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElement(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElement(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FpElement(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return FpElement(self.value * pow(v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return FpElement(v * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            if self.value == 0:
                raise ZeroDivisionError(f"division by zero in GF({self.p})")
            return FpElement(pow(pow(self.value, -1, self.p), -n, self.p), self.p)
        return FpElement(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self._coerce(other)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def signed(self) -> int:
        """Representative in ``(-p/2, p/2]``, handy for display."""
        return self.value - self.p if self.value > self.p // 2 else self.value

    def __repr__(self):
        return f"{self.value} mod {self.p}"

    def __str__(self):
        return str(self.signed())


class PrimeField:
    """The finite field GF(p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, value) -> FpElement:
        if isinstance(value, FpElement):
            if value.p != self.p:
                raise FieldError(f"cannot coerce {value!r} into GF({self.p})")
            return value
        if isinstance(value, int):
            return FpElement(value, self.p)
        if isinstance(value, Fraction):
            return FpElement(0, self.p) + value
        if isinstance(value, str):
            return self(Fraction(value))
        raise FieldError(f"cannot coerce {value!r} into GF({self.p})")

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self.p)

    @property
    def one(self) -> FpElement:
        return FpElement(1, self.p)

    def elements(self):
        return (FpElement(v, self.p) for v in range(self.p))

    def is_square(self, a) -> bool:
        a = self(a)
        if a.value == 0 or self.p == 2:
            return True
        return pow(a.value, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, a):
        """Square root by Tonelli-Shanks, or ``None`` for a non-residue."""
        a = self(a)
        p = self.p
        if a.value == 0 or p == 2:
            return a
        if not self.is_square(a):
            return None
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a.value, q, p), pow(a.value, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
        return FpElement(min(r, p - r), p)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """Cached constructor for prime fields."""
    return PrimeField(p)


class QuadElement:
    """An element ``a + b*sqrt(d)`` of a quadratic extension field."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a, b, field: "QuadraticField"):
        self.a = a
        self.b = b
        self.field = field

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.field != self.field:
                raise FieldError(f"mixing {self.field} and {other.field}")
            return other.a, other.b
        if isinstance(other, (int, Fraction, FpElement)):
            return self.field.base(other), self.field.base.zero
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a + o[0], self.b + o[1], self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a - o[0], self.b - o[1], self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(o[0] - self.a, o[1] - self.b, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.d
        return QuadElement(
            self.a * o[0] + d * self.b * o[1], self.a * o[1] + self.b * o[0], self.field
        )

    __rmul__ = __mul__

    def norm(self):
        return self.a * self.a - self.field.d * self.b * self.b

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.a, -self.b, self.field)

    def inverse(self) -> "QuadElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadElement(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * QuadElement(o[0], o[1], self.field).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(o[0], o[1], self.field) * self.inverse()

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.field)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        result = self.field.one
        for _ in range(abs(n)):
            result = result * base
        return result

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (FieldError, ZeroDivisionError):
            return False
        if o is None:
            return NotImplemented
        return self.a == o[0] and self.b == o[1]

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.field))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        root = f"sqrt({self.field.d})"
        if not self.b:
            return str(self.a)
        imag = root if self.b == 1 else f"-{root}" if self.b == -1 else f"{self.b}*{root}"
        if not self.a:
            return imag
        sign = "-" if imag.startswith("-") else "+"
        return f"({self.a} {sign} {imag.lstrip('-')})"

    __str__ = __repr__


class QuadraticField:
    """The extension ``base(sqrt(d))`` for a non-square ``d`` of the base field."""

    def __init__(self, base, d):
        d = base(d)
        if base.is_square(d):
            raise FieldError(f"{d} is a square in {base}; no proper extension")
        self.base = base
        self.d = d
        self.characteristic = base.characteristic
        self.name = f"{base}(sqrt({d}))"

    def __call__(self, value) -> QuadElement:
        if isinstance(value, QuadElement):
            if value.field != self:
                raise FieldError(f"cannot coerce {value!r} into {self}")
            return value
        return QuadElement(self.base(value), self.base.zero, self)

    def element(self, a, b) -> QuadElement:
        return QuadElement(self.base(a), self.base(b), self)

    @property
    def generator(self) -> QuadElement:
        return QuadElement(self.base.zero, self.base.one, self)

    @property
    def zero(self) -> QuadElement:
        return QuadElement(self.base.zero, self.base.zero, self)

    @property
    def one(self) -> QuadElement:
        return QuadElement(self.base.one, self.base.zero, self)

    def is_square(self, a) -> bool:
        return self.sqrt(a) is not None

    def sqrt(self, a):
        """Square root when it exists in this field (base elements and their d-multiples)."""
        a = self(a)
        if a.b == 0:
            r = self.base.sqrt(a.a)
            if r is not None:
                return QuadElement(r, self.base.zero, self)
            r = self.base.sqrt(a.a / self.d)
            if r is not None:
                return QuadElement(self.base.zero, r, self)
            return None
        # (x + y s)^2 = a + b s  =>  x^2 + d y^2 = a, 2xy = b
        n = self.base.sqrt(a.norm())
        if n is None:
            return None
        for sign in (1, -1):
            x2 = (a.a + sign * n) / 2
            x = self.base.sqrt(x2)
            if x is not None and x != 0:
                y = a.b / (2 * x)
                return QuadElement(x, y, self)
        return None

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticField)
            and other.base == self.base
            and other.d == self.d
        )

    def __hash__(self):
        return hash(("quad", self.base, self.d))


def squarefree_rational(d: Fraction) -> int:
    """The square-free integer ``m`` with ``d = m * q**2`` for some rational ``q``.

    Trial division handles the desk-scale discriminants met in practice.
    """
    d = Fraction(d)
    if d == 0:
        raise ValueError("zero has no square class")
    m = d.numerator * d.denominator
    sign = -1 if m < 0 else 1
    m = abs(m)
    out, q = 1, 2
    while q * q <= m:
        while m % (q * q) == 0:
            m //= q * q
        if m % q == 0:
            m //= q
            out *= q
        q += 1
    return sign * out * m


class Dual:
    """Dual number ``a + b*eps`` with ``eps**2 = 0`` over any field.

    Evaluating a polynomial at ``Dual(x, 1)`` returns ``f(x) + f'(x) eps``.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = a
        self.b = b

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a + other.a, self.b + other.b)
        return Dual(self.a + other, self.b)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a - other.a, self.b - other.b)
        return Dual(self.a - other, self.b)

    def __rsub__(self, other):
        return Dual(other - self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a * other.a, self.a * other.b + self.b * other.a)
        return Dual(self.a * other, self.b * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            if other.a == 0:
                raise ZeroDivisionError("dual number with zero real part is not invertible")
            return Dual(self.a / other.a, (self.b * other.a - self.a * other.b) / (other.a * other.a))
        return Dual(self.a / other, self.b / other)

    def __rtruediv__(self, other):
        return Dual(other, 0) / self

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return Dual(1, 0) / self ** (-n)
        if n == 0:
            return Dual(self.a ** 0, self.b * 0)
        return Dual(self.a ** n, n * self.a ** (n - 1) * self.b)

    def __eq__(self, other):
        if isinstance(other, Dual):
            return self.a == other.a and self.b == other.b
        return self.a == other and self.b == 0

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"Dual({self.a!r}, {self.b!r})"


_FIELD_RE = re.compile(r"^\s*(?:GF|F)\s*\(\s*(\d+)\s*\)\s*$")


def parse_field(spec: str):
    """Parse ``QQ`` or ``GF(p)``."""
    text = spec.strip()
    if text in ("QQ", "Q"):
        return QQ
    m = _FIELD_RE.match(text)
    if m:
        return GF(int(m.group(1)))
    raise FieldError(f"unknown field specification {spec!r}")


def field_of(value):
    """The field an element lives in (ints count as rationals)."""
    if isinstance(value, (int, Fraction)):
        return QQ
    if isinstance(value, FpElement):
        return GF(value.p)
    if isinstance(value, QuadElement):
        return value.field
    field = getattr(value, "field", None)
    if field is not None:
        return field
    raise FieldError(f"{value!r} is not a field element")


def reduce_mod(value, p: int) -> FpElement:
    """Reduce a rational (or integer) into GF(p)."""
    return GF(p)(value if not isinstance(value, int) else Fraction(value))
