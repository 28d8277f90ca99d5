"""Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).

A value is stored as ``(a + b*sqrt(d)) / c`` with integers ``a, b``, a
positive integer ``c`` and a non-square ``d >= 2``.  Rationals carry
``b == 0`` and ``d is None``.  Every element is normalized on construction
so that equal values have equal fields, which makes ``==`` and ``hash``
structural.

Sign, comparison and floor are decided with integer arithmetic only::

    >>> phi = make_coeff("quad:1,1,2,5")
    >>> fe_floor(phi * 4)
    6
    >>> fe_sign(1 - FieldElement(0, 1, 1, 2))
    -1
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "ExactCoeff",
    "FieldElement",
    "FieldMismatchError",
    "floor_mul_sqrt",
    "fe_add",
    "fe_floor",
    "fe_inv",
    "fe_mul",
    "fe_sign",
    "make_coeff",
    "parse_rational",
]


class FieldMismatchError(ValueError):
    """Raised when two irrational elements live in different fields."""


def floor_mul_sqrt(b: int, d: int) -> int:
    """Return ``floor(b * sqrt(d))`` for non-square ``d``."""
    if b >= 0:
        return math.isqrt(b * b * d)
    # b*sqrt(d) is irrational, so ceil = floor + 1
    return -math.isqrt(b * b * d) - 1


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


class FieldElement:
    """Immutable element ``(a + b*sqrt(d)) / c`` of Q or Q(sqrt(d))."""

    __slots__ = ("a", "b", "c", "d")

    a: int
    b: int
    c: int
    d: int | None

    def __init__(self, a: int, b: int = 0, c: int = 1, d: int | None = None):
        if c == 0:
            raise ZeroDivisionError("denominator c must be nonzero")
        if b != 0 and d is None:
            raise ValueError("irrational part given without a radicand d")
        if d is not None and (d < 2 or _is_square(d)):
            raise ValueError(f"d={d} must be a non-square integer >= 2")
        if c < 0:
            a, b, c = -a, -b, -c
        if b == 0:
            d = None
        g = math.gcd(a, b, c)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "c", c // g)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.a, self.b, self.c, self.d))

    @classmethod
    def coerce(cls, x) -> FieldElement:
        if isinstance(x, FieldElement):
            return x
        if isinstance(x, int):
            return cls(x)
        if isinstance(x, Rational):
            return cls(x.numerator, 0, x.denominator)
        raise TypeError(f"cannot convert {type(x).__name__} to FieldElement")

    # -- predicates -----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_integer(self) -> bool:
        return self.b == 0 and self.c == 1

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.c)

    def conjugate(self) -> FieldElement:
        return FieldElement(self.a, -self.b, self.c, self.d)

    def __float__(self) -> float:
        if not self.b:
            return self.a / self.c
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    # -- arithmetic -----------------------------------------------------

    def _common_d(self, other: FieldElement) -> int | None:
        if self.d is None:
            return other.d
        if other.d is None or other.d == self.d:
            return self.d
        raise FieldMismatchError(f"cannot mix sqrt({self.d}) and sqrt({other.d})")

    def __add__(self, other) -> FieldElement:
        try:
            other = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common_d(other)
        return FieldElement(
            self.a * other.c + other.a * self.c,
            self.b * other.c + other.b * self.c,
            self.c * other.c,
            d,
        )

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.a, -self.b, self.c, self.d)

    def __pos__(self) -> FieldElement:
        return self

    def __sub__(self, other) -> FieldElement:
        try:
            other = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> FieldElement:
        return FieldElement.coerce(other) - self

    def __mul__(self, other) -> FieldElement:
        try:
            other = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common_d(other)
        bb = self.b * other.b * d if d is not None else 0
        return FieldElement(
            self.a * other.a + bb,
            self.a * other.b + self.b * other.a,
            self.c * other.c,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        # 1/((a + b√d)/c) = c(a - b√d)/(a² - b²d)
        if self.b == 0:
            if self.a == 0:
                raise ZeroDivisionError("inverse of zero")
            return FieldElement(self.c, 0, self.a)
        norm = self.a * self.a - self.b * self.b * self.d
        return FieldElement(self.c * self.a, -self.c * self.b, norm, self.d)

    def __truediv__(self, other) -> FieldElement:
        try:
            other = FieldElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> FieldElement:
        return FieldElement.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> FieldElement:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = FieldElement(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order ----------------------------------------------------------

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins, a² vs b²d
        return sa if a * a > b * b * self.d else sb

    def floor(self) -> int:
        if self.b == 0:
            return self.a // self.c
        # floor(t / c) == floor(floor(t) / c) for integer c > 0
        return (self.a + floor_mul_sqrt(self.b, self.d)) // self.c

    def ceil(self) -> int:
        return -(-self).floor()

    def __floor__(self) -> int:
        return self.floor()

    def __ceil__(self) -> int:
        return self.ceil()

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        if isinstance(other, (int, Rational)):
            return self.b == 0 and Fraction(self.a, self.c) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    # -- text -----------------------------------------------------------

    def to_text(self) -> str:
        """Render in the coefficient grammar (``rat:a/c`` or ``quad:a,b,c,d``)."""
        if self.b == 0:
            return f"rat:{self.a}/{self.c}"
        return f"quad:{self.a},{self.b},{self.c},{self.d}"

    def __repr__(self) -> str:
        return f"FieldElement({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a) if self.c == 1 else f"{self.a}/{self.c}"
        coef = {1: "", -1: "-"}.get(self.b, str(self.b))
        root = f"{coef}√{self.d}"
        num = f"{self.a}{'' if root.startswith('-') else '+'}{root}" if self.a else root
        return num if self.c == 1 else f"({num})/{self.c}"


#: Coefficients such as lambda and eta are plain field elements; the
#: (-2, 2) range check is applied by :func:`make_coeff` on request.
ExactCoeff = FieldElement

_INT = r"[+-]?\d+"
_RAT_RE = re.compile(rf"rat:({_INT})/(\d+)")
_QUAD_RE = re.compile(rf"quad:({_INT}),({_INT}),(\d+),(\d+)")


def make_coeff(coeff: str, *, rotation: bool = False) -> FieldElement:
    """Parse ``rat:<a>/<c>`` or ``quad:<a>,<b>,<c>,<d>``.

    With ``rotation=True`` the value must lie strictly inside (-2, 2).
    """
    text = coeff.strip()
    if m := _RAT_RE.fullmatch(text):
        a, c = int(m[1]), int(m[2])
        if c == 0:
            raise ValueError(f"zero denominator in {coeff!r}")
        value = FieldElement(a, 0, c)
    elif m := _QUAD_RE.fullmatch(text):
        a, b, c, d = (int(g) for g in m.groups())
        if c == 0:
            raise ValueError(f"zero denominator in {coeff!r}")
        if d < 2 or _is_square(d):
            raise ValueError(f"radicand {d} in {coeff!r} must be a non-square >= 2")
        value = FieldElement(a, b, c, d)
    else:
        raise ValueError(f"cannot parse coefficient {coeff!r}")
    if rotation and not (value > -2 and value < 2):
        raise ValueError(f"rotation coefficient {value} outside (-2, 2)")
    return value


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational ``p/q`` or integer; decimal floats are rejected."""
    text = text.strip()
    if not re.fullmatch(rf"{_INT}(/\d+)?", text):
        raise ValueError(f"expected an exact rational like 21/2, got {text!r}")
    return Fraction(text)


def fe_add(x: FieldElement, y: FieldElement) -> FieldElement:
    return FieldElement.coerce(x) + y


def fe_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return FieldElement.coerce(x) * y


def fe_inv(x: FieldElement) -> FieldElement:
    return FieldElement.coerce(x).inverse()


def fe_sign(x: FieldElement) -> int:
    return FieldElement.coerce(x).sign()


def fe_floor(x: FieldElement) -> int:
    return FieldElement.coerce(x).floor()
