"""Exact scalars: rationals (``fractions.Fraction``) and elements of Q(sqrt D).

Every representation lives in one :class:`Field` context.  Rational contexts
store plain ``Fraction`` values; quadratic contexts store
:class:`QuadraticNumber` values that all share the same ``D``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from .errors import FieldMismatch, ParseError

_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_QUAD_RE = re.compile(rf"^({_RAT})([+-])(\d+(?:/\d+)?)\*sqrt\((\d+)\)$")


def is_squarefree(D: int) -> bool:
    if D < 2:
        return False
    p = 2
    while p * p <= D:
        if D % (p * p) == 0:
            return False
        p += 1
    return True


class QuadraticNumber:
    """``a + b*sqrt(D)`` with rational ``a``, ``b`` and square-free ``D > 1``."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b=0, D=5):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.D = D

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.D != self.D:
                raise FieldMismatch(f"sqrt({self.D}) mixed with sqrt({other.D})")
            return other
        if isinstance(other, Rational):
            return QuadraticNumber(other, 0, self.D)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(
            self.a * o.a + self.b * o.b * self.D,
            self.a * o.b + self.b * o.a,
            self.D,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def conjugate(self):
        return QuadraticNumber(self.a, -self.b, self.D)

    def inverse(self):
        N = self.norm()
        if N == 0:
            raise ZeroDivisionError("QuadraticNumber with zero norm")
        return QuadraticNumber(self.a / N, -self.b / N, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadraticNumber(1, 0, self.D)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return self.D == other.D and self.a == other.a and self.b == other.b
        if isinstance(other, Rational):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, D={self.D})"

    def __str__(self):
        return format_scalar(self)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Canonical text: ``p/q`` for rationals, ``a+b*sqrt(D)`` for quadratics."""
    if isinstance(x, QuadraticNumber):
        sign = "-" if x.b < 0 else "+"
        return f"{format_rational(x.a)}{sign}{format_rational(abs(x.b))}*sqrt({x.D})"
    return format_rational(x)


def _parse_rational(text: str) -> Fraction:
    if not _RAT_RE.match(text):
        raise ParseError(f"malformed rational {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


class Field:
    """A field context: ``Field()`` is Q, ``Field(D)`` is Q(sqrt D)."""

    __slots__ = ("D",)

    def __init__(self, D: int | None = None):
        if D is not None and not is_squarefree(D):
            raise ParseError(f"D must be a square-free integer > 1, got {D}")
        self.D = D

    @property
    def is_rational(self) -> bool:
        return self.D is None

    def __eq__(self, other):
        return isinstance(other, Field) and self.D == other.D

    def __hash__(self):
        return hash(("Field", self.D))

    def __repr__(self):
        return "Field()" if self.D is None else f"Field({self.D})"

    def describe(self) -> str:
        return "rational" if self.D is None else f"quadratic {self.D}"

    def sqrt_D(self):
        if self.D is None:
            raise FieldMismatch("rational field has no sqrt(D)")
        return QuadraticNumber(0, 1, self.D)

    def coerce(self, x):
        """Bring ``x`` into this context; floats are rejected."""
        if isinstance(x, bool) or isinstance(x, float):
            raise TypeError(f"inexact scalar {x!r}")
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, QuadraticNumber):
            if self.D is None:
                if x.b != 0:
                    raise FieldMismatch(f"{x} is not rational")
                return x.a
            if x.D != self.D:
                raise FieldMismatch(f"{x} does not live in Q(sqrt({self.D}))")
            return x
        if isinstance(x, Rational):
            q = Fraction(x)
            return q if self.D is None else QuadraticNumber(q, 0, self.D)
        raise TypeError(f"cannot coerce {type(x).__name__} to an exact scalar")

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def parse(self, text: str, strict: bool = False):
        """Parse canonical scalar syntax, tolerating whitespace.

        With ``strict`` a quadratic context refuses bare rationals and a
        rational context refuses ``sqrt`` tokens (mixed syntax).
        """
        t = re.sub(r"\s+", "", text)
        m = _QUAD_RE.match(t)
        if m:
            if self.D is None:
                raise ParseError(f"quadratic token {text!r} in rational context")
            a = _parse_rational(m.group(1))
            b = _parse_rational(m.group(3))
            if m.group(2) == "-":
                b = -b
            if int(m.group(4)) != self.D:
                raise ParseError(f"token {text!r} uses sqrt({m.group(4)}), context is sqrt({self.D})")
            return QuadraticNumber(a, b, self.D)
        if "sqrt" in t:
            raise ParseError(f"malformed quadratic scalar {text!r}")
        if strict and self.D is not None:
            raise ParseError(f"rational token {text!r} in quadratic context")
        return self.coerce(_parse_rational(t))

    def format(self, x) -> str:
        return format_scalar(self.coerce(x))


RATIONAL = Field()


def field_of(x) -> Field:
    return Field(x.D) if isinstance(x, QuadraticNumber) else RATIONAL
