"""Exact scalar arithmetic: rationals and quadratic extension fields.

Rationals are stdlib :class:`fractions.Fraction` values, which already give
arbitrary precision, automatic reduction and a positive denominator.  On top
of those, :class:`QuadExtElem` implements the quadratic extension
``Q[t]/(t^2 + u*t + v)`` for rational ``u``, ``v`` with negative discriminant,
so the modulus is irreducible over the rationals.  The generator ``t`` stands
for one root of ``x^2 + u*x + v``; the other root is its conjugate ``-u - t``.
A conjugate pair of complex roots is therefore handled exactly, without ever
leaving rational arithmetic: products and sums of an element with its
conjugate land back in the rationals.

Rationals serialize as ``"p/q"`` (or ``"p"``); extension elements as
``{"a": ..., "b": ..., "u": ..., "v": ...}`` for the value ``a + b*t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import FieldMismatchError, ParseError

Rational = Fraction
RationalLike = Union[int, Fraction]
Scalar = Union[Fraction, "QuadExtElem"]


def as_rational(value: RationalLike | str) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction; floats are rejected."""
    if isinstance(value, float):
        raise TypeError("floating-point values are not allowed in exact arithmetic")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse a decimal rational literal like '3', '-5/7'."""
    try:
        return Fraction(str(text).strip())
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in rational literal {text!r}") from None
    except ValueError:
        raise ParseError(f"invalid rational literal {text!r}") from None


def format_rational(value: RationalLike) -> str:
    return str(as_rational(value))


@dataclass(frozen=True)
class QuadField:
    """The field Q[t]/(t^2 + u*t + v), with x^2 + u*x + v irreducible over Q."""

    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", as_rational(self.u))
        object.__setattr__(self, "v", as_rational(self.v))
        if self.discriminant >= 0:
            raise ValueError(
                f"x^2 + ({self.u})*x + ({self.v}) is reducible over Q; "
                "a quadratic extension needs a negative discriminant"
            )

    @property
    def discriminant(self) -> Fraction:
        return self.u * self.u - 4 * self.v

    @property
    def generator(self) -> QuadExtElem:
        """The class of t, i.e. one root of x^2 + u*x + v."""
        return QuadExtElem(self, Fraction(0), Fraction(1))

    def element(self, a: RationalLike = 0, b: RationalLike = 0) -> QuadExtElem:
        return QuadExtElem(self, as_rational(a), as_rational(b))

    def __str__(self) -> str:
        return f"Q[t]/(t^2 + ({self.u})*t + ({self.v}))"


#: The Gaussian rationals Q[i], the extension by a root of x^2 + 1.
GAUSSIAN = QuadField(Fraction(0), Fraction(1))


@dataclass(frozen=True, eq=False)
class QuadExtElem:
    """The value a + b*t in Q[t]/(t^2 + u*t + v), kept in canonical (a, b) form.

    Arithmetic reduces t^2 to -u*t - v.  Elements with b == 0 are rational and
    compare equal to the corresponding Fraction.
    """

    field: QuadField
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))

    # -- structure ----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        """The element as a Fraction; raises if the t-component is nonzero."""
        if self.b != 0:
            raise ValueError(f"{self} has a nonzero t-component")
        return self.a

    def conjugate(self) -> QuadExtElem:
        """Swap the two roots of x^2 + u*x + v: a + b*t -> (a - b*u) - b*t."""
        f = self.field
        return QuadExtElem(f, self.a - self.b * f.u, -self.b)

    def norm(self) -> Fraction:
        """x * conj(x), always rational."""
        f = self.field
        return self.a * self.a - self.a * self.b * f.u + self.b * self.b * f.v

    def trace(self) -> Fraction:
        """x + conj(x), always rational."""
        return 2 * self.a - self.b * self.field.u

    def inverse(self) -> QuadExtElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in quadratic extension")
        c = self.conjugate()
        return QuadExtElem(self.field, c.a / n, c.b / n)

    # -- coercion and operators ----------------------------------------------

    def _coerce(self, other) -> "QuadExtElem | None":
        if isinstance(other, QuadExtElem):
            if other.field == self.field:
                return other
            if other.b == 0:
                return QuadExtElem(self.field, other.a, Fraction(0))
            if self.b == 0:
                return None  # let the reflected operator run in other.field
            raise FieldMismatchError(
                f"cannot combine elements of {self.field} and {other.field}"
            )
        if isinstance(other, bool):
            return None
        if isinstance(other, (int, Fraction)):
            return QuadExtElem(self.field, as_rational(other), Fraction(0))
        if isinstance(other, float):
            raise TypeError("floating-point operands are not allowed in exact arithmetic")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExtElem(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExtElem(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExtElem(self.field, o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        bb = self.b * o.b
        return QuadExtElem(
            f,
            self.a * o.a - bb * f.v,
            self.a * o.b + self.b * o.a - bb * f.u,
        )

    __rmul__ = __mul__

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

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadExtElem(self.field, Fraction(1), Fraction(0))
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __neg__(self):
        return QuadExtElem(self.field, -self.a, -self.b)

    def __pos__(self):
        return self

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExtElem):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.field == other.field and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        # matches Fraction's hash when the element is rational, so mixed
        # dict/set membership stays consistent with __eq__
        if self.b == 0:
            return hash(self.a)
        return hash((self.field, self.a, self.b))

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "u": str(self.field.u),
            "v": str(self.field.v),
        }

    @classmethod
    def from_json(cls, obj: dict) -> QuadExtElem:
        try:
            field = QuadField(parse_rational(obj["u"]), parse_rational(obj["v"]))
            return cls(field, parse_rational(obj["a"]), parse_rational(obj["b"]))
        except KeyError as exc:
            raise ParseError(f"extension element is missing key {exc}") from None

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.b == 1:
            t = "t"
        elif self.b == -1:
            t = "-t"
        else:
            t = f"{self.b}*t"
        if self.a == 0:
            return t
        sign = "-" if self.b < 0 else "+"
        mag = t.lstrip("-")
        return f"{self.a} {sign} {mag}"
