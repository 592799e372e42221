"""Exact scalar fields: the rationals and prime fields GF(p).

Rational scalars are plain :class:`fractions.Fraction` values.  Prime-field
scalars are :class:`GFElement` instances that refuse to mix with scalars of
another characteristic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union


class FieldMismatchError(ValueError):
    """Raised when scalars or polynomials over different fields are combined."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class GFElement:
    """Residue class modulo a prime ``p``, always stored reduced."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldMismatchError(f"cannot mix GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"cannot mix GF({self.p}) and rational scalars")
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return GFElement(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return GFElement(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return GFElement(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return GFElement(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def inverse(self) -> GFElement:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return GFElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self * GFElement(v, self.p).inverse()

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return GFElement(v, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GFElement({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, GFElement]


class Field:
    """A scalar context: characteristic 0 (the rationals) or a prime ``p``."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
        self.characteristic = characteristic

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, value) -> Scalar:
        """Convert an int, Fraction, string like ``"2/3"`` or scalar into this field."""
        p = self.characteristic
        if isinstance(value, GFElement):
            if value.p != p:
                raise FieldMismatchError(f"GF({value.p}) scalar used in {self}")
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if p == 0:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise TypeError(f"cannot convert {value!r} to a rational")
        if isinstance(value, int):
            return GFElement(value, p)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes in GF({p})")
            return GFElement(value.numerator, p) / GFElement(value.denominator, p)
        raise TypeError(f"cannot convert {value!r} to GF({p})")

    def contains(self, value) -> bool:
        if self.characteristic == 0:
            return isinstance(value, Fraction)
        return isinstance(value, GFElement) and value.p == self.characteristic

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def label(self) -> str:
        """The command-line spelling of this field: ``q`` or ``gf:p``."""
        return "q" if self.characteristic == 0 else f"gf:{self.characteristic}"

    @classmethod
    def from_label(cls, text: str) -> Field:
        text = text.strip().lower()
        if text in ("q", "qq", "0"):
            return QQ
        if text.startswith("gf:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field {text!r}; expected 'q' or 'gf:p'")


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def characteristic_of(value) -> int:
    if isinstance(value, GFElement):
        return value.p
    return 0


def check_same_field(a: Field, b: Field) -> Field:
    if a != b:
        raise FieldMismatchError(f"field mismatch: {a} vs {b}")
    return a
