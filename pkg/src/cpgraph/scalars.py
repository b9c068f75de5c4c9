"""Coefficient fields: exact rationals (default) and prime fields GF(p)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError, PreconditionError

_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str | int) -> Fraction:
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"not a rational: {text!r}")
    m = _RATIONAL.match(text)
    if not m:
        raise ParseError(f"not a rational: {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True, slots=True)
class GF:
    """Element of the prime field of order ``p``."""

    value: int
    p: int

    def _coerce(self, other: object) -> "GF":
        if isinstance(other, GF):
            if other.p != self.p:
                raise PreconditionError("mixing different prime fields")
            return other
        if isinstance(other, int):
            return GF(other % self.p, self.p)
        if isinstance(other, Fraction):
            return GF(other.numerator % self.p, self.p) / GF(other.denominator % self.p, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else GF((self.value + o.value) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else GF((self.value - o.value) % self.p, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else GF((o.value - self.value) % self.p, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else GF(self.value * o.value % self.p, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.value == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return GF(self.value * pow(o.value, -1, self.p) % self.p, self.p)

    def __neg__(self):
        return GF(-self.value % self.p, self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GF):
            return self.value == other.value and self.p == other.p
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __str__(self) -> str:
        return str(self.value)


Scalar = Union[Fraction, GF]


class Field:
    """The coefficient field; ``Field()`` is the rationals, ``Field(p)`` is GF(p)."""

    def __init__(self, characteristic: int = 0):
        if characteristic and not _is_prime(characteristic):
            raise PreconditionError(f"{characteristic} is not prime")
        self.characteristic = characteristic

    def __call__(self, value: object) -> Scalar:
        if isinstance(value, str):
            value = parse_rational(value)
        if self.characteristic == 0:
            if isinstance(value, GF):
                raise PreconditionError("cannot embed GF(p) into the rationals")
            return Fraction(value)
        p = self.characteristic
        if isinstance(value, GF):
            if value.p != p:
                raise PreconditionError("mixing different prime fields")
            return value
        q = Fraction(value)
        if q.denominator % p == 0:
            raise PreconditionError(f"denominator {q.denominator} vanishes in GF({p})")
        return GF(q.numerator % p, p) / GF(q.denominator % p, p)

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def format(self, c: Scalar) -> str:
        return format_rational(c) if isinstance(c, Fraction) else str(c)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("Field", self.characteristic))

    def __repr__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field()
