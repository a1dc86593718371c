"""Exact scalar arithmetic over prime fields and the rationals.

Elements are immutable and kept in canonical form: residues in
``[0, p-1]`` for a prime field, fractions in lowest terms with a
positive denominator for the rationals.  Arithmetic never rounds and
never silently mixes fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, Union


class FieldMismatchError(ValueError):
    """Two elements from different fields were combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d <= isqrt(n):
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field of integers modulo a prime ``p``."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"field order must be prime, got {self.p!r}")

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, value: Union[int, "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value} does not belong to {self}")
            return value
        return FieldElement(int(value) % self.p, self)

    def zero(self) -> "FieldElement":
        return self(0)

    def one(self) -> "FieldElement":
        return self(1)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.p):
            yield self(v)

    def __str__(self) -> str:
        return f"F{self.p}"


@dataclass(frozen=True)
class RationalField:
    """The field of rational numbers with arbitrary-precision arithmetic."""

    @property
    def characteristic(self) -> int:
        return 0

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value} does not belong to {self}")
            return value
        return FieldElement(Fraction(value), self)

    def zero(self) -> "FieldElement":
        return self(0)

    def one(self) -> "FieldElement":
        return self(1)

    def __str__(self) -> str:
        return "Q"


Field = Union[PrimeField, RationalField]


@dataclass(frozen=True, slots=True)
class FieldElement:
    """A scalar in canonical form together with the field it lives in."""

    value: Union[int, Fraction]
    field: Field

    def __post_init__(self) -> None:
        # Canonicalize on construction so equality and hashing are exact.
        if isinstance(self.field, PrimeField):
            object.__setattr__(self, "value", int(self.value) % self.field.p)
        else:
            object.__setattr__(self, "value", Fraction(self.value))

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"cannot combine {self} ({self.field}) with {other} ({other.field})"
                )
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field(self.value - other.value)

    def __rsub__(self, other) -> "FieldElement":
        return self.field(other) - self

    def __mul__(self, other) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field(self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return self.field(-self.value)

    def inv(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if isinstance(self.field, PrimeField):
            return self.field(pow(self.value, -1, self.field.p))
        return self.field(1 / self.value)

    def __truediv__(self, other) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> "FieldElement":
        return self.field(other) / self

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"{self.value} in {self.field}"


def GF(p: int) -> PrimeField:
    """Shorthand constructor for a prime field."""
    return PrimeField(p)


QQ = RationalField()
