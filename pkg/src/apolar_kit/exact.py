"""Exact scalars: the rationals and prime fields.

Internally every module works on *raw* canonical values (a ``Fraction`` for
the rationals, an ``int`` in ``[0, p)`` for a prime field) and asks the
:class:`FieldSpec` to combine them.  :class:`FieldElement` wraps a raw value
together with its field for the public, operator-overloaded API.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Raw = Union[int, Fraction]

P_LIMIT = 2**31


class FieldMismatch(ValueError):
    """Two operands live in different fields."""


class DivisionByZero(ZeroDivisionError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: ``p == 0`` means Q, otherwise F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0:
            if not (self.p < P_LIMIT and _is_prime(self.p)):
                raise ValueError(f"modulus {self.p} is not a prime below 2^31")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse the CLI spelling: ``q`` or ``f<p>`` (e.g. ``f101``)."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls(0)
        if t.startswith("f") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise ValueError(f"unknown field {text!r}; expected 'q' or 'f<p>'")

    @property
    def kind(self) -> str:
        return "Rationals" if self.p == 0 else "PrimeField"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return "q" if self.p == 0 else f"f{self.p}"

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    # -- raw arithmetic -------------------------------------------------

    @property
    def zero(self) -> Raw:
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self) -> Raw:
        return Fraction(1) if self.p == 0 else 1

    def coerce(self, x) -> Raw:
        """Canonical raw value of an int, Fraction, FieldElement or string."""
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise FieldMismatch(f"{x.spec} element used in {self}")
            return x.value
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def embed(self, m: int) -> Raw:
        """Image of the integer ``m`` under Z -> k."""
        return Fraction(m) if self.p == 0 else m % self.p

    def add(self, a: Raw, b: Raw) -> Raw:
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a: Raw, b: Raw) -> Raw:
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a: Raw, b: Raw) -> Raw:
        return a * b if self.p == 0 else (a * b) % self.p

    def neg(self, a: Raw) -> Raw:
        return -a if self.p == 0 else (-a) % self.p

    def inv(self, a: Raw) -> Raw:
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a if self.p == 0 else pow(a, -1, self.p)

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def power(self, a: Raw, k: int) -> Raw:
        return a**k if self.p == 0 else pow(a, k, self.p)

    def element(self, x) -> "FieldElement":
        return FieldElement(self.coerce(x), self)

    def format(self, a: Raw) -> str:
        return str(a)


@dataclass(frozen=True)
class FieldElement:
    """An exact scalar tagged with its field.

    Equality is representational; values are always stored canonically.
    """

    value: Raw
    spec: FieldSpec

    def _other(self, other) -> Raw:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.spec.coerce(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec.add(self.value, b), self.spec)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec.sub(self.value, b), self.spec)

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec.sub(b, self.value), self.spec)

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec.mul(self.value, b), self.spec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec.div(self.value, b), self.spec)

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec.div(b, self.value), self.spec)

    def __neg__(self):
        return FieldElement(self.spec.neg(self.value), self.spec)

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec.inv(self.value), self.spec)

    def is_zero(self) -> bool:
        return not self.value

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.spec.format(self.value)


def integer_embed(m: int, spec: FieldSpec) -> FieldElement:
    return FieldElement(spec.embed(m), spec)


QQ = FieldSpec(0)
