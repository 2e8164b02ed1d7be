"""Exact coefficient fields.

Scalars are plain Python values: ``int`` residues in ``[0, p)`` for prime
fields and :class:`fractions.Fraction` for the rationals.  A :class:`Field`
knows how to bring arbitrary integers/fractions into canonical form and how
to invert.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]

PRIME_CAP = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Either ``GF(p)`` (``p`` prime, below 2^31) or ``QQ`` (``p == 0``)."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0:
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
            if self.p >= PRIME_CAP:
                raise ValueError(f"prime {self.p} exceeds 2^31 cap")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_prime_field(self) -> bool:
        return self.p != 0

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction or numeric string into canonical form."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p:
            if isinstance(value, Fraction):
                num = value.numerator % self.p
                den = value.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"{value} has no image in {self}")
                return num * pow(den, -1, self.p) % self.p
            return int(value) % self.p
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    def zero(self) -> Scalar:
        return 0 if self.p else Fraction(0)

    def one(self) -> Scalar:
        return 1 if self.p else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, a: Scalar) -> str:
        return str(a)

    def __str__(self) -> str:
        return f"GF({self.p})" if self.p else "QQ"

    def __repr__(self) -> str:
        return f"Field({self})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


_FIELD_RE = re.compile(r"^\s*(?:QQ|GF\(\s*(\d+)\s*\))\s*$")


def parse_field(text: str) -> Field:
    """Parse ``"QQ"`` or ``"GF(<p>)"``."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ValueError(f"unknown field {text!r}; expected QQ or GF(p)")
    return Field(int(m.group(1))) if m.group(1) else QQ
