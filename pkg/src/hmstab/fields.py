"""Coefficient fields: the rationals and prime fields F_p.

Elements of QQ are ``fractions.Fraction``; elements of F_p are Python ints
in ``range(p)``.  A single small class covers both so that polynomial code
can stay field-agnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, int]

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """QQ when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self) -> None:
        if self.p and (not is_prime(self.p) or self.p >= MAX_PRIME):
            raise ValueError(f"field characteristic must be a prime below 2^31, got {self.p}")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def norm(self, x: Scalar) -> Scalar:
        return x % self.p if self.p else x

    def inv(self, x: Scalar) -> Scalar:
        if x == 0:
            raise ZeroDivisionError("division by zero in field")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a * self.inv(b))

    def format(self, x: Scalar) -> str:
        return str(x)

    @property
    def descriptor(self) -> str:
        return "q" if self.p == 0 else f"fp:{self.p}"

    @classmethod
    def from_descriptor(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("q", "qq"):
            return cls(0)
        if text.startswith("fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise ValueError(f"bad field descriptor {text!r}") from None
            return cls(p)
        raise ValueError(f"bad field descriptor {text!r} (expected 'q' or 'fp:<prime>')")

    def __repr__(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
