"""Exact coefficient fields: the rationals and prime fields GF(p).

Rational elements are Python ints or Fractions (ints whenever the value is
integral); prime-field elements are ints in ``range(p)``.  No floats are
ever accepted.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import InputError


def _is_prime(n: int) -> bool:
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


class Field:
    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if not isinstance(characteristic, int) or isinstance(characteristic, bool):
            raise TypeError("characteristic must be an int")
        if characteristic != 0 and not _is_prime(characteristic):
            raise InputError(f"characteristic must be 0 or prime, got {characteristic}")
        self.characteristic = characteristic

    def __repr__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("Field", self.characteristic))

    def __call__(self, value):
        """Coerce an int, Fraction or numeric string into the field."""
        p = self.characteristic
        if isinstance(value, bool) or isinstance(value, float):
            raise TypeError(f"cannot coerce {value!r} into {self!r}")
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, int):
            return value % p if p else value
        if isinstance(value, Fraction):
            if p:
                if value.denominator % p == 0:
                    raise InputError(f"{value} has no image in {self!r}")
                return value.numerator * pow(value.denominator, -1, p) % p
            return value.numerator if value.denominator == 1 else value
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def normalize(self, a):
        p = self.characteristic
        if p:
            return a % p
        if type(a) is Fraction and a.denominator == 1:
            return a.numerator
        return a

    def inv(self, a):
        p = self.characteristic
        if p:
            a %= p
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(a, -1, p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        r = 1 / Fraction(a)
        return r.numerator if r.denominator == 1 else r

    def div(self, a, b):
        return self.normalize(a * self.inv(b))

    def format(self, a) -> str:
        """Text form; prime-field values print in the symmetric range."""
        p = self.characteristic
        if p:
            a %= p
            if a > p // 2:
                a -= p
            return str(a)
        return str(a)


QQ = Field(0)
