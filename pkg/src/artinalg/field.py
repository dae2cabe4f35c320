"""Exact scalar arithmetic over Q and prime fields F_p.

Elements of Q are `fractions.Fraction`; elements of F_p are plain ints in
[0, p).  A `FieldSpec` carries the arithmetic so that matrix code never has
to branch on the field kind.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldMismatchError(ValueError):
    """Raised when values from different fields are combined."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: Q (characteristic 0) or F_p (p an odd-sized prime).

    Prime fields are restricted to word-sized primes; randomized module
    decomposition never needs more.
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0:
            if not _is_prime(p):
                raise ValueError(f"characteristic must be 0 or prime, got {p}")
            if p >= 2**31:
                raise ValueError(f"prime too large: {p}")

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    # -- element constructors ------------------------------------------
    def zero(self):
        return 0 if self.is_prime_field else Fraction(0)

    def one(self):
        return 1 if self.is_prime_field else Fraction(1)

    def of(self, n: int):
        """Canonical image of the integer n."""
        if self.is_prime_field:
            return n % self.characteristic
        return Fraction(n)

    # -- arithmetic ----------------------------------------------------
    def add(self, a, b):
        if self.is_prime_field:
            return (a + b) % self.characteristic
        return a + b

    def sub(self, a, b):
        if self.is_prime_field:
            return (a - b) % self.characteristic
        return a - b

    def mul(self, a, b):
        if self.is_prime_field:
            return (a * b) % self.characteristic
        return a * b

    def neg(self, a):
        if self.is_prime_field:
            return (-a) % self.characteristic
        return -a

    def inv(self, a):
        if self.is_prime_field:
            if a % self.characteristic == 0:
                raise ZeroDivisionError("inverse of zero in F_p")
            return pow(a, -1, self.characteristic)
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        if self.is_prime_field:
            return a % self.characteristic == 0
        return a == 0

    def __str__(self) -> str:
        return "Q" if not self.is_prime_field else f"F_{self.characteristic}"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)
