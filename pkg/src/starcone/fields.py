"""Exact coefficient fields.

Two implementations behind the same small interface: a prime field with a
large default prime (fast path, elements are ints in [0, p)), and the
rationals (audit path, elements are Fraction).  Everything downstream is
written against this interface, so swapping the field reruns the whole
pipeline in exact rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for everything below 3.3 * 10^24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"field characteristic must be prime, got {self.p}")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def of_int(self, n: int):
        return n % self.p

    def of_fraction(self, num: int, den: int):
        d = den % self.p
        if d == 0:
            raise ZeroDivisionError(f"denominator {den} is not invertible mod {self.p}")
        return num * pow(d, self.p - 2, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def describe(self) -> dict:
        return {"prime": self.p}


@dataclass(frozen=True)
class RationalField:
    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def of_int(self, n: int):
        return Fraction(n)

    def of_fraction(self, num: int, den: int):
        if den == 0:
            raise ZeroDivisionError("denominator is zero")
        return Fraction(num, den)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def describe(self) -> dict:
        return {"rationals": True}


def field_from_description(desc: dict):
    if "prime" in desc:
        return PrimeField(int(desc["prime"]))
    if desc.get("rationals"):
        return RationalField()
    raise ValueError(f"unrecognized field description: {desc!r}")
