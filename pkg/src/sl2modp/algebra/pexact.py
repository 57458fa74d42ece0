"""Exact p-adic scalars on rational numbers.

A nonzero rational x is written x = u * p**e with u a fraction whose numerator
and denominator are prime to p.  Such elements cover Z[1/p] and also the
p-adic units with non-p-power denominators (for example (1+p)^{-1}), which the
group layer needs for torus elements like diag(1+p, (1+p)^{-1}).
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


def valuation(x: Fraction | int, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ZeroDivisionError("valuation of zero")
    n, d = x.numerator, x.denominator
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_part(x: Fraction | int, p: int) -> Fraction:
    """u with x = u * p**valuation(x)."""
    x = Fraction(x)
    return x / Fraction(p) ** valuation(x, p)


def unit_mod(x: Fraction | int, p: int, m: int = 1) -> int:
    """Unit part of x reduced modulo p**m, as an integer in 0..p**m - 1."""
    u = unit_part(x, p)
    mod = p**m
    return u.numerator * pow(u.denominator, -1, mod) % mod


def residue_mod(x: Fraction | int, p: int, m: int) -> int:
    """Image of an integral rational x in Z/p**m."""
    x = Fraction(x)
    mod = p**m
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not p-integral")
    return x.numerator * pow(x.denominator, -1, mod) % mod


def mod_zp(x: Fraction | int, p: int, a: int) -> Fraction:
    """Canonical representative in Z[1/p] ∩ [0, p**a) of x modulo p**a Z_p."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    e = valuation(x, p)
    if e >= a:
        return Fraction(0)
    u = x / Fraction(p) ** e
    n = u.numerator * pow(u.denominator, -1, p ** (a - e)) % p ** (a - e)
    return Fraction(n) * Fraction(p) ** e


@total_ordering
class PExact:
    """Exact nonzero-or-zero rational with its p-adic valuation data."""

    __slots__ = ("p", "x")

    def __init__(self, p: int, x: Fraction | int):
        self.p = p
        self.x = Fraction(x)

    @classmethod
    def from_parts(cls, p: int, num: int | Fraction, e: int) -> "PExact":
        return cls(p, Fraction(num) * Fraction(p) ** e)

    @property
    def num(self) -> Fraction:
        """Unit part u (numerator and denominator prime to p)."""
        return Fraction(0) if self.x == 0 else unit_part(self.x, self.p)

    @property
    def e(self) -> int:
        return 0 if self.x == 0 else valuation(self.x, self.p)

    def valuation(self) -> int:
        return valuation(self.x, self.p)

    def unit_mod(self, m: int = 1) -> int:
        if self.x == 0:
            raise ZeroDivisionError("unit part of zero")
        return unit_mod(self.x, self.p, m)

    def _coerce(self, other) -> Fraction:
        if isinstance(other, PExact):
            if other.p != self.p:
                raise ValueError("mixing different primes")
            return other.x
        return Fraction(other)

    def __add__(self, other):
        return PExact(self.p, self.x + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return PExact(self.p, self.x - self._coerce(other))

    def __rsub__(self, other):
        return PExact(self.p, self._coerce(other) - self.x)

    def __mul__(self, other):
        return PExact(self.p, self.x * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return PExact(self.p, -self.x)

    def inv(self) -> "PExact":
        if self.x == 0:
            raise ZeroDivisionError("inverse of zero")
        return PExact(self.p, 1 / self.x)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o == 0:
            raise ZeroDivisionError("division by zero")
        return PExact(self.p, self.x / o)

    def __eq__(self, other) -> bool:
        try:
            return self.x == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other) -> bool:
        return self.x < self._coerce(other)

    def __hash__(self) -> int:
        return hash((self.p, self.x))

    def __bool__(self) -> bool:
        return self.x != 0

    def __repr__(self) -> str:
        if self.x == 0:
            return "0"
        return f"{self.num}@{self.e}"


def pexact_ops(x: PExact, y: PExact | None, op: str, m: int = 1):
    """Dispatch helper: add, mul, inv, valuation, unit_mod."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inv()
    if op == "valuation":
        return x.valuation()
    if op == "unit_mod":
        return x.unit_mod(m)
    raise ValueError(f"unknown op {op!r}")
