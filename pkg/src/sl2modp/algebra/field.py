"""Finite fields F_{p^k} with elements encoded as integers.

An element c_0 + c_1 t + ... + c_{k-1} t^{k-1} (coefficients in 0..p-1) is
encoded as the integer sum(c_i * p**i).  The prime subfield F_p is therefore
encoded by 0..p-1 and arithmetic on it agrees with arithmetic mod p.

Internal code works on raw integer encodings through a :class:`GF` context.
:class:`Fq` is a small value type with operator overloading for public use.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from sympy import isprime


class ContextMismatch(ValueError):
    """Raised when elements from different field contexts are combined."""


def _poly_mod_is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Irreducibility of the monic polynomial with low coefficients ``coeffs``."""
    k = len(coeffs)
    if k == 1:
        return True
    # brute force: no roots in any extension of degree <= k/2 means testing
    # divisibility by every monic polynomial of degree 1..k//2
    full = list(coeffs) + [1]
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            div = list(low) + [1]
            if not _poly_rem(full, div, p):
                return False
    return True


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Low coefficients (c_0..c_{k-1}) of the least monic irreducible of degree k.

    Polynomials are ranked by the integer encoding sum(c_i p^i) of their low
    coefficients, so the choice is deterministic.
    """
    if k == 1:
        return (0,)
    for code in range(p**k):
        coeffs = tuple((code // p**i) % p for i in range(k))
        if coeffs[0] == 0:
            continue
        if _poly_mod_is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


class GF:
    """Arithmetic context for F_{p^k} on integer encodings."""

    def __init__(self, p: int, k: int = 1):
        if p < 3 or not isprime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = least_irreducible(p, k)
        if k > 1:
            self._build_tables()

    # -- table construction -------------------------------------------------
    def _digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p**i) % p for i in range(self.k)]

    def _encode(self, ds: list[int]) -> int:
        p = self.p
        return sum(d * p**i for i, d in enumerate(ds))

    def _slow_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce using t^k = -(c_0 + ... + c_{k-1} t^{k-1})
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for i, m in enumerate(self.modulus):
                    prod[deg - k + i] = (prod[deg - k + i] - c * m) % p
        return self._encode(prod[:k])

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        self._add = [[self._encode([(x + y) % p for x, y in zip(self._digits(a), self._digits(b))])
                      for b in range(q)] for a in range(q)]
        self._neg = [self._encode([(-x) % p for x in self._digits(a)]) for a in range(q)]
        # find a generator of the multiplicative group
        order = q - 1
        factors = [f for f in range(2, order + 1) if order % f == 0 and isprime(f)]
        for g in range(2, q):
            if all(self._slow_pow(g, order // f) != 1 for f in factors):
                break
        else:  # q == 3 style degenerate cases never happen for k > 1
            raise AssertionError("no generator found")
        self.generator = g
        exp = [1] * order
        for i in range(1, order):
            exp[i] = self._slow_mul(exp[i - 1], g)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp + exp
        self._log = log

    def _slow_pow(self, a: int, n: int) -> int:
        r = 1
        base = a
        while n:
            if n & 1:
                r = self._slow_mul(r, base)
            base = self._slow_mul(base, base)
            n >>= 1
        return r

    # -- arithmetic ---------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if n == 0 else 0
        if self.k == 1:
            return pow(a, n % (self.p - 1), self.p)
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime subfield."""
        return n % self.p

    def sqrt(self, a: int) -> int | None:
        """Smallest encoding s with s*s == a, or None when a is a non-square."""
        if a == 0:
            return 0
        for s in range(1, self.q):
            if self.mul(s, s) == a:
                return s
        return None

    def elements(self) -> range:
        return range(self.q)

    def in_prime_field(self, a: int) -> bool:
        return 0 <= a < self.p

    def primitive_root_mod_p(self) -> int:
        """Least generator of (Z/p)^x."""
        return primitive_root(self.p)

    # -- sparse vector kernels ------------------------------------------------
    def axpy(self, dst: dict[int, int], c: int, src: dict[int, int]) -> None:
        """In place ``dst += c * src`` dropping zero entries."""
        if c == 0:
            return
        if self.k == 1:
            p = self.p
            for i, v in src.items():
                w = (dst.get(i, 0) + c * v) % p
                if w:
                    dst[i] = w
                else:
                    dst.pop(i, None)
            return
        add, exp, log = self._add, self._exp, self._log
        lc = log[c]
        for i, v in src.items():
            w = add[dst.get(i, 0)][exp[lc + log[v]]]
            if w:
                dst[i] = w
            else:
                dst.pop(i, None)

    def scale(self, c: int, src: dict[int, int]) -> dict[int, int]:
        if c == 0:
            return {}
        return {i: self.mul(c, v) for i, v in src.items()}

    def __repr__(self) -> str:
        return f"GF({self.p}, {self.k})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __reduce__(self):
        return (field, (self.p, self.k))


@lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> GF:
    """Shared field context for (p, k)."""
    return GF(p, k)


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    order = p - 1
    factors = [f for f in range(2, order + 1) if order % f == 0 and isprime(f)]
    for g in range(2, p):
        if all(pow(g, order // f, p) != 1 for f in factors):
            return g
    return 1  # p == 2 is excluded elsewhere


@dataclass(frozen=True)
class Fq:
    """An element of F_{p^k} tied to its field context."""

    ctx: GF
    value: int

    @classmethod
    def of(cls, p: int, k: int, value: int | list[int] | tuple[int, ...]) -> "Fq":
        ctx = field(p, k)
        if isinstance(value, (list, tuple)):
            if len(value) != k or any(not 0 <= c < p for c in value):
                raise ValueError("coefficient list must have k entries in 0..p-1")
            value = ctx._encode(list(value))
        if not 0 <= value < ctx.q:
            value = ctx.from_int(value)
        return cls(ctx, value)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.ctx._digits(self.value))

    def _check(self, other: "Fq") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def _lift(self, other: object) -> "Fq":
        if isinstance(other, int):
            return Fq(self.ctx, self.ctx.from_int(other))
        if isinstance(other, Fq):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return Fq(self.ctx, self.ctx.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return Fq(self.ctx, self.ctx.sub(self.value, o.value))

    def __rsub__(self, other):
        o = self._lift(other)
        return Fq(self.ctx, self.ctx.sub(o.value, self.value))

    def __neg__(self):
        return Fq(self.ctx, self.ctx.neg(self.value))

    def __mul__(self, other):
        o = self._lift(other)
        return Fq(self.ctx, self.ctx.mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return Fq(self.ctx, self.ctx.div(self.value, o.value))

    def __pow__(self, n: int):
        return Fq(self.ctx, self.ctx.pow(self.value, n))

    def inv(self) -> "Fq":
        return Fq(self.ctx, self.ctx.inv(self.value))

    def sqrt(self) -> "Fq | None":
        s = self.ctx.sqrt(self.value)
        return None if s is None else Fq(self.ctx, s)

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"Fq({self.ctx.p}^{self.ctx.k}: {list(self.coeffs)})"


def fq_ops(a: Fq, b: Fq | None, op: str, n: int | None = None) -> Fq:
    """Dispatch helper mirroring the operation table: add, mul, inv, pow."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a**n
    raise ValueError(f"unknown op {op!r}")


def fq_sqrt(a: Fq) -> Fq | None:
    return a.sqrt()
