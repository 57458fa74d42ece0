"""Exact 2x2 matrices over Q viewed inside GL2(Q_p), named elements and subgroups."""
from __future__ import annotations

import re
from fractions import Fraction

from ..algebra.pexact import PExact, residue_mod, valuation

_INF = float("inf")


def _v(x: Fraction, p: int) -> float:
    return _INF if x == 0 else valuation(x, p)


class UnknownName(KeyError):
    """Unknown subgroup, generator set or alphabet name."""


class GMat:
    """Invertible matrix (a b; c d) with exact rational entries."""

    __slots__ = ("p", "a", "b", "c", "d", "_hash")

    def __init__(self, p: int, a, b, c, d):
        self.p = p
        self.a, self.b, self.c, self.d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("singular matrix")
        self._hash = None

    # -- structure ---------------------------------------------------------------
    @property
    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def entry(self, i: int, j: int) -> PExact:
        return PExact(self.p, self.entries[2 * i + j])

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    @property
    def det_valuation(self) -> int:
        return valuation(self.det, self.p)

    def min_valuation(self) -> float:
        return min(_v(x, self.p) for x in self.entries)

    def __mul__(self, other: "GMat") -> "GMat":
        if not isinstance(other, GMat):
            return NotImplemented
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return GMat(self.p, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def scaled(self, x) -> "GMat":
        x = Fraction(x)
        return GMat(self.p, self.a * x, self.b * x, self.c * x, self.d * x)

    def inv(self) -> "GMat":
        det = self.det
        return GMat(self.p, self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __pow__(self, n: int) -> "GMat":
        base = self if n >= 0 else self.inv()
        out = identity(self.p)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, GMat) and self.p == other.p and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p,) + self.entries)
        return self._hash

    def key(self) -> tuple:
        """Deterministic sort key."""
        return tuple((x.numerator, x.denominator) for x in self.entries)

    def __repr__(self) -> str:
        return "GMat[" + "; ".join(f"{x}" for x in self.entries) + "]"

    def literal(self) -> str:
        def one(x: Fraction) -> str:
            if x == 0:
                return "0@0"
            e = valuation(x, self.p)
            u = x / Fraction(self.p) ** e
            return f"{u}@{e}"
        a, b, c, d = self.entries
        return f"[[{one(a)}, {one(b)}],[{one(c)}, {one(d)}]]"

    def __reduce__(self):
        return (GMat, (self.p,) + self.entries)


# -- named elements --------------------------------------------------------------

def identity(p: int) -> GMat:
    return GMat(p, 1, 0, 0, 1)


def u(p: int, x) -> GMat:
    """Upper unipotent (1 x; 0 1)."""
    return GMat(p, 1, x, 0, 1)


def lower(p: int, x) -> GMat:
    """Lower unipotent (1 0; x 1), written l(x)."""
    return GMat(p, 1, 0, x, 1)


def diag(p: int, x, y) -> GMat:
    return GMat(p, x, 0, 0, y)


def torus(p: int, lam) -> GMat:
    """t(λ) = diag(λ, λ^{-1})."""
    lam = Fraction(lam)
    return GMat(p, lam, 0, 0, 1 / lam)


def alpha(p: int) -> GMat:
    return GMat(p, 1, 0, 0, p)


def beta(p: int) -> GMat:
    return GMat(p, 0, 1, p, 0)


def omega(p: int) -> GMat:
    return GMat(p, 0, 1, 1, 0)


def s_mat(p: int) -> GMat:
    return GMat(p, 0, -1, 1, 0)


def s_prime(p: int) -> GMat:
    """s' = (1 1; -1 0), an element of K_S outside the Iwahori subgroup."""
    return GMat(p, 1, 1, -1, 0)


def alpha0(p: int) -> GMat:
    return GMat(p, p, 0, 0, Fraction(1, p))


def beta0(p: int) -> GMat:
    """β₀ = s α₀ = (0 -1/p; p 0)."""
    return GMat(p, 0, Fraction(-1, p), p, 0)


def j_mat(p: int) -> GMat:
    """(0 p^{-1}; -p 0), the element exchanging the two sides of the tree."""
    return GMat(p, 0, Fraction(1, p), -p, 0)


# -- membership -----------------------------------------------------------------

def _integral(x: Fraction, p: int) -> bool:
    return x.denominator % p != 0


def _in_K(g: GMat) -> bool:
    p = g.p
    return all(_integral(x, p) for x in g.entries) and g.det_valuation == 0


def _kz_part(g: GMat) -> GMat | None:
    """g / p^{v(det)/2} when that lies in K, else None."""
    e = g.det_valuation
    if e % 2:
        return None
    h = g.scaled(Fraction(g.p) ** (-(e // 2)))
    return h if _in_K(h) else None


def membership(g: GMat, subgroup: str, m: int = 1) -> bool:
    """Exact subgroup predicates.

    Names: K, KZ, Z, I, I1, Km, KS, IS, IS1, KSm, B, BS, TS, U, SL2, GL2.
    ``m`` is the level for Km and KSm.
    """
    p = g.p
    a, b, c, d = g.entries
    det1 = g.det == 1
    if subgroup == "GL2":
        return True
    if subgroup == "SL2":
        return det1
    if subgroup == "K":
        return _in_K(g)
    if subgroup == "KZ":
        return _kz_part(g) is not None
    if subgroup == "Z":
        return b == 0 and c == 0 and a == d
    if subgroup in ("I", "IS"):
        ok = _in_K(g) and _v(c, p) >= 1
        return ok and (det1 if subgroup == "IS" else True)
    if subgroup in ("I1", "IS1"):
        ok = (_in_K(g) and _v(c, p) >= 1 and residue_mod(a, p, 1) == 1 and residue_mod(d, p, 1) == 1)
        return ok and (det1 if subgroup == "IS1" else True)
    if subgroup in ("Km", "KSm"):
        ok = (_in_K(g) and _v(a - 1, p) >= m and _v(b, p) >= m and _v(c, p) >= m and _v(d - 1, p) >= m)
        return ok and (det1 if subgroup == "KSm" else True)
    if subgroup == "KS":
        return _in_K(g) and det1
    if subgroup == "B":
        return c == 0
    if subgroup == "BS":
        return c == 0 and det1
    if subgroup == "TS":
        return b == 0 and c == 0 and det1
    if subgroup == "U":
        return c == 0 and a == 1 and d == 1
    raise UnknownName(subgroup)


# -- literal format ----------------------------------------------------------------

_ENTRY = re.compile(r"\s*(-?\d+(?:/\d+)?)\s*@\s*(-?\d+)\s*")


def parse_matrix(text: str, p: int) -> GMat:
    """Parse ``[[num@e, num@e],[num@e, num@e]]`` with entries num * p**e."""
    body = text.strip()
    if not (body.startswith("[[") and body.endswith("]]")):
        raise ValueError(f"bad matrix literal {text!r}")
    rows = body[2:-2].split("],")
    if len(rows) != 2:
        raise ValueError(f"bad matrix literal {text!r}")
    vals = []
    for row in rows:
        row = row.strip().lstrip("[")
        parts = row.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad matrix row {row!r}")
        for part in parts:
            m = _ENTRY.fullmatch(part)
            if not m:
                raise ValueError(f"bad matrix entry {part!r}")
            vals.append(Fraction(m.group(1)) * Fraction(p) ** int(m.group(2)))
    return GMat(p, *vals)
