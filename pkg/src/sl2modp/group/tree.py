"""The Bruhat-Tits tree of PGL2(Q_p) with canonical vertex representatives.

Every homothety class of lattices contains exactly one lattice spanned by the
columns of (p^a b; 0 1) with b in Z[1/p] and 0 <= b < p^a.  The pair (a, b)
is the canonical form of the vertex and the matrix is its representative.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..algebra.pexact import mod_zp, valuation
from .gmat import GMat, _kz_part

_INF = float("inf")


@dataclass(frozen=True, order=True)
class Vertex:
    """Canonical vertex: the class of the lattice with basis columns (p^a, 0), (b, 1)."""

    p: int
    a: int
    b: Fraction

    def rep(self) -> GMat:
        return GMat(self.p, Fraction(self.p) ** self.a, self.b, 0, 1)

    def digits(self) -> tuple[int, list[int]]:
        """(lowest exponent, base-p digits of b from that exponent upward)."""
        if self.b == 0:
            return (0, [])
        e = valuation(self.b, self.p)
        n = self.b / Fraction(self.p) ** e
        n = int(n)
        ds = []
        while n:
            ds.append(n % self.p)
            n //= self.p
        return (e, ds)

    @property
    def distance(self) -> int:
        vb = _INF if self.b == 0 else valuation(self.b, self.p)
        m = min(self.a, vb, 0)
        return int(self.a - 2 * m)

    @property
    def parity(self) -> str:
        return "even" if self.distance % 2 == 0 else "odd"

    def text(self) -> str:
        e, ds = self.digits()
        return f"{self.a} {e}:" + ",".join(map(str, ds))

    def sort_key(self) -> tuple:
        return (self.distance, self.a, self.b)


def origin(p: int) -> Vertex:
    return Vertex(p, 0, Fraction(0))


def canonical(g: GMat) -> Vertex:
    """Canonical vertex of the lattice class spanned by the columns of g."""
    p = g.p
    c, d = g.c, g.d
    vc = _INF if c == 0 else valuation(c, p)
    vd = _INF if d == 0 else valuation(d, p)
    if vd <= vc:
        top, bot = g.b, d
    else:
        top, bot = g.a, c
    a = valuation(g.det, p) - 2 * valuation(bot, p)
    b = mod_zp(top / bot, p, a)
    return Vertex(p, a, b)


def vertex_of(g: GMat) -> tuple[Vertex, int, str]:
    """(canonical vertex, distance to the origin, parity)."""
    v = canonical(g)
    return v, v.distance, v.parity


def kz_factor(g: GMat) -> tuple[GMat, GMat]:
    """g = c k with c the canonical representative and k in KZ."""
    c = canonical(g).rep()
    k = c.inv() * g
    if _kz_part(k) is None:
        raise AssertionError(f"kz_factor produced k outside KZ for {g}")
    return c, k


def distance(v: Vertex, w: Vertex) -> int:
    """Tree distance via elementary divisors of rep(v)^{-1} rep(w)."""
    h = v.rep().inv() * w.rep()
    return int(h.det_valuation - 2 * h.min_valuation())


@lru_cache(maxsize=None)
def _step_mats(p: int) -> tuple[GMat, ...]:
    return tuple([GMat(p, p, lam, 0, 1) for lam in range(p)] + [GMat(p, 1, 0, 0, p)])


def neighbors(v: Vertex) -> list[Vertex]:
    """The p+1 vertices adjacent to v."""
    c = v.rep()
    return [canonical(c * m) for m in _step_mats(v.p)]


def ball(p: int, n: int) -> list[Vertex]:
    """Vertices at distance <= n from the origin, ordered by (distance, a, b)."""
    return sorted(_ball(p, n), key=Vertex.sort_key)


@lru_cache(maxsize=32)
def _ball(p: int, n: int) -> frozenset:
    o = origin(p)
    seen = {o}
    frontier = deque([o])
    while frontier:
        v = frontier.popleft()
        if v.distance >= n:
            continue
        for w in neighbors(v):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return frozenset(seen)


def ball_size(p: int, n: int) -> int:
    return 1 + (p + 1) * (p**n - 1) // (p - 1)
