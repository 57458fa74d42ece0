"""Elements of c-ind_{KZ}^G(σ_r) as vertex-supported weight vectors.

An element is stored as a map v -> w_v meaning the sum of [c_v, w_v] where c_v
is the canonical representative of the vertex v.  The rule [g k, w] = [g, σ(k) w]
is applied every time a new representative appears.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from ..algebra.field import GF, field
from ..group.gmat import GMat, alpha, beta, identity
from ..group.tree import Vertex, canonical, kz_factor
from ..weights import kz_residue, sigma_apply


@dataclass(frozen=True)
class CIndElt:
    p: int
    r: int
    k: int
    support: Mapping[Vertex, tuple[int, ...]]

    def __post_init__(self) -> None:
        clean = {v: tuple(w) for v, w in self.support.items() if any(w)}
        object.__setattr__(self, "support", clean)

    @property
    def F(self) -> GF:
        return field(self.p, self.k)

    @classmethod
    def zero(cls, p: int, r: int, k: int = 2) -> "CIndElt":
        return cls(p, r, k, {})

    def is_zero(self) -> bool:
        return not self.support

    def _same(self, other: "CIndElt") -> None:
        if (self.p, self.r) != (other.p, other.r):
            raise ValueError("elements of different compact inductions")

    def __add__(self, other: "CIndElt") -> "CIndElt":
        return self.combine(other, 1)

    def __sub__(self, other: "CIndElt") -> "CIndElt":
        return self.combine(other, self.F.neg(1))

    def combine(self, other: "CIndElt", c: int) -> "CIndElt":
        """self + c * other."""
        self._same(other)
        F = self.F
        out = dict(self.support)
        for v, w in other.support.items():
            cur = out.get(v)
            if cur is None:
                out[v] = tuple(F.mul(c, x) for x in w)
            else:
                out[v] = tuple(F.add(a, F.mul(c, b)) for a, b in zip(cur, w))
        return CIndElt(self.p, self.r, self.k, out)

    def scale(self, c: int) -> "CIndElt":
        F = self.F
        return CIndElt(self.p, self.r, self.k, {v: tuple(F.mul(c, x) for x in w) for v, w in self.support.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, CIndElt) and (self.p, self.r) == (other.p, other.r)
                and self.support == other.support)

    def __hash__(self) -> int:
        return hash((self.p, self.r, frozenset(self.support.items())))

    def radius(self) -> int:
        """Largest distance to the origin in the support (-1 for zero)."""
        return max((v.distance for v in self.support), default=-1)

    def parity_split(self) -> tuple["CIndElt", "CIndElt"]:
        even = {v: w for v, w in self.support.items() if v.distance % 2 == 0}
        odd = {v: w for v, w in self.support.items() if v.distance % 2 == 1}
        return CIndElt(self.p, self.r, self.k, even), CIndElt(self.p, self.r, self.k, odd)

    def vertices(self) -> list[Vertex]:
        return sorted(self.support, key=Vertex.sort_key)

    def text(self) -> str:
        """One line per support vertex: ``a e:digits : c_0 ... c_r``."""
        lines = []
        for v in self.vertices():
            coords = " ".join(str(c) for c in self.support[v])
            lines.append(f"{v.text()} : {coords}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"CIndElt(p={self.p}, r={self.r}, {len(self.support)} vertices)"


def elementary(g: GMat, w: Iterable[int], r: int, k: int = 2) -> CIndElt:
    """[g, w] renormalized to the canonical representative of g x0."""
    p = g.p
    w = tuple(w)
    if len(w) != r + 1:
        raise ValueError("weight vector has the wrong length")
    c, kk = kz_factor(g)
    vec = sigma_apply(p, r, kz_residue(kk), w, field(p, k))
    return CIndElt(p, r, k, {canonical(c): vec})


def x_r(r: int) -> tuple[int, ...]:
    return tuple([1] + [0] * r)


def y_r(r: int) -> tuple[int, ...]:
    return tuple([0] * r + [1])


def v_inf(p: int, r: int, k: int = 2) -> CIndElt:
    """v_{r,∞} = [I2, x^r]."""
    return elementary(identity(p), x_r(r), r, k)


def v_zero(p: int, r: int, k: int = 2) -> CIndElt:
    """v_{r,0} = [β, x^r] = [α, y^r]."""
    return elementary(beta(p), x_r(r), r, k)


def v_lambda(p: int, r: int, lam: int, k: int = 2) -> CIndElt:
    """v_{r,0} + λ v_{r,∞}."""
    return v_zero(p, r, k).combine(v_inf(p, r, k), lam)


def act(g: GMat, f: CIndElt) -> CIndElt:
    """Left action g·[c_v, w] = [g c_v, w], renormalized."""
    F = f.F
    out: dict[Vertex, tuple[int, ...]] = {}
    for v, w in f.support.items():
        c, kk = kz_factor(g * v.rep())
        vec = sigma_apply(f.p, f.r, kz_residue(kk), w, F)
        key = canonical(c)
        cur = out.get(key)
        out[key] = vec if cur is None else tuple(F.add(a, b) for a, b in zip(cur, vec))
    return CIndElt(f.p, f.r, f.k, out)


def parity_split(f: CIndElt) -> tuple[CIndElt, CIndElt]:
    return f.parity_split()


__all__ = ["CIndElt", "elementary", "act", "parity_split", "v_inf", "v_zero", "v_lambda", "x_r", "y_r"]
