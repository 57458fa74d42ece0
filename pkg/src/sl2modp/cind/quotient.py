"""Truncated cokernels of T_r - λ and bounded preimage search.

Coordinates of c-ind restricted to a ball B_N are indexed vertex by vertex,
outer vertices first.  Since elimination picks the smallest index as pivot,
every stored image vector with a pivot inside W_n has no entry outside W_n,
so those vectors form an echelon basis of (T - λ)(W_{n+R-1}) ∩ W_n directly.
"""
from __future__ import annotations

from functools import lru_cache

from ..algebra.field import GF, field
from ..algebra.sparse import Echelon, SparseMat, SparseVec
from ..group.tree import Vertex, ball
from .element import CIndElt
from .hecke import hecke_columns


class SupportOverflow(ValueError):
    """An element reaches beyond the truncation radius."""


class Coordinates:
    """Outer-first coordinates of c-ind(σ_r) restricted to the ball B_N."""

    def __init__(self, p: int, r: int, N: int):
        self.p, self.r, self.N = p, r, N
        verts = sorted(ball(p, N), key=lambda v: (-v.distance, v.a, v.b))
        self.vertices = verts
        self.index = {v: j for j, v in enumerate(verts)}
        self.dim = len(verts) * (r + 1)

    def first_index_within(self, n: int) -> int:
        """Smallest coordinate belonging to a vertex at distance <= n."""
        for j, v in enumerate(self.vertices):
            if v.distance <= n:
                return j * (self.r + 1)
        return self.dim

    def vec(self, f: CIndElt) -> dict[int, int]:
        out = {}
        d = self.r + 1
        for v, w in f.support.items():
            j = self.index.get(v)
            if j is None:
                raise SupportOverflow(f"vertex at distance {v.distance} outside B_{self.N}")
            for i, c in enumerate(w):
                if c:
                    out[j * d + i] = c
        return out

    def elt(self, vec: dict[int, int], k: int) -> CIndElt:
        d = self.r + 1
        sup: dict[Vertex, list[int]] = {}
        for idx, c in vec.items():
            j, i = divmod(idx, d)
            sup.setdefault(self.vertices[j], [0] * d)[i] = c
        return CIndElt(self.p, self.r, k, {v: tuple(w) for v, w in sup.items()})


def _image_columns(coords: Coordinates, radius: int, lam: int, k: int):
    """(tag, vector) for (T - λ) e_{v,i}, v in B_radius, outer vertices first."""
    F = field(coords.p, k)
    d = coords.r + 1
    for v in coords.vertices:
        if v.distance > radius:
            continue
        cols = hecke_columns(v, coords.r, k)
        j = coords.index[v]
        for i, col in enumerate(cols):
            vec = coords.vec(col)
            if lam:
                idx = j * d + i
                vec[idx] = F.sub(vec.get(idx, 0), lam)
                if not vec[idx]:
                    del vec[idx]
            yield (v, i), vec


def _work_field(p: int, k: int, lam: int) -> GF:
    """Elimination field: F_p whenever λ lies in the prime field."""
    return field(p, 1) if lam < p else field(p, k)


class QuotientCtx:
    """W_n modulo V = (T - λ)(W_{n+R-1}) ∩ W_n, with a cached echelon basis of V."""

    def __init__(self, p: int, r: int, lam: int = 0, n: int = 4, R: int = 1, k: int = 2,
                 pivots: dict[int, dict[int, int]] | None = None):
        if R < 1:
            raise ValueError("slack R must be >= 1 so that preimages exist")
        self.p, self.r, self.lam, self.n, self.R, self.k = p, r, lam, n, R, k
        self.coords = Coordinates(p, r, n + R)
        self.start = self.coords.first_index_within(n)
        Fw = _work_field(p, k, lam)
        self.F = field(p, k)
        if pivots is None:
            ech = Echelon(Fw)
            for _, vec in _image_columns(self.coords, n + R - 1, lam, k):
                ech.add(vec)
            pivots = {m: row for m, row in ech.pivots.items() if m >= self.start}
        self.pivots = pivots
        self._ech = Echelon(Fw)
        self._ech.pivots = pivots
        self._ech_full = Echelon(self.F)
        self._ech_full.pivots = pivots
        self.free = [i for i in range(self.start, self.coords.dim) if i not in pivots]
        self.free_index = {c: j for j, c in enumerate(self.free)}

    @property
    def key(self) -> tuple:
        return (self.p, self.k, self.r, self.lam, self.n, self.R)

    @property
    def dim(self) -> int:
        """Dimension of the truncated quotient."""
        return len(self.free)

    @property
    def image_dim(self) -> int:
        return len(self.pivots)

    def residual(self, f: CIndElt) -> dict[int, int]:
        if f.radius() > self.n:
            raise SupportOverflow(f"support radius {f.radius()} exceeds depth {self.n}")
        vec = self.coords.vec(f)
        prime = all(c < self.p for c in vec.values())
        ech = self._ech if prime else self._ech_full
        return ech.reduce(vec, full=True)

    def reduce(self, f: CIndElt) -> SparseVec:
        """Coordinates of the class of f in the truncated quotient."""
        res = self.residual(f)
        return SparseVec(self.dim, {self.free_index[i]: c for i, c in res.items()})

    def basis_matrix(self) -> SparseMat:
        """The echelon basis of V as columns, for persistence."""
        cols = [self.pivots[m] for m in sorted(self.pivots)]
        return SparseMat(self.coords.dim, len(cols), cols)

    @classmethod
    def from_basis(cls, p, r, lam, n, R, k, mat: SparseMat) -> "QuotientCtx":
        pivots = {min(col): dict(col) for col in mat.columns}
        return cls(p, r, lam, n, R, k, pivots=pivots)


def quotient_reduce(ctx: QuotientCtx, f: CIndElt) -> SparseVec:
    return ctx.reduce(f)


# -- bounded preimage search --------------------------------------------------------

@lru_cache(maxsize=16)
def _preimage_echelon(p: int, r: int, k: int, lam: int, bound: int) -> tuple[Coordinates, Echelon]:
    coords = Coordinates(p, r, bound + 1)
    ech = Echelon(_work_field(p, k, lam), track=True)
    for tag, vec in _image_columns(coords, bound, lam, k):
        ech.add(vec, tag=tag)
    return coords, ech


def image_solve(target: CIndElt, lam: int, support_bound: int) -> CIndElt | None:
    """Some f supported in B_bound with (T - λ) f = target, or None if none exists there.

    A None answer only speaks about preimages inside the given ball.
    """
    if support_bound < 0:
        return None
    if target.radius() > support_bound + 1:
        return None
    coords, ech = _preimage_echelon(target.p, target.r, target.k, lam, support_bound)
    vec = coords.vec(target)
    F = field(target.p, target.k)
    if any(c >= target.p for c in vec.values()) and ech.F.k == 1:
        ech = _tracking_view(ech, F)
    combo = ech.express(vec)
    if combo is None:
        return None
    sup: dict[Vertex, list[int]] = {}
    for (v, i), c in combo.items():
        sup.setdefault(v, [0] * (target.r + 1))[i] = c
    return CIndElt(target.p, target.r, target.k, {v: tuple(w) for v, w in sup.items()})


def _tracking_view(ech: Echelon, F: GF) -> Echelon:
    view = Echelon(F, track=True)
    view.pivots, view.combos = ech.pivots, ech.combos
    return view


def in_image(target: CIndElt, lam: int, support_bound: int) -> bool:
    return image_solve(target, lam, support_bound) is not None
