"""The Hecke operator T_r and τ_r = T_r².

T_r is convolution with the function φ supported on KZ·α·KZ, α = diag(1, p),
with φ(α) the projection keeping the coefficient of x^r.  Summing
[h, φ(h^{-1}) w] over the p+1 cosets h of KZ·α·KZ/KZ, namely (p λ; 0 1) and α,
gives for w = Σ w_i x^{r-i} y^i

    T[1, w] = Σ_λ (Σ_i (-λ)^i w_i) [(p λ; 0 1), x^r] + w_r [α, y^r],

and T[g, w] = g·T[1, w] extends it to every elementary function.
"""
from __future__ import annotations

from functools import lru_cache

from ..group.gmat import GMat, alpha
from ..group.tree import Vertex
from .element import CIndElt, act, elementary, x_r, y_r


@lru_cache(maxsize=None)
def hecke_at_origin(p: int, r: int, k: int) -> tuple[tuple[CIndElt, ...], CIndElt]:
    """([(p λ; 0 1), x^r] for λ = 0..p-1, [α, y^r])."""
    outer = tuple(elementary(GMat(p, p, lam, 0, 1), x_r(r), r, k) for lam in range(p))
    return outer, elementary(alpha(p), y_r(r), r, k)


@lru_cache(maxsize=None)
def _coeff_rows(p: int, r: int) -> tuple[tuple[int, ...], ...]:
    """(-λ)^i mod p for λ = 0..p-1, i = 0..r (with 0^0 = 1)."""
    return tuple(tuple(pow(-lam, i, p) for i in range(r + 1)) for lam in range(p))


@lru_cache(maxsize=500_000)
def hecke_vertex(v: Vertex, r: int, k: int) -> tuple[tuple[CIndElt, ...], CIndElt]:
    """The p+1 translated pieces c_v·[(p λ; 0 1), x^r] and c_v·[α, y^r]."""
    outer, inner = hecke_at_origin(v.p, r, k)
    g = v.rep()
    return tuple(act(g, e) for e in outer), act(g, inner)


def hecke_columns(v: Vertex, r: int, k: int) -> list[CIndElt]:
    """T applied to [c_v, x^{r-i} y^i] for i = 0..r."""
    outer, inner = hecke_vertex(v, r, k)
    rows = _coeff_rows(v.p, r)
    out = []
    for i in range(r + 1):
        col = CIndElt.zero(v.p, r, k)
        for lam, piece in enumerate(outer):
            c = rows[lam][i]
            if c:
                col = col.combine(piece, c)
        if i == r:
            col = col + inner
        out.append(col)
    return out


def hecke_T(f: CIndElt) -> CIndElt:
    out = CIndElt.zero(f.p, f.r, f.k)
    rows = _coeff_rows(f.p, f.r)
    F = f.F
    for v, w in f.support.items():
        outer, inner = hecke_vertex(v, f.r, f.k)
        for lam, piece in enumerate(outer):
            c = 0
            for i, wi in enumerate(w):
                if wi and rows[lam][i]:
                    c = F.add(c, F.mul(rows[lam][i], wi))
            if c:
                out = out.combine(piece, c)
        if w[f.r]:
            out = out.combine(inner, w[f.r])
    return out


def hecke_apply(f: CIndElt, mode: str = "T", lam: int = 0) -> CIndElt:
    """mode: "T", "T_minus_lambda" (uses lam) or "tau" (= T∘T)."""
    if mode == "T":
        return hecke_T(f)
    if mode == "T_minus_lambda":
        return hecke_T(f).combine(f, f.F.neg(lam))
    if mode == "tau":
        return hecke_T(hecke_T(f))
    raise ValueError(f"unknown Hecke mode {mode!r}")


__all__ = ["hecke_apply", "hecke_T", "hecke_vertex", "hecke_columns", "hecke_at_origin"]
