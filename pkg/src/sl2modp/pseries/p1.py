"""Locally constant functions on P^1(Q_p) at level N, and the Steinberg quotient.

P^1 = {(1 : x) : x ∈ Z_p} ⊔ {(y : 1) : y ∈ pZ_p}.  At level N a function is
constant on the cells x + p^N Z_p of the first chart (p^N cells) and y + p^N Z_p
of the second (p^{N-1} cells).  Ind_{B_S}^{G_S}(1) is this space with
(g·f)(P) = f(P·g) for row vectors P, and the Steinberg representation is its
quotient by the constants.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra.field import field
from ..algebra.pexact import residue_mod, valuation
from ..algebra.sparse import Echelon, SparseMat, fixed_space
from ..group.gmat import GMat, membership
from ..group.words import generators
from .jfunc import WindowOverflow

Cell = tuple[str, int]  # ("0", x mod p^N) or ("inf", y mod p^N with y ≡ 0 mod p)


def cells(p: int, N: int) -> list[Cell]:
    return [("0", x) for x in range(p**N)] + [("inf", y) for y in range(0, p**N, p)]


def _cell_of(c: Fraction, d: Fraction, p: int, N: int) -> Cell:
    """The level-N cell of the point (c : d)."""
    if c != 0 and (d == 0 or valuation(c, p) <= valuation(d, p)):
        return ("0", residue_mod(d / c, p, N))
    return ("inf", residue_mod(c / d, p, N))


def cell_action(g: GMat, p: int, N: int) -> dict[Cell, Cell]:
    """P -> P·g on level-N cells; needs g ∈ GL2(Z_p) so cells map to cells."""
    if not membership(g, "K"):
        raise WindowOverflow("only elements of GL2(Z_p) preserve level-N cells", (N, N))
    a, b, c, d = g.entries
    out = {}
    for kind, t in cells(p, N):
        P = (Fraction(1), Fraction(t)) if kind == "0" else (Fraction(t), Fraction(1))
        out[(kind, t)] = _cell_of(P[0] * a + P[1] * c, P[0] * b + P[1] * d, p, N)
    return out


@dataclass(frozen=True)
class P1Func:
    p: int
    N: int
    values: tuple[int, ...]  # ordered as cells(p, N)

    @classmethod
    def constant(cls, p: int, N: int, value: int = 1) -> "P1Func":
        return cls(p, N, (value,) * (p**N + p ** (N - 1)))

    @classmethod
    def chart_indicator(cls, p: int, N: int, chart: str) -> "P1Func":
        return cls(p, N, tuple(1 if kind == chart else 0 for kind, _ in cells(p, N)))

    def act(self, g: GMat) -> "P1Func":
        cs = cells(self.p, self.N)
        index = {cell: i for i, cell in enumerate(cs)}
        move = cell_action(g, self.p, self.N)
        return P1Func(self.p, self.N, tuple(self.values[index[move[cell]]] for cell in cs))

    def text(self) -> str:
        head = f"{self.p} {self.N}"
        body = [f"{kind} {t} : {v}" for (kind, t), v in zip(cells(self.p, self.N), self.values)]
        return "\n".join([head] + body)


def _action_matrix(g: GMat, p: int, N: int) -> SparseMat:
    cs = cells(p, N)
    index = {cell: i for i, cell in enumerate(cs)}
    move = cell_action(g, p, N)
    # (g f)[i] = f[move(i)]: column j of the matrix carries ones at rows i with move(i) = j
    cols: list[dict[int, int]] = [dict() for _ in cs]
    for i, cell in enumerate(cs):
        cols[index[move[cell]]][i] = 1
    return SparseMat(len(cs), len(cs), cols)


@dataclass
class SteinbergInvariants:
    basis: list[P1Func]
    ind_dim: int
    sp_dim: int


def sp_invariants(p: int, N: int, gens: list[GMat] | None = None, k: int = 1) -> SteinbergInvariants:
    """I_S(1)-invariants of the level-N model and of its quotient by constants.

    On the quotient, f is invariant when every (γ - 1) f is a constant, so the
    Steinberg invariants have dimension dim{f : (γ - 1) f ∈ constants} - 1.
    """
    if N < 1:
        raise ValueError("resolution N must be at least 1")
    gens = gens if gens is not None else generators("IS1", p)
    F = field(p, k)
    n = p**N + p ** (N - 1)
    mats = [_action_matrix(g, p, N) for g in gens]
    fixed = fixed_space(mats, F, n)
    basis = [P1Func(p, N, tuple(v.to_dense())) for v in fixed]
    # solutions (f, t_γ) of (γ - 1) f = t_γ·1 for every γ
    m = len(gens)
    rows: list[dict[int, int]] = [{n + gi: F.neg(1)} for gi in range(m) for _ in range(n)]
    for gi, A in enumerate(mats):
        for j, col in enumerate(A.columns):
            for i, v in col.items():
                rows[gi * n + i][j] = v
        for i in range(n):
            row = rows[gi * n + i]
            row[i] = F.sub(row.get(i, 0), 1)
            if not row[i]:
                del row[i]
    ech = Echelon(F)
    for r in rows:
        ech.add(r)
    total = n + m
    kernel_dim = total - ech.rank
    # the t-coordinates are determined by f, so kernel_dim = dim{f : (γ-1)f ∈ constants}
    return SteinbergInvariants(basis, len(basis), kernel_dim - 1)


__all__ = ["P1Func", "cells", "cell_action", "sp_invariants", "SteinbergInvariants"]
