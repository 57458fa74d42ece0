"""Serre weights Sym^r of KZ and tame smooth characters of Q_p^x.

The weight σ_r has basis x^{r-i} y^i (i = 0..r) and k = (a b; c d) acts by
x^{r-i} y^i  ->  (a x + c y)^{r-i} (b x + d y)^i, with p·I2 acting trivially.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra.field import GF, field
from .algebra.pexact import residue_mod, unit_mod, valuation
from .algebra.sparse import SparseMat
from .group.gmat import GMat, _kz_part


class OutOfSubgroup(ValueError):
    """The matrix does not lie in the subgroup required by the operation."""


class DegenerateCharacter(ValueError):
    """A character would take the value zero."""


class DomainError(ValueError):
    """Evaluation outside the domain (for instance a character at zero)."""


@dataclass(frozen=True)
class Weight:
    p: int
    r: int
    k: int = 2

    def __post_init__(self) -> None:
        if not 0 <= self.r <= self.p - 1:
            raise ValueError(f"r must lie in 0..{self.p - 1}")

    @property
    def dim(self) -> int:
        return self.r + 1

    @property
    def F(self) -> GF:
        return field(self.p, self.k)

    def monomial(self, i: int) -> tuple[int, ...]:
        """Coordinates of x^{r-i} y^i."""
        v = [0] * (self.r + 1)
        v[i] = 1
        return tuple(v)


def _poly_pow(lin: tuple[int, int], n: int, p: int) -> list[int]:
    """Coefficients of (u x + w y)^n in the basis x^{n-j} y^j."""
    uu, ww = lin
    out = [1]
    for _ in range(n):
        nxt = [0] * (len(out) + 1)
        for j, c in enumerate(out):
            if c:
                nxt[j] = (nxt[j] + c * uu) % p
                nxt[j + 1] = (nxt[j + 1] + c * ww) % p
        out = nxt
    return out


@lru_cache(maxsize=200_000)
def sigma_columns(p: int, r: int, a: int, b: int, c: int, d: int) -> tuple[dict[int, int], ...]:
    """Columns of σ_r for the reduction (a b; c d) mod p, as sparse dicts over F_p."""
    cols = []
    for i in range(r + 1):
        left = _poly_pow((a, c), r - i, p)
        right = _poly_pow((b, d), i, p)
        col: dict[int, int] = {}
        for j1, c1 in enumerate(left):
            if c1:
                for j2, c2 in enumerate(right):
                    if c2:
                        col[j1 + j2] = (col.get(j1 + j2, 0) + c1 * c2) % p
        cols.append({j: v for j, v in col.items() if v})
    return tuple(cols)


def kz_residue(g: GMat) -> tuple[int, int, int, int]:
    """Reduction mod p of g / p^{v(det)/2}; requires g in KZ."""
    h = _kz_part(g)
    if h is None:
        raise OutOfSubgroup(f"{g} is not in KZ")
    return tuple(residue_mod(x, g.p, 1) for x in h.entries)


def sigma_matrix(w: Weight, g: GMat) -> SparseMat:
    """Matrix of σ_r(g) in the monomial basis."""
    cols = sigma_columns(w.p, w.r, *kz_residue(g))
    return SparseMat(w.dim, w.dim, [dict(c) for c in cols])


def sigma_apply(p: int, r: int, res: tuple[int, int, int, int], vec: tuple[int, ...], F: GF) -> tuple[int, ...]:
    """σ_r(k) applied to a coordinate tuple, k given by its residue mod p."""
    cols = sigma_columns(p, r, *res)
    out: dict[int, int] = {}
    for i, c in enumerate(vec):
        if c:
            F.axpy(out, c, cols[i])
    return tuple(out.get(j, 0) for j in range(r + 1))


# -- characters ---------------------------------------------------------------------

@dataclass(frozen=True)
class SmoothCharacter:
    """Tame character: η(p^n u) = vp^n · (u mod p)^a, with values in F_{p^k}."""

    p: int
    k: int
    a: int
    vp: int

    def __post_init__(self) -> None:
        if self.vp == 0:
            raise DegenerateCharacter("value at p must be nonzero")
        object.__setattr__(self, "a", self.a % (self.p - 1))

    @property
    def F(self) -> GF:
        return field(self.p, self.k)

    @property
    def unramified(self) -> bool:
        return self.a == 0

    @property
    def trivial(self) -> bool:
        return self.a == 0 and self.vp == 1

    @property
    def Lambda(self) -> int:
        """Λ = η(p^{-1})."""
        return self.F.inv(self.vp)

    def __call__(self, x) -> int:
        return char_eval(self, x)

    def unit_value(self, u_mod_p: int) -> int:
        return pow(u_mod_p, self.a, self.p)

    def literal(self) -> str:
        return f"omega^{self.a} * mu({','.join(map(str, self.F._digits(self.vp)))})"


def omega_pow(p: int, k: int, a: int) -> SmoothCharacter:
    """ω^a: u -> ū^a on units and p -> 1."""
    return SmoothCharacter(p, k, a, 1)


def mu(p: int, k: int, lam: int) -> SmoothCharacter:
    """Unramified character sending p to λ."""
    if lam == 0:
        raise DegenerateCharacter("μ_λ needs λ ≠ 0")
    return SmoothCharacter(p, k, 0, lam)


def char_product(e1: SmoothCharacter, e2: SmoothCharacter) -> SmoothCharacter:
    F = e1.F
    return SmoothCharacter(e1.p, e1.k, e1.a + e2.a, F.mul(e1.vp, e2.vp))


def char_inverse(e: SmoothCharacter) -> SmoothCharacter:
    return SmoothCharacter(e.p, e.k, -e.a, e.F.inv(e.vp))


def char_make(kind: str, p: int, k: int = 2, *args) -> SmoothCharacter:
    """Constructors: omega_pow(a), mu(λ), product(η1, η2), inverse(η)."""
    if kind == "omega_pow":
        return omega_pow(p, k, args[0])
    if kind == "mu":
        return mu(p, k, args[0])
    if kind == "product":
        return char_product(*args)
    if kind == "inverse":
        return char_inverse(args[0])
    raise ValueError(f"unknown character kind {kind!r}")


def char_eval(eta: SmoothCharacter, x) -> int:
    """η(x) for a nonzero rational x."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("characters are not defined at 0")
    F = eta.F
    n = valuation(x, eta.p)
    ubar = unit_mod(x, eta.p, 1)
    return F.mul(F.pow(eta.vp, n), eta.unit_value(ubar))


_CHAR = re.compile(r"\s*omega\^(-?\d+)\s*\*\s*mu\(([\d,\s]+)\)\s*")


def parse_character(text: str, p: int, k: int) -> SmoothCharacter:
    """Parse ``omega^a * mu(c0,...,c(k-1))``."""
    m = _CHAR.fullmatch(text)
    if not m:
        raise ValueError(f"bad character literal {text!r}")
    coeffs = [int(c) for c in m.group(2).split(",")]
    if len(coeffs) != k or any(not 0 <= c < p for c in coeffs):
        raise ValueError("μ value needs k coefficients in 0..p-1")
    vp = sum(c * p**i for i, c in enumerate(coeffs))
    return SmoothCharacter(p, k, int(m.group(1)), vp)


def omega1_order(p: int) -> int:
    """Order of the fundamental character ω1 on F_p^x (computed, not assumed)."""
    from .algebra.field import primitive_root
    g = primitive_root(p)
    n, x = 1, g
    while x != 1:
        x = x * g % p
        n += 1
    return n
