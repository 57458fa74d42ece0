"""The J(η) model of Ind_{B_S}^{G_S}(η).

A function φ: Q_p -> F_{p^k} in J(η) is locally constant and satisfies
φ(x) = c·η(x^{-1}) once v(x) is small enough.  It is stored as

* an outer exponent M >= 0: explicit values live on p^{-M} Z_p,
* a p-ary trie over p^{-M} Z_p (a node at level m is a ball center + p^m Z_p,
  its child d is the ball center + d p^m + p^{m+1} Z_p),
* the tail constant c, with φ(x) = c·η(x^{-1}) whenever v(x) < -M.

Tries are kept merged and M minimal, so equal functions have equal data.
Group elements act by (g·φ)(x) = f(s u(x) g) where f = j^{-1}(φ).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from ..algebra.field import GF
from ..algebra.pexact import mod_zp, valuation
from ..group.gmat import GMat
from ..weights import SmoothCharacter, char_eval

Node = Union[int, tuple]

MAX_LEVELS = 48


class WindowOverflow(ValueError):
    """The function does not fit the requested (M, N) window."""

    def __init__(self, message: str, required: tuple[int, int] | None = None):
        super().__init__(message)
        self.required = required


class CharacterMismatch(ValueError):
    """The requested basis function does not exist for this character."""


def _digit(x: Fraction, p: int, m: int) -> int:
    """The p-adic digit of x at position m."""
    return int((mod_zp(x, p, m + 1) - mod_zp(x, p, m)) / Fraction(p) ** m)


def _norm_ball(center: Fraction, m: int, p: int) -> Fraction:
    """Center 0 for balls p^m Z_p, unchanged otherwise."""
    if center == 0 or valuation(center, p) >= m:
        return Fraction(0)
    return center


def _build(p: int, M: int, ball_value: Callable[[Fraction, int], int | None]) -> Node:
    """Merged trie over p^{-M} Z_p from a ball oracle (None = not constant there)."""

    def node(center: Fraction, m: int, depth: int) -> Node:
        v = ball_value(center, m)
        if v is not None:
            return v
        if depth >= MAX_LEVELS:
            raise WindowOverflow(f"no constancy down to level {m}", (M, m))
        step = Fraction(p) ** m
        kids = tuple(node(center + d * step, m + 1, depth + 1) for d in range(p))
        if isinstance(kids[0], int) and all(k == kids[0] for k in kids):
            return kids[0]
        return kids

    return node(Fraction(0), -M, 0)


def _depth(node: Node) -> int:
    if isinstance(node, int):
        return 0
    return 1 + max(_depth(k) for k in node)


@dataclass(frozen=True)
class JFunc:
    eta: SmoothCharacter
    M: int
    root: Node
    c: int

    def __post_init__(self) -> None:
        M, root = self.M, self.root
        p, F = self.eta.p, self.eta.F
        # shrink M while the outer shell already follows the tail law
        while M > 0:
            kids = root if isinstance(root, tuple) else (root,) * p
            shell_ok = all(
                isinstance(kids[d], int)
                and kids[d] == F.mul(self.c, char_eval(self.eta, 1 / (d * Fraction(p) ** -M)))
                for d in range(1, p)
            )
            if not shell_ok:
                break
            root, M = kids[0], M - 1
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "root", root)

    # -- basic data ------------------------------------------------------------------
    @property
    def p(self) -> int:
        return self.eta.p

    @property
    def F(self) -> GF:
        return self.eta.F

    @property
    def N(self) -> int:
        """Resolution: φ is constant on cosets of p^N Z_p (N >= 0)."""
        return max(0, _depth(self.root) - self.M)

    @property
    def tail_radius(self) -> int:
        return self.M

    def _tail(self, x: Fraction) -> int:
        return self.F.mul(self.c, char_eval(self.eta, 1 / x))

    def ball_value(self, center: Fraction, m: int) -> int | None:
        """The constant value of φ on center + p^m Z_p, or None if φ varies there."""
        p = self.p
        center = _norm_ball(Fraction(center), m, p)
        if center != 0 and valuation(center, p) < -self.M:
            return self._tail(center)
        if m < -self.M:
            return None
        node, level = self.root, -self.M
        while isinstance(node, tuple):
            if level >= m:
                return None
            node = node[_digit(center, p, level)]
            level += 1
        return node

    def __call__(self, x) -> int:
        x = Fraction(x)
        p = self.p
        if x != 0 and valuation(x, p) < -self.M:
            return self._tail(x)
        node, level = self.root, -self.M
        while isinstance(node, tuple):
            node = node[_digit(x, p, level)]
            level += 1
        return node

    # -- linear structure --------------------------------------------------------------
    def combine(self, other: "JFunc", coef: int) -> "JFunc":
        """self + coef·other."""
        if other.eta != self.eta:
            raise CharacterMismatch("functions of different models")
        F = self.F
        M = max(self.M, other.M)

        def bv(center, m):
            a = self.ball_value(center, m)
            if a is None:
                return None
            b = other.ball_value(center, m)
            if b is None:
                return None
            return F.add(a, F.mul(coef, b))

        return JFunc(self.eta, M, _build(self.p, M, bv), F.add(self.c, F.mul(coef, other.c)))

    def __add__(self, other: "JFunc") -> "JFunc":
        return self.combine(other, 1)

    def __sub__(self, other: "JFunc") -> "JFunc":
        return self.combine(other, self.F.neg(1))

    def scale(self, coef: int) -> "JFunc":
        return zero(self.eta).combine(self, coef)

    def is_zero(self) -> bool:
        return self.root == 0 and self.c == 0

    # -- windows ---------------------------------------------------------------------------
    def fits(self, M: int, N: int) -> bool:
        return self.M <= M and self.N <= N

    def window_vector(self, M: int, N: int) -> list[int]:
        """Values on the p^{M+N} cells n·p^{-M} + p^N Z_p, followed by c."""
        if not self.fits(M, N):
            raise WindowOverflow(f"needs window ({self.M}, {self.N})", (self.M, self.N))
        p, F, eta = self.p, self.F, self.eta
        total = p ** (M + N)
        out = [0] * total
        shift = p ** (M - self.M)
        width = self.M + N

        def expand(node: Node, t: int, prefix: int) -> None:
            if isinstance(node, int):
                if node:
                    step = p**t
                    for k in range(p ** (width - t)):
                        out[shift * (prefix + step * k)] = node
                return
            for d, kid in enumerate(node):
                expand(kid, t + 1, prefix + d * p**t)

        expand(self.root, 0, 0)
        if self.c:
            # tail cells: lowest nonzero digit at position j < M - self.M, so v(x) = j - M
            for n in range(1, total):
                j, q = 0, n
                while q % p == 0:
                    q //= p
                    j += 1
                if j < M - self.M:
                    # η(x^{-1}) = η(p)^{M-j} · ū^{-a}
                    inv_x = F.mul(F.pow(eta.vp, M - j), F.inv(eta.unit_value(q % p)))
                    out[n] = F.mul(self.c, inv_x)
        return out + [self.c]

    @classmethod
    def from_window(cls, eta: SmoothCharacter, M: int, N: int, values: list[int]) -> "JFunc":
        p = eta.p
        if len(values) != p ** (M + N) + 1:
            raise ValueError("wrong number of window values")
        scale = Fraction(p) ** -M

        def bv(center, m):
            if m < N:
                return None
            n = int(mod_zp(center, p, N) / scale) if center else 0
            return values[n]

        return cls(eta, M, _build(p, M, bv), values[-1])

    def text(self) -> str:
        """Header ``p k a vp M N Mt c`` then ``digits : value`` per cell of the own window."""
        eta, M, N = self.eta, self.M, self.N
        lines = [f"{eta.p} {eta.k} {eta.a} {eta.vp} {M} {N} {M} {self.c}"]
        vals = self.window_vector(M, N)
        for n, v in enumerate(vals[:-1]):
            digits = "".join(str(d) for d in _int_digits(n, eta.p, M + N))
            lines.append(f"{digits} : {v}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"JFunc(M={self.M}, N={self.N}, c={self.c}, η={self.eta.literal()})"


def _int_digits(n: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        n, d = divmod(n, p)
        out.append(d)
    return out


def parse_jfunc(text: str) -> JFunc:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    p, k, a, vp, M, N, _Mt, c = (int(t) for t in lines[0].split())
    eta = SmoothCharacter(p, k, a, vp)
    values = [int(ln.split(":")[1]) for ln in lines[1:]]
    return JFunc.from_window(eta, M, N, values + [c])


# -- constructors ------------------------------------------------------------------------

def zero(eta: SmoothCharacter) -> JFunc:
    return JFunc(eta, 0, 0, 0)


def indicator(eta: SmoothCharacter, center, m: int) -> JFunc:
    """1 on the ball center + p^m Z_p (bounded, so c = 0)."""
    p = eta.p
    center = _norm_ball(Fraction(center), m, p)
    M = max(0, -m, -valuation(center, p) if center else 0)

    def bv(x, level):
        if level >= m:
            return 1 if _norm_ball(x - center, m, p) == 0 else 0
        # ball x + p^level Z_p strictly contains balls of radius p^m
        if _norm_ball(x - center, level, p) != 0:
            return 0
        return None

    return JFunc(eta, M, _build(p, M, bv), 0)


def from_function(eta: SmoothCharacter, M: int, c: int,
                  ball_value: Callable[[Fraction, int], int | None]) -> JFunc:
    return JFunc(eta, M, _build(eta.p, M, ball_value), c)


def make_basis(name: str, eta: SmoothCharacter) -> JFunc:
    """phi0 / f0, f1, f2 (unramified η), ell1, ell2 (any tame η).

    With Λ = η(p^{-1}):
      φ₀ = 1 on Z_p and Λ^{v(x)} outside; j(f₁) = Λ^{v(x)}·1_{v<0}; j(f₂) = Λ^{-1}·1_{Z_p};
      j(ℓ₁) = η(x^{-1})·1_{v<0}; j(ℓ₂) = η(p)·1_{Z_p}, the normalization with ℓ₂(β₀) = 1.
    """
    F = eta.F
    if name in ("phi0", "f0", "f1", "f2") and not eta.unramified:
        raise CharacterMismatch(f"{name} needs an unramified character")
    if name in ("phi0", "f0"):
        return JFunc(eta, 0, 1, 1)
    if name in ("f1", "ell1"):
        return JFunc(eta, 0, 0, 1)
    if name == "f2":
        return JFunc(eta, 0, F.inv(eta.Lambda), 0)
    if name == "ell2":
        return JFunc(eta, 0, char_eval(eta, eta.p), 0)
    raise ValueError(f"unknown basis function {name!r}")


# -- evaluation and action ---------------------------------------------------------------

def eval_ind(phi: JFunc, h: GMat) -> int:
    """f(h) for f = j^{-1}(φ) and h in SL2."""
    if h.det != 1:
        raise ValueError("eval_ind expects an element of SL2")
    a, b, c, d = h.entries
    if c == 0:
        return phi.F.mul(char_eval(phi.eta, a), phi.c)
    return phi.F.mul(char_eval(phi.eta, 1 / c), phi(d / c))


def act_u(y, phi: JFunc) -> JFunc:
    """(u(y)φ)(x) = φ(x + y)."""
    y = Fraction(y)
    p = phi.p
    M = phi.M if y == 0 else max(phi.M, -valuation(y, p))
    return from_function(phi.eta, M, phi.c, lambda c0, m: phi.ball_value(c0 + y, m))


def act_torus(lam, phi: JFunc) -> JFunc:
    """(t(λ)φ)(x) = η(λ^{-1}) φ(λ^{-2} x), with tail constant η(λ)·c."""
    lam = Fraction(lam)
    p, F, eta = phi.p, phi.F, phi.eta
    k = valuation(lam, p)
    factor = char_eval(eta, 1 / lam)
    inv2 = 1 / (lam * lam)

    def bv(c0, m):
        v = phi.ball_value(c0 * inv2, m - 2 * k)
        return None if v is None else F.mul(factor, v)

    return from_function(eta, max(phi.M - 2 * k, 0), F.mul(char_eval(eta, lam), phi.c), bv)


def _zero_leaf(phi: JFunc) -> tuple[int, int]:
    """(value, level) of the leaf ball p^level Z_p containing 0."""
    node, level = phi.root, -phi.M
    while isinstance(node, tuple):
        node, level = node[0], level + 1
    return node, level


def act_s(phi: JFunc) -> JFunc:
    """(sφ)(x) = η(x^{-1}) φ(-1/x) for x ≠ 0, equal to η(-1)·c near 0; new tail constant φ(0)."""
    p, F, eta = phi.p, phi.F, phi.eta
    val0, lev0 = _zero_leaf(phi)
    near_zero = F.mul(char_eval(eta, -1), phi.c)

    def bv(c0, m):
        if c0 == 0:
            return near_zero if m > phi.M else None
        v = valuation(c0, p)
        w = phi.ball_value(-1 / c0, m - 2 * v)
        return None if w is None else F.mul(char_eval(eta, 1 / c0), w)

    return from_function(eta, max(lev0, 0), val0, bv)


def act_ps(g: GMat, phi: JFunc) -> JFunc:
    """g·φ for g in SL2 through the Bruhat factorization.

    c = 0: g = t(a)·u(b/a);  c ≠ 0: g = t(1/c)·u(ac)·s·u(d/c).
    """
    if g.det != 1:
        raise ValueError("act_ps expects an element of SL2")
    a, b, c, d = g.entries
    if c == 0:
        return act_torus(a, act_u(b / a, phi))
    return act_torus(1 / c, act_u(a * c, act_s(act_u(d / c, phi))))


def sample_points(p: int, M: int, N: int) -> list[Fraction]:
    """Representatives of every cell of the (M, N) window, 0, and a few tail points."""
    scale = Fraction(p) ** -M
    pts = [n * scale for n in range(p ** (M + N))]
    pts += [Fraction(d, p ** (M + j)) for j in (1, 2) for d in range(1, p)]
    pts += [Fraction(d * p ** (N + 1)) for d in range(1, p)]
    return pts


__all__ = [
    "JFunc", "WindowOverflow", "CharacterMismatch", "zero", "indicator", "from_function",
    "make_basis", "eval_ind", "act_u", "act_torus", "act_s", "act_ps", "parse_jfunc", "sample_points",
]
