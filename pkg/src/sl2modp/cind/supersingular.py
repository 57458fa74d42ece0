"""The SL2 pieces π_{r,∞}, π_{r,0} of the supersingular quotient at finite truncation.

Spans, the rewriting of elementary functions through the two seeds, invariance
certificates, Iwahori characters, and the isomorphism bookkeeping.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from ..algebra.field import primitive_root
from ..algebra.pexact import unit_mod, unit_part, valuation
from ..algebra.sparse import Echelon, SparseVec
from ..group.gmat import GMat, alpha, diag, j_mat, s_mat, torus
from ..group.words import Alphabet, word_enum
from .element import CIndElt, act, elementary, v_inf, v_zero, x_r, y_r
from .quotient import QuotientCtx, image_solve


class NotEigen(ValueError):
    """The vector is not an eigenvector of the torus action."""


class RangeError(ValueError):
    """Parameters outside their admissible range."""


INF, ZERO = "infty", "zero"


def seed(p: int, r: int, z: str, k: int = 2) -> CIndElt:
    """v_{r,z} for z in {"infty", "zero"}."""
    if z in (INF, "inf", "∞"):
        return v_inf(p, r, k)
    if z in (ZERO, "0"):
        return v_zero(p, r, k)
    raise RangeError(f"unknown side {z!r}")


# -- spans ------------------------------------------------------------------------

def span_echelon(ctx: QuotientCtx, seed_elt: CIndElt, alphabet: Alphabet, L: int,
                 words: list[GMat] | None = None) -> tuple[Echelon, int]:
    """Echelon of the reduced translates g·seed for words g of length <= L inside depth.

    Returns the echelon and the number of words whose translate left the ball.
    """
    for g in alphabet.letters:
        if g.det != 1:
            raise ValueError("generated_span expects an SL2 alphabet")
    ech = Echelon(ctx.F)
    skipped = 0
    for g in (words if words is not None else word_enum(alphabet, L)):
        h = act(g, seed_elt)
        if h.radius() > ctx.n:
            skipped += 1
            continue
        ech.add(ctx.reduce(h).entries)
    return ech, skipped


def generated_span(ctx: QuotientCtx, seed_elt: CIndElt, alphabet: Alphabet, L: int) -> list[SparseVec]:
    """Reduced echelon basis of the span of the reduced translates of the seed."""
    ech, _ = span_echelon(ctx, seed_elt, alphabet, L)
    return [SparseVec(ctx.dim, r) for r in ech.rref()]


def reduced_pair_rank(ctx: QuotientCtx) -> int:
    """Rank of (reduce(v_{r,∞}), reduce(v_{r,0})) in the truncated quotient."""
    ech = Echelon(ctx.F)
    ech.add(ctx.reduce(v_inf(ctx.p, ctx.r, ctx.k)).entries)
    ech.add(ctx.reduce(v_zero(ctx.p, ctx.r, ctx.k)).entries)
    return ech.rank


@dataclass
class SpanPair:
    """Ranks of the two bounded spans and of their sum in the truncated quotient."""

    rank_inf: int
    rank_zero: int
    rank_sum: int
    skipped: int
    echelon: Echelon = dc_field(repr=False)

    @property
    def trivial_intersection(self) -> bool:
        return self.rank_sum == self.rank_inf + self.rank_zero


def span_pair(ctx: QuotientCtx, alphabet: Alphabet, L: int) -> SpanPair:
    """Spans of v_{r,∞} and v_{r,0} under words of length <= L, and their sum."""
    words = word_enum(alphabet, L)
    e_inf, sk1 = span_echelon(ctx, v_inf(ctx.p, ctx.r, ctx.k), alphabet, L, words)
    e_zero, sk2 = span_echelon(ctx, v_zero(ctx.p, ctx.r, ctx.k), alphabet, L, words)
    both = Echelon(ctx.F)
    for row in e_inf.basis() + e_zero.basis():
        both.add(row)
    return SpanPair(e_inf.rank, e_zero.rank, both.rank, sk1 + sk2, both)


def random_class(ctx: QuotientCtx, radius: int, rng) -> CIndElt:
    """An element with random prime-field coefficients on every vertex of B_radius."""
    verts = [v for v in ctx.coords.vertices if v.distance <= radius]
    sup = {v: tuple(rng.randrange(ctx.p) for _ in range(ctx.r + 1)) for v in verts}
    return CIndElt(ctx.p, ctx.r, ctx.k, {v: w for v, w in sup.items() if any(w)})


def decomp_evidence(ctx: QuotientCtx, pair: SpanPair, samples: int, radius: int, rng) -> int:
    """How many of ``samples`` random classes supported in B_radius lie in the sum of the spans."""
    inside = 0
    for _ in range(samples):
        vec = ctx.reduce(random_class(ctx, radius, rng))
        inside += pair.echelon.contains(vec.entries)
    return inside


# -- routing [g, x^r] into the two pieces -----------------------------------------

@dataclass(frozen=True)
class AppCRewrite:
    """[g, monomial] = scalar · h·v_{r,side} with h in SL2."""

    side: str
    h: GMat
    scalar: int
    case: str


def decompose_appC(g: GMat, monomial: str, r: int) -> AppCRewrite:
    """Route [g, x^r] or [g, y^r] into π_{r,∞} or π_{r,0} by the class of det g mod squares.

    With det g = u p^e (u a unit):
      e even: [g, x^r] = ū^r · h [I2, x^r], h = g diag(u^{-1}, 1) p^{-e/2} in SL2;
      e odd:  [g, x^r] = ū^r · h [β, x^r], h = g α^{-1} diag(u^{-1}, 1) p^{-(e-1)/2} J,
              J = (0 p^{-1}; -p 0), using [α, x^r] = [J α, y^r] = J·v_{r,0}.
    [g, y^r] = [g s, x^r] reduces the second monomial to the first.
    """
    p = g.p
    if monomial in ("y^r", "y"):
        g = g * s_mat(p)
    elif monomial not in ("x^r", "x"):
        raise ValueError(f"unknown monomial {monomial!r}")
    det = g.det
    e = valuation(det, p)
    u = unit_part(det, p)
    ubar = unit_mod(det, p, 1)
    square = pow(ubar, (p - 1) // 2, p) == 1
    scalar = pow(ubar, r, p)
    if e % 2 == 0:
        h = g * diag(p, 1 / u, 1)
        h = h.scaled(Fraction(p) ** (-(e // 2)))
        side = INF
        case = "square" if square else "nonsquare_unit"
    else:
        h = g * alpha(p).inv() * diag(p, 1 / u, 1)
        h = h.scaled(Fraction(p) ** (-((e - 1) // 2))) * j_mat(p)
        side = ZERO
        case = "p_square" if square else "p_nonsquare"
    if h.det != 1:
        raise AssertionError("router produced a non-SL2 element")
    return AppCRewrite(side, h, scalar, case)


def appC_verify(g: GMat, monomial: str, r: int, k: int = 2) -> bool:
    """Check the rewrite as an exact identity of compact-induction elements."""
    rw = decompose_appC(g, monomial, r)
    mono = x_r(r) if monomial in ("x^r", "x") else y_r(r)
    lhs = elementary(g, mono, r, k)
    rhs = act(rw.h, seed(g.p, r, rw.side, k)).scale(rw.scalar)
    return lhs == rhs


# -- invariance -----------------------------------------------------------------------

@dataclass
class InvarianceEntry:
    generator: str
    status: str  # exact_fixed | fixed_mod_image | not_fixed_at_bound
    bound: int | None = None
    witness: CIndElt | None = dc_field(default=None, repr=False)


def invariance_report(ctx: QuotientCtx, v: CIndElt, gens: list[GMat], names: list[str] | None = None,
                      max_bound: int | None = None) -> list[InvarianceEntry]:
    """For each generator: exactly fixed, fixed modulo Im(T - λ) (with witness), or not found."""
    names = names or [repr(g) for g in gens]
    top = ctx.n + ctx.R - 1 if max_bound is None else max_bound
    out = []
    for name, g in zip(names, gens):
        diff = act(g, v) - v
        if diff.is_zero():
            out.append(InvarianceEntry(name, "exact_fixed"))
            continue
        found = None
        start = max(diff.radius() - 1, 0)
        for b in range(start, top + 1):
            w = image_solve(diff, ctx.lam, b)
            if w is not None:
                found = (b, w)
                break
        if found:
            out.append(InvarianceEntry(name, "fixed_mod_image", found[0], found[1]))
        else:
            out.append(InvarianceEntry(name, "not_fixed_at_bound", top))
    return out


def iwahori_character(v: CIndElt) -> int:
    """c mod (p-1) with t(λ)·v = λ^c v for every λ in F_p^x."""
    p, F = v.p, v.F
    g = primitive_root(p)
    tv = act(torus(p, g), v)
    # find the scalar relating tv to v
    vert = next(iter(v.support))
    w, tw = v.support[vert], tv.support.get(vert)
    if tw is None:
        raise NotEigen("support moved under the torus")
    i = next(j for j, c in enumerate(w) if c)
    scal = F.div(tw[i], w[i])
    if tv != v.scale(scal):
        raise NotEigen("not an eigenvector of t(g)")
    exps = [c for c in range(p - 1) if pow(g, c, p) == scal]
    if not exps:
        raise NotEigen("eigenvalue outside F_p")
    c = exps[0]
    for lam in range(1, p):
        if act(torus(p, lam), v) != v.scale(pow(lam, c, p)):
            raise NotEigen(f"t({lam}) does not act by λ^{c}")
    return c


# -- isomorphism bookkeeping -------------------------------------------------------

def _check_params(p: int, r: int, z: str) -> None:
    if not 0 <= r <= p - 1:
        raise RangeError(f"r = {r} outside 0..{p - 1}")
    if z not in (INF, ZERO):
        raise RangeError(f"side {z!r} must be 'infty' or 'zero'")


def iwahori_exponent(p: int, r: int, z: str) -> int:
    return r % (p - 1) if z == INF else (-r) % (p - 1)


def ks_invariant_dim(p: int, r: int, z: str) -> int:
    """dim π_{r,z}^{K_S}: 1 exactly for (0, ∞) and (p-1, 0)."""
    return 1 if (r, z) in ((0, INF), (p - 1, ZERO)) else 0


def canonical_param(p: int, r: int, z: str) -> tuple[int, str]:
    """Representative of the isomorphism class: (r, ∞) for π_{r,∞} ≃ π_{p-1-r,0}."""
    _check_params(p, r, z)
    return (r, INF) if z == INF else (p - 1 - r, INF)


def decide_isomorphism(p: int, r: int, z: str, s: int, y: str) -> tuple[str, str]:
    """(verdict, criterion) for π_{r,z} versus π_{s,y}."""
    _check_params(p, r, z)
    _check_params(p, s, y)
    if z == y:
        iso = r == s
    else:
        iso = r + s == p - 1
    if iso:
        return "isomorphic", ("identity" if (r, z) == (s, y) else "isomp1")
    if iwahori_exponent(p, r, z) != iwahori_exponent(p, s, y):
        return "not_isomorphic", "iwahori_exponent"
    return "not_isomorphic", "KS_invariants"


def packet(p: int, r: int) -> frozenset:
    """Isomorphism classes of the two SL2 pieces π_{r,∞}, π_{r,0} of π(r, 0, 1).

    Each class is named by its canonical parameter (s, "infty").
    """
    if not 0 <= r <= p - 1:
        raise RangeError(f"r = {r} outside 0..{p - 1}")
    return frozenset({canonical_param(p, r, INF), canonical_param(p, r, ZERO)})
