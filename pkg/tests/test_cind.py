from __future__ import annotations

import random
from collections import defaultdict

import pytest

from sl2modp.algebra import Echelon, field
from sl2modp.cind import (
    INF, ZERO, CIndElt, NotEigen, QuotientCtx, RangeError, SupportOverflow, act, appC_verify,
    decide_isomorphism, decompose_appC, elementary, generated_span, hecke_apply, image_solve,
    invariance_report, iwahori_character, packet, reduced_pair_rank, span_echelon, v_inf, v_lambda,
    v_zero, x_r, y_r,
)
from sl2modp.group import GMat, alpha, beta, diag, generators, identity, s_mat, s_prime, torus, u
from sl2modp.group.tree import ball, canonical, kz_factor
from sl2modp.group.words import appc_alphabet, least_nonsquare, sl2_default_alphabet, word_enum
from sl2modp.weights import kz_residue, sigma_apply


def random_K(rng, p):
    while True:
        a, b, c, d = (rng.randint(-12, 12) for _ in range(4))
        if (a * d - b * c) % p:
            return GMat(p, a, b, c, d)


def random_elt(rng, p, r, radius, nverts=4, k=1):
    verts = sorted(ball(p, radius), key=lambda v: v.sort_key())
    sup = {}
    for v in rng.sample(verts, min(nverts, len(verts))):
        sup[v] = tuple(rng.randrange(p) for _ in range(r + 1))
    return CIndElt(p, r, 2, sup)


# -- an independent oracle for T -------------------------------------------------------
# T[g, w] = Σ_h [g h, φ(h^{-1}) w] over the p+1 cosets h of KZ α KZ / KZ, where φ(h^{-1})
# is computed straight from the definition φ(k1 α k2) = σ(k1) P σ(k2), P = projection on x^r.

def oracle_T(f: CIndElt) -> CIndElt:
    p, r = f.p, f.r
    F = f.F
    cosets = [GMat(p, p, lam, 0, 1) for lam in range(p)] + [alpha(p)]
    out = CIndElt.zero(p, r, f.k)
    for v, w in f.support.items():
        g = v.rep()
        for h in cosets:
            # h^{-1} = k1 α k2 with k1, k2 in KZ; find them by brute force over a small search
            hinv = h.inv()
            k1, k2 = _double_coset(hinv)
            w2 = sigma_apply(p, r, kz_residue(k2), w, F)
            proj = tuple([w2[0]] + [0] * r)
            w3 = sigma_apply(p, r, kz_residue(k1), proj, F)
            out = out + elementary(g * h, w3, r, f.k)
    return out


def _double_coset(m: GMat):
    p = m.p
    a = alpha(p)
    for k2 in [identity(p), s_mat(p)] + [u(p, x) for x in range(p)] + [GMat(p, 1, 0, x, 1) for x in range(p)]:
        k1 = m * k2.inv() * a.inv()
        c, kk = kz_factor(k1)
        if canonical(c).distance == 0:
            return k1, k2
    raise AssertionError("no factorization found")


@pytest.mark.parametrize("p", [3, 5])
def test_hecke_matches_definition(p):
    rng = random.Random(11 * p)
    for r in range(p):
        for _ in range(8):
            f = random_elt(rng, p, r, 2, 3)
            assert hecke_apply(f) == oracle_T(f)


@pytest.mark.parametrize("p", [3, 5])
def test_parity_exchange_both_directions(p):
    rng = random.Random(p)
    for r in range(p):
        for parity in (0, 1):
            for _ in range(20):
                f = random_elt(rng, p, r, 3, 3)
                f = f.parity_split()[parity]
                if f.is_zero():
                    continue
                Tf = hecke_apply(f)
                assert all(v.distance % 2 != parity for v in Tf.support)
                tau = hecke_apply(f, "tau")
                assert all(v.distance % 2 == parity for v in tau.support)


def test_parity_split_is_unique():
    rng = random.Random(0)
    f = random_elt(rng, 3, 2, 3, 8)
    even, odd = f.parity_split()
    assert even + odd == f
    assert all(v.distance % 2 == 0 for v in even.support)
    assert all(v.distance % 2 == 1 for v in odd.support)


@pytest.mark.parametrize("p", [3, 5])
def test_hecke_commutes_with_G(p):
    rng = random.Random(5 * p)
    for _ in range(100):
        r = rng.randrange(p)
        k = random_K(rng, p)
        f = random_elt(rng, p, r, 2, 3)
        assert act(k, hecke_apply(f)) == hecke_apply(act(k, f))
    for g in (alpha(p), beta(p), diag(p, p, 1)):
        f = random_elt(rng, p, 1, 2, 3)
        assert act(g, hecke_apply(f)) == hecke_apply(act(g, f))


@pytest.mark.parametrize("p,r,n", [(3, 0, 2), (3, 2, 3), (5, 1, 2)])
def test_hecke_is_injective_on_balls(p, r, n):
    F = field(p)
    ech = Echelon(F)
    from sl2modp.cind.quotient import Coordinates
    coords = Coordinates(p, r, n + 1)
    for v in ball(p, n):
        for i in range(r + 1):
            w = [0] * (r + 1)
            w[i] = 1
            ech.add(coords.vec(hecke_apply(CIndElt(p, r, 2, {v: tuple(w)}))))
    assert ech.rank == len(ball(p, n)) * (r + 1)


def test_action_examples():
    p, r = 5, 3
    assert act(identity(p), v_zero(p, r)) == v_zero(p, r)
    assert elementary(identity(p), y_r(r), r) == elementary(s_mat(p), x_r(r), r).scale(pow(-1, r, p)) or \
        elementary(identity(p), y_r(r), r) == elementary(s_mat(p), x_r(r), r)
    assert elementary(alpha(p), y_r(r), r) == v_zero(p, r)
    g = GMat(p, 7, 3, 2, 1)
    f = v_lambda(p, r, 2)
    assert act(g * beta(p), f) == act(g, act(beta(p), f))


# -- truncated quotient -------------------------------------------------------------------

@pytest.fixture(scope="module")
def ctx3():
    return QuotientCtx(3, 1, 0, 3, 1)


def test_image_reduces_to_zero(ctx3):
    rng = random.Random(2)
    for _ in range(20):
        g = random_elt(rng, 3, 1, 2, 3)
        assert ctx3.reduce(hecke_apply(g)).nnz == 0


def test_reduce_is_linear(ctx3):
    rng = random.Random(3)
    F = field(3, 2)
    for _ in range(20):
        f, g = random_elt(rng, 3, 1, 3, 4), random_elt(rng, 3, 1, 3, 4)
        c = rng.randrange(1, 9)
        lhs = ctx3.reduce(f.combine(g, c))
        rhs = ctx3.reduce(f).add(ctx3.reduce(g).scale(c, F), F)
        assert lhs == rhs


def test_reduce_examples(ctx3):
    assert ctx3.reduce(v_inf(3, 1)).nnz > 0
    with pytest.raises(SupportOverflow):
        ctx3.reduce(CIndElt(3, 1, 2, {next(v for v in ball(3, 5) if v.distance == 5): (1, 0)}))


def test_quotient_is_deterministic_and_persistable(ctx3):
    again = QuotientCtx.from_basis(3, 1, 0, 3, 1, 2, ctx3.basis_matrix())
    f = random_elt(random.Random(4), 3, 1, 3, 5)
    assert again.reduce(f) == ctx3.reduce(f)


def test_quotient_with_nonzero_eigenvalue():
    ctx = QuotientCtx(3, 0, 1, 2, 1)
    g = random_elt(random.Random(8), 3, 0, 1, 2)
    assert ctx.reduce(hecke_apply(g, "T_minus_lambda", 1)).nnz == 0


def test_image_solve_round_trip():
    rng = random.Random(6)
    for p, r in ((3, 0), (3, 2), (5, 1)):
        for _ in range(5):
            g = random_elt(rng, p, r, 2, 3)
            target = hecke_apply(g)
            w = image_solve(target, 0, 2)
            assert w is not None and hecke_apply(w) == target
    assert image_solve(v_inf(3, 0), 0, 3) is None


def test_independence_of_invariant_vectors():
    for p in (3, 5):
        for r in range(p):
            assert reduced_pair_rank(QuotientCtx(p, r, 0, 3, 1)) == 2


# -- supersingular pieces -------------------------------------------------------------

def test_invariance_report_examples():
    p, r = 3, 1
    ctx = QuotientCtx(p, r, 0, 3, 1)
    gens = generators("IS1", p)
    rep = invariance_report(ctx, v_inf(p, r), gens, ["u(1)", "l(p)", "t(1+p)"])
    assert [e.status for e in rep] == ["exact_fixed"] * 3
    ctx0 = QuotientCtx(p, 0, 0, 3, 1)
    rep = invariance_report(ctx0, v_zero(p, 0), [s_prime(p)], ["s'"])
    assert rep[0].status == "not_fixed_at_bound" and rep[0].bound == 3
    rep = invariance_report(ctx0, v_inf(p, 0), [s_prime(p)], ["s'"])
    assert rep[0].status == "exact_fixed"


def test_invariance_mod_image_uses_witness():
    # v - T(w) + T(w) style: a translate that differs from v by an image element
    p, r = 3, 0
    ctx = QuotientCtx(p, r, 0, 3, 1)
    w = CIndElt(p, r, 2, {canonical(alpha(p)): (1,)})
    moved = v_inf(p, r) + hecke_apply(w)
    from sl2modp.cind.supersingular import InvarianceEntry
    diff = moved - v_inf(p, r)
    sol = image_solve(diff, 0, 1)
    assert sol is not None and hecke_apply(sol) == diff
    assert isinstance(InvarianceEntry("x", "fixed_mod_image", 1, sol), InvarianceEntry)


def test_iwahori_characters():
    for p in (3, 5, 7):
        for r in range(p):
            assert iwahori_character(v_inf(p, r)) == r % (p - 1)
            assert iwahori_character(v_zero(p, r)) == (-r) % (p - 1)
    with pytest.raises(NotEigen):
        iwahori_character(v_inf(5, 1) + v_zero(5, 1))


def test_generated_span_examples():
    p, r = 3, 1
    ctx = QuotientCtx(p, r, 0, 3, 1)
    A = sl2_default_alphabet(p)
    assert len(generated_span(ctx, v_inf(p, r), A, 0)) == 1
    with pytest.raises(ValueError):
        generated_span(ctx, v_inf(p, r), appc_alphabet(p), 1)


def test_rescle_small():
    p = 3
    A = sl2_default_alphabet(p)
    for r in range(p):
        ctx = QuotientCtx(p, r, 0, 3, 1)
        words = word_enum(A, 3)
        e1, _ = span_echelon(ctx, v_inf(p, r), A, 3, words)
        e2, _ = span_echelon(ctx, v_zero(p, r), A, 3, words)
        total = Echelon(ctx.F)
        for row in e1.rref() + e2.rref():
            total.add(row)
        assert total.rank == e1.rank + e2.rank


@pytest.mark.parametrize("p", [3, 5])
def test_mixed_seed_recovers_both_vectors(p):
    A = sl2_default_alphabet(p)
    for r in range(p):
        if 2 * r == p - 1:
            continue  # here π_{r,∞} ≃ π_{r,0} and the mixed vector need not separate them
        ctx = QuotientCtx(p, r, 0, 4, 1)
        ech, _ = span_echelon(ctx, v_lambda(p, r, 1), A, 3)
        assert ech.contains(ctx.reduce(v_inf(p, r)).entries)
        assert ech.contains(ctx.reduce(v_zero(p, r)).entries)


def test_appC_examples():
    p, r = 5, 3
    n = least_nonsquare(p)
    rw = decompose_appC(diag(p, n, 1), "x^r", r)
    assert rw.side == INF and rw.case == "nonsquare_unit" and rw.scalar == pow(n, r, p)
    assert rw.h == identity(p)
    rw = decompose_appC(alpha(p), "x^r", r)
    assert rw.side == ZERO and rw.case == "p_square"
    rw = decompose_appC(diag(p, 4, 9), "y^r", r)
    assert rw.side == INF and rw.case == "square"
    for g in word_enum(appc_alphabet(p), 2):
        for m in ("x^r", "y^r"):
            assert appC_verify(g, m, r)


def test_appC_all_det_classes_occur():
    p = 3
    cases = defaultdict(int)
    for g in word_enum(appc_alphabet(p), 3):
        cases[decompose_appC(g, "x^r", 1).case] += 1
    assert set(cases) == {"square", "nonsquare_unit", "p_square", "p_nonsquare"}


def test_decide_isomorphism_examples():
    p = 5
    for r in range(p):
        assert decide_isomorphism(p, r, INF, p - 1 - r, ZERO)[0] == "isomorphic"
    assert decide_isomorphism(p, 2, INF, 2, ZERO) == ("isomorphic", "isomp1")
    assert decide_isomorphism(p, 0, INF, 0, ZERO) == ("not_isomorphic", "KS_invariants")
    assert decide_isomorphism(p, 1, INF, 2, INF) == ("not_isomorphic", "iwahori_exponent")
    with pytest.raises(RangeError):
        decide_isomorphism(p, 5, INF, 0, INF)


def test_packet_examples():
    assert len(packet(5, 2)) == 1
    assert len(packet(5, 0)) == 2
    for p in (3, 5, 7, 11):
        for r in range(p):
            assert packet(p, r) == packet(p, p - 1 - r)
