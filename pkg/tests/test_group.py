from __future__ import annotations

import random
from collections import deque
from fractions import Fraction

import pytest

from sl2modp.group import (
    GMat, UnknownName, alpha, alpha0, beta, beta0, ball, ball_size, canonical, closure_mod, diag, distance,
    generators, identity, kz_factor, lower, membership, neighbors, origin, parse_matrix, s_mat, torus, u,
    vertex_of, word_enum, Alphabet, sl2_default_alphabet,
)


def random_integral_unit_matrix(rng, p, lo=-20, hi=20):
    while True:
        a, b, c, d = (rng.randint(lo, hi) for _ in range(4))
        if (a * d - b * c) % p:
            return GMat(p, a, b, c, d)


def random_gl2(rng, p):
    while True:
        ents = [Fraction(rng.randint(-30, 30), p ** rng.randint(0, 2)) * p ** rng.randint(0, 2) for _ in range(4)]
        if ents[0] * ents[3] - ents[1] * ents[2] != 0:
            return GMat(p, *ents)


def test_membership_examples():
    p = 5
    assert membership(u(p, 1), "IS1")
    assert membership(s_mat(p), "KS") and not membership(s_mat(p), "IS")
    assert not membership(alpha0(p), "K")
    assert membership(GMat(p, p, 0, 0, p), "KZ") and membership(GMat(p, p, 0, 0, p), "Z")
    assert membership(lower(p, p), "IS1") and not membership(lower(p, 1), "I")
    assert membership(torus(p, 1 + p), "KSm", 1) and not membership(torus(p, 1 + p), "KSm", 2)
    assert membership(diag(p, 2, 3), "I") and not membership(diag(p, 2, 3), "I1")
    with pytest.raises(UnknownName):
        membership(u(p, 1), "nope")


def test_vertex_examples():
    p = 3
    v, d, par = vertex_of(identity(p))
    assert v == origin(p) and d == 0 and par == "even"
    assert vertex_of(alpha(p))[1:] == (1, "odd")
    assert vertex_of(GMat(p, p, 0, 0, p))[0] == origin(p)
    c, k = kz_factor(beta(p))
    assert c * k == beta(p) and membership(k, "KZ")
    assert canonical(beta(p)) == canonical(alpha(p))


def test_kz_factor_lattice_example():
    p = 3
    g = diag(p, p * p, 1) * u(p, p)
    c, k = kz_factor(g)
    assert c * k == g and membership(k, "KZ")
    # the column span of g is spanned by (p^2, 0) and (p^3, 1), i.e. by (p^2,0), (0,1)
    assert canonical(g).a == 2 and canonical(g).b == 0


@pytest.mark.parametrize("p", [3, 5])
def test_vertex_invariant_under_kz(p):
    rng = random.Random(p)
    for _ in range(200):
        g = random_gl2(rng, p)
        k = random_integral_unit_matrix(rng, p).scaled(Fraction(p) ** rng.randint(-2, 2))
        assert canonical(g * k) == canonical(g)
        c, kk = kz_factor(g)
        assert c * kk == g and membership(kk, "KZ")
        v, d, par = vertex_of(g)
        assert par == ("even" if g.det_valuation % 2 == 0 else "odd")
        assert d == int(g.det_valuation - 2 * g.min_valuation())


@pytest.mark.parametrize("p", [3, 5])
def test_distinct_classes_are_distinct(p):
    rng = random.Random(10 + p)
    for _ in range(200):
        g, h = random_gl2(rng, p), random_gl2(rng, p)
        same = membership(h.inv() * g, "KZ")
        assert (canonical(g) == canonical(h)) == same


def test_neighbors_regular_and_symmetric():
    for p in (3, 5):
        o = origin(p)
        assert len(set(neighbors(o))) == p + 1
        for v in ball(p, 3):
            ns = neighbors(v)
            assert len(set(ns)) == p + 1
            for w in ns:
                assert distance(v, w) == 1
                assert v in neighbors(w)
        x1 = canonical(alpha(p))
        assert o in neighbors(x1)


def test_ball_sizes_by_bfs():
    p = 3
    o = origin(p)
    dist = {o: 0}
    q = deque([o])
    while q:
        v = q.popleft()
        if dist[v] == 5:
            continue
        for w in neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    for n in range(6):
        assert sum(1 for d in dist.values() if d <= n) == ball_size(p, n) == len(ball(p, n))
    for v, d in dist.items():
        assert v.distance == d
    # sphere of radius 2 through two neighbor steps
    two = {w for v in neighbors(o) for w in neighbors(v)} - {o}
    assert len(two) == (p + 1) * p


def test_word_enum():
    p = 3
    A = Alphabet(("s",), (s_mat(p),), "SL2")
    assert word_enum(A, 0) == [identity(p)]
    assert set(word_enum(A, 2)) == {identity(p), s_mat(p), s_mat(p) * s_mat(p)}
    B = sl2_default_alphabet(p)
    prev = set()
    for L in range(4):
        out = word_enum(B, L)
        assert len(out) == len(set(out))
        assert len(out) <= sum(len(B) ** i for i in range(L + 1))
        assert prev <= set(out)
        prev = set(out)
    assert word_enum(B, 3) == word_enum(B, 3)


def test_alphabet_checks_membership():
    with pytest.raises(ValueError):
        Alphabet(("alpha",), (alpha(3),), "SL2")


def test_generators():
    p = 5
    assert generators("R1", p) == [0, 1, 2, 3, 4]
    assert generators("R2", p) == list(range(25))
    assert all(membership(g, "IS1") for g in generators("IS1", p))
    assert all(membership(g, "I1") for g in generators("I1", p))
    with pytest.raises(UnknownName):
        generators("bogus", p)


def test_is1_generators_close_up_mod_p_squared():
    p = 3
    closure = closure_mod(generators("IS1", p), 2)
    mod = p * p
    direct = {(a, b, c, d) for a in range(mod) for b in range(mod) for c in range(mod) for d in range(mod)
              if (a * d - b * c) % mod == 1 and a % p == 1 and d % p == 1 and c % p == 0}
    assert closure == direct and len(direct) == p**4


def test_named_relations():
    p = 5
    assert beta0(p) == s_mat(p) * alpha0(p)
    assert s_mat(p) == alpha0(p) * beta0(p)
    assert beta(p) == alpha(p) * GMat(p, 0, 1, 1, 0)


def test_parse_matrix():
    g = parse_matrix("[[1@0, 0@0],[0@0, 1@1]]", 5)
    assert g == alpha(5)
    g = parse_matrix("[[-1/2@-1, 3@0],[0@0, 1@0]]", 3)
    assert g.a == Fraction(-1, 6)
    assert parse_matrix(g.literal(), 3) == g
    with pytest.raises(ValueError):
        parse_matrix("[[1, 2],[3, 4]]", 3)
