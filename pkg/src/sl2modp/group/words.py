"""Generator alphabets, bounded word enumeration and named generator sets."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra.field import primitive_root
from .gmat import (GMat, UnknownName, alpha, alpha0, beta, diag, identity, lower, membership, omega,
                   s_mat, torus, u)


@dataclass(frozen=True)
class Alphabet:
    """Named letters, each checked against the subgroup it is declared for."""

    names: tuple[str, ...]
    letters: tuple[GMat, ...]
    subgroup: str = "GL2"

    def __post_init__(self) -> None:
        if len(self.names) != len(self.letters):
            raise ValueError("names and letters differ in length")
        for n, g in zip(self.names, self.letters):
            if not membership(g, self.subgroup):
                raise ValueError(f"letter {n} = {g} is not in {self.subgroup}")

    def extended(self, names, letters, subgroup: str | None = None) -> "Alphabet":
        return Alphabet(self.names + tuple(names), self.letters + tuple(letters), subgroup or self.subgroup)

    def __len__(self) -> int:
        return len(self.letters)


def word_enum(alphabet: Alphabet, L: int) -> list[GMat]:
    """All distinct products of at most L letters, I2 first, then by length and key."""
    if L < 0:
        raise ValueError("word length must be >= 0")
    p = alphabet.letters[0].p if alphabet.letters else 3
    one = identity(p)
    seen = {one}
    out = [one]
    frontier = [one]
    for _ in range(L):
        nxt = set()
        for w in frontier:
            for g in alphabet.letters:
                h = w * g
                if h not in seen:
                    nxt.add(h)
        layer = sorted(nxt, key=GMat.key)
        seen.update(layer)
        out.extend(layer)
        frontier = layer
    return out


def sl2_default_alphabet(p: int) -> Alphabet:
    return Alphabet(("s", "alpha0", "alpha0^-1", "u(1)", "u(1/p)"),
                    (s_mat(p), alpha0(p), alpha0(p).inv(), u(p, 1), u(p, Fraction(1, p))), "SL2")


def gl2_default_alphabet(p: int) -> Alphabet:
    return Alphabet(("alpha", "beta", "omega", "s", "u(1)"),
                    (alpha(p), beta(p), omega(p), s_mat(p), u(p, 1)), "GL2")


def least_nonsquare(p: int) -> int:
    return next(x for x in range(2, p) if pow(x, (p - 1) // 2, p) == p - 1)


def appc_alphabet(p: int) -> Alphabet:
    """The GL2 alphabet extended by diag(u, 1) with u the least non-square unit."""
    n = least_nonsquare(p)
    return gl2_default_alphabet(p).extended((f"diag({n},1)",), (diag(p, n, 1),))


ALPHABETS = {
    "SL2_default": sl2_default_alphabet,
    "GL2_default": gl2_default_alphabet,
    "appC": appc_alphabet,
}


def alphabet(name: str, p: int) -> Alphabet:
    try:
        return ALPHABETS[name](p)
    except KeyError:
        raise UnknownName(name) from None


def generators(name: str, p: int) -> list:
    """Named generator sets: IS1, I1, torus_units, R1, R2, SL2_default_alphabet,
    GL2_default_alphabet."""
    if name == "IS1":
        return [u(p, 1), lower(p, p), torus(p, 1 + p)]
    if name == "I1":
        return generators("IS1", p) + [diag(p, 1 + p, 1)]
    if name == "torus_units":
        return [torus(p, primitive_root(p))]
    if name == "R1":
        return list(range(p))
    if name == "R2":
        return list(range(p * p))
    if name == "SL2_default_alphabet":
        return list(sl2_default_alphabet(p).letters)
    if name == "GL2_default_alphabet":
        return list(gl2_default_alphabet(p).letters)
    raise UnknownName(name)


def reduce_mod(g: GMat, m: int) -> tuple[int, int, int, int]:
    """Image of an integral matrix in M2(Z/p^m)."""
    from ..algebra.pexact import residue_mod
    return tuple(residue_mod(x, g.p, m) for x in g.entries)


def closure_mod(gens: list[GMat], m: int) -> set[tuple[int, int, int, int]]:
    """The finite group generated by the images of integral gens in GL2(Z/p^m)."""
    if not gens:
        return set()
    p = gens[0].p
    mod = p**m
    imgs = [reduce_mod(g, m) for g in gens]

    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % mod, (a * f + b * h) % mod, (c * e + d * g) % mod, (c * f + d * h) % mod)

    one = (1, 0, 0, 1)
    seen = {one}
    stack = [one]
    while stack:
        x = stack.pop()
        for y in imgs:
            z = mul(x, y)
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return seen
