"""Exact GL2(Q_p) elements, subgroups, the Bruhat-Tits tree and word enumeration."""
from .gmat import (GMat, UnknownName, alpha, alpha0, beta, beta0, diag, identity, j_mat, lower, membership,
                   omega, parse_matrix, s_mat, s_prime, torus, u)
from .tree import Vertex, ball, ball_size, canonical, distance, kz_factor, neighbors, origin, vertex_of
from .words import (Alphabet, alphabet, appc_alphabet, closure_mod, generators, gl2_default_alphabet,
                    least_nonsquare, reduce_mod, sl2_default_alphabet, word_enum)

__all__ = [
    "GMat", "UnknownName", "alpha", "alpha0", "beta", "beta0", "diag", "identity", "j_mat", "lower",
    "membership", "omega", "parse_matrix", "s_mat", "s_prime", "torus", "u",
    "Vertex", "ball", "ball_size", "canonical", "distance", "kz_factor", "neighbors", "origin", "vertex_of",
    "Alphabet", "alphabet", "appc_alphabet", "closure_mod", "generators", "gl2_default_alphabet",
    "least_nonsquare", "reduce_mod", "sl2_default_alphabet", "word_enum",
]
