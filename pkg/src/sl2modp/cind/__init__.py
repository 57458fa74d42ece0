"""Compact induction on the tree, Hecke operators and supersingular quotients."""
from .element import CIndElt, act, elementary, parity_split, v_inf, v_lambda, v_zero, x_r, y_r
from .hecke import hecke_apply, hecke_columns, hecke_T
from .quotient import Coordinates, QuotientCtx, SupportOverflow, image_solve, in_image, quotient_reduce
from .supersingular import (
    INF, ZERO, AppCRewrite, InvarianceEntry, NotEigen, RangeError, appC_verify, canonical_param,
    decide_isomorphism, decompose_appC, generated_span, invariance_report, iwahori_character,
    iwahori_exponent, ks_invariant_dim, packet, reduced_pair_rank, seed, span_echelon,
    SpanPair, span_pair, random_class, decomp_evidence,
)

__all__ = [
    "CIndElt", "act", "elementary", "parity_split", "v_inf", "v_lambda", "v_zero", "x_r", "y_r",
    "hecke_apply", "hecke_columns", "hecke_T",
    "Coordinates", "QuotientCtx", "SupportOverflow", "image_solve", "in_image", "quotient_reduce",
    "INF", "ZERO", "AppCRewrite", "InvarianceEntry", "NotEigen", "RangeError", "appC_verify",
    "canonical_param", "decide_isomorphism", "decompose_appC", "generated_span", "invariance_report",
    "iwahori_character", "iwahori_exponent", "ks_invariant_dim", "packet", "reduced_pair_rank",
    "seed", "span_echelon", "SpanPair", "span_pair", "random_class", "decomp_evidence",
]
