"""Principal series: the J(η) model, the P^1 model and Steinberg, and their identities."""
from .identities import (
    GenerationReport, IdentityResult, RestrictionReport, constant_one, generation_check,
    identity_suite, is_invariant, iwahori_gens, pro_p_gens, restrict_gl2, seulquo_haar_check,
)
from .jfunc import (
    CharacterMismatch, JFunc, WindowOverflow, act_ps, act_s, act_torus, act_u, eval_ind,
    from_function, indicator, make_basis, parse_jfunc, sample_points, zero,
)
from .p1 import P1Func, SteinbergInvariants, cell_action, cells, sp_invariants

__all__ = [
    "GenerationReport", "IdentityResult", "RestrictionReport", "constant_one", "generation_check",
    "identity_suite", "is_invariant", "iwahori_gens", "pro_p_gens", "restrict_gl2", "seulquo_haar_check",
    "CharacterMismatch", "JFunc", "WindowOverflow", "act_ps", "act_s", "act_torus", "act_u", "eval_ind",
    "from_function", "indicator", "make_basis", "parse_jfunc", "sample_points", "zero",
    "P1Func", "SteinbergInvariants", "cell_action", "cells", "sp_invariants",
]
