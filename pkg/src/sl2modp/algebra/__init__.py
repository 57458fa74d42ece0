"""Exact scalars and sparse linear algebra over finite fields."""
from .field import GF, Fq, ContextMismatch, field, fq_ops, fq_sqrt, least_irreducible, primitive_root
from .pexact import PExact, mod_zp, pexact_ops, residue_mod, unit_mod, unit_part, valuation
from .sparse import (Echelon, ShapeError, SparseMat, SparseVec, dump_matrix, fixed_space, intersect,
                     kernel, load_matrix, rank_span, solve)

__all__ = [
    "GF", "Fq", "ContextMismatch", "field", "fq_ops", "fq_sqrt", "least_irreducible", "primitive_root",
    "PExact", "mod_zp", "pexact_ops", "residue_mod", "unit_mod", "unit_part", "valuation",
    "Echelon", "ShapeError", "SparseMat", "SparseVec", "dump_matrix", "fixed_space", "intersect",
    "kernel", "load_matrix", "rank_span", "solve",
]
