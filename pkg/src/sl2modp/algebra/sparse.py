"""Sparse vectors, matrices and elimination over F_{p^k}.

Vectors are dictionaries ``index -> nonzero field element``.  Elimination uses
a leading-term echelon: the pivot of a vector is its smallest index, pivots
are kept normalized to 1, and a vector is reduced against stored pivots until
its leading index is free.  Callers choose the coordinate order, which lets
them steer pivots (for instance outer tree vertices first).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from typing import Iterable

from .field import GF


class ShapeError(ValueError):
    """Dimension mismatch between sparse operands."""


@dataclass
class SparseVec:
    dim: int
    entries: dict[int, int] = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        self.entries = {i: v for i, v in self.entries.items() if v}
        if any(not 0 <= i < self.dim for i in self.entries):
            raise ShapeError("index out of range")

    @classmethod
    def from_dense(cls, values: Iterable[int]) -> "SparseVec":
        values = list(values)
        return cls(len(values), {i: v for i, v in enumerate(values) if v})

    def to_dense(self) -> list[int]:
        out = [0] * self.dim
        for i, v in self.entries.items():
            out[i] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def add(self, other: "SparseVec", F: GF) -> "SparseVec":
        if other.dim != self.dim:
            raise ShapeError("dimension mismatch")
        out = dict(self.entries)
        F.axpy(out, 1, other.entries)
        return SparseVec(self.dim, out)

    def scale(self, c: int, F: GF) -> "SparseVec":
        return SparseVec(self.dim, F.scale(c, self.entries))

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseVec) and self.dim == other.dim and self.entries == other.entries


class SparseMat:
    """Column-stored sparse matrix."""

    def __init__(self, rows: int, cols: int, columns: list[dict[int, int]] | None = None):
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise ShapeError("column count mismatch")
        self.columns = [{i: v for i, v in c.items() if v} for c in columns]
        for c in self.columns:
            if any(not 0 <= i < rows for i in c):
                raise ShapeError("row index out of range")

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, int]], F: GF) -> "SparseMat":
        columns: list[dict[int, int]] = [{} for _ in range(cols)]
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ShapeError("entry out of range")
            columns[c][r] = F.add(columns[c].get(r, 0), v)
        return cls(rows, cols, columns)

    @classmethod
    def from_dense(cls, data: list[list[int]]) -> "SparseMat":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        columns = [{r: data[r][c] for r in range(rows) if data[r][c]} for c in range(cols)]
        return cls(rows, cols, columns)

    @classmethod
    def identity(cls, n: int) -> "SparseMat":
        return cls(n, n, [{i: 1} for i in range(n)])

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                out[r][c] = v
        return out

    def entries(self) -> list[tuple[int, int, int]]:
        return sorted((r, c, v) for c, col in enumerate(self.columns) for r, v in col.items())

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def matvec(self, x: SparseVec, F: GF) -> SparseVec:
        if x.dim != self.cols:
            raise ShapeError(f"matvec: {self.cols} columns vs vector of dim {x.dim}")
        out: dict[int, int] = {}
        for j, v in x.entries.items():
            F.axpy(out, v, self.columns[j])
        return SparseVec(self.rows, out)

    def matmul(self, other: "SparseMat", F: GF) -> "SparseMat":
        if self.cols != other.rows:
            raise ShapeError("matmul shape mismatch")
        cols = []
        for col in other.columns:
            out: dict[int, int] = {}
            for j, v in col.items():
                F.axpy(out, v, self.columns[j])
            cols.append(out)
        return SparseMat(self.rows, other.cols, cols)

    def add(self, other: "SparseMat", F: GF, scale: int = 1) -> "SparseMat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("add shape mismatch")
        cols = []
        for a, b in zip(self.columns, other.columns):
            out = dict(a)
            F.axpy(out, scale, b)
            cols.append(out)
        return SparseMat(self.rows, self.cols, cols)

    def transpose(self) -> "SparseMat":
        cols: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                cols[r][c] = v
        return SparseMat(self.cols, self.rows, cols)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseMat) and (self.rows, self.cols) == (other.rows, other.cols)
                and self.columns == other.columns)


class Echelon:
    """Incremental leading-term echelon form of a growing set of vectors.

    With ``track=True`` every stored vector remembers its expression as a
    combination of the tagged inputs, which yields solve witnesses and kernels.
    """

    def __init__(self, F: GF, track: bool = False):
        self.F = F
        self.track = track
        self.pivots: dict[int, dict[int, int]] = {}
        self.combos: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _lead_reduce(self, vec: dict[int, int], combo: dict | None) -> None:
        F, pivots = self.F, self.pivots
        while vec:
            m = min(vec)
            row = pivots.get(m)
            if row is None:
                return
            c = F.neg(vec[m])
            F.axpy(vec, c, row)
            if combo is not None:
                F.axpy(combo, c, self.combos[m])

    def reduce(self, vec: dict[int, int], full: bool = False) -> dict[int, int]:
        """Residual of ``vec`` modulo the stored span.

        The leading-term residual is zero exactly when vec is in the span.  The
        full residual has zeros at every pivot index and is therefore a unique
        normal form for the coset vec + span.
        """
        vec = dict(vec)
        if not full:
            self._lead_reduce(vec, None)
            return vec
        return self._full_reduce(vec, None)

    def _full_reduce(self, vec: dict[int, int], combo: dict | None) -> dict[int, int]:
        F, pivots = self.F, self.pivots
        heap = [i for i in vec if i in pivots]
        heapq.heapify(heap)
        last = None
        while heap:
            i = heapq.heappop(heap)
            if i == last:
                continue
            last = i
            c = vec.get(i)
            if not c:
                continue
            row = pivots[i]
            c = F.neg(c)
            F.axpy(vec, c, row)
            if combo is not None:
                F.axpy(combo, c, self.combos[i])
            for j in row:
                if j > i and j in pivots and j in vec:
                    heapq.heappush(heap, j)
        return vec

    def add(self, vec: dict[int, int], tag=None) -> bool:
        """Insert a vector; return True when it enlarged the span."""
        vec = dict(vec)
        combo = None
        if self.track:
            combo = {tag: 1}
        self._lead_reduce(vec, combo)
        if not vec:
            self._last_relation = combo
            return False
        m = min(vec)
        inv = self.F.inv(vec[m])
        self.pivots[m] = self.F.scale(inv, vec)
        if self.track:
            self.combos[m] = self.F.scale(inv, combo)
        return True

    def contains(self, vec: dict[int, int]) -> bool:
        v = dict(vec)
        self._lead_reduce(v, None)
        return not v

    def express(self, vec: dict[int, int]) -> dict | None:
        """Combination of tagged inputs equal to vec, or None if vec is outside the span."""
        if not self.track:
            raise ValueError("express needs a tracking echelon")
        v = dict(vec)
        combo: dict = {}
        self._lead_reduce(v, combo)
        if v:
            return None
        return {t: self.F.neg(c) for t, c in combo.items() if c}

    def basis(self) -> list[dict[int, int]]:
        return [self.pivots[m] for m in sorted(self.pivots)]

    def rref(self) -> list[dict[int, int]]:
        """Reduced echelon basis: every pivot column is zero in the other rows."""
        out = {}
        for m in sorted(self.pivots, reverse=True):
            row = dict(self.pivots[m])
            for j in sorted(k for k in row if k != m and k in out):
                c = row.get(j)
                if c:
                    self.F.axpy(row, self.F.neg(c), out[j])
            out[m] = row
        return [out[m] for m in sorted(out)]


def _check_dims(vectors: list[SparseVec]) -> int:
    dims = {v.dim for v in vectors}
    if len(dims) > 1:
        raise ShapeError(f"vectors of different dimensions {sorted(dims)}")
    return dims.pop() if dims else 0


def solve(A: SparseMat, b: SparseVec, F: GF) -> SparseVec | None:
    """Some x with A x = b, or None when the system is inconsistent."""
    if b.dim != A.rows:
        raise ShapeError(f"solve: {A.rows} rows vs rhs of dim {b.dim}")
    ech = Echelon(F, track=True)
    for j, col in enumerate(A.columns):
        ech.add(col, tag=j)
    combo = ech.express(b.entries)
    if combo is None:
        return None
    return SparseVec(A.cols, combo)


def kernel(A: SparseMat, F: GF) -> list[SparseVec]:
    """Basis of the null space of A."""
    ech = Echelon(F, track=True)
    out = []
    for j, col in enumerate(A.columns):
        if not ech.add(col, tag=j):
            out.append(SparseVec(A.cols, dict(ech._last_relation)))
    return out


def rank_span(vectors: list[SparseVec], op: str, F: GF, other: list[SparseVec] | None = None):
    """rank, reduced echelon basis, or intersection of two spans."""
    dim = _check_dims(vectors + (other or []))
    if op == "rank":
        ech = Echelon(F)
        for v in vectors:
            ech.add(v.entries)
        return ech.rank
    if op == "basis":
        ech = Echelon(F)
        for v in vectors:
            ech.add(v.entries)
        return [SparseVec(dim, r) for r in ech.rref()]
    if op == "intersect":
        if other is None:
            raise ValueError("intersect needs a second list of vectors")
        return [SparseVec(dim, r) for r in intersect(
            [v.entries for v in vectors], [v.entries for v in other], dim, F)]
    raise ValueError(f"unknown op {op!r}")


def intersect(U: list[dict[int, int]], V: list[dict[int, int]], dim: int, F: GF) -> list[dict[int, int]]:
    """Zassenhaus: echelonize (u|u) and (v|0); rows with empty left half span U ∩ V."""
    ech = Echelon(F)
    for u in U:
        row = dict(u)
        row.update({dim + i: c for i, c in u.items()})
        ech.add(row)
    for v in V:
        ech.add(dict(v))
    # with smallest-index pivots, the span elements with zero left half are
    # spanned by the stored rows whose pivot sits in the right half
    out = []
    for m in sorted(ech.pivots):
        if m >= dim:
            out.append({i - dim: c for i, c in ech.pivots[m].items()})
    sub = Echelon(F)
    for r in out:
        sub.add(r)
    return sub.rref()


def fixed_space(operators: list[SparseMat], F: GF, dim: int | None = None) -> list[SparseVec]:
    """Basis of the common fixed vectors of the listed square operators."""
    for M in operators:
        if M.rows != M.cols:
            raise ShapeError("fixed_space needs square operators")
    if not operators:
        if dim is None:
            raise ShapeError("dimension required for an empty operator list")
        return [SparseVec(dim, {i: 1}) for i in range(dim)]
    n = operators[0].rows
    if any(M.rows != n for M in operators):
        raise ShapeError("operators of different sizes")
    # stack (M - I) vertically: row index block b*n + i
    columns: list[dict[int, int]] = [{} for _ in range(n)]
    for b, M in enumerate(operators):
        for j in range(n):
            col = dict(M.columns[j])
            col[j] = F.sub(col.get(j, 0), 1)
            for i, v in col.items():
                if v:
                    columns[j][b * n + i] = v
    stacked = SparseMat(n * len(operators), n, columns)
    basis = kernel(stacked, F)
    ech = Echelon(F)
    for v in basis:
        ech.add(v.entries)
    return [SparseVec(n, r) for r in ech.rref()]


# -- text format -----------------------------------------------------------

def dump_matrix(A: SparseMat, F: GF) -> str:
    """Header ``p k rows cols nnz`` then one ``row col c0 .. c(k-1)`` line per entry."""
    lines = [f"{F.p} {F.k} {A.rows} {A.cols} {A.nnz}"]
    for r, c, v in A.entries():
        lines.append(" ".join([str(r), str(c)] + [str(d) for d in F._digits(v)]))
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> tuple[SparseMat, int, int]:
    """Parse the text format; returns (matrix, p, k)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    head = lines[0].split()
    if len(head) != 5:
        raise ValueError("bad header")
    p, k, rows, cols, nnz = map(int, head)
    if len(lines) - 1 != nnz:
        raise ValueError(f"header announces {nnz} entries, found {len(lines) - 1}")
    columns: list[dict[int, int]] = [{} for _ in range(cols)]
    for ln in lines[1:]:
        parts = list(map(int, ln.split()))
        if len(parts) != 2 + k:
            raise ValueError(f"bad entry line {ln!r}")
        r, c, *digits = parts
        if any(not 0 <= d < p for d in digits):
            raise ValueError(f"coefficient out of range in {ln!r}")
        v = sum(d * p**i for i, d in enumerate(digits))
        if not (0 <= r < rows and 0 <= c < cols) or v == 0 or r in columns[c]:
            raise ValueError(f"invalid entry {ln!r}")
        columns[c][r] = v
    return SparseMat(rows, cols, columns), p, k
