"""Exact based modules, group actions, quotients and equivariance certificates.

Matrices are sparse and column-major: column ``j`` holds the coordinates of
the image of basis vector ``j``.  Elimination is exact over Q or F_p with the
first nonzero column as pivot, so reduced forms are deterministic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, NotInvertibleError
from .fields import Q
from .perm import ClassFunction, Permutation, cycle_type_representative, partitions, word_search


def _axpy(target: dict, f, src: dict):
    """``target -= f * src`` in place, pruning zeros."""
    for k, v in src.items():
        nv = target.get(k, 0) - f * v
        if nv:
            target[k] = nv
        elif k in target:
            del target[k]


def row_reduce(rows: Sequence[dict]) -> dict:
    """Fully reduced row echelon form of sparse rows: ``{pivot column: row}``.

    Pivot rows are normalized (pivot entry 1) and contain no other pivot column.
    """
    pivots: dict = {}
    for raw in rows:
        row = {k: v for k, v in raw.items() if v}
        for c in [k for k in row if k in pivots]:
            f = row.get(c)
            if f:
                _axpy(row, f, pivots[c])
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        for prow in pivots.values():
            f = prow.get(p)
            if f:
                _axpy(prow, f, row)
        pivots[p] = row
    return dict(sorted(pivots.items()))


class Matrix:
    """Sparse exact matrix, stored by columns."""

    __slots__ = ("nrows", "ncols", "cols", "field")

    def __init__(self, nrows: int, ncols: int, cols: Sequence[dict], field=Q):
        if len(cols) != ncols:
            raise DomainError(f"expected {ncols} columns, got {len(cols)}")
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.cols = [{i: field(v) for i, v in c.items() if v} for c in cols]

    @classmethod
    def zeros(cls, nrows, ncols, field=Q):
        return cls(nrows, ncols, [{} for _ in range(ncols)], field)

    @classmethod
    def identity(cls, n, field=Q):
        return cls(n, n, [{j: 1} for j in range(n)], field)

    @classmethod
    def from_images(cls, images: Sequence[int], field=Q):
        """Permutation matrix sending basis vector j to basis vector images[j]."""
        n = len(images)
        return cls(n, n, [{images[j]: 1} for j in range(n)], field)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], field=Q):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(nrows, ncols, [{i: rows[i][j] for i in range(nrows) if rows[i][j]} for j in range(ncols)], field)

    def to_dense(self) -> list[list]:
        out = [[self.field.zero] * self.ncols for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.cols[j].get(i, self.field.zero)

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for j, x in vec.items():
            for i, v in self.cols[j].items():
                nv = out.get(i, 0) + v * x
                if nv:
                    out[i] = nv
                elif i in out:
                    del out[i]
        return out

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise DomainError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        return Matrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols], self.field)

    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            _axpy(c, -1, b)
            cols.append(c)
        return Matrix(self.nrows, self.ncols, cols, self.field)

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            _axpy(c, 1, b)
            cols.append(c)
        return Matrix(self.nrows, self.ncols, cols, self.field)

    def scale(self, s) -> Matrix:
        s = self.field(s)
        return Matrix(self.nrows, self.ncols, [{i: s * v for i, v in c.items()} for c in self.cols], self.field)

    def _same_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DomainError("shape mismatch")

    def transpose(self) -> Matrix:
        cols: list[dict] = [{} for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                cols[i][j] = v
        return Matrix(self.ncols, self.nrows, cols, self.field)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def entries(self):
        for j, c in enumerate(self.cols):
            for i, v in sorted(c.items()):
                yield i, j, v

    def trace(self):
        return sum((c.get(j, 0) for j, c in enumerate(self.cols)), self.field.zero)

    def rank(self) -> int:
        return len(row_reduce(self.cols))

    def inverse(self) -> Matrix:
        """Exact inverse of a square matrix, by reducing ``[A | I]`` row-wise."""
        n = self.nrows
        if n != self.ncols:
            raise DomainError("only square matrices are invertible")
        rows = [dict(self.transpose().cols[i]) for i in range(n)]
        for i in range(n):
            rows[i][n + i] = self.field.one
        red = row_reduce(rows)
        if any(p >= n for p in red) or len(red) != n:
            raise NotInvertibleError("matrix is singular")
        cols = [{k - n: v for k, v in red[i].items() if k >= n} for i in range(n)]
        return Matrix(n, n, cols, self.field).transpose()

    def max_abs_numerator(self) -> int:
        return max((self.field.numerator_size(v) for _, _, v in self.entries()), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.cols == other.cols
        )

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={sum(len(c) for c in self.cols)})"


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; basis pair (i, j) has index i * dim(b) + j."""
    cols = []
    for ja in range(a.ncols):
        for jb in range(b.ncols):
            col = {}
            for ia, va in a.cols[ja].items():
                for ib, vb in b.cols[jb].items():
                    col[ia * b.nrows + ib] = va * vb
            cols.append(col)
    return Matrix(a.nrows * b.nrows, a.ncols * b.ncols, cols, a.field)


def direct_sum(blocks: Sequence[Matrix]) -> Matrix:
    cols, row_off = [], 0
    for m in blocks:
        for c in m.cols:
            cols.append({i + row_off: v for i, v in c.items()})
        row_off += m.nrows
    return Matrix(row_off, len(cols), cols, blocks[0].field)


@dataclass
class BasedModule:
    """A vector space with an ordered basis of hashable labels."""

    field: object
    basis: list

    def __post_init__(self):
        self.basis = list(self.basis)
        self.index = {b: i for i, b in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise DomainError("basis labels are not unique")

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass
class GroupAction:
    """Matrices of a group action for listed generators.

    ``side='left'`` means ``rho(g * h) = rho(g) @ rho(h)``; a right action
    satisfies ``rho(g * h) = rho(h) @ rho(g)`` (opposite composition).
    """

    module: BasedModule
    generators: list
    side: str = "left"

    @property
    def perms(self) -> list[Permutation]:
        return [g for g, _ in self.generators]

    @property
    def matrices(self) -> list[Matrix]:
        return [m for _, m in self.generators]

    def word_matrix(self, word: Sequence[int]) -> Matrix:
        mats = self.matrices
        out = Matrix.identity(self.module.dim, self.module.field)
        seq = word if self.side == "left" else reversed(word)
        for k in seq:
            out = out @ mats[k]
        return out

    def matrix_of(self, g: Permutation) -> Matrix:
        words = word_search(self.perms, g.degree)
        if g not in words:
            raise DomainError(f"{g} is not in the group generated by the action's generators")
        return self.word_matrix(words[g])

    def check_coxeter(self) -> bool:
        """For adjacent transpositions s_1..s_{k}: s_i^2 = 1, (s_i s_{i+1})^3 = 1, far ones commute."""
        mats = self.matrices
        one = Matrix.identity(self.module.dim, self.module.field)
        for i, a in enumerate(mats):
            if a @ a != one:
                return False
            for j in range(i + 1, len(mats)):
                b = mats[j]
                if j == i + 1:
                    ab = a @ b
                    if ab @ ab @ ab != one:
                        return False
                elif a @ b != b @ a:
                    return False
        return True


@dataclass
class LinearMap:
    source: BasedModule
    target: BasedModule
    matrix: Matrix

    def __post_init__(self):
        if (self.matrix.nrows, self.matrix.ncols) != (self.target.dim, self.source.dim):
            raise DomainError("matrix shape does not match source/target dimensions")

    def __matmul__(self, other: LinearMap) -> LinearMap:
        return LinearMap(other.source, self.target, self.matrix @ other.matrix)


# ---------------------------------------------------------------------------
# Tensor products over a subgroup


class TensorQuotient:
    """``M (x)_H N`` as a quotient of the plain tensor space ``M (x) N``.

    The quotient basis consists of the classes of plain basis vectors
    ``m_i (x) n_j`` at non-pivot columns of the reduced relation matrix;
    ``basis`` labels are the pairs ``(M label, N label)`` of those
    representatives.
    """

    def __init__(self, left: BasedModule, right: BasedModule, relations: list[dict]):
        self.left = left
        self.right = right
        self.field = left.field
        self.relations = relations
        self.pivots = row_reduce(relations)
        nd = right.dim
        self.plain_dim = left.dim * nd
        self.reps = [c for c in range(self.plain_dim) if c not in self.pivots]
        self.quotient_index = {c: q for q, c in enumerate(self.reps)}
        self.module = BasedModule(self.field, [(left.basis[c // nd], right.basis[c % nd]) for c in self.reps])

    @property
    def dim(self) -> int:
        return len(self.reps)

    def plain_index(self, i: int, j: int) -> int:
        return i * self.right.dim + j

    def rep_pair(self, q: int) -> tuple[int, int]:
        return divmod(self.reps[q], self.right.dim)

    def project(self, vec: dict) -> dict:
        out: dict = {}
        qi = self.quotient_index
        for c, x in vec.items():
            if c in qi:
                terms = ((qi[c], x),)
            else:
                terms = ((qi[k], -x * w) for k, w in self.pivots[c].items() if k != c)
            for q, v in terms:
                nv = out.get(q, 0) + v
                if nv:
                    out[q] = nv
                elif q in out:
                    del out[q]
        return out

    def project_pure(self, i: int, j: int) -> dict:
        return self.project({self.plain_index(i, j): self.field.one})

    @property
    def projection(self) -> LinearMap:
        plain = BasedModule(self.field, [(a, b) for a in self.left.basis for b in self.right.basis])
        cols = [self.project({c: self.field.one}) for c in range(self.plain_dim)]
        return LinearMap(plain, self.module, Matrix(self.dim, self.plain_dim, cols, self.field))

    def induce_left(self, m: Matrix) -> Matrix:
        """Matrix on the quotient of ``a (x) 1`` for an endomorphism a of M commuting with H."""
        nd = self.right.dim
        cols = []
        for c in self.reps:
            i, j = divmod(c, nd)
            cols.append(self.project({a * nd + j: v for a, v in m.cols[i].items()}))
        return Matrix(self.dim, self.dim, cols, self.field)

    def induce_right(self, m: Matrix) -> Matrix:
        """Matrix on the quotient of ``1 (x) b`` for an endomorphism b of N commuting with H."""
        nd = self.right.dim
        cols = []
        for c in self.reps:
            i, j = divmod(c, nd)
            cols.append(self.project({i * nd + b: v for b, v in m.cols[j].items()}))
        return Matrix(self.dim, self.dim, cols, self.field)

    def kills_relations(self, plain_map: Matrix) -> bool:
        """Does a map defined on the plain tensor space factor through the quotient?"""
        return all(not plain_map.apply(row) for row in self.pivots.values())

    def restrict_to_reps(self, plain_map: Matrix) -> Matrix:
        return Matrix(plain_map.nrows, self.dim, [plain_map.cols[c] for c in self.reps], plain_map.field)


def tensor_over_subgroup(
    left: BasedModule,
    right_action: Sequence[Matrix],
    right: BasedModule,
    left_action: Sequence[Matrix],
) -> TensorQuotient:
    """``M (x)_H N`` for H given by aligned generator matrices.

    ``right_action[k]`` is the right action of generator k on M,
    ``left_action[k]`` its left action on N.  The relation space is spanned
    by ``m h (x) n - m (x) h n`` over generators and basis vectors; by
    linearity this already contains the relations for every word in the
    generators.
    """
    if left.field != right.field:
        raise DomainError(f"field mismatch: {left.field} vs {right.field}")
    if len(right_action) != len(left_action):
        raise DomainError("generator lists for the two sides are not aligned")
    nd = right.dim
    relations = []
    for R, L in zip(right_action, left_action):
        for i in range(left.dim):
            for j in range(nd):
                row: dict = {}
                for a, v in R.cols[i].items():
                    row[a * nd + j] = row.get(a * nd + j, 0) + v
                for b, v in L.cols[j].items():
                    row[i * nd + b] = row.get(i * nd + b, 0) - v
                row = {k: x for k, x in row.items() if x}
                if row:
                    relations.append(row)
    return TensorQuotient(left, right, relations)


# ---------------------------------------------------------------------------
# Certificates


@dataclass
class Certificate:
    source_dim: int
    target_dim: int
    rank: int
    residuals: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    require_bijective: bool = True

    @property
    def bijective(self) -> bool:
        return self.source_dim == self.target_dim == self.rank

    @property
    def verdict(self) -> str:
        ok = (self.bijective or not self.require_bijective) and all(r["max_abs_numerator"] == 0 for r in self.residuals)
        return "pass" if ok and all(self.checks.values()) else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def failures(self) -> list[dict]:
        return [r for r in self.residuals if r["max_abs_numerator"]]

    def to_json(self) -> dict:
        return {
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "rank": self.rank,
            "residuals": self.residuals,
            "checks": self.checks,
            "verdict": self.verdict,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def check_equivariance(
    f: LinearMap,
    left: Sequence[tuple[str, Matrix, Matrix]] = (),
    right: Sequence[tuple[str, Matrix, Matrix]] = (),
    require_bijective: bool = True,
) -> Certificate:
    """Residuals ``f @ rho_src(g) - rho_tgt(g) @ f`` for every listed generator.

    Each entry is ``(name, matrix on source, matrix on target)``.  Failures
    are recorded in the certificate, never raised.
    """
    cert = Certificate(f.source.dim, f.target.dim, f.matrix.rank(), require_bijective=require_bijective)
    for side, gens in (("left", left), ("right", right)):
        for name, src, tgt in gens:
            res = f.matrix @ src - tgt @ f.matrix
            cert.residuals.append({"generator": name, "side": side, "max_abs_numerator": res.max_abs_numerator()})
    return cert


def action_character(action: GroupAction, degree: int) -> ClassFunction:
    """Character of a Sym(degree) action, by tracing one word per cycle type."""
    if action.module.field.characteristic != 0:
        raise DomainError("characters are only computed in characteristic 0")
    words = word_search(action.perms, degree)
    if len(words) != math.factorial(degree):
        raise DomainError(f"generators do not generate Sym({degree})")
    chosen: dict = {}
    for g, w in words.items():
        chosen.setdefault(g.cycle_type(), w)
    return ClassFunction(degree, {mu: Fraction(action.word_matrix(chosen[mu]).trace()) for mu in partitions(degree)})


def permutation_action(module: BasedModule, gens: Sequence[Permutation], act: Callable, side: str = "left") -> GroupAction:
    """Permutation-matrix action: basis label b goes to ``act(g, b)``."""
    mats = []
    for g in gens:
        mats.append(Matrix.from_images([module.index[act(g, b)] for b in module.basis], module.field))
    return GroupAction(module, list(zip(gens, mats)), side)


def regular_module(degree: int, field=Q) -> BasedModule:
    from .perm import all_permutations

    return BasedModule(field, all_permutations(degree))


def perm_label(g: Permutation) -> str:
    return str(g)


__all__ = [
    "BasedModule",
    "Certificate",
    "GroupAction",
    "LinearMap",
    "Matrix",
    "TensorQuotient",
    "action_character",
    "check_equivariance",
    "cycle_type_representative",
    "direct_sum",
    "kron",
    "permutation_action",
    "regular_module",
    "row_reduce",
    "tensor_over_subgroup",
]
