"""Exact dense linear algebra over a :class:`FieldSpec`.

Matrices are row-major lists of raw field values. Elimination is full
Gauss-Jordan with the first nonzero entry in column order as pivot, so
reduced forms and subspace bases are canonical. Updates skip zero entries,
which keeps the very sparse contraction matrices cheap without changing the
dense representation.
"""

from __future__ import annotations

import dataclasses
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from apolar.algebra.field import FieldSpec, Raw
from apolar.errors import ApolarError

logger = logging.getLogger(__name__)

Vector = list[Raw]


class LinalgError(ApolarError):
    """Base exception for linear algebra errors."""


class AmbientMismatchError(LinalgError):
    """Raised when vectors or subspaces of different dimensions are combined."""


class ShapeError(LinalgError):
    """Raised for ragged rows or incompatible matrix shapes."""


@dataclass
class Matrix:
    """Dense matrix of raw field values."""

    field: FieldSpec
    n_rows: int
    n_cols: int
    rows: list[Vector]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n_rows or any(len(r) != self.n_cols for r in self.rows):
            raise ShapeError(f"Matrix entries do not form a {self.n_rows}x{self.n_cols} grid")

    @classmethod
    def from_rows(cls, fld: FieldSpec, rows: Sequence[Sequence[Raw | int]], n_cols: int | None = None) -> Matrix:
        data = [[fld.coerce(x) for x in row] for row in rows]
        width = n_cols if n_cols is not None else (len(data[0]) if data else 0)
        return cls(fld, len(data), width, data)

    @classmethod
    def zeros(cls, fld: FieldSpec, n_rows: int, n_cols: int) -> Matrix:
        return cls(fld, n_rows, n_cols, [[fld.zero] * n_cols for _ in range(n_rows)])

    @classmethod
    def identity(cls, fld: FieldSpec, n: int) -> Matrix:
        m = cls.zeros(fld, n, n)
        for i in range(n):
            m.rows[i][i] = fld.one
        return m

    def copy(self) -> Matrix:
        return Matrix(self.field, self.n_rows, self.n_cols, [list(r) for r in self.rows])

    def transpose(self) -> Matrix:
        return Matrix(
            self.field,
            self.n_cols,
            self.n_rows,
            [[self.rows[i][j] for i in range(self.n_rows)] for j in range(self.n_cols)],
        )

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.n_cols != other.n_rows:
            raise ShapeError(f"Cannot multiply {self.n_rows}x{self.n_cols} by {other.n_rows}x{other.n_cols}")
        fld = self.field
        out = [[fld.zero] * other.n_cols for _ in range(self.n_rows)]
        for i, row in enumerate(self.rows):
            target = out[i]
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in enumerate(other.rows[k]):
                    if b:
                        target[j] = fld.add(target[j], fld.mul(a, b))
        return Matrix(fld, self.n_rows, other.n_cols, out)

    def apply(self, v: Sequence[Raw]) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.n_cols:
            raise AmbientMismatchError(f"Vector of length {len(v)} for {self.n_cols} columns")
        fld = self.field
        out = []
        for row in self.rows:
            acc = fld.zero
            for a, b in zip(row, v):
                if a and b:
                    acc = fld.add(acc, fld.mul(a, b))
            out.append(acc)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field, self.n_rows, self.n_cols, self.rows) == (
            other.field,
            other.n_rows,
            other.n_cols,
            other.rows,
        )


def _eliminate(target: Vector, source: Vector, factor: Raw, cols: Iterable[int], fld: FieldSpec) -> None:
    """target -= factor * source on the listed columns."""
    p = fld.modulus
    if p is None:
        for k in cols:
            target[k] -= factor * source[k]
    else:
        for k in cols:
            target[k] = (target[k] - factor * source[k]) % p


def _scale(row: Vector, factor: Raw, fld: FieldSpec) -> None:
    p = fld.modulus
    for k, x in enumerate(row):
        if x:
            row[k] = x * factor if p is None else x * factor % p


def _gauss_jordan(fld: FieldSpec, rows: list[Vector], n_cols: int) -> list[int]:
    """Reduce ``rows`` in place to RREF; return the pivot columns."""
    pivots: list[int] = []
    r = 0
    n_rows = len(rows)
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot_row = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        prow = rows[r]
        _scale(prow, fld.inv(prow[c]), fld)
        nz = [k for k in range(c, n_cols) if prow[k]]
        for i in range(n_rows):
            if i != r and rows[i][c]:
                _eliminate(rows[i], prow, rows[i][c], nz, fld)
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Gauss-Jordan reduced row echelon form and pivot columns."""
    work = m.copy()
    pivots = _gauss_jordan(m.field, work.rows, m.n_cols)
    return work, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


@dataclass
class Subspace:
    """A subspace of k^n held by its canonical RREF basis.

    Two subspaces are equal exactly when their bases are equal.
    """

    field: FieldSpec
    ambient_dim: int
    basis: list[Vector] = dataclasses.field(default_factory=list)
    pivot_cols: list[int] = dataclasses.field(default_factory=list)

    @classmethod
    def zero(cls, fld: FieldSpec, ambient_dim: int) -> Subspace:
        return cls(fld, ambient_dim)

    @classmethod
    def full(cls, fld: FieldSpec, ambient_dim: int) -> Subspace:
        return cls(fld, ambient_dim, Matrix.identity(fld, ambient_dim).rows, list(range(ambient_dim)))

    @classmethod
    def span(cls, fld: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence[Raw]]) -> Subspace:
        builder = EchelonBuilder(fld, ambient_dim)
        for v in vectors:
            builder.insert(v)
        return builder.to_subspace()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check_vector(self, v: Sequence[Raw]) -> None:
        if len(v) != self.ambient_dim:
            raise AmbientMismatchError(f"Vector of length {len(v)} in a {self.ambient_dim}-space")

    def _check_space(self, other: Subspace) -> None:
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise AmbientMismatchError(
                f"Subspaces of {self.ambient_dim}- and {other.ambient_dim}-dimensional spaces"
            )

    def reduce(self, v: Sequence[Raw]) -> Vector:
        """Residual of ``v`` after eliminating every pivot coordinate."""
        self._check_vector(v)
        out = list(v)
        for row, c in zip(self.basis, self.pivot_cols):
            if out[c]:
                nz = [k for k, x in enumerate(row) if x]
                _eliminate(out, row, out[c], nz, self.field)
        return out

    def contains(self, v: Sequence[Raw]) -> bool:
        return not any(self.reduce(v))

    def sum(self, other: Subspace) -> Subspace:
        self._check_space(other)
        return Subspace.span(self.field, self.ambient_dim, [*self.basis, *other.basis])

    def intersection_dim(self, other: Subspace) -> int:
        """dim(U ∩ W) = dim U + dim W - dim(U + W)."""
        return self.dim + other.dim - self.sum(other).dim

    def is_subspace_of(self, other: Subspace) -> bool:
        self._check_space(other)
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.pivot_cols == other.pivot_cols
            and self.basis == other.basis
        )


class EchelonBuilder:
    """Incrementally maintained RREF basis.

    Inserting a vector reduces it against the current basis; a nonzero
    residual becomes a new basis row and its pivot is cleared from the
    older rows, so the basis stays fully reduced after every insertion.
    """

    def __init__(self, fld: FieldSpec, ambient_dim: int):
        self.field = fld
        self.ambient_dim = ambient_dim
        self._rows: dict[int, Vector] = {}
        self._support: dict[int, list[int]] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def reduce(self, v: Sequence[Raw]) -> Vector:
        if len(v) != self.ambient_dim:
            raise AmbientMismatchError(f"Vector of length {len(v)} in a {self.ambient_dim}-space")
        out = list(v)
        for c, row in self._rows.items():
            if out[c]:
                _eliminate(out, row, out[c], self._support[c], self.field)
        return out

    def contains(self, v: Sequence[Raw]) -> bool:
        return not any(self.reduce(v))

    def insert(self, v: Sequence[Raw]) -> bool:
        """Add ``v``; return False when it was already in the span."""
        residual = self.reduce(v)
        lead = next((k for k, x in enumerate(residual) if x), None)
        if lead is None:
            return False
        _scale(residual, self.field.inv(residual[lead]), self.field)
        support = [k for k, x in enumerate(residual) if x]
        for c, row in self._rows.items():
            if row[lead]:
                _eliminate(row, residual, row[lead], support, self.field)
                self._support[c] = [k for k, x in enumerate(row) if x]
        self._rows[lead] = residual
        self._support[lead] = support
        return True

    def to_subspace(self) -> Subspace:
        pivots = sorted(self._rows)
        return Subspace(self.field, self.ambient_dim, [self._rows[c] for c in pivots], pivots)


def kernel_basis(m: Matrix) -> Subspace:
    """Canonical RREF basis of {v : m v = 0}."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.n_cols) if c not in pivot_set]
    fld = m.field
    vectors: list[Vector] = []
    for f in free:
        v = [fld.zero] * m.n_cols
        v[f] = fld.one
        for i, p in enumerate(pivots):
            entry = reduced.rows[i][f]
            if entry:
                v[p] = fld.neg(entry)
        vectors.append(v)
    kernel = Subspace.span(fld, m.n_cols, vectors)
    if len(pivots) + kernel.dim != m.n_cols:
        raise LinalgError(
            f"Rank-nullity violated: rank {len(pivots)} + nullity {kernel.dim} != {m.n_cols}"
        )
    logger.debug(f"Kernel of {m.n_rows}x{m.n_cols} matrix: rank {len(pivots)}, nullity {kernel.dim}")
    return kernel
