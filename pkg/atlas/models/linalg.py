"""
Exact sparse linear algebra.

Vectors are ``dict[int, scalar]`` maps with zero entries dropped; scalars are
``Fraction`` or ``FieldScalar``. Elimination is fraction-exact Gauss-Jordan
(reduced row echelon form with the smallest index as pivot).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Sequence

from atlas.core.exceptions import DimensionMismatchError, NotInSpanError

Scalar = Any
SparseVector = dict[int, Scalar]


def axpy(target: SparseVector, factor: Scalar, source: Mapping[int, Scalar]) -> None:
    """target += factor * source, in place, dropping cancelled entries."""
    if not factor:
        return
    for key, value in source.items():
        updated = target.get(key, 0) + factor * value
        if updated:
            target[key] = updated
        else:
            target.pop(key, None)


def combine(*terms: tuple[Scalar, Mapping[int, Scalar]]) -> SparseVector:
    """Linear combination of sparse vectors."""
    out: SparseVector = {}
    for factor, vector in terms:
        axpy(out, factor, vector)
    return out


def scale(vector: Mapping[int, Scalar], factor: Scalar) -> SparseVector:
    if not factor:
        return {}
    return {k: v * factor for k, v in vector.items()}


def unit(index: int, value: Scalar = 1) -> SparseVector:
    return {index: value}


def reciprocal(value: Scalar) -> Scalar:
    """Exact reciprocal; ints become Fractions rather than floats."""
    return Fraction(1) / value


class SpanBasis:
    """
    Incremental reduced row echelon basis of a span.

    ``members`` keeps the independent vectors in insertion order; ``coordinates``
    expresses any vector of the span in terms of them.
    """

    def __init__(self) -> None:
        self.rows: list[SparseVector] = []
        self.pivots: list[int] = []
        self.transforms: list[SparseVector] = []
        self.members: list[SparseVector] = []
        self._pivot_index: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, vector: Mapping[int, Scalar]) -> tuple[SparseVector, SparseVector]:
        residual = dict(vector)
        combination: SparseVector = {}
        for row, pivot, transform in zip(self.rows, self.pivots, self.transforms):
            factor = residual.get(pivot)
            if factor:
                axpy(residual, -factor, row)
                axpy(combination, factor, transform)
        return residual, combination

    def reduce(self, vector: Mapping[int, Scalar]) -> SparseVector:
        """Residual of ``vector`` modulo the span."""
        return self._reduce(vector)[0]

    def contains(self, vector: Mapping[int, Scalar]) -> bool:
        return not self.reduce(vector)

    def add(self, vector: Mapping[int, Scalar]) -> bool:
        """Insert ``vector``; return False when it is already in the span."""
        residual, combination = self._reduce(vector)
        if not residual:
            return False
        index = len(self.members)
        # residual = vector - sum(combination_k * member_k)
        transform = scale(combination, -1)
        transform[index] = 1
        pivot = min(residual)
        inverse = reciprocal(residual[pivot])
        residual = scale(residual, inverse)
        transform = scale(transform, inverse)
        for k, row in enumerate(self.rows):
            factor = row.get(pivot)
            if factor:
                axpy(row, -factor, residual)
                axpy(self.transforms[k], -factor, transform)
        self.rows.append(residual)
        self.pivots.append(pivot)
        self.transforms.append(transform)
        self.members.append(dict(vector))
        return True

    def coordinates(self, vector: Mapping[int, Scalar]) -> SparseVector:
        """Coefficients of ``vector`` on ``members``; raises NotInSpanError outside the span."""
        residual, combination = self._reduce(vector)
        if residual:
            raise NotInSpanError(f"vector with support {sorted(residual)[:6]} is not in the span")
        return combination


def rank(vectors: Iterable[Mapping[int, Scalar]]) -> int:
    basis = SpanBasis()
    for vector in vectors:
        basis.add(vector)
    return basis.rank


def dense_to_sparse(values: Sequence[Scalar]) -> SparseVector:
    return {k: v for k, v in enumerate(values) if v}


def sparse_to_dense(vector: Mapping[int, Scalar], length: int, zero: Scalar = 0) -> list[Scalar]:
    out = [zero] * length
    for k, v in vector.items():
        if k >= length:
            raise DimensionMismatchError(f"index {k} outside length {length}")
        out[k] = v
    return out


def nullspace(rows: Sequence[Sequence[Scalar]], columns: int) -> list[list[Scalar]]:
    """Basis of {x : rows @ x = 0} by Gauss-Jordan elimination."""
    matrix = [list(row) for row in rows]
    pivot_columns: list[int] = []
    r = 0
    for c in range(columns):
        pivot_row = next((i for i in range(r, len(matrix)) if matrix[i][c]), None)
        if pivot_row is None:
            continue
        matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
        inverse = reciprocal(matrix[r][c])
        matrix[r] = [v * inverse for v in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][c]:
                factor = matrix[i][c]
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], matrix[r])]
        pivot_columns.append(c)
        r += 1
        if r == len(matrix):
            break
    free = [c for c in range(columns) if c not in pivot_columns]
    basis = []
    for f in free:
        vector: list[Scalar] = [0] * columns
        vector[f] = 1
        for i, p in enumerate(pivot_columns):
            vector[p] = -matrix[i][f]
        basis.append(vector)
    return basis


def solve_gram(gram: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list[Scalar]:
    """Solve the non-singular square system ``gram @ x = rhs``."""
    n = len(gram)
    augmented = [list(gram[i]) + [rhs[i]] for i in range(n)]
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if augmented[i][c]), None)
        if pivot_row is None:
            raise DimensionMismatchError("singular Gram matrix: basis is not independent")
        augmented[c], augmented[pivot_row] = augmented[pivot_row], augmented[c]
        inverse = reciprocal(augmented[c][c])
        augmented[c] = [v * inverse for v in augmented[c]]
        for i in range(n):
            if i != c and augmented[i][c]:
                factor = augmented[i][c]
                augmented[i] = [a - factor * b for a, b in zip(augmented[i], augmented[c])]
    return [augmented[i][n] for i in range(n)]


def rank_mod_p(rows: Sequence[Sequence[int]], prime: int) -> int:
    """Rank over F_p of an integer matrix."""
    matrix = [[v % prime for v in row] for row in rows]
    if not matrix:
        return 0
    columns = len(matrix[0])
    r = 0
    for c in range(columns):
        pivot_row = next((i for i in range(r, len(matrix)) if matrix[i][c]), None)
        if pivot_row is None:
            continue
        matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
        inverse = pow(matrix[r][c], prime - 2, prime)
        matrix[r] = [(v * inverse) % prime for v in matrix[r]]
        for i in range(r + 1, len(matrix)):
            factor = matrix[i][c]
            if factor:
                matrix[i] = [(a - factor * b) % prime for a, b in zip(matrix[i], matrix[r])]
        r += 1
        if r == len(matrix):
            break
    return r


def fraction_mod_p(value: Fraction, prime: int) -> int:
    value = Fraction(value)
    return (value.numerator * pow(value.denominator, prime - 2, prime)) % prime


class SparseMatrix:
    """Exact sparse matrix stored as rows ``{row: {column: scalar}}``."""

    __slots__ = ("size", "rows")

    def __init__(self, size: int, rows: Mapping[int, Mapping[int, Scalar]] | None = None):
        self.size = size
        self.rows: dict[int, SparseVector] = {}
        for r, row in (rows or {}).items():
            cleaned = {c: v for c, v in row.items() if v}
            if cleaned:
                self.rows[r] = cleaned

    @classmethod
    def identity(cls, size: int, value: Scalar = 1) -> SparseMatrix:
        return cls(size, {k: {k: value} for k in range(size)})

    @classmethod
    def from_columns(cls, size: int, columns: Iterable[Mapping[int, Scalar]]) -> SparseMatrix:
        rows: dict[int, SparseVector] = {}
        for c, column in enumerate(columns):
            for r, v in column.items():
                if v:
                    rows.setdefault(r, {})[c] = v
        return cls(size, rows)

    def column(self, c: int) -> SparseVector:
        return {r: row[c] for r, row in self.rows.items() if c in row}

    def apply(self, vector: Mapping[int, Scalar]) -> SparseVector:
        out: SparseVector = {}
        for r, row in self.rows.items():
            acc = 0
            for c, v in row.items():
                x = vector.get(c)
                if x:
                    acc = acc + v * x
            if acc:
                out[r] = acc
        return out

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        rows: dict[int, SparseVector] = {}
        for r, row in self.rows.items():
            acc: SparseVector = {}
            for j, a in row.items():
                other_row = other.rows.get(j)
                if other_row:
                    axpy(acc, a, other_row)
            if acc:
                rows[r] = acc
        return SparseMatrix(self.size, rows)

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        return self.combine(1, other)

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        return self.combine(-1, other)

    def __neg__(self) -> SparseMatrix:
        return self.scaled(-1)

    def combine(self, factor: Scalar, other: SparseMatrix) -> SparseMatrix:
        """self + factor * other."""
        rows = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            target = rows.setdefault(r, {})
            axpy(target, factor, row)
            if not target:
                del rows[r]
        return SparseMatrix(self.size, rows)

    def scaled(self, factor: Scalar) -> SparseMatrix:
        return SparseMatrix(self.size, {r: scale(row, factor) for r, row in self.rows.items()})

    def commutator(self, other: SparseMatrix) -> SparseMatrix:
        return (self @ other) - (other @ self)

    def transpose(self) -> SparseMatrix:
        rows: dict[int, SparseVector] = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return SparseMatrix(self.size, rows)

    def trace(self) -> Scalar:
        return sum((row[r] for r, row in self.rows.items() if r in row), 0)

    def is_zero(self) -> bool:
        return not self.rows

    def flatten(self) -> SparseVector:
        """Row-major sparse vector of length size**2."""
        return {r * self.size + c: v for r, row in self.rows.items() for c, v in row.items()}

    def entries(self) -> Iterator[tuple[int, int, Scalar]]:
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.size == other.size and self.rows == other.rows

    def __repr__(self) -> str:
        return f"SparseMatrix(size={self.size}, nnz={sum(len(r) for r in self.rows.values())})"
