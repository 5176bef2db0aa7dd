"""
The Jordan algebras J3^n of 3x3 hermitian matrices over a Hurwitz algebra.

An element [[alpha, a, conj(b)], [conj(a), beta, c], [b, conj(c), gamma]] is stored
as its three diagonal scalars and the three off-diagonal entries (a, b, c).
Coordinates on the scalar basis are ordered [alpha, beta, gamma, a..., b..., c...].
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Any, Mapping, Sequence

from atlas.core.exceptions import ConstructionError, DimensionMismatchError
from atlas.models.hurwitz import HurwitzElement
from atlas.models.linalg import SparseMatrix, SparseVector, axpy

_HALF = Fraction(1, 2)


class JordanElement:
    """Hermitian 3x3 matrix over the Hurwitz algebra of dimension ``n``."""

    __slots__ = ("n", "diag", "off")

    def __init__(self, n: int, diag: Sequence[Any], off: Sequence[HurwitzElement]):
        if len(diag) != 3 or len(off) != 3:
            raise DimensionMismatchError("a Jordan element has three diagonal and three off-diagonal entries")
        if any(h.dim != n for h in off):
            raise DimensionMismatchError(f"off-diagonal entries must lie in the dimension-{n} algebra")
        self.n = n
        self.diag = tuple(diag)
        self.off = tuple(off)

    @classmethod
    def from_vector(cls, n: int, vector: Mapping[int, Any]) -> JordanElement:
        coords = [vector.get(k, 0) for k in range(3 + 3 * n)]
        off = [HurwitzElement(n, coords[3 + j * n : 3 + (j + 1) * n]) for j in range(3)]
        return cls(n, coords[:3], off)

    @classmethod
    def unit(cls, n: int) -> JordanElement:
        zero = HurwitzElement.zero(n)
        return cls(n, (1, 1, 1), (zero, zero, zero))

    def to_vector(self) -> SparseVector:
        coords = list(self.diag)
        for h in self.off:
            coords.extend(h.coords)
        return {k: v for k, v in enumerate(coords) if v}

    def matrix(self) -> list[list[HurwitzElement]]:
        n = self.n
        a, b, c = self.off
        alpha, beta, gamma = (HurwitzElement.basis(n, 0, d) for d in self.diag)
        return [
            [alpha, a, b.conj()],
            [a.conj(), beta, c],
            [b, c.conj(), gamma],
        ]

    def _check(self, other: JordanElement) -> None:
        if self.n != other.n:
            raise DimensionMismatchError(f"cannot combine J3 over dimension {self.n} with dimension {other.n}")

    def circ(self, other: JordanElement) -> JordanElement:
        """x o y = (xy + yx)/2 with the free matrix product; hermiticity is checked."""
        self._check(other)
        x, y = self.matrix(), other.matrix()
        n = self.n
        s = [[HurwitzElement.zero(n) for _ in range(3)] for _ in range(3)]
        for i in range(3):
            for j in range(3):
                acc = HurwitzElement.zero(n)
                for k in range(3):
                    acc = acc + x[i][k] * y[k][j] + y[i][k] * x[k][j]
                s[i][j] = acc.scale(_HALF)
        for i in range(3):
            if not s[i][i].is_scalar():
                raise ConstructionError(f"diagonal entry {i} of a Jordan product is not scalar")
            for j in range(i + 1, 3):
                if s[j][i] != s[i][j].conj():
                    raise ConstructionError(f"Jordan product is not hermitian at ({i}, {j})")
        diag = [s[i][i].coords[0] for i in range(3)]
        return JordanElement(n, diag, (s[0][1], s[2][0], s[1][2]))

    def trace(self) -> Any:
        return self.diag[0] + self.diag[1] + self.diag[2]

    def traceless(self) -> JordanElement:
        shift = self.trace() * Fraction(1, 3)
        return JordanElement(self.n, [d - shift for d in self.diag], self.off)

    def __add__(self, other: JordanElement) -> JordanElement:
        self._check(other)
        return JordanElement(
            self.n,
            [a + b for a, b in zip(self.diag, other.diag)],
            [a + b for a, b in zip(self.off, other.off)],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JordanElement):
            return NotImplemented
        return self.n == other.n and self.to_vector() == other.to_vector()

    def __repr__(self) -> str:
        return f"JordanElement(n={self.n}, diag={self.diag}, off={self.off})"


class JordanAlgebra:
    """
    J3^n with its product tabulated on the scalar basis.

    Vectors are sparse coordinate maps; ``multiplication(x)`` is L(x).
    """

    def __init__(self, n: int):
        if n not in (1, 2, 4, 8):
            raise DimensionMismatchError(f"J3^n needs n in 1, 2, 4, 8, not {n}")
        self.n = n
        self.dim = 3 + 3 * n

    @cached_property
    def labels(self) -> tuple[str, ...]:
        names = ["E11", "E22", "E33"]
        for slot in ("a", "b", "c"):
            names.extend(f"{slot}[{'1' if k == 0 else f'u{k}'}]" for k in range(self.n))
        return tuple(names)

    def basis_element(self, index: int) -> JordanElement:
        return JordanElement.from_vector(self.n, {index: 1})

    @cached_property
    def product_table(self) -> dict[tuple[int, int], SparseVector]:
        """e_a o e_b for a <= b, computed by the matrix product."""
        table: dict[tuple[int, int], SparseVector] = {}
        basis = [self.basis_element(k) for k in range(self.dim)]
        for a in range(self.dim):
            for b in range(a, self.dim):
                product = basis[a].circ(basis[b]).to_vector()
                if product:
                    table[(a, b)] = product
        return table

    def basis_product(self, a: int, b: int) -> SparseVector:
        key = (a, b) if a <= b else (b, a)
        return self.product_table.get(key, {})

    def circ(self, x: Mapping[int, Any], y: Mapping[int, Any]) -> SparseVector:
        out: SparseVector = {}
        for a, xa in x.items():
            for b, yb in y.items():
                product = self.basis_product(a, b)
                if product:
                    axpy(out, xa * yb, product)
        return out

    @cached_property
    def basis_multiplications(self) -> tuple[SparseMatrix, ...]:
        return tuple(
            SparseMatrix.from_columns(self.dim, [self.basis_product(a, b) for b in range(self.dim)])
            for a in range(self.dim)
        )

    def multiplication(self, x: Mapping[int, Any]) -> SparseMatrix:
        """L(x) y = x o y."""
        out = SparseMatrix(self.dim)
        for a, xa in x.items():
            out = out.combine(xa, self.basis_multiplications[a])
        return out

    @property
    def unit(self) -> SparseVector:
        return {0: 1, 1: 1, 2: 1}

    def trace(self, x: Mapping[int, Any]) -> Any:
        return x.get(0, 0) + x.get(1, 0) + x.get(2, 0)

    def traceless(self, x: Mapping[int, Any]) -> SparseVector:
        shift = self.trace(x) * Fraction(1, 3)
        out = dict(x)
        for k in range(3):
            value = out.get(k, 0) - shift
            if value:
                out[k] = value
            else:
                out.pop(k, None)
        return out

    def trace_form(self, x: Mapping[int, Any], y: Mapping[int, Any]) -> Any:
        """T(x o y)."""
        return self.trace(self.circ(x, y))

    @cached_property
    def gram_diagonal(self) -> tuple[int, ...]:
        """The trace form is diagonal on the scalar basis: 1 on E_ii, 2 off the diagonal."""
        return tuple(1 if k < 3 else 2 for k in range(self.dim))

    @cached_property
    def traceless_basis(self) -> tuple[SparseVector, ...]:
        """E11 - E22, E22 - E33 and the off-diagonal units."""
        return ({0: 1, 1: -1}, {1: 1, 2: -1}) + tuple({k: 1} for k in range(3, self.dim))

    def traceless_coordinates(self, x: Mapping[int, Any]) -> SparseVector:
        """Coordinates of a traceless element on ``traceless_basis``."""
        if self.trace(x):
            raise DimensionMismatchError("element is not traceless")
        out: SparseVector = {}
        if x.get(0):
            out[0] = x[0]
        if x.get(2):
            out[1] = -x[2]
        for k, v in x.items():
            if k >= 3:
                out[k - 1] = v
        return out

    def adjoint(self, operator: SparseMatrix) -> SparseMatrix:
        """Adjoint for the trace form: G^-1 T^t G with G diagonal."""
        g = self.gram_diagonal
        rows: dict[int, SparseVector] = {}
        for r, row in operator.rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v * Fraction(g[r], g[c])
        return SparseMatrix(self.dim, rows)
