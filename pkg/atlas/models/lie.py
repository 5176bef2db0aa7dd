"""
Finite-dimensional Lie algebras given by sparse exact structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping

from atlas.models.linalg import SparseVector, axpy


@dataclass
class LieAlgebra:
    """
    Basis with structure constants [e_i, e_j] = sum_k c_ij^k e_k.

    Only pairs i < j are stored; antisymmetry supplies the rest and [e_i, e_i] = 0.
    ``blocks`` tags each basis vector with its provenance (for example "Der(H)",
    "H0(x)J0", "Der(J)" or "J+", "str", "J-"); ``grading`` maps basis indices to degrees.
    """

    name: str
    labels: tuple[str, ...]
    structure: dict[tuple[int, int], SparseVector]
    blocks: tuple[str, ...] = ()
    grading: dict[int, int] | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.blocks:
            self.blocks = ("",) * len(self.labels)
        self.structure = {key: value for key, value in self.structure.items() if value}

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def bracket_basis(self, i: int, j: int) -> SparseVector:
        if i == j:
            return {}
        if i < j:
            return self.structure.get((i, j), {})
        return {k: -v for k, v in self.structure.get((j, i), {}).items()}

    def bracket(self, x: Mapping[int, Any], y: Mapping[int, Any]) -> SparseVector:
        out: SparseVector = {}
        for i, xi in x.items():
            for j, yj in y.items():
                if i != j:
                    product = self.bracket_basis(i, j)
                    if product:
                        axpy(out, xi * yj, product)
        return out

    def adjoint_rows(self, x: Mapping[int, Any]) -> dict[int, SparseVector]:
        """ad(x) as rows {k: {j: coefficient of e_k in [x, e_j]}}."""
        rows: dict[int, SparseVector] = {}
        for j in range(self.dimension):
            column = self.bracket(x, {j: 1})
            for k, v in column.items():
                rows.setdefault(k, {})[j] = v
        return rows

    def jacobiator(self, i: int, j: int, k: int) -> SparseVector:
        """[[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j]."""
        out: SparseVector = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = self.bracket_basis(a, b)
            if inner:
                axpy(out, 1, self.bracket(inner, {c: 1}))
        return out

    def block_indices(self, block: str) -> list[int]:
        return [k for k, b in enumerate(self.blocks) if b == block]

    def block_names(self) -> list[str]:
        seen: list[str] = []
        for b in self.blocks:
            if b not in seen:
                seen.append(b)
        return seen

    def structure_entries(self) -> Iterator[tuple[int, int, int, Any]]:
        for (i, j) in sorted(self.structure):
            column = self.structure[(i, j)]
            for k in sorted(column):
                yield i, j, k, column[k]

    def perturbed(self, i: int, j: int, k: int, delta: Any = 1) -> LieAlgebra:
        """Copy with c_ij^k shifted by ``delta``; used as a negative control."""
        if i > j:
            i, j, delta = j, i, -delta
        structure = {key: dict(value) for key, value in self.structure.items()}
        column = structure.setdefault((i, j), {})
        updated = column.get(k, 0) + delta
        if updated:
            column[k] = updated
        else:
            column.pop(k, None)
        return LieAlgebra(
            name=f"{self.name} (perturbed)",
            labels=self.labels,
            structure=structure,
            blocks=self.blocks,
            grading=self.grading,
            metadata=dict(self.metadata),
        )
