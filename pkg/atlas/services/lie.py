"""
Generic checks on Lie algebras given by structure constants.
"""

from __future__ import annotations

import itertools
import logging
import random
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from atlas.core.config import settings
from atlas.core.exceptions import ConstructionError, NonDiagonalizableError
from atlas.models import JacobiMode, LieAlgebra
from atlas.models.exactnum import FieldScalar
from atlas.models.linalg import (
    SparseMatrix,
    SparseVector,
    SpanBasis,
    fraction_mod_p,
    nullspace,
    rank,
    rank_mod_p,
    reciprocal,
    scale,
)
from atlas.schemas import (
    GradedPart,
    GradingReport,
    JacobiReport,
    JacobiViolation,
    LieAlgebraExport,
    StructureConstantEntry,
)

logger = logging.getLogger(__name__)

MAX_REPORTED_JACOBI = 20


def as_fraction(value: Any) -> Fraction:
    """Rational value of an int, Fraction or rational FieldScalar."""
    if isinstance(value, FieldScalar):
        if not value.is_rational():
            raise ValueError(f"{value} is not rational")
        return value.as_fraction()
    return Fraction(value)


def ad_matrix(L: LieAlgebra, x: Mapping[int, Any]) -> SparseMatrix:
    return SparseMatrix(L.dimension, L.adjoint_rows(x))


class GradedDecomposition:
    """Eigenvectors of a grading element grouped by eigenvalue."""

    def __init__(self, parts: dict[Fraction, list[SparseVector]], report: GradingReport):
        self.parts = parts
        self.report = report

    def dimensions(self) -> dict[Fraction, int]:
        return {value: len(vectors) for value, vectors in sorted(self.parts.items())}


class LieService:
    """Service for Jacobi verification, ranks, Killing forms and gradings."""

    def __init__(self, seed: int | None = None):
        self.seed = settings.SEED if seed is None else seed

    # ------------------------------------------------------------------
    # Jacobi identity
    # ------------------------------------------------------------------

    def jacobi_check(
        self,
        L: LieAlgebra,
        mode: JacobiMode | str | None = None,
        samples: int | None = None,
        seed: int | None = None,
        block_coverage: bool = False,
    ) -> JacobiReport:
        """
        Check [[a,b],c] + [[b,c],a] + [[c,a],b] = 0 on basis triples.

        Exhaustive mode enumerates i < j < k; sampled mode draws seeded triples of
        distinct indices. ``block_coverage`` adds every triple inside each provenance
        block, however large the block.
        """
        if mode is None:
            mode = JacobiMode.EXHAUSTIVE if L.dimension <= settings.EXHAUSTIVE_JACOBI_MAX_DIM else JacobiMode.SAMPLED
        mode = JacobiMode(mode)
        samples = settings.JACOBI_SAMPLES if samples is None else samples
        seed = self.seed if seed is None else seed
        rng = random.Random(seed)

        violations: list[JacobiViolation] = []
        count = 0

        def check(triples: Iterable[tuple[int, int, int]]) -> int:
            nonlocal count
            checked = 0
            for i, j, k in triples:
                checked += 1
                residual = L.jacobiator(i, j, k)
                if residual:
                    count += 1
                    if len(violations) < MAX_REPORTED_JACOBI:
                        violations.append(
                            JacobiViolation(
                                indices=(i, j, k),
                                labels=(L.labels[i], L.labels[j], L.labels[k]),
                                residual_terms=len(residual),
                            )
                        )
            return checked

        if L.dimension < 3:
            checked = 0
        elif mode == JacobiMode.EXHAUSTIVE:
            checked = check(itertools.combinations(range(L.dimension), 3))
        else:
            checked = check(tuple(sorted(rng.sample(range(L.dimension), 3))) for _ in range(samples))

        block_checked = 0
        if block_coverage:
            for block in L.block_names():
                indices = L.block_indices(block)
                block_checked += check(itertools.combinations(indices, 3))

        logger.info(
            "jacobi %s on %s: %d triples, %d block triples, %d violations",
            mode.value,
            L.name,
            checked,
            block_checked,
            count,
        )
        return JacobiReport(
            algebra=L.name,
            dimension=L.dimension,
            mode=mode,
            seed=seed if mode == JacobiMode.SAMPLED or block_coverage else None,
            triples_checked=checked,
            block_triples_checked=block_checked,
            violation_count=count,
            violations=violations,
        )

    # ------------------------------------------------------------------
    # Rank and Killing form
    # ------------------------------------------------------------------

    def generic_rank(
        self,
        L: LieAlgebra,
        trials: int | None = None,
        seed: int | None = None,
        prime: int | None = None,
    ) -> int:
        """
        Rank as the smallest nullity of ad(x) over seeded random x, computed mod p.

        A regular element has nullity equal to the rank; random small-integer
        coordinates give one with overwhelming probability.
        """
        trials = settings.RANK_TRIALS if trials is None else trials
        prime = settings.RANK_PRIME if prime is None else prime
        rng = random.Random(self.seed if seed is None else seed)
        bound = settings.RANDOM_COEFFICIENT_BOUND
        dim = L.dimension
        if dim == 0:
            return 0
        entries = [(i, j, k, fraction_mod_p(as_fraction(c), prime)) for i, j, k, c in L.structure_entries()]
        best = dim
        for _ in range(trials):
            x = [rng.randint(-bound, bound) for _ in range(dim)]
            matrix = [[0] * dim for _ in range(dim)]
            for i, j, k, c in entries:
                # [x_i e_i, e_j] and [x_j e_j, e_i] = -c
                matrix[k][j] = (matrix[k][j] + x[i] * c) % prime
                matrix[k][i] = (matrix[k][i] - x[j] * c) % prime
            nullity = dim - rank_mod_p(matrix, prime)
            best = min(best, nullity)
        logger.debug("generic rank of %s: %d", L.name, best)
        return best

    def killing_form(self, L: LieAlgebra) -> list[list[Any]]:
        """K(e_i, e_j) = tr(ad e_i ad e_j)."""
        ads = [ad_matrix(L, {i: 1}) for i in range(L.dimension)]
        return [[(ads[i] @ ads[j]).trace() for j in range(L.dimension)] for i in range(L.dimension)]

    def is_semisimple(self, L: LieAlgebra) -> bool:
        """Cartan's criterion: the Killing form is nondegenerate."""
        form = self.killing_form(L)
        return rank({k: v for k, v in enumerate(row) if v} for row in form) == L.dimension

    # ------------------------------------------------------------------
    # Gradings
    # ------------------------------------------------------------------

    def eigenbasis(
        self, operator: SparseMatrix, indices: Sequence[int], candidates: Iterable[int]
    ) -> list[SparseVector]:
        """
        Eigenvectors of an operator restricted to the span of ``indices``.

        The span must be invariant and the eigenvalues must be among ``candidates``.
        """
        position = {index: p for p, index in enumerate(indices)}
        for c in indices:
            column = operator.column(c)
            if any(r not in position for r in column):
                raise NonDiagonalizableError("the coordinate block is not invariant under the operator")
        size = len(indices)
        dense = [[operator.rows.get(r, {}).get(c, 0) for c in indices] for r in indices]
        vectors: list[SparseVector] = []
        for value in candidates:
            shifted = [[entry - (value if p == q else 0) for q, entry in enumerate(row)] for p, row in enumerate(dense)]
            for solution in nullspace(shifted, size):
                vectors.append({indices[p]: v for p, v in enumerate(solution) if v})
        if len(vectors) != size:
            raise NonDiagonalizableError(
                f"found {len(vectors)} eigenvectors for a block of size {size}"
            )
        return vectors

    def grading_decompose(
        self,
        L: LieAlgebra,
        operator: SparseMatrix,
        basis: Sequence[SparseVector] | None = None,
        pair_limit: int = 20000,
        samples: int | None = None,
        seed: int | None = None,
    ) -> GradedDecomposition:
        """
        Group a basis of eigenvectors by eigenvalue and check [L_a, L_b] in L_(a+b).

        Validates:
        - Every basis vector is an eigenvector with a rational eigenvalue
        - The basis is independent and spans L

        Pairs are checked exhaustively up to ``pair_limit``, otherwise on seeded samples.
        """
        if basis is None:
            basis = [{k: 1} for k in range(L.dimension)]
        span = SpanBasis()
        eigenvalues: list[Fraction] = []
        for vector in basis:
            image = operator.apply(vector)
            pivot = min(vector)
            value = image.get(pivot, 0) * reciprocal(vector[pivot]) if image else 0
            if image != scale(vector, value):
                raise NonDiagonalizableError(f"basis vector at {pivot} is not an eigenvector")
            try:
                eigenvalues.append(as_fraction(value))
            except ValueError:
                raise NonDiagonalizableError(f"eigenvalue {value} is not rational") from None
            span.add(vector)
        if span.rank != L.dimension or len(basis) != L.dimension:
            raise NonDiagonalizableError(
                f"eigenvectors span {span.rank} of {L.dimension} dimensions"
            )

        pairs = list(itertools.combinations(range(len(basis)), 2))
        if len(pairs) > pair_limit:
            rng = random.Random(self.seed if seed is None else seed)
            pairs = rng.sample(pairs, settings.JACOBI_SAMPLES if samples is None else samples)
        incompatible = 0
        for a, b in pairs:
            product = L.bracket(basis[a], basis[b])
            if product and operator.apply(product) != scale(product, eigenvalues[a] + eigenvalues[b]):
                incompatible += 1

        parts: dict[Fraction, list[SparseVector]] = {}
        for value, vector in zip(eigenvalues, basis):
            parts.setdefault(value, []).append(vector)
        report = GradingReport(
            algebra=L.name,
            parts=[
                GradedPart(label=f"L[{value}]", eigenvalue=str(value), dimension=len(vectors))
                for value, vectors in sorted(parts.items())
            ],
            pairs_checked=len(pairs),
            incompatible_pairs=incompatible,
        )
        logger.info("grading of %s: %s", L.name, {str(k): len(v) for k, v in sorted(parts.items())})
        return GradedDecomposition(parts, report)

    # ------------------------------------------------------------------
    # Export
    # ------------------------------------------------------------------

    def export_json(self, L: LieAlgebra) -> LieAlgebraExport:
        return LieAlgebraExport(
            name=L.name,
            dimension=L.dimension,
            labels=list(L.labels),
            blocks=list(L.blocks),
            structure=[
                StructureConstantEntry(i=i, j=j, k=k, c=str(FieldScalar.coerce(c)))
                for i, j, k, c in L.structure_entries()
            ],
        )


def structure_from_span(
    operators: Sequence[SparseMatrix], span: SpanBasis
) -> dict[tuple[int, int], SparseVector]:
    """Structure constants of a commutator-closed span of operators, on ``span.members``."""
    structure: dict[tuple[int, int], SparseVector] = {}
    for p, q in itertools.combinations(range(len(operators)), 2):
        product = operators[p].commutator(operators[q])
        if product.is_zero():
            continue
        try:
            structure[(p, q)] = span.coordinates(product.flatten())
        except Exception as exc:
            raise ConstructionError(f"commutator of basis operators {p} and {q} leaves the span") from exc
    return structure
