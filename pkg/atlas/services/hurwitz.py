"""
Service layer for the Hurwitz algebras: derivations D_{a,b}, Der(Q) and Der(O),
the Zorn sign oracle and the octonion property suite.
"""

from __future__ import annotations

import logging
import random
import time
from fractions import Fraction
from typing import Callable

from atlas.core.config import settings
from atlas.core.exceptions import ConstructionError, DimensionMismatchError
from atlas.models import HurwitzElement, JacobiMode, LieAlgebra, ZornMatrix
from atlas.models.hurwitz import associator, commutator, epsilon, rho
from atlas.models.linalg import SparseMatrix, SpanBasis, rank
from atlas.schemas import OctonionReport, PropertyCheck
from atlas.services.lie import LieService, structure_from_span

logger = logging.getLogger(__name__)

_THIRD = Fraction(1, 3)


def random_element(rng: random.Random, dim: int, bound: int | None = None) -> HurwitzElement:
    """Seeded element with small integer coordinates."""
    bound = settings.RANDOM_COEFFICIENT_BOUND if bound is None else bound
    return HurwitzElement(dim, [Fraction(rng.randint(-bound, bound)) for _ in range(dim)])


def element_vector(x: HurwitzElement) -> dict[int, object]:
    return {k: v for k, v in enumerate(x.coords) if v}


class HurwitzService:
    """Derivations of the quaternions and octonions and the Zorn model checks."""

    def __init__(self, lie: LieService | None = None):
        self.lie = lie or LieService()
        self._derivation_algebras: dict[int, LieAlgebra] = {}

    # ------------------------------------------------------------------
    # Derivations
    # ------------------------------------------------------------------

    def derivation(self, a: HurwitzElement, b: HurwitzElement) -> SparseMatrix:
        """D_{a,b} c = 1/3 [[a,b],c] - (a,b,c) as a matrix on the coordinates."""
        if a.dim != b.dim:
            raise DimensionMismatchError(f"cannot pair dimension {a.dim} with {b.dim}")
        if a.dim not in (4, 8):
            raise DimensionMismatchError(f"derivations D_a,b are defined for dimension 4 or 8, not {a.dim}")
        dim = a.dim
        ab = commutator(a, b)
        columns = []
        for c in range(dim):
            unit = HurwitzElement.basis(dim, c)
            image = commutator(ab, unit).scale(_THIRD) - associator(a, b, unit)
            columns.append(element_vector(image))
        return SparseMatrix.from_columns(dim, columns)

    @staticmethod
    def apply(operator: SparseMatrix, x: HurwitzElement) -> HurwitzElement:
        image = operator.apply(element_vector(x))
        return HurwitzElement(x.dim, [image.get(k, 0) for k in range(x.dim)])

    def leibniz_failures(self, operator: SparseMatrix, dim: int) -> int:
        """Ordered basis pairs where D(xy) != D(x)y + xD(y)."""
        failures = 0
        units = [HurwitzElement.basis(dim, k) for k in range(dim)]
        images = [self.apply(operator, u) for u in units]
        for p, x in enumerate(units):
            for q, y in enumerate(units):
                if self.apply(operator, x * y) != images[p] * y + x * images[q]:
                    failures += 1
        return failures

    def is_derivation(self, operator: SparseMatrix, dim: int) -> bool:
        return self.leibniz_failures(operator, dim) == 0

    def spanning_operators(self, dim: int) -> list[tuple[str, SparseMatrix]]:
        """D_{u_i,u_j} for 1 <= i < j < dim."""
        units = [HurwitzElement.basis(dim, k) for k in range(dim)]
        return [
            (f"D[u{i},u{j}]", self.derivation(units[i], units[j]))
            for i in range(1, dim)
            for j in range(i + 1, dim)
        ]

    def derivation_algebra(self, dim: int) -> LieAlgebra:
        """
        Der(H) as the span of the D_{u_i,u_j}, with structure constants on an
        independent subset of them. Dimension 3 for the quaternions, 14 for the octonions.
        """
        if dim not in (4, 8):
            raise DimensionMismatchError(f"Der(H) is built for dimension 4 or 8, not {dim}")
        if dim in self._derivation_algebras:
            return self._derivation_algebras[dim]

        started = time.perf_counter()
        span = SpanBasis()
        labels: list[str] = []
        operators: list[SparseMatrix] = []
        for label, operator in self.spanning_operators(dim):
            if span.add(operator.flatten()):
                labels.append(label)
                operators.append(operator)
        algebra = LieAlgebra(
            name=f"Der(H{dim})",
            labels=tuple(labels),
            structure=structure_from_span(operators, span),
            blocks=("Der(H)",) * len(labels),
            metadata={"operators": operators, "span": span, "hurwitz_dim": dim},
        )
        logger.info(
            "built %s: dimension %d in %.3fs", algebra.name, algebra.dimension, time.perf_counter() - started
        )
        self._derivation_algebras[dim] = algebra
        return algebra

    def derivation_rank(self, dim: int) -> int:
        return rank(operator.flatten() for _, operator in self.spanning_operators(dim))

    # ------------------------------------------------------------------
    # Zorn model
    # ------------------------------------------------------------------

    def zorn_mismatches(self, dot_sign: int) -> int:
        """Ordered basis pairs where the Zorn product disagrees with the table product."""
        mismatches = 0
        units = [HurwitzElement.basis(8, k) for k in range(8)]
        zorn = [ZornMatrix.from_octonion(u) for u in units]
        for p, x in enumerate(units):
            for q, y in enumerate(units):
                if zorn[p].multiply(zorn[q], dot_sign) != ZornMatrix.from_octonion(x * y):
                    mismatches += 1
        return mismatches

    def zorn_dot_sign(self) -> int:
        """The sign of A.B in the Zorn product that reproduces the octonion table."""
        agreeing = [sign for sign in (-1, 1) if self.zorn_mismatches(sign) == 0]
        if len(agreeing) != 1:
            raise ConstructionError(f"expected exactly one Zorn dot sign to agree, found {agreeing}")
        logger.debug("zorn dot sign: %d", agreeing[0])
        return agreeing[0]

    @staticmethod
    def zorn_example() -> ZornMatrix:
        """A- = (1,0,0) times B- = (0,1,0); the product lands in A+ = (0,0,1)."""
        a = ZornMatrix(0, 0, (0, 0, 0), (1, 0, 0))
        b = ZornMatrix(0, 0, (0, 0, 0), (0, 1, 0))
        return a * b

    # ------------------------------------------------------------------
    # Property suite
    # ------------------------------------------------------------------

    def octonion_check(self, samples: int | None = None, seed: int | None = None) -> OctonionReport:
        samples = settings.SAMPLES if samples is None else samples
        seed = settings.SEED if seed is None else seed
        rng = random.Random(seed)
        checks: list[PropertyCheck] = []

        def sampled(name: str, dim: int, arity: int, holds: Callable[..., bool]) -> None:
            failures, witness = 0, None
            for _ in range(samples):
                args = [random_element(rng, dim) for _ in range(arity)]
                if not holds(*args):
                    failures += 1
                    witness = witness or repr(args)
            checks.append(PropertyCheck(name=name, samples=samples, failures=failures, witness=witness))

        dot_sign = self.zorn_dot_sign()
        checks.append(
            PropertyCheck(
                name="zorn product equals table product",
                samples=64,
                failures=self.zorn_mismatches(dot_sign),
            )
        )
        for dim in (1, 2, 4, 8):
            sampled(f"composition law n(xy) = n(x)n(y) (dim {dim})", dim, 2, lambda x, y: (x * y).norm() == x.norm() * y.norm())
        sampled("alternativity (x,x,y) = (y,x,x) = 0", 8, 2, lambda x, y: associator(x, x, y).is_zero() and associator(y, x, x).is_zero())
        sampled("quaternions are associative", 4, 3, lambda x, y, z: associator(x, y, z).is_zero())

        plus, minus = rho(1), rho(-1)
        idempotents = [
            plus * plus == plus,
            minus * minus == minus,
            (plus * minus).is_zero(),
            (minus * plus).is_zero(),
            plus.conj() == minus,
            plus + minus == HurwitzElement.one(8),
        ] + [epsilon(k, s).trace() == 0 for k in (1, 2, 3) for s in (1, -1)]
        checks.append(
            PropertyCheck(name="rho idempotent and orthogonal identities", samples=len(idempotents), failures=idempotents.count(False))
        )

        u = [HurwitzElement.basis(8, k) for k in range(8)]
        checks.append(
            PropertyCheck(
                name="octonions are not associative: (u1,u2,u4) != 0",
                samples=1,
                failures=int(associator(u[1], u[2], u[4]).is_zero()),
            )
        )
        example = self.zorn_example()
        checks.append(
            PropertyCheck(
                name="A- x B- lands in A+",
                samples=1,
                failures=int(example != ZornMatrix(0, 0, (0, 0, 1), (0, 0, 0))),
                witness=example.render(),
            )
        )

        ranks: dict[int, int] = {}
        for dim in (4, 8):
            operators = self.spanning_operators(dim)
            ranks[dim] = rank(op.flatten() for _, op in operators)
            failures = [label for label, op in operators if not self.is_derivation(op, dim)]
            checks.append(
                PropertyCheck(
                    name=f"Leibniz rule for every D[u_i,u_j] (dim {dim})",
                    samples=len(operators) * dim * dim,
                    failures=len(failures),
                    witness=", ".join(failures) or None,
                )
            )
            algebra = self.derivation_algebra(dim)
            jacobi = self.lie.jacobi_check(algebra, JacobiMode.EXHAUSTIVE)
            checks.append(
                PropertyCheck(
                    name=f"{algebra.name} closes and satisfies Jacobi",
                    samples=jacobi.triples_checked,
                    failures=jacobi.violation_count,
                )
            )

        octonion_derivations = self.derivation_algebra(8)
        g2_rank = self.lie.generic_rank(octonion_derivations)
        semisimple = self.lie.is_semisimple(octonion_derivations)
        checks.append(
            PropertyCheck(
                name="Der(O) is semisimple of dimension 14 and rank 2 (type G2)",
                samples=1,
                failures=int(not (semisimple and g2_rank == 2 and octonion_derivations.dimension == 14)),
                witness=f"rank {g2_rank}, semisimple {semisimple}",
            )
        )
        report = OctonionReport(
            seed=seed,
            samples=samples,
            zorn_dot_sign=dot_sign,
            derivation_ranks=ranks,
            zorn_example=example.render(),
            checks=checks,
        )
        logger.info("octonion suite: %d checks, passed=%s", len(checks), report.passed)
        return report
