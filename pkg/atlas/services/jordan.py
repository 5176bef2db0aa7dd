"""
Service layer for the Jordan algebras J3^n: quadratic and trilinear maps, Der(J),
str0(J), the three-graded algebra J + str(J) + Jbar and the axiom suites.
"""

from __future__ import annotations

import itertools
import logging
import random
import time
from fractions import Fraction
from typing import Callable, Mapping

from atlas.core.config import settings
from atlas.core.exceptions import ConstructionError, NotInSpanError
from atlas.models import JacobiMode, JordanAlgebra, LieAlgebra
from atlas.models.linalg import SparseMatrix, SparseVector, SpanBasis, combine, scale
from atlas.schemas import JordanReport, PropertyCheck, TkkReport
from atlas.services.lie import LieService, ad_matrix, structure_from_span

logger = logging.getLogger(__name__)

# V_{x,y} z = TKK_NORMALIZATION * [[x+, y-], z+]
TKK_NORMALIZATION = Fraction(2)
TKK_SAMPLED_TRIPLES = 500
# Support size of random vectors fed through bracket-level checks
BRACKET_SAMPLE_SUPPORT = 4


def random_vector(
    rng: random.Random, dim: int, support: int | None = None, bound: int | None = None
) -> SparseVector:
    """Seeded vector with small integer coordinates, optionally on a random support."""
    bound = settings.RANDOM_COEFFICIENT_BOUND if bound is None else bound
    indices = range(dim) if support is None else sorted(rng.sample(range(dim), min(support, dim)))
    out: SparseVector = {}
    for k in indices:
        value = rng.randint(-bound, bound)
        if value:
            out[k] = Fraction(value)
    return out


def shifted(vector: Mapping[int, object], offset: int) -> SparseVector:
    return {k + offset: v for k, v in vector.items()}


class JordanService:
    """Quadratic Jordan maps and the Lie algebras built from J3^n."""

    def __init__(self, lie: LieService | None = None):
        self.lie = lie or LieService()
        self._algebras: dict[int, JordanAlgebra] = {}
        self._derivations: dict[int, LieAlgebra] = {}
        self._tkk: dict[int, LieAlgebra] = {}

    def algebra(self, n: int) -> JordanAlgebra:
        if n not in self._algebras:
            self._algebras[n] = JordanAlgebra(n)
        return self._algebras[n]

    # ------------------------------------------------------------------
    # Quadratic and trilinear maps
    # ------------------------------------------------------------------

    @staticmethod
    def quadratic_U(J: JordanAlgebra, x: Mapping[int, object]) -> SparseMatrix:
        """U_x = 2 L(x)^2 - L(x o x)."""
        lx = J.multiplication(x)
        return (lx @ lx).scaled(2) - J.multiplication(J.circ(x, x))

    @staticmethod
    def apply_U(J: JordanAlgebra, x: Mapping[int, object], y: Mapping[int, object]) -> SparseVector:
        return combine((2, J.circ(x, J.circ(x, y))), (-1, J.circ(J.circ(x, x), y)))

    @staticmethod
    def linearized_V(J: JordanAlgebra, x: Mapping[int, object], y: Mapping[int, object]) -> SparseMatrix:
        """V_{x,y} = 2 (L(x o y) + [L(x), L(y)])."""
        bracket = J.multiplication(x).commutator(J.multiplication(y))
        return (J.multiplication(J.circ(x, y)) + bracket).scaled(2)

    @staticmethod
    def apply_V(
        J: JordanAlgebra, x: Mapping[int, object], y: Mapping[int, object], z: Mapping[int, object]
    ) -> SparseVector:
        return combine(
            (2, J.circ(x, J.circ(y, z))),
            (2, J.circ(J.circ(x, y), z)),
            (-2, J.circ(y, J.circ(x, z))),
        )

    def V_by_definition(
        self, J: JordanAlgebra, x: Mapping[int, object], y: Mapping[int, object], z: Mapping[int, object]
    ) -> SparseVector:
        """(U_{x+z} - U_x - U_z) y."""
        return combine(
            (1, self.apply_U(J, combine((1, x), (1, z)), y)),
            (-1, self.apply_U(J, x, y)),
            (-1, self.apply_U(J, z, y)),
        )

    # ------------------------------------------------------------------
    # Lie algebras of operators
    # ------------------------------------------------------------------

    def derivations_of_J(self, n: int) -> LieAlgebra:
        """Der(J) = [L(J), L(J)], spanned by commutators of basis multiplications."""
        if n in self._derivations:
            return self._derivations[n]
        started = time.perf_counter()
        J = self.algebra(n)
        span = SpanBasis()
        labels: list[str] = []
        operators: list[SparseMatrix] = []
        mult = J.basis_multiplications
        for a, b in itertools.combinations(range(J.dim), 2):
            operator = mult[a].commutator(mult[b])
            if not operator.is_zero() and span.add(operator.flatten()):
                labels.append(f"[L({J.labels[a]}),L({J.labels[b]})]")
                operators.append(operator)
        algebra = LieAlgebra(
            name=f"Der(J3^{n})",
            labels=tuple(labels),
            structure=structure_from_span(operators, span),
            blocks=("Der(J)",) * len(labels),
            metadata={"operators": operators, "span": span, "jordan_n": n},
        )
        logger.info(
            "built %s: dimension %d in %.3fs", algebra.name, algebra.dimension, time.perf_counter() - started
        )
        self._derivations[n] = algebra
        return algebra

    def str0(self, n: int) -> LieAlgebra:
        """L(J0) + Der(J); ``metadata["direct_sum"]`` records that the sum is direct."""
        J = self.algebra(n)
        der = self.derivations_of_J(n)
        traceless = [J.multiplication(t) for t in J.traceless_basis]
        operators = traceless + list(der.metadata["operators"])
        labels = [f"L(t{k})" for k in range(len(traceless))] + list(der.labels)
        span = SpanBasis()
        independent = all(span.add(op.flatten()) for op in operators)
        algebra = LieAlgebra(
            name=f"str0(J3^{n})",
            labels=tuple(labels),
            structure=structure_from_span(operators, span) if independent else {},
            blocks=("L(J0)",) * len(traceless) + ("Der(J)",) * der.dimension,
            metadata={"direct_sum": independent, "rank": span.rank},
        )
        logger.debug("%s: span rank %d, direct sum %s", algebra.name, span.rank, independent)
        return algebra

    def tkk(self, n: int) -> LieAlgebra:
        """
        J+ + str(J) + J- with str(J) = L(J) + Der(J).

        Brackets:
        - [T, x+] = (T x)+ and [T, y-] = -(T^# y)-
        - [x+, y-] = L(x o y) + [L(x), L(y)]
        - [J+, J+] = [J-, J-] = 0
        """
        if n in self._tkk:
            return self._tkk[n]
        started = time.perf_counter()
        J = self.algebra(n)
        der = self.derivations_of_J(n)
        d = J.dim
        mult = J.basis_multiplications
        operators = list(mult) + list(der.metadata["operators"])
        span = SpanBasis()
        for operator in operators:
            if not span.add(operator.flatten()):
                raise ConstructionError("L(J) and Der(J) do not form a direct sum")
        s = len(operators)
        mid, hi = d, d + s

        def str_coordinates(operator: SparseMatrix) -> SparseVector:
            try:
                return shifted(span.coordinates(operator.flatten()), mid)
            except NotInSpanError as exc:
                raise ConstructionError(f"operator outside str(J3^{n}): {exc.detail}") from exc

        structure: dict[tuple[int, int], SparseVector] = {}
        adjoints = [J.adjoint(op) for op in operators]
        for a in range(d):
            for t, operator in enumerate(operators):
                column = operator.column(a)
                if column:
                    structure[(a, mid + t)] = {k: -v for k, v in column.items()}
            for b in range(d):
                operator = J.multiplication(J.basis_product(a, b)) + mult[a].commutator(mult[b])
                if not operator.is_zero():
                    structure[(a, hi + b)] = str_coordinates(operator)
        for t, u in itertools.combinations(range(s), 2):
            operator = operators[t].commutator(operators[u])
            if not operator.is_zero():
                structure[(mid + t, mid + u)] = str_coordinates(operator)
        for t in range(s):
            for b in range(d):
                column = adjoints[t].column(b)
                if column:
                    structure[(mid + t, hi + b)] = {hi + k: -v for k, v in column.items()}

        labels = (
            tuple(f"{label}+" for label in J.labels)
            + tuple(f"L({label})" for label in J.labels)
            + der.labels
            + tuple(f"{label}-" for label in J.labels)
        )
        grading = {k: 1 for k in range(d)} | {k: 0 for k in range(mid, hi)} | {k: -1 for k in range(hi, hi + d)}
        algebra = LieAlgebra(
            name=f"tkk(J3^{n})",
            labels=labels,
            structure=structure,
            blocks=("J+",) * d + ("str",) * s + ("J-",) * d,
            grading=grading,
            metadata={"jordan_n": n, "offsets": (0, mid, hi), "derivation_dim": der.dimension},
        )
        logger.info(
            "built %s: dimension %d in %.3fs", algebra.name, algebra.dimension, time.perf_counter() - started
        )
        self._tkk[n] = algebra
        return algebra

    @staticmethod
    def grading_element(L: LieAlgebra) -> SparseVector:
        """L(unit) = L(E11) + L(E22) + L(E33) inside str(J)."""
        mid = L.metadata["offsets"][1]
        return {mid: 1, mid + 1: 1, mid + 2: 1}

    @staticmethod
    def embed(L: LieAlgebra, vector: Mapping[int, object], sign: int) -> SparseVector:
        _, _, hi = L.metadata["offsets"]
        return shifted(vector, 0 if sign > 0 else hi)

    @staticmethod
    def component(L: LieAlgebra, vector: Mapping[int, object], sign: int) -> SparseVector:
        """The J+ (sign 1) or J- (sign -1) coordinates of a tkk vector."""
        _, mid, hi = L.metadata["offsets"]
        lo, top = (0, mid) if sign > 0 else (hi, L.dimension)
        return {k - lo: v for k, v in vector.items() if lo <= k < top}

    # ------------------------------------------------------------------
    # Normalization and suites
    # ------------------------------------------------------------------

    def tkk_normalization(self, n: int, samples: int | None = None, seed: int | None = None) -> Fraction:
        """The constant c with V_{x,y} z = c [[x+, y-], z+], fitted on seeded samples."""
        samples = settings.JORDAN_SAMPLES if samples is None else samples
        rng = random.Random(settings.SEED if seed is None else seed)
        J = self.algebra(n)
        L = self.tkk(n)
        constant: Fraction | None = None
        for _ in range(samples):
            x, y, z = (random_vector(rng, J.dim, BRACKET_SAMPLE_SUPPORT) for _ in range(3))
            via_U = self.apply_V(J, x, y, z)
            via_brackets = self.component(
                L, L.bracket(L.bracket(self.embed(L, x, 1), self.embed(L, y, -1)), self.embed(L, z, 1)), 1
            )
            if not via_brackets:
                if via_U:
                    raise ConstructionError("bracket form vanishes where V does not")
                continue
            pivot = min(via_brackets)
            ratio = Fraction(via_U.get(pivot, 0)) / Fraction(via_brackets[pivot])
            if via_U != scale(via_brackets, ratio) or (constant is not None and ratio != constant):
                raise ConstructionError(f"V and the bracket form are not proportional on J3^{n}")
            constant = ratio
        if constant is None:
            raise ConstructionError("no sample determined the normalization")
        logger.debug("tkk normalization for J3^%d: %s", n, constant)
        return constant

    def _pair_axioms(self, L: LieAlgebra, rng: random.Random, sigma: int) -> bool:
        """Jordan pair axioms with U and V built from brackets; x in V^sigma, y in V^-sigma."""
        d = L.metadata["offsets"][1]
        half = Fraction(1, 2)

        def vec(sign: int) -> SparseVector:
            return self.embed(L, random_vector(rng, d, BRACKET_SAMPLE_SUPPORT), sign)

        def U(a: SparseVector, b: SparseVector) -> SparseVector:
            return scale(L.bracket(L.bracket(a, b), a), half)

        def V(a: SparseVector, b: SparseVector, c: SparseVector) -> SparseVector:
            return L.bracket(L.bracket(a, b), c)

        x, y, z, w = vec(sigma), vec(-sigma), vec(sigma), vec(-sigma)
        first = V(x, y, U(x, w)) == U(x, V(y, x, w))
        second = V(U(x, y), y, z) == V(x, U(y, x), z)
        third = U(U(x, y), w) == U(x, U(y, U(x, w)))
        return first and second and third

    def jordan_check(self, n: int, samples: int | None = None, seed: int | None = None) -> JordanReport:
        samples = settings.JORDAN_SAMPLES if samples is None else samples
        seed = settings.SEED if seed is None else seed
        rng = random.Random(seed)
        J = self.algebra(n)
        checks: list[PropertyCheck] = []

        def sampled(name: str, arity: int, holds: Callable[..., bool]) -> None:
            failures, witness = 0, None
            for _ in range(samples):
                args = [random_vector(rng, J.dim) for _ in range(arity)]
                if not holds(*args):
                    failures += 1
                    witness = witness or repr(args)
            checks.append(PropertyCheck(name=name, samples=samples, failures=failures, witness=witness))

        def exact(name: str, holds: bool, count: int = 1) -> None:
            checks.append(PropertyCheck(name=name, samples=count, failures=0 if holds else 1))

        U, V = self.apply_U, self.apply_V
        unit = J.unit
        identity = SparseMatrix.identity(J.dim)

        sampled("Jordan identity", 2, lambda x, y: J.circ(J.circ(x, x), J.circ(x, y)) == J.circ(x, J.circ(J.circ(x, x), y)))
        exact("U_1 = Id", self.quadratic_U(J, unit) == identity)
        exact("V_1,1 = 2 Id", self.linearized_V(J, unit, unit) == identity.scaled(2))
        sampled("U_(U_x y) = U_x U_y U_x", 3, lambda x, y, z: U(J, U(J, x, y), z) == U(J, x, U(J, y, U(J, x, z))))
        sampled("U_x V_y,x = V_x,y U_x", 3, lambda x, y, z: U(J, x, V(J, y, x, z)) == V(J, x, y, U(J, x, z)))
        sampled("V_(U_x y),y = V_x,(U_y x)", 3, lambda x, y, z: V(J, U(J, x, y), y, z) == V(J, x, U(J, y, x), z))
        sampled("V from L agrees with (U_x+z - U_x - U_z) y", 3, lambda x, y, z: V(J, x, y, z) == self.V_by_definition(J, x, y, z))

        der = self.derivations_of_J(n)
        operators = der.metadata["operators"]
        exact("derivations kill the unit", all(not op.apply(unit) for op in operators), len(operators))

        def derivation_rule(x: SparseVector, y: SparseVector) -> bool:
            op = operators[rng.randrange(len(operators))]
            return op.apply(J.circ(x, y)) == combine((1, J.circ(op.apply(x), y)), (1, J.circ(x, op.apply(y))))

        sampled("derivation rule D(x o y) = Dx o y + x o Dy", 2, derivation_rule)

        L = self.tkk(n)
        for sigma in (1, -1):
            failures = sum(1 for _ in range(samples) if not self._pair_axioms(L, rng, sigma))
            label = "+" if sigma > 0 else "-"
            checks.append(PropertyCheck(name=f"Jordan pair axioms from brackets (sigma {label})", samples=samples, failures=failures))

        constant = self.tkk_normalization(n, samples, seed)
        checks.append(
            PropertyCheck(
                name="V = c [[x,y],z] with c = 2",
                samples=samples,
                failures=0 if constant == TKK_NORMALIZATION else 1,
                witness=f"c = {constant}",
            )
        )
        str0 = self.str0(n)
        report = JordanReport(
            n=n,
            dimension=J.dim,
            seed=seed,
            samples=samples,
            derivation_dim=der.dimension,
            str0_dim=str0.dimension if str0.metadata["direct_sum"] else str0.metadata["rank"],
            checks=checks,
        )
        logger.info("jordan suite J3^%d: %d checks, passed=%s", n, len(checks), report.passed)
        return report

    @staticmethod
    def same_grade_brackets(L: LieAlgebra) -> int:
        """Number of basis pairs inside J+ or inside J- with a nonzero bracket."""
        count = 0
        for block in ("J+", "J-"):
            indices = L.block_indices(block)
            count += sum(1 for i, j in itertools.combinations(indices, 2) if L.bracket_basis(i, j))
        return count

    def tkk_check(self, n: int, samples: int | None = None, seed: int | None = None) -> TkkReport:
        seed = settings.SEED if seed is None else seed
        L = self.tkk(n)
        J = self.algebra(n)
        d = J.dim
        grading = self.lie.grading_decompose(L, ad_matrix(L, self.grading_element(L)), seed=seed)

        if n == 1:
            jacobi = self.lie.jacobi_check(L, JacobiMode.EXHAUSTIVE)
        else:
            count = max(TKK_SAMPLED_TRIPLES, settings.JACOBI_SAMPLES if samples is None else samples)
            mode = JacobiMode.EXHAUSTIVE if L.dimension <= settings.EXHAUSTIVE_JACOBI_MAX_DIM else JacobiMode.SAMPLED
            jacobi = self.lie.jacobi_check(L, mode, samples=count, seed=seed)

        same_sign = self.same_grade_brackets(L)
        expected = 2 * d + d + L.metadata["derivation_dim"]
        dims = {value: len(vectors) for value, vectors in grading.parts.items()}
        checks = [
            PropertyCheck(name="[L1, L1] = 0 and [L-1, L-1] = 0", samples=d * (d - 1), failures=same_sign),
            PropertyCheck(
                name="dimension = 2 dim J + dim str(J)",
                samples=1,
                failures=0 if L.dimension == expected else 1,
                witness=f"{L.dimension} vs {expected}",
            ),
            PropertyCheck(
                name="graded parts have dimensions (dim J, dim str, dim J)",
                samples=1,
                failures=0 if dims == {-1: d, 0: d + L.metadata["derivation_dim"], 1: d} else 1,
                witness=str({str(k): v for k, v in sorted(dims.items())}),
            ),
        ]
        report = TkkReport(
            n=n,
            dimension=L.dimension,
            normalization=f"V = {TKK_NORMALIZATION} [[x,y],z]",
            grading=grading.report,
            jacobi=jacobi,
            checks=checks,
        )
        logger.info("tkk suite J3^%d: dimension %d, passed=%s", n, L.dimension, report.passed)
        return report
