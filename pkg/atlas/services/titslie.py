"""
The Tits construction Der(H) + H0 (x) J0 + Der(J) and everything built on it:
the magic square, the fitted bracket constants, the e8 chain and the gradings of
tits(8, 8) and tits(4, n).
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from atlas.core.config import settings
from atlas.core.exceptions import ConstructionError, DimensionMismatchError, NotInSpanError
from atlas.models import AlgebraName, HurwitzElement, JacobiMode, LieAlgebra, NestedNode, PartKind
from atlas.models.exactnum import I
from atlas.models.hurwitz import MULTIPLICATION_TABLE
from atlas.models.linalg import SparseMatrix, SparseVector, SpanBasis, axpy, nullspace, scale
from atlas.schemas import ChainReport, ChainStep, GradedPart, GradingReport, MagicSquareEntry, MagicSquareReport
from atlas.services.hurwitz import HurwitzService
from atlas.services.jordan import JordanService
from atlas.services.lie import GradedDecomposition, LieService, ad_matrix
from atlas.services.projection import ProjectionService

logger = logging.getLogger(__name__)

# [a(x)x, b(x)y] = LAMBDA T(x o y) D_a,b + (a*b)(x)(x*y) + MU t(ab) [L_x, L_y]
LAMBDA = Fraction(1, 4)
MU = Fraction(1, 2)

HURWITZ_SIZES = (1, 2, 4, 8)

MAGIC_SQUARE_DIMENSIONS = {
    (1, 1): 3, (1, 2): 8, (1, 4): 21, (1, 8): 52,
    (2, 1): 8, (2, 2): 16, (2, 4): 35, (2, 8): 78,
    (4, 1): 21, (4, 2): 35, (4, 4): 66, (4, 8): 133,
    (8, 1): 52, (8, 2): 78, (8, 4): 133, (8, 8): 248,
}  # fmt: skip

MAGIC_SQUARE_RANKS = {
    (1, 1): 1, (1, 2): 2, (1, 4): 3, (1, 8): 4,
    (2, 1): 2, (2, 2): 4, (2, 4): 5, (2, 8): 6,
    (4, 1): 3, (4, 2): 5, (4, 4): 6, (4, 8): 7,
    (8, 1): 4, (8, 2): 6, (8, 4): 7, (8, 8): 8,
}  # fmt: skip

# Simple (or a2 + a2) type determined by (dimension, rank) among magic-square entries
TYPE_BY_DIMENSION_RANK = {
    (3, 1): "a1",
    (8, 2): "a2",
    (21, 3): "c3",
    (52, 4): "f4",
    (16, 4): "a2+a2",
    (35, 5): "a5",
    (78, 6): "e6",
    (66, 6): "d6",
    (133, 7): "e7",
    (248, 8): "e8",
}

# Rotation weights of the planes (u_k, u_k+3), k = 1, 2, 3; they sum to zero
ZORN_WEIGHTS = (1, 4, -5)


def rotation_derivation(dim: int, planes: Mapping[tuple[int, int], Any]) -> SparseMatrix:
    """The operator u_p -> w u_q, u_q -> -w u_p on each plane (p, q)."""
    rows: dict[int, SparseVector] = {}
    for (p, q), weight in planes.items():
        rows.setdefault(q, {})[p] = weight
        rows.setdefault(p, {})[q] = -weight
    return SparseMatrix(dim, rows)


@dataclass(frozen=True)
class ConstantPerturbation:
    """Shift one structure constant of tits(H, J); a negative control for the claim suite."""

    h_dim: int
    j_n: int
    entry: int = 0
    delta: Fraction = Fraction(1, 7)

    def apply(self, L: LieAlgebra) -> LieAlgebra:
        entries = list(itertools.islice(L.structure_entries(), self.entry + 1))
        if len(entries) <= self.entry:
            raise ConstructionError(f"{L.name} has no structure constant number {self.entry}")
        i, j, k, _ = entries[self.entry]
        return L.perturbed(i, j, k, self.delta)


class TitsService:
    """Builds tits(H, J) and verifies the magic square."""

    def __init__(
        self,
        lie: LieService | None = None,
        hurwitz: HurwitzService | None = None,
        jordan: JordanService | None = None,
        projection: ProjectionService | None = None,
        perturbation: ConstantPerturbation | None = None,
    ):
        self.lie = lie or LieService()
        self.hurwitz = hurwitz or HurwitzService(self.lie)
        self.jordan = jordan or JordanService(self.lie)
        self._projection = projection
        self.perturbation = perturbation
        self._algebras: dict[tuple[int, int, Fraction, Fraction], LieAlgebra] = {}

    def _perturb(self, L: LieAlgebra) -> LieAlgebra:
        p = self.perturbation
        if p is None or (p.h_dim, p.j_n) != (L.metadata["hurwitz_dim"], L.metadata["jordan_n"]):
            return L
        logger.warning("perturbing structure constant %d of %s", p.entry, L.name)
        return p.apply(L)

    @property
    def projection(self) -> ProjectionService:
        if self._projection is None:
            self._projection = ProjectionService()
        return self._projection

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    def tits_construct(
        self,
        h_dim: int,
        j_n: int,
        lam: Fraction = LAMBDA,
        mu: Fraction = MU,
        check_antisymmetry: bool = True,
    ) -> LieAlgebra:
        """
        Der(H) + H0 (x) J0 + Der(J) with exact structure constants.

        Brackets:
        - Der(H) and Der(J) keep their own brackets and commute with each other
        - [D, a(x)x] = Da (x) x and [E, a(x)x] = a (x) Ex
        - [a(x)x, b(x)y] = lam T(x o y) D_a,b + (a*b)(x)(x*y) + mu t(ab) [L_x, L_y]

        with a*b = ab - t(ab)/2 and x*y = x o y - T(x o y)/3. With ``check_antisymmetry``
        every ordered pair is computed both ways and the mismatches are recorded in
        ``metadata["antisymmetry_violations"]``.
        """
        if h_dim not in HURWITZ_SIZES or j_n not in HURWITZ_SIZES:
            raise DimensionMismatchError(f"tits(H, J) needs dimensions in 1, 2, 4, 8, got ({h_dim}, {j_n})")
        key = (h_dim, j_n, Fraction(lam), Fraction(mu))
        if key in self._algebras:
            return self._perturb(self._algebras[key])

        started = time.perf_counter()
        J = self.jordan.algebra(j_n)
        der_j = self.jordan.derivations_of_J(j_n)
        der_h = self.hurwitz.derivation_algebra(h_dim) if h_dim in (4, 8) else None
        h_ops: list[SparseMatrix] = der_h.metadata["operators"] if der_h else []
        h_span: SpanBasis | None = der_h.metadata["span"] if der_h else None
        j_ops: list[SparseMatrix] = der_j.metadata["operators"]
        j_span: SpanBasis = der_j.metadata["span"]
        traceless = J.traceless_basis
        j0 = len(traceless)
        units = [HurwitzElement.basis(h_dim, k) for k in range(h_dim)]

        p = len(h_ops)
        t_off = p
        d_off = p + (h_dim - 1) * j0
        dim = d_off + len(j_ops)

        def tensor(a: int, s: int) -> int:
            return t_off + (a - 1) * j0 + s

        def kind(index: int) -> str:
            if index < t_off:
                return "H"
            return "T" if index < d_off else "J"

        def split(index: int) -> tuple[int, int]:
            offset = index - t_off
            return offset // j0 + 1, offset % j0

        def coordinates(span: SpanBasis, operator: SparseMatrix, shift: int) -> SparseVector:
            try:
                return {k + shift: v for k, v in span.coordinates(operator.flatten()).items()}
            except NotInSpanError as exc:
                raise ConstructionError(f"tits({h_dim}, {j_n}): {exc.detail}") from exc

        d_coords: dict[tuple[int, int], SparseVector] = {}
        star_coords: dict[tuple[int, int], SparseVector] = {}
        trace_forms: dict[tuple[int, int], Any] = {}
        l_coords: dict[tuple[int, int], SparseVector] = {}
        e_images: dict[tuple[int, int], SparseVector] = {}

        def d_ab(a: int, b: int) -> SparseVector:
            if (a, b) not in d_coords:
                if a == b or h_span is None:
                    d_coords[(a, b)] = {}
                else:
                    d_coords[(a, b)] = coordinates(h_span, self.hurwitz.derivation(units[a], units[b]), 0)
            return d_coords[(a, b)]

        def star(s: int, r: int) -> SparseVector:
            if (s, r) not in star_coords:
                product = J.circ(traceless[s], traceless[r])
                trace_forms[(s, r)] = J.trace(product)
                star_coords[(s, r)] = J.traceless_coordinates(J.traceless(product))
            return star_coords[(s, r)]

        def l_bracket(s: int, r: int) -> SparseVector:
            if (s, r) not in l_coords:
                operator = J.multiplication(traceless[s]).commutator(J.multiplication(traceless[r]))
                l_coords[(s, r)] = coordinates(j_span, operator, d_off) if not operator.is_zero() else {}
            return l_coords[(s, r)]

        def e_image(e: int, s: int) -> SparseVector:
            if (e, s) not in e_images:
                e_images[(e, s)] = J.traceless_coordinates(j_ops[e].apply(traceless[s]))
            return e_images[(e, s)]

        def act_h(i: int, j: int) -> SparseVector:
            a, s = split(j)
            out: SparseVector = {}
            for c, v in h_ops[i].column(a).items():
                if c == 0:
                    raise ConstructionError("a derivation of H moved an imaginary unit onto 1")
                out[tensor(c, s)] = v
            return out

        def act_j(e: int, j: int) -> SparseVector:
            a, s = split(j)
            return {tensor(a, r): v for r, v in e_image(e, s).items()}

        def raw(i: int, j: int) -> SparseVector:
            if i == j:
                return {}
            ki, kj = kind(i), kind(j)
            if ki == kj == "H":
                return coordinates(h_span, h_ops[i].commutator(h_ops[j]), 0) if h_span else {}
            if ki == kj == "J":
                operator = j_ops[i - d_off].commutator(j_ops[j - d_off])
                return coordinates(j_span, operator, d_off) if not operator.is_zero() else {}
            if {ki, kj} == {"H", "J"}:
                return {}
            if ki == "H":
                return act_h(i, j)
            if kj == "H":
                return scale(act_h(j, i), -1)
            if ki == "J":
                return act_j(i - d_off, j)
            if kj == "J":
                return scale(act_j(j - d_off, i), -1)
            a, s = split(i)
            b, r = split(j)
            out: SparseVector = {}
            star_sr = star(s, r)
            form = trace_forms[(s, r)]
            if form:
                axpy(out, lam * form, d_ab(a, b))
            sign, c = MULTIPLICATION_TABLE[a][b]
            if c != 0:
                for q, v in star_sr.items():
                    axpy(out, sign * v, {tensor(c, q): 1})
            else:
                # a = b: t(ab) = -2
                axpy(out, -2 * mu, l_bracket(s, r))
            return out

        structure: dict[tuple[int, int], SparseVector] = {}
        violations = 0
        for i, j in itertools.combinations(range(dim), 2):
            value = raw(i, j)
            if value:
                structure[(i, j)] = value
            if check_antisymmetry and raw(j, i) != scale(value, -1):
                violations += 1

        labels = (
            (der_h.labels if der_h else ())
            + tuple(f"u{a}(x)t{s}" for a in range(1, h_dim) for s in range(j0))
            + der_j.labels
        )
        algebra = LieAlgebra(
            name=f"tits({h_dim},{j_n})",
            labels=labels,
            structure=structure,
            blocks=("Der(H)",) * p + ("H0(x)J0",) * (d_off - t_off) + ("Der(J)",) * len(j_ops),
            metadata={
                "hurwitz_dim": h_dim,
                "jordan_n": j_n,
                "lam": Fraction(lam),
                "mu": Fraction(mu),
                "offsets": (0, t_off, d_off),
                "j0": j0,
                "antisymmetry_checked": check_antisymmetry,
                "antisymmetry_violations": violations,
            },
        )
        logger.info(
            "built %s: dimension %d in %.3fs", algebra.name, algebra.dimension, time.perf_counter() - started
        )
        self._algebras[key] = algebra
        return self._perturb(algebra)

    def fit_bracket_constants(self, h_dim: int = 4, j_n: int = 1) -> tuple[Fraction, Fraction]:
        """
        Solve the Jacobi identity for (lam, mu).

        The Jacobiator is affine in (lam, mu); evaluating it at (0,0), (1,0), (0,1) on
        every basis triple gives a linear system whose solution must be unique.
        """
        samples = {
            point: self.tits_construct(h_dim, j_n, *point, check_antisymmetry=False)
            for point in ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
        }
        base, lam_alg, mu_alg = samples.values()
        rows: list[list[Fraction]] = []
        for i, j, k in itertools.combinations(range(base.dimension), 3):
            j0 = base.jacobiator(i, j, k)
            j1 = lam_alg.jacobiator(i, j, k)
            j2 = mu_alg.jacobiator(i, j, k)
            for c in set(j0) | set(j1) | set(j2):
                constant = j0.get(c, 0)
                rows.append([j1.get(c, 0) - constant, j2.get(c, 0) - constant, constant])
        solutions = nullspace(rows, 3)
        if len(solutions) != 1 or not solutions[0][2]:
            raise ConstructionError(
                f"bracket constants are not determined by Jacobi ({len(solutions)} solutions)"
            )
        lam, mu, scale_ = solutions[0]
        fitted = (Fraction(lam) / Fraction(scale_), Fraction(mu) / Fraction(scale_))
        logger.info("fitted bracket constants on tits(%d,%d): lam=%s mu=%s", h_dim, j_n, *fitted)
        return fitted

    def generic_rank(self, L: LieAlgebra, trials: int | None = None, seed: int | None = None) -> int:
        return self.lie.generic_rank(L, trials, seed)

    # ------------------------------------------------------------------
    # Magic square
    # ------------------------------------------------------------------

    def magic_square(
        self, verify: JacobiMode | str | None = None, samples: int | None = None, seed: int | None = None
    ) -> MagicSquareReport:
        """
        Build all sixteen entries with their rank and type.

        ``verify`` adds a Jacobi check per entry: exhaustive runs every triple,
        sampled runs every triple up to the exhaustive limit and seeded triples with
        per-block coverage above it.
        """
        verify = JacobiMode(verify) if verify is not None else None
        entries: list[MagicSquareEntry] = []
        dimensions: dict[tuple[int, int], int] = {}
        for h_dim in HURWITZ_SIZES:
            for j_n in HURWITZ_SIZES:
                L = self.tits_construct(h_dim, j_n)
                rank = self.generic_rank(L, seed=seed)
                dimensions[(h_dim, j_n)] = L.dimension
                jacobi = None
                if verify == JacobiMode.EXHAUSTIVE:
                    jacobi = self.lie.jacobi_check(L, JacobiMode.EXHAUSTIVE)
                elif verify == JacobiMode.SAMPLED:
                    large = L.dimension > settings.EXHAUSTIVE_JACOBI_MAX_DIM
                    jacobi = self.lie.jacobi_check(L, None, samples, seed, block_coverage=large)
                entries.append(
                    MagicSquareEntry(
                        hurwitz_dim=h_dim,
                        jordan_n=j_n,
                        dimension=L.dimension,
                        rank=rank,
                        identified_type=TYPE_BY_DIMENSION_RANK.get((L.dimension, rank), "?"),
                        jacobi=jacobi,
                    )
                )
        symmetric = all(dimensions[(a, b)] == dimensions[(b, a)] for a, b in dimensions)
        return MagicSquareReport(entries=entries, symmetric=symmetric, lam=str(LAMBDA), mu=str(MU))

    # ------------------------------------------------------------------
    # e8 chain and gradings
    # ------------------------------------------------------------------

    def chain_decompose_e8(self) -> ChainReport:
        """Dimension bookkeeping from the Tits form of e8 down to four a2 and six Jordan pairs."""
        L = self.tits_construct(8, 8)
        blocks = [len(L.block_indices(block)) for block in ("Der(H)", "H0(x)J0", "Der(J)")]
        tree = self.projection.nested_decomposition(AlgebraName.E8)

        def a2_dim(node: NestedNode) -> int:
            return len(node.roots) + 2

        def jordan_roots(node: NestedNode) -> int:
            return sum(len(c.roots) for c in node.children if c.kind in (PartKind.J.value, PartKind.JBAR.value))

        def child(node: NestedNode, kind: str) -> NestedNode:
            return next(c for c in node.children if c.kind == kind)

        outer = child(tree, PartKind.OUTER_A2.value)
        g0 = child(tree, PartKind.G0.value)
        inner = child(g0, PartKind.OUTER_A2.value)
        g0_inner = child(g0, PartKind.G0.value)
        a2_leaves = [leaf for leaf in tree.leaves() if leaf.cartan_type == "A2"]
        g0_rank = 8 - 2
        inner_rank = g0_rank - 2

        top_pairs = jordan_roots(tree)
        inner_pairs = jordan_roots(g0)
        steps = [
            ("Der(O) + O0(x)J0 + Der(J3^8)", blocks),
            ("a2 + 3x(J3^8, J3^8bar) + e6", [a2_dim(outer), top_pairs, len(g0.roots) + g0_rank]),
            (
                "a2 + 3x(J3^8, J3^8bar) + (a2 + 3x(J3^2, J3^2bar) + a2 + a2)",
                [a2_dim(outer), top_pairs, a2_dim(inner) + inner_pairs + len(g0_inner.roots) + inner_rank],
            ),
            (
                "4x a2 + 3x(J3^8, J3^8bar) + 3x(J3^2, J3^2bar)",
                [sum(a2_dim(leaf) for leaf in a2_leaves), top_pairs, inner_pairs],
            ),
        ]
        report = ChainReport(
            steps=[ChainStep(expression=e, terms=t, total=sum(t)) for e, t in steps],
            leaf_roots=self.projection.leaf_inventory(tree),
            cartan_dimension=2 * len(a2_leaves),
        )
        logger.info("e8 chain totals: %s", [step.total for step in report.steps])
        return report

    def _rotation_element(self, h_dim: int, planes: Mapping[tuple[int, int], Any]) -> SparseVector:
        """i R for the plane rotation R, in coordinates of the Der(H) block."""
        rotation = rotation_derivation(h_dim, planes)
        if not self.hurwitz.is_derivation(rotation, h_dim):
            raise ConstructionError(f"plane rotation {dict(planes)} is not a derivation of H{h_dim}")
        span: SpanBasis = self.hurwitz.derivation_algebra(h_dim).metadata["span"]
        return {k: I * v for k, v in span.coordinates(rotation.flatten()).items()}

    def _tensor_eigenbasis(
        self, L: LieAlgebra, planes: list[tuple[int, int]], fixed: list[int]
    ) -> list[SparseVector]:
        """(u_p +- i u_q) (x) t for each plane and u_f (x) t for each fixed unit."""
        _, t_off, _ = L.metadata["offsets"]
        j0 = L.metadata["j0"]

        def index(a: int, s: int) -> int:
            return t_off + (a - 1) * j0 + s

        basis: list[SparseVector] = []
        for s in range(j0):
            for f in fixed:
                basis.append({index(f, s): 1})
            for p, q in planes:
                basis.append({index(p, s): 1, index(q, s): I})
                basis.append({index(p, s): 1, index(q, s): -I})
        return basis

    def _graded(self, L: LieAlgebra, h: SparseVector, planes: list[tuple[int, int]], fixed: list[int], candidates: range, samples: int | None, seed: int | None) -> GradedDecomposition:
        operator = ad_matrix(L, h)
        basis = self.lie.eigenbasis(operator, L.block_indices("Der(H)"), candidates)
        basis += self._tensor_eigenbasis(L, planes, fixed)
        basis += [{k: 1} for k in L.block_indices("Der(J)")]
        return self.lie.grading_decompose(L, operator, basis, samples=samples, seed=seed)

    def zorn_grading_e8(self, samples: int | None = None, seed: int | None = None) -> GradingReport:
        """
        Grade tits(8,8) by i R, R rotating (u_k, u_k+3) with weights (1, 4, -5).

        L0 collects the eigenvalues divisible by 3 (a2 + i u7 (x) J0 + Der(J)); L+k and
        L-k are the eigenvalues +w_k and -w_k.
        """
        L = self.tits_construct(8, 8)
        planes = [(k, k + 3) for k in (1, 2, 3)]
        h = self._rotation_element(8, dict(zip(planes, ZORN_WEIGHTS)))
        graded = self._graded(L, h, planes, [7], range(-10, 11), samples, seed)
        coarse: dict[str, int] = {"L0": 0}
        for value, vectors in graded.parts.items():
            if value % 3 == 0:
                coarse["L0"] += len(vectors)
                continue
            k = next((k for k, w in enumerate(ZORN_WEIGHTS, 1) if abs(value) == abs(w)), None)
            if k is None:
                raise ConstructionError(f"unexpected eigenvalue {value} in the Zorn grading")
            label = f"L{'+' if value * ZORN_WEIGHTS[k - 1] > 0 else '-'}{k}"
            coarse[label] = coarse.get(label, 0) + len(vectors)
        parts = [GradedPart(label="L0", eigenvalue="0 mod 3", dimension=coarse["L0"])]
        for k, w in enumerate(ZORN_WEIGHTS, 1):
            for sign, label in ((1, f"L+{k}"), (-1, f"L-{k}")):
                parts.append(GradedPart(label=label, eigenvalue=str(sign * w), dimension=coarse.get(label, 0)))
        return GradingReport(
            algebra=L.name,
            parts=parts,
            pairs_checked=graded.report.pairs_checked,
            incompatible_pairs=graded.report.incompatible_pairs,
        )

    def row_three_grading(self, n: int, samples: int | None = None, seed: int | None = None) -> GradedDecomposition:
        """
        Three-grading of tits(4, n) by i R, R rotating (u1, u2).

        The parts have dimensions (dim J3^n, dim tits(2, n) + 1, dim J3^n).
        """
        L = self.tits_construct(4, n)
        h = self._rotation_element(4, {(1, 2): 1})
        return self._graded(L, h, [(1, 2)], [3], range(-2, 3), samples, seed)
