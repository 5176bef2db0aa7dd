"""
Registry of every checked claim, grouped by algebra or suite.

Each claim is a named zero-argument check that returns ``(passed, witness)``;
``run_all`` selects claims by id prefix and turns errors raised inside a check
into failures so one broken construction never hides the others.
"""

from __future__ import annotations

import functools
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from atlas.core.config import settings
from atlas.core.exceptions import AtlasError, UsageError
from atlas.models import AlgebraName, JacobiMode, PartKind
from atlas.repositories import ROOT_COUNTS, get_repository
from atlas.schemas import ErratumExport, JordanReport, MagicSquareReport, OctonionReport, ReportEntry, RunReport
from atlas.services.hurwitz import HurwitzService
from atlas.services.jordan import JordanService
from atlas.services.lie import LieService
from atlas.services.projection import (
    G0_SIZES,
    JORDAN_PAIR_TYPES,
    JORDAN_SIZES,
    ProjectionService,
    a2_projection,
    axis_point,
    part_of,
)
from atlas.services.rootspace import RootPerturbation, RootService, resolve_name
from atlas.services.titslie import (
    LAMBDA,
    MAGIC_SQUARE_DIMENSIONS,
    MAGIC_SQUARE_RANKS,
    MU,
    ConstantPerturbation,
    TitsService,
)

logger = logging.getLogger(__name__)

Outcome = tuple[bool, str | None]

DERIVATION_DIMS = {1: 3, 2: 8, 4: 21, 8: 52}
STR0_DIMS = {1: 8, 2: 16, 4: 35, 8: 78}
TKK_DIMS = {1: 21, 2: 35, 4: 66, 8: 133}


@dataclass(frozen=True)
class Claim:
    """One checkable statement, tied to a single acceptance criterion."""

    claim_id: str
    criterion: int
    anchor: str
    check: Callable[[], Outcome]


def parse_perturbation(text: str | None) -> tuple[RootPerturbation | None, ConstantPerturbation | None]:
    """Read ``root:<name>`` or ``constant:<H>,<J>``."""
    if not text:
        return None, None
    prefix, _, value = text.partition(":")
    if prefix == "root" and value:
        return RootPerturbation(resolve_name(value)), None
    if prefix == "constant" and value:
        try:
            h_dim, j_n = (int(part) for part in value.split(","))
        except ValueError:
            raise UsageError(f"constant perturbation needs two integers H,J, got {value!r}") from None
        return None, ConstantPerturbation(h_dim, j_n)
    raise UsageError(f"unknown perturbation {text!r}; use root:<name> or constant:<H>,<J>")


def _verdict(passed: bool, witness: object = None) -> Outcome:
    return passed, None if passed else (str(witness) if witness is not None else None)


class ClaimRegistry:
    """Builds the claim list over one set of services and runs selections of it."""

    def __init__(
        self,
        seed: int | None = None,
        samples: int | None = None,
        perturbation: str | None = None,
    ):
        self.seed = settings.SEED if seed is None else seed
        self.samples = samples
        root_perturbation, constant_perturbation = parse_perturbation(perturbation)
        self.repo = get_repository()
        self.roots = RootService(self.repo, perturbation=root_perturbation)
        self.projection = ProjectionService(self.roots, self.repo)
        self.lie = LieService(self.seed)
        self.hurwitz = HurwitzService(self.lie)
        self.jordan = JordanService(self.lie)
        self.tits = TitsService(self.lie, self.hurwitz, self.jordan, self.projection, constant_perturbation)
        self._jordan_reports: dict[int, JordanReport] = {}
        self.claims = list(self._build())

    # ------------------------------------------------------------------
    # Shared reports
    # ------------------------------------------------------------------

    @functools.cached_property
    def octonion_report(self) -> OctonionReport:
        return self.hurwitz.octonion_check(self.samples, self.seed)

    @functools.cached_property
    def magic_square_report(self) -> MagicSquareReport:
        return self.tits.magic_square(JacobiMode.SAMPLED, seed=self.seed)

    def jordan_report(self, n: int) -> JordanReport:
        if n not in self._jordan_reports:
            self._jordan_reports[n] = self.jordan.jordan_check(n, self.samples, self.seed)
        return self._jordan_reports[n]

    def _octonion(self, fragment: str) -> Outcome:
        checks = [c for c in self.octonion_report.checks if fragment in c.name]
        failed = [c for c in checks if not c.passed]
        if not checks:
            return False, f"no octonion check matches {fragment!r}"
        return _verdict(not failed, "; ".join(f"{c.name}: {c.failures} failures" for c in failed))

    # ------------------------------------------------------------------
    # Claims
    # ------------------------------------------------------------------

    def _build(self) -> Iterator[Claim]:
        for name in AlgebraName.exceptional():
            tag = name.value.upper()
            yield Claim(f"{tag}-ROOT-COUNT", 1, f"{name.value} has {ROOT_COUNTS[name]} roots", functools.partial(self._root_count, name))
            yield Claim(f"{tag}-AXIOMS", 2, f"{name.value} satisfies the root system axioms", functools.partial(self._axioms, name))
        for name in AlgebraName.graded():
            tag = name.value.upper()
            yield Claim(
                f"{tag}-DECOMPOSITION",
                3,
                f"{name.value} = a2 + 3 x ({JORDAN_SIZES[name]}, {JORDAN_SIZES[name]}) + g0 of {G0_SIZES[name]} roots",
                functools.partial(self._decomposition, name),
            )
            yield Claim(
                f"{tag}-HW-PROJECTION",
                4,
                "h.w. Jordan roots project to 1/3(k2+k3-2k1), conjugates to its negative, g0 to zero",
                functools.partial(self._hw_projection, name),
            )
            yield Claim(
                f"{tag}-PLANE-DISTANCE",
                5,
                "every Jordan-pair plane lies at squared distance 2/3 from the g0 span",
                functools.partial(self._planes, name),
            )
        yield Claim("E6-TABLE3", 6, "quantum numbers (s,t), (s',t') of the e6 Jordan pair", self._table3)
        yield Claim("F4-C3-UNION", 7, "g0 with one Jordan pair of f4 has type C3", functools.partial(self._pair_type, AlgebraName.F4))
        yield Claim("E6-ETA-A5", 7, "the 30 eta images in e6 form A5", functools.partial(self._eta, "a5-in-e6", 30))
        yield Claim("E7-ETA-D6", 7, "the 60 eta images in e7 form D6 from an orthonormal basis", functools.partial(self._eta, "d6-in-e7", 60))
        yield Claim("E8-RECOGNIZE-E6", 8, "g0 of e8 is the e6 root table after substitution", functools.partial(self._recognize, AlgebraName.E6))
        yield Claim("E8-RECOGNIZE-E7", 8, "g0 + one Jordan pair of e8 is the e7 root table after substitution", functools.partial(self._recognize, AlgebraName.E7))
        yield Claim("E8-NESTED", 9, "e8 leaves: 4 x 6 + 3 x (27+27) + 3 x (9+9) = 240", self._nested)
        yield Claim("E8-PARTICLES", 9, "particle labels partition the 240 roots; quark colors are the J parts", self._particles)
        yield Claim("OCT-ZORN", 10, "Zorn product equals the table product on all basis pairs", functools.partial(self._octonion, "zorn product"))
        yield Claim("OCT-COMPOSITION", 10, "n(xy) = n(x) n(y) in dimensions 1, 2, 4, 8", functools.partial(self._octonion, "composition law"))
        yield Claim("OCT-ALTERNATIVE", 10, "octonions are alternative, quaternions associative", self._alternative)
        yield Claim("OCT-RHO", 10, "rho+- are orthogonal idempotents summing to 1", functools.partial(self._octonion, "rho idempotent"))
        yield Claim("DER-RANKS", 11, "span of D[u_i,u_j] has rank 3 for Q and 14 for O", self._derivation_ranks)
        yield Claim("DER-LEIBNIZ", 11, "every D[u_i,u_j] is a derivation", functools.partial(self._octonion, "Leibniz"))
        yield Claim("DER-G2", 11, "Der(O) closes, passes Jacobi and is semisimple of rank 2", self._g2)
        for n in (1, 2, 4, 8):
            yield Claim(f"JORDAN-N{n}", 12, f"J3^{n}: axioms, Der of dimension {DERIVATION_DIMS[n]}, str0 of {STR0_DIMS[n]}", functools.partial(self._jordan, n))
            yield Claim(f"TKK-N{n}", 12, f"TKK(J3^{n}) is three-graded of dimension {TKK_DIMS[n]}", functools.partial(self._tkk, n))
            yield Claim(f"ROW3-N{n}", 12, f"tits(4,{n}) is three-graded as (J, str, J)", functools.partial(self._row_three, n))
        yield Claim("MAGIC-DIMENSIONS", 13, "the sixteen Tits dimensions", self._magic_dimensions)
        yield Claim("MAGIC-RANKS", 13, "the sixteen Tits ranks", self._magic_ranks)
        yield Claim("MAGIC-SYMMETRIC", 13, "the grid is symmetric in dimension", lambda: _verdict(self.magic_square_report.symmetric))
        yield Claim("MAGIC-JACOBI", 13, "every Tits algebra satisfies Jacobi", self._magic_jacobi)
        yield Claim("MAGIC-CONSTANTS", 13, f"Jacobi fixes lambda = {LAMBDA} and mu = {MU}", self._constants)
        yield Claim("E8-CHAIN", 14, "248 at every step of the e8 chain; leaves 240 roots + 8 Cartan", self._chain)
        yield Claim("E8-ZORN-GRADING", 14, "the Zorn grading of e8 has L0 of 86 and six parts of 27", self._zorn_grading)
        yield Claim("NEG-ROOT", 15, "a shifted root coordinate breaks the axioms", self._negative_root)
        yield Claim("NEG-CONSTANT", 15, "a shifted structure constant breaks Jacobi", self._negative_constant)

    def _root_count(self, name: AlgebraName) -> Outcome:
        count = len(self.roots.generate_roots(name))
        return _verdict(count == ROOT_COUNTS[name], f"{count} roots")

    def _axioms(self, name: AlgebraName) -> Outcome:
        report = self.roots.validate_root_system(self.roots.generate_roots(name))
        first = report.violations[0].detail if report.violations else None
        return _verdict(report.passed, f"{report.violation_count} violations, first: {first}")

    def _decomposition(self, name: AlgebraName) -> Outcome:
        # decompose itself checks the h.w. and g0 lists
        parts = self.projection.decompose(name)
        sizes = {part.name: len(part) for part in parts}
        expected = {PartKind.OUTER_A2.value: 6, PartKind.G0.value: G0_SIZES[name]}
        for axis in (1, 2, 3):
            expected[f"{PartKind.J.value}({axis})"] = JORDAN_SIZES[name]
            expected[f"{PartKind.JBAR.value}({axis})"] = JORDAN_SIZES[name]
        if sizes != expected:
            return _verdict(False, sizes)
        # the other axes are the cyclic images of axis 1, the conjugates their negatives
        image = part_of(parts, PartKind.J, 1)
        for axis in (2, 3):
            image = self.projection.cyclic_image(image)
            if image.axis != axis or image.roots != part_of(parts, PartKind.J, axis).roots:
                return _verdict(False, f"cyclic image of J(1) is not J({axis})")
        for axis in (1, 2, 3):
            negated = self.projection.negate(part_of(parts, PartKind.J, axis))
            if negated.roots != part_of(parts, PartKind.JBAR, axis).roots:
                return _verdict(False, f"negated J({axis}) is not Jbar({axis})")
        return _verdict(True)

    def _hw_projection(self, name: AlgebraName) -> Outcome:
        parts = self.projection.decompose(name)
        point = axis_point(1)
        wrong = [r for r in part_of(parts, PartKind.J, 1).roots if a2_projection(r) != point]
        wrong += [r for r in part_of(parts, PartKind.JBAR, 1).roots if a2_projection(r) != -point]
        wrong += [r for r in part_of(parts, PartKind.G0).roots if not a2_projection(r).is_zero()]
        return _verdict(not wrong, wrong[0].pretty() if wrong else None)

    def _planes(self, name: AlgebraName) -> Outcome:
        report = self.projection.check_planes(name)
        failed = [c.claim for c in report.checks if not c.passed]
        return _verdict(report.passed and report.squared_distance == "2/3", failed or report.squared_distance)

    def _table3(self) -> Outcome:
        rows = self.projection.table3_quantum_numbers()
        conjugate = self.projection.table3_quantum_numbers(conjugate=True)
        return _verdict(len(rows) == len(conjugate) == 9, f"{len(rows)} and {len(conjugate)} rows")

    def _pair_type(self, name: AlgebraName) -> Outcome:
        cartan = self.roots.identify(self.projection.jordan_pair_subalgebra(name, 1))
        return _verdict(cartan == JORDAN_PAIR_TYPES[name], cartan)

    def _eta(self, target: str, count: int) -> Outcome:
        report = self.projection.eta_embedding(target)
        expected_type = "A5" if target.startswith("a5") else "D6"
        passed = (
            report.matches_lists
            and report.image_count == count
            and report.cartan_type == expected_type
            and report.orthonormal is not False
        )
        return _verdict(passed, report.model_dump(exclude={"images"}))

    def _recognize(self, sub: AlgebraName) -> Outcome:
        report = self.projection.recognize_inside_e8(sub)
        return _verdict(report.isometry, report.attempts)

    def _nested(self) -> Outcome:
        tree = self.projection.nested_decomposition(AlgebraName.E8)
        leaves = tree.leaves()
        a2 = sorted(len(leaf.roots) for leaf in leaves if leaf.cartan_type == "A2")
        pairs = sorted(
            len(leaf.roots) for leaf in leaves if leaf.kind in (PartKind.J.value, PartKind.JBAR.value)
        )
        total = sum(len(leaf.roots) for leaf in leaves)
        passed = a2 == [6] * 4 and pairs == [9] * 6 + [27] * 6 and total == 240
        return _verdict(passed, self.projection.leaf_inventory(tree))

    def _particles(self) -> Outcome:
        labels = self.projection.label_particles()
        counts = self.projection.label_counts(labels)
        return _verdict(len(labels) == sum(counts.values()) == 240, counts)

    def _alternative(self) -> Outcome:
        first, second = self._octonion("alternativity"), self._octonion("quaternions are associative")
        return _verdict(first[0] and second[0], first[1] or second[1])

    def _derivation_ranks(self) -> Outcome:
        ranks = self.octonion_report.derivation_ranks
        return _verdict(ranks == {4: 3, 8: 14}, ranks)

    def _g2(self) -> Outcome:
        closure = self._octonion("closes and satisfies Jacobi")
        semisimple = self._octonion("semisimple")
        return _verdict(closure[0] and semisimple[0], closure[1] or semisimple[1])

    def _jordan(self, n: int) -> Outcome:
        report = self.jordan_report(n)
        passed = report.passed and report.derivation_dim == DERIVATION_DIMS[n] and report.str0_dim == STR0_DIMS[n]
        failed = [c.name for c in report.checks if not c.passed]
        return _verdict(passed, f"Der {report.derivation_dim}, str0 {report.str0_dim}, failed {failed}")

    def _tkk(self, n: int) -> Outcome:
        report = self.jordan.tkk_check(n, self.samples, self.seed)
        return _verdict(report.passed and report.dimension == TKK_DIMS[n], f"dimension {report.dimension}")

    def _row_three(self, n: int) -> Outcome:
        graded = self.tits.row_three_grading(n, seed=self.seed)
        d = 3 * n + 3
        dims = graded.dimensions()
        expected = {Fraction(-1): d, Fraction(0): MAGIC_SQUARE_DIMENSIONS[(2, n)] + 1, Fraction(1): d}
        coarse = {
            Fraction(-1): sum(v for k, v in dims.items() if k < 0),
            Fraction(0): dims.get(Fraction(0), 0),
            Fraction(1): sum(v for k, v in dims.items() if k > 0),
        }
        return _verdict(coarse == expected and graded.report.passed, {str(k): v for k, v in dims.items()})

    def _magic_dimensions(self) -> Outcome:
        found = {(e.hurwitz_dim, e.jordan_n): e.dimension for e in self.magic_square_report.entries}
        wrong = {key: value for key, value in found.items() if MAGIC_SQUARE_DIMENSIONS[key] != value}
        return _verdict(not wrong, wrong)

    def _magic_ranks(self) -> Outcome:
        found = {(e.hurwitz_dim, e.jordan_n): e.rank for e in self.magic_square_report.entries}
        wrong = {key: value for key, value in found.items() if MAGIC_SQUARE_RANKS[key] != value}
        return _verdict(not wrong, wrong)

    def _magic_jacobi(self) -> Outcome:
        failed = [
            f"tits({e.hurwitz_dim},{e.jordan_n}): {e.jacobi.violation_count}"
            for e in self.magic_square_report.entries
            if e.jacobi is not None and not e.jacobi.passed
        ]
        return _verdict(not failed, ", ".join(failed))

    def _constants(self) -> Outcome:
        fitted = self.tits.fit_bracket_constants()
        return _verdict(fitted == (LAMBDA, MU), f"lambda={fitted[0]}, mu={fitted[1]}")

    def _chain(self) -> Outcome:
        report = self.tits.chain_decompose_e8()
        passed = report.passed and sum(report.leaf_roots.values()) == 240 and report.cartan_dimension == 8
        return _verdict(passed, [step.total for step in report.steps])

    def _zorn_grading(self) -> Outcome:
        report = self.tits.zorn_grading_e8(seed=self.seed)
        dims = {part.label: part.dimension for part in report.parts}
        passed = report.passed and dims.pop("L0") == 86 and set(dims.values()) == {27}
        return _verdict(passed, {part.label: part.dimension for part in report.parts})

    def _negative_root(self) -> Outcome:
        shifted = RootService(self.repo, perturbation=RootPerturbation(AlgebraName.G2))
        report = shifted.validate_root_system(shifted.generate_roots(AlgebraName.G2), stop_after=1)
        return _verdict(not report.passed, "perturbed g2 still passes")

    def _negative_constant(self) -> Outcome:
        L = ConstantPerturbation(4, 1).apply(self.tits.tits_construct(4, 1))
        report = self.lie.jacobi_check(L, JacobiMode.EXHAUSTIVE)
        return _verdict(not report.passed, "perturbed tits(4,1) still satisfies Jacobi")

    # ------------------------------------------------------------------
    # Running
    # ------------------------------------------------------------------

    def select(self, prefix: str | None = None) -> list[Claim]:
        if not prefix:
            return list(self.claims)
        wanted = prefix.upper()
        chosen = [claim for claim in self.claims if claim.claim_id.startswith(wanted)]
        if not chosen:
            raise UsageError(f"no claim id starts with {prefix!r}")
        return chosen

    def run_claim(self, claim: Claim) -> ReportEntry:
        started = time.perf_counter()
        try:
            passed, witness = claim.check()
        except AtlasError as exc:
            passed, witness = False, f"{type(exc).__name__}: {exc.detail}"
        logger.info("%s %s in %.2fs", claim.claim_id, "pass" if passed else "FAIL", time.perf_counter() - started)
        return ReportEntry(
            claim_id=claim.claim_id,
            criterion=claim.criterion,
            anchor=claim.anchor,
            status="pass" if passed else "fail",
            witness=witness,
        )

    def run_all(self, prefix: str | None = None) -> RunReport:
        """Run the selected claims in registration order."""
        entries = [self.run_claim(claim) for claim in self.select(prefix)]
        failed = sum(1 for entry in entries if entry.status == "fail")
        return RunReport(
            entries=entries,
            passed=len(entries) - failed,
            failed=failed,
            errata=[ErratumExport.model_validate(e) for e in self.repo.errata()],
        )
