"""
Root system generation, validation and identification.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from atlas.core.exceptions import InvalidRootSystemError, TranscriptionError, UnknownAlgebraError
from atlas.models import AlgebraName, ParityReading, RootSystem, RootVector
from atlas.models.vectors import sorted_roots, span_rank
from atlas.repositories import ROOT_COUNTS, TranscriptionRepository, expand_row, get_repository
from atlas.schemas import RootSystemExport, ValidationReport, Violation

logger = logging.getLogger(__name__)

# Simple roots are the positive roots for this functional that are not sums of two others
SIMPLE_ROOT_FUNCTIONAL = RootVector([8**7, 8**6, 8**5, 8**4, 8**3, 8**2, 8, 1])

MAX_REPORTED_VIOLATIONS = 50


def resolve_name(name: AlgebraName | str) -> AlgebraName:
    """Coerce a user-supplied algebra name."""
    try:
        return AlgebraName(name)
    except ValueError:
        raise UnknownAlgebraError(f"unknown algebra {name!r}") from None


@dataclass(frozen=True)
class RootPerturbation:
    """Shift one coordinate of one generated root; a negative control for the claim suite."""

    name: AlgebraName
    index: int = 0
    coordinate: int = 8
    delta: Fraction = Fraction(1, 7)

    def apply(self, roots: list[RootVector]) -> list[RootVector]:
        out = list(roots)
        out[self.index] = out[self.index] + RootVector.k(self.coordinate, self.delta)
        return out


class RootService:
    """Service for the root systems of the exceptional algebras and their subsystems."""

    def __init__(
        self,
        repository: TranscriptionRepository | None = None,
        perturbation: RootPerturbation | None = None,
    ):
        self.repo = repository or get_repository()
        self.perturbation = perturbation
        self._readings: dict[AlgebraName, ParityReading] = {}
        self._simple: dict[RootSystem, list[RootVector]] = {}

    # ------------------------------------------------------------------
    # Generation
    # ------------------------------------------------------------------

    def _expand(self, name: AlgebraName, reading: ParityReading) -> list[RootVector]:
        roots: list[RootVector] = []
        for row in self.repo.table_rows(name):
            vectors = expand_row(row, reading)
            if len(vectors) != row.count:
                raise TranscriptionError(
                    f"{name.value} row {row.pattern} gives {len(vectors)} vectors, expected {row.count}"
                )
            roots.extend(vectors)
        if len(set(roots)) != len(roots):
            raise TranscriptionError(f"{name.value} rows produce duplicate roots")
        if len(roots) != ROOT_COUNTS[name]:
            raise TranscriptionError(
                f"{name.value} has {len(roots)} roots, expected {ROOT_COUNTS[name]}"
            )
        return roots

    def generate_roots(
        self, name: AlgebraName | str, reading: ParityReading | None = None
    ) -> RootSystem:
        """
        Generate the roots of an exceptional algebra from its table lines.

        Validates:
        - Every line yields its listed number of vectors
        - The total matches the listed root count, without duplicates
        """
        name = resolve_name(name)
        if name not in AlgebraName.exceptional():
            raise UnknownAlgebraError(f"{name.value} is not one of g2, f4, e6, e7, e8")
        rows = self.repo.table_rows(name)
        if reading is None:
            needs_reading = any(row.has_irrational_term and row.parity for row in rows)
            reading = self.resolve_parity_reading(name) if needs_reading else ParityReading.COUNTED
        roots = self._expand(name, reading)
        if self.perturbation and self.perturbation.name == name:
            logger.warning("perturbing root %d of %s", self.perturbation.index, name.value)
            roots = self.perturbation.apply(sorted_roots(roots))
        rs = RootSystem(name.value, sorted_roots(roots), span_rank(roots))
        logger.debug("generated %d roots of %s, rank %d", len(rs), name.value, rs.rank)
        return rs

    def resolve_parity_reading(self, name: AlgebraName | str) -> ParityReading:
        """
        Decide whether the irrational last term of the half sums joins the sign parity.

        Exactly one reading must give a set that passes the root system axioms.
        """
        name = resolve_name(name)
        if name in self._readings:
            return self._readings[name]
        valid = []
        for reading in ParityReading:
            try:
                roots = self._expand(name, reading)
            except TranscriptionError as exc:
                logger.debug("reading %s of %s rejected: %s", reading.value, name.value, exc.detail)
                continue
            report = self.validate_root_system(
                RootSystem(name.value, tuple(roots), span_rank(roots)), stop_after=1
            )
            if report.passed:
                valid.append(reading)
        if len(valid) != 1:
            raise TranscriptionError(
                f"{len(valid)} parity readings of {name.value} give a root system, expected one"
            )
        logger.info("parity reading of %s: %s", name.value, valid[0].value)
        self._readings[name] = valid[0]
        return valid[0]

    @staticmethod
    def inner(u: RootVector, v: RootVector):
        return u.inner(v)

    def root_system_from(self, name: str, roots: Iterable[RootVector]) -> RootSystem:
        """Wrap a subset as a named root system."""
        items = sorted_roots(set(roots))
        return RootSystem(name, items, span_rank(items))

    def export_json(self, rs: RootSystem) -> RootSystemExport:
        return RootSystemExport(name=rs.name, rank=rs.rank, roots=[r.render() for r in rs.roots])

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    def validate_root_system(
        self, rs: RootSystem | Sequence[RootVector], stop_after: int | None = None
    ) -> ValidationReport:
        """
        Check the root system axioms on every ordered pair.

        Validates:
        - No zero or duplicate vectors; closure under negation
        - 2(a, b)/(a, a) is an integer and the reflection of b in a is present
        - The only multiples of a present are a and -a
        """
        name = rs.name if isinstance(rs, RootSystem) else "roots"
        roots = list(rs.roots if isinstance(rs, RootSystem) else rs)
        present = set(roots)
        violations: list[Violation] = []
        count = 0

        def report(kind: str, vectors: Sequence[RootVector], detail: str) -> bool:
            nonlocal count
            count += 1
            if len(violations) < MAX_REPORTED_VIOLATIONS:
                violations.append(Violation(kind=kind, roots=[v.pretty() for v in vectors], detail=detail))
            return stop_after is not None and count >= stop_after

        def finish(pairs: int) -> ValidationReport:
            lengths = sorted({r.norm2() for r in present if not r.is_zero()})
            return ValidationReport(
                name=name,
                root_count=len(roots),
                checked_pairs=pairs,
                violation_count=count,
                violations=violations,
                lengths=[str(x) for x in lengths],
            )

        if len(present) != len(roots):
            if report("duplicate", [], f"{len(roots) - len(present)} duplicate vectors"):
                return finish(0)
        for a in roots:
            if a.is_zero():
                if report("zero", [a], "the zero vector is not a root"):
                    return finish(0)
            elif -a not in present:
                if report("negation", [a], "negative is missing"):
                    return finish(0)

        checked = 0
        candidates = [a for a in sorted_roots(present) if not a.is_zero()]
        for a in candidates:
            norm = a.norm2()
            factor = 2 / norm
            for b in candidates:
                checked += 1
                if a == b:
                    continue
                product = a.inner(b)
                if b != -a and product * product == norm * b.norm2():
                    if report("multiple", [a, b], "parallel roots other than +-a"):
                        return finish(checked)
                    continue
                n = product * factor
                if not n.is_integer():
                    if report("integrality", [a, b], f"2(a,b)/(a,a) = {n}"):
                        return finish(checked)
                    continue
                if n and b - a * n not in present:
                    if report("reflection", [a, b], "reflection of b in a is missing"):
                        return finish(checked)
        logger.debug("validated %s: %d pairs, %d violations", name, checked, count)
        return finish(checked)

    # ------------------------------------------------------------------
    # Simple roots and types
    # ------------------------------------------------------------------

    def simple_roots(self, rs: RootSystem) -> list[RootVector]:
        """Simple roots for the fixed functional, ordered by decreasing functional value."""
        if rs in self._simple:
            return list(self._simple[rs])
        report = self.validate_root_system(rs, stop_after=1)
        if not report.passed:
            raise InvalidRootSystemError(f"{rs.name} is not a root system: {report.violations[0].detail}")
        positive = [r for r in rs.roots if r.inner(SIMPLE_ROOT_FUNCTIONAL) > 0]
        if 2 * len(positive) != len(rs.roots):
            raise InvalidRootSystemError(f"the functional vanishes on a root of {rs.name}")
        positive_set = set(positive)
        simple = [
            a for a in positive if not any(b != a and (a - b) in positive_set for b in positive)
        ]
        simple.sort(key=lambda r: r.inner(SIMPLE_ROOT_FUNCTIONAL), reverse=True)
        if len(simple) != rs.rank:
            raise InvalidRootSystemError(
                f"{rs.name} has {len(simple)} simple roots but rank {rs.rank}"
            )
        self._simple[rs] = simple
        return list(simple)

    def cartan_integers(self, rs: RootSystem) -> list[list[int]]:
        """Cartan matrix a_ij = 2(a_i, a_j)/(a_j, a_j) on the simple roots."""
        simple = self.simple_roots(rs)
        matrix = []
        for a in simple:
            row = []
            for b in simple:
                value = 2 * a.inner(b) / b.norm2()
                if not value.is_integer():
                    raise InvalidRootSystemError(f"non-integral Cartan entry {value} in {rs.name}")
                row.append(int(value.as_fraction()))
            matrix.append(row)
        return matrix

    def identify(self, rs: RootSystem) -> str:
        """Cartan type of a root system, e.g. "E7" or "A2+A2"."""
        simple = self.simple_roots(rs)
        return cartan_type(self.cartan_integers(rs), [r.norm2().as_fraction() for r in simple])

    def split_components(self, roots: Iterable[RootVector]) -> list[frozenset[RootVector]]:
        """Irreducible components: classes of the non-orthogonality relation."""
        remaining = set(roots)
        components = []
        for start in sorted_roots(remaining):
            if start not in remaining:
                continue
            remaining.discard(start)
            component = {start}
            queue = deque([start])
            while queue:
                a = queue.popleft()
                linked = [b for b in remaining if a.inner(b)]
                for b in linked:
                    remaining.discard(b)
                    component.add(b)
                    queue.append(b)
            components.append(frozenset(component))
        return components


def _rank_of(type_name: str) -> int:
    return int(type_name[1:]) if type_name[1:].isdigit() else 0


def cartan_type(matrix: Sequence[Sequence[int]], lengths: Sequence[Fraction] | None = None) -> str:
    """
    Name the Dynkin diagram of a Cartan matrix.

    ``lengths`` are the squared norms of the simple roots; they separate B_n from C_n.
    Components are joined with "+", larger ranks first.
    """
    size = len(matrix)
    if lengths is None:
        lengths = [Fraction(1)] * size
    neighbours = {i: [j for j in range(size) if j != i and matrix[i][j]] for i in range(size)}
    seen: set[int] = set()
    types = []
    for start in range(size):
        if start in seen:
            continue
        component = []
        queue = deque([start])
        seen.add(start)
        while queue:
            i = queue.popleft()
            component.append(i)
            for j in neighbours[i]:
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        types.append(_component_type(matrix, sorted(component), neighbours, lengths))
    return "+".join(sorted(types, key=lambda t: (-_rank_of(t), t)))


def _component_type(
    matrix: Sequence[Sequence[int]],
    nodes: list[int],
    neighbours: dict[int, list[int]],
    lengths: Sequence[Fraction],
) -> str:
    n = len(nodes)
    if n == 1:
        return "A1"
    edges = {(i, j): matrix[i][j] * matrix[j][i] for i in nodes for j in neighbours[i] if i < j}
    multiplicities = set(edges.values())
    degree = {i: len(neighbours[i]) for i in nodes}
    if 3 in multiplicities:
        return "G2"
    if 2 in multiplicities:
        if n == 2:
            return "B2"
        (i, j), = [edge for edge, m in edges.items() if m == 2]
        if n == 4 and degree[i] == 2 and degree[j] == 2:
            return "F4"
        longest = max(lengths[k] for k in nodes)
        short = sum(1 for k in nodes if lengths[k] < longest)
        return f"B{n}" if short == 1 else f"C{n}"
    branch = [i for i in nodes if degree[i] == 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or any(d > 3 for d in degree.values()):
        return f"?{n}"
    centre = branch[0]
    arms = []
    for first in neighbours[centre]:
        length, previous, current = 1, centre, first
        while degree[current] == 2:
            nxt = next(k for k in neighbours[current] if k != previous)
            previous, current = current, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{arms[2] + 3}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return f"E{arms[2] + 4}"
    return f"?{n}"
