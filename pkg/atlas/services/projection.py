"""
Projection of root systems on the plane of an a2 subalgebra.

A root belongs to the outer a2 when its projection is a hexagon point
±(k_i - k_j), to the Jordan part J on axis m when it projects to
1/3(k_p + k_q - 2k_m), to Jbar on axis m at the negative point, and to g0
when it projects to zero.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Iterable, Sequence

from atlas.core.exceptions import (
    DimensionMismatchError,
    NoPlaneStructureError,
    SubstitutionNotFoundError,
    TranscriptionError,
    UnknownAlgebraError,
)
from atlas.models import (
    AlgebraName,
    DecompositionPart,
    NestedNode,
    ParticleKind,
    ParticleLabel,
    PartKind,
    QuantumNumbers,
    RootSystem,
    RootVector,
    Subspace,
)
from atlas.models.exactnum import FieldScalar
from atlas.models.linalg import solve_gram
from atlas.models.vectors import sorted_roots, span_rank
from atlas.repositories import (
    E6_PLANE_BASES,
    E6_PLANE_OFFSETS,
    F4_PLANE_BASIS,
    F4_PLANE_COORDINATES,
    SUBSTITUTIONS,
    TranscriptionRepository,
    e6_g0_components,
    get_repository,
    parse_root,
)
from atlas.schemas import EtaEmbeddingReport, PlaneCheck, PlanesReport, RecognitionReport
from atlas.services.rootspace import RootService, resolve_name

logger = logging.getLogger(__name__)

JORDAN_SIZES = {
    AlgebraName.F4: 6,
    AlgebraName.E6: 9,
    AlgebraName.E7: 15,
    AlgebraName.E8: 27,
}
G0_SIZES = {
    AlgebraName.F4: 6,
    AlgebraName.E6: 12,
    AlgebraName.E7: 30,
    AlgebraName.E8: 72,
}
G0_TYPES = {
    AlgebraName.F4: "A2",
    AlgebraName.E6: "A2+A2",
    AlgebraName.E7: "A5",
    AlgebraName.E8: "E6",
}
JORDAN_PAIR_TYPES = {
    AlgebraName.F4: "C3",
    AlgebraName.E6: "A5",
    AlgebraName.E7: "D6",
    AlgebraName.E8: "E7",
}
J3_SIZES = (6, 9, 15, 27)
SQUARED_DISTANCE = Fraction(2, 3)
AXES = (1, 2, 3)
GENERATOR_PERM = (2, 3, 1)


def a2_projection(v: RootVector, indices: Sequence[int] = AXES) -> RootVector:
    """Orthogonal projection on span(k_a - k_b, k_b - k_c) for indices (a, b, c)."""
    values = [v.coords[i - 1] for i in indices]
    mean = (values[0] + values[1] + values[2]) * Fraction(1, 3)
    coords: list = [0] * 8
    for i, value in zip(indices, values):
        coords[i - 1] = value - mean
    return RootVector(coords)


def axis_point(axis: int, indices: Sequence[int] = AXES) -> RootVector:
    """1/3(k_p + k_q - 2k_m) for m = axis and {p, q} the other indices."""
    coords: list = [0] * 8
    for i in indices:
        coords[i - 1] = Fraction(-2, 3) if i == axis else Fraction(1, 3)
    return RootVector(coords)


def hexagon(indices: Sequence[int] = AXES) -> set[RootVector]:
    return {RootVector.k(i) - RootVector.k(j) for i in indices for j in indices if i != j}


def part_of(parts: Iterable[DecompositionPart], tag: PartKind | str, axis: int | None = None) -> DecompositionPart:
    """Find one part by tag and axis."""
    tag = PartKind(tag).value
    for part in parts:
        if part.tag == tag and part.axis == axis:
            return part
    raise KeyError(f"no part {tag}({axis})")


class ProjectionService:
    """Service for the a2-plane decompositions and the geometry of their parts."""

    def __init__(
        self,
        roots: RootService | None = None,
        repository: TranscriptionRepository | None = None,
    ):
        self.repo = repository or get_repository()
        self.roots = roots or RootService(self.repo)
        self._parts: dict[AlgebraName, list[DecompositionPart]] = {}

    # ------------------------------------------------------------------
    # Plane and projections
    # ------------------------------------------------------------------

    def pi_plane(self) -> Subspace:
        k = RootVector.k
        return Subspace((k(1) - k(2), k(2) - k(3)), label="Pi")

    def project(self, v: RootVector, s: Subspace) -> RootVector:
        if not s.is_linear:
            raise DimensionMismatchError(f"projection on {s.label or 'subspace'} needs a linear subspace")
        return s.project_linear(v)

    def classify(
        self, roots: Iterable[RootVector], indices: Sequence[int] = AXES
    ) -> tuple[dict[tuple[str, int | None], set[RootVector]], list[RootVector]]:
        """Group roots by projection point; returns the groups and the unmatched roots."""
        lookup: dict[RootVector, tuple[str, int | None]] = {RootVector.zero(): (PartKind.G0.value, None)}
        for point in hexagon(indices):
            lookup[point] = (PartKind.OUTER_A2.value, None)
        for axis in indices:
            point = axis_point(axis, indices)
            lookup[point] = (PartKind.J.value, axis)
            lookup[-point] = (PartKind.JBAR.value, axis)
        groups: dict[tuple[str, int | None], set[RootVector]] = {}
        unmatched = []
        for r in roots:
            key = lookup.get(a2_projection(r, indices))
            if key is None:
                unmatched.append(r)
            else:
                groups.setdefault(key, set()).add(r)
        return groups, unmatched

    @staticmethod
    def _parts_from(groups: dict[tuple[str, int | None], set[RootVector]], indices: Sequence[int]) -> list[DecompositionPart]:
        keys: list[tuple[str, int | None]] = [(PartKind.OUTER_A2.value, None)]
        keys += [(PartKind.J.value, m) for m in indices]
        keys += [(PartKind.JBAR.value, m) for m in indices]
        keys.append((PartKind.G0.value, None))
        return [DecompositionPart(tag, frozenset(groups.get((tag, axis), ())), axis) for tag, axis in keys]

    def decompose(self, name: AlgebraName | str) -> list[DecompositionPart]:
        """
        Partition a root system into outer a2, three Jordan pairs and g0.

        Validates:
        - Every root projects to one of the seven points
        - Part sizes are 6, dim J3^n and the g0 size
        - J on axis 1 and g0 equal the listed roots
        """
        name = resolve_name(name)
        if name not in AlgebraName.graded():
            raise UnknownAlgebraError(f"{name.value} has no a2-plane decomposition; use f4, e6, e7 or e8")
        if name in self._parts:
            return list(self._parts[name])

        rs = self.roots.generate_roots(name)
        groups, unmatched = self.classify(rs.roots)
        if unmatched:
            raise TranscriptionError(
                f"{len(unmatched)} roots of {name.value} project off the seven points, "
                f"first {unmatched[0].pretty()}"
            )
        parts = self._parts_from(groups, AXES)

        # Step 1: sizes
        expected = {PartKind.OUTER_A2.value: 6, PartKind.G0.value: G0_SIZES[name]}
        for part in parts:
            size = expected.get(part.tag, JORDAN_SIZES[name])
            if len(part) != size:
                raise TranscriptionError(f"{name.value} part {part.name} has {len(part)} roots, expected {size}")

        # Step 2: cross-check against the explicit lists
        listed_hw = set(self.repo.highest_weight(name))
        if part_of(parts, PartKind.J, 1).roots != listed_hw:
            missing = sorted_roots(listed_hw - part_of(parts, PartKind.J, 1).roots)
            raise TranscriptionError(
                f"{name.value} J(1) differs from the listed h.w. roots"
                + (f", e.g. {missing[0].pretty()}" if missing else "")
            )
        if part_of(parts, PartKind.G0).roots != set(self.repo.g0(name)):
            raise TranscriptionError(f"{name.value} g0 differs from the listed g0 roots")

        logger.info("decomposed %s: %s", name.value, ", ".join(f"{p.name}={len(p)}" for p in parts))
        self._parts[name] = parts
        return list(parts)

    def cyclic_image(self, part: DecompositionPart, perm: Sequence[int] = GENERATOR_PERM) -> DecompositionPart:
        """Apply k_m -> k_perm[m-1] on k1, k2, k3 to every root of a part."""
        roots = frozenset(r.permute_k123(perm) for r in part.roots)
        axis = perm[part.axis - 1] if part.axis else None
        return DecompositionPart(part.tag, roots, axis)

    def negate(self, part: DecompositionPart) -> DecompositionPart:
        swap = {PartKind.J.value: PartKind.JBAR.value, PartKind.JBAR.value: PartKind.J.value}
        return DecompositionPart(swap.get(part.tag, part.tag), frozenset(-r for r in part.roots), part.axis)

    def jordan_pair_subalgebra(self, name: AlgebraName | str, axis: int) -> RootSystem:
        """g0 together with the Jordan pair on one axis."""
        name = resolve_name(name)
        parts = self.decompose(name)
        roots = (
            part_of(parts, PartKind.G0).roots
            | part_of(parts, PartKind.J, axis).roots
            | part_of(parts, PartKind.JBAR, axis).roots
        )
        return self.roots.root_system_from(JORDAN_PAIR_TYPES[name].lower(), roots)

    # ------------------------------------------------------------------
    # Planes and spaces
    # ------------------------------------------------------------------

    def _g0_basis(self, name: AlgebraName) -> tuple[RootVector, ...]:
        k = RootVector.k
        k123 = k(1) + k(2) + k(3)
        if name == AlgebraName.F4:
            return tuple(parse_root(t) for t in F4_PLANE_BASIS)
        if name == AlgebraName.E6:
            return tuple(parse_root(t) for i in (1, 2) for t in E6_PLANE_BASES[i])
        if name == AlgebraName.E7:
            return (k(4), k(5), k(6), k(7), k123)
        return (k(4), k(5), k(6), k(7), k(8), k123)

    def build_planes(self, name: AlgebraName | str) -> dict[str, Subspace]:
        """
        The named planes and spaces of an algebra.

        f4 uses Pi0 and Pi+-(m); the others use Sigma0 and Sigma+-(m). e6 adds
        Pi0(1), Pi0(2) and the planes Pi+-(1)i, Pi+-(2)j through the offsets u_i, v_j.
        """
        name = resolve_name(name)
        if name not in AlgebraName.graded():
            raise UnknownAlgebraError(f"{name.value} has no plane structure")
        stem = "Pi" if name == AlgebraName.F4 else "Sigma"
        basis = self._g0_basis(name)
        planes = {f"{stem}0": Subspace(basis, label=f"{stem}0")}
        for m in AXES:
            for sign, mark in ((1, "+"), (-1, "-")):
                label = f"{stem}{mark}({m})"
                planes[label] = Subspace(basis, offset=axis_point(m) * sign, label=label)
        if name == AlgebraName.E6:
            for plane in (1, 2):
                plane_basis = tuple(parse_root(t) for t in E6_PLANE_BASES[plane])
                planes[f"Pi0({plane})"] = Subspace(plane_basis, label=f"Pi0({plane})")
                for i, text in enumerate(E6_PLANE_OFFSETS[plane], start=1):
                    offset = parse_root(text)
                    for sign, mark in ((1, "+"), (-1, "-")):
                        label = f"Pi{mark}({plane}){i}"
                        planes[label] = Subspace(plane_basis, offset=offset * sign, label=label)
        return planes

    def e6_offsets(self) -> dict[str, RootVector]:
        """u_i (plane 1) and v_j (plane 2) as listed."""
        out = {}
        for plane, stem in ((1, "u"), (2, "v")):
            for i, text in enumerate(E6_PLANE_OFFSETS[plane], start=1):
                out[f"{stem}{i}"] = parse_root(text)
        return out

    def distance_to(self, s_affine: Subspace, s_linear: Subspace) -> tuple[FieldScalar, FieldScalar | None]:
        """(squared distance, distance) between parallel subspaces."""
        return s_affine.distance_to(s_linear)

    def check_planes(self, name: AlgebraName | str) -> PlanesReport:
        """Containment, orthogonality and distance claims for the planes of an algebra."""
        name = resolve_name(name)
        parts = self.decompose(name)
        planes = self.build_planes(name)
        stem = "Pi" if name == AlgebraName.F4 else "Sigma"
        zero_plane = planes[f"{stem}0"]
        checks: list[PlaneCheck] = []

        g0 = part_of(parts, PartKind.G0).roots
        spans = span_rank(zero_plane.basis + tuple(g0)) == zero_plane.dimension == span_rank(g0)
        checks.append(PlaneCheck(claim=f"{stem}0 is the span of g0", passed=spans))

        squared = None
        for m in AXES:
            for tag, mark in ((PartKind.J, "+"), (PartKind.JBAR, "-")):
                part = part_of(parts, tag, m)
                plane = planes[f"{stem}{mark}({m})"]
                outside = [r for r in part.roots if not plane.contains(r)]
                checks.append(
                    PlaneCheck(
                        claim=f"{part.name} lies in {plane.label}",
                        passed=not outside,
                        detail=f"{len(outside)} roots outside" if outside else "",
                    )
                )
                squared, _ = self.distance_to(plane, zero_plane)
                checks.append(
                    PlaneCheck(
                        claim=f"{plane.label} is at squared distance 2/3 from {stem}0",
                        passed=squared == SQUARED_DISTANCE,
                        detail=str(squared),
                    )
                )

        if name == AlgebraName.F4:
            checks.extend(self._f4_coordinate_checks(planes[f"{stem}+(1)"]))
        if name == AlgebraName.E6:
            checks.extend(self._e6_plane_checks(planes))

        squared, distance = self.distance_to(planes[f"{stem}+(1)"], zero_plane)
        return PlanesReport(
            name=name.value,
            squared_distance=str(squared),
            distance=str(distance) if distance is not None else None,
            checks=checks,
        )

    def _f4_coordinate_checks(self, plane: Subspace) -> list[PlaneCheck]:
        checks = []
        for text, s, t in F4_PLANE_COORDINATES:
            root = parse_root(text)
            coordinates = plane.coordinates(root) if plane.contains(root) else None
            expected = [FieldScalar.parse(s), FieldScalar.parse(t)]
            checks.append(
                PlaneCheck(
                    claim=f"{root.pretty()} has (s, t) = ({s}, {t}) on Pi+",
                    passed=coordinates == expected,
                    detail="" if coordinates is None else f"({coordinates[0]}, {coordinates[1]})",
                )
            )
        return checks

    def _e6_plane_checks(self, planes: dict[str, Subspace]) -> list[PlaneCheck]:
        checks = []
        first, second = e6_g0_components()
        for label, roots in (("Pi0(1)", first), ("Pi0(2)", second)):
            inside = all(planes[label].contains(r) for r in roots)
            checks.append(PlaneCheck(claim=f"a2 summand of g0 lies in {label}", passed=inside))
        one, two = planes["Pi0(1)"], planes["Pi0(2)"]
        orthogonal = all(not a.inner(b) for a in one.basis for b in two.basis)
        checks.append(PlaneCheck(claim="Pi0(1) is orthogonal to Pi0(2)", passed=orthogonal))
        for label, offset in self.e6_offsets().items():
            plane = one if label.startswith("u") else two
            checks.append(
                PlaneCheck(
                    claim=f"{label} is orthogonal to {plane.label}",
                    passed=plane.is_orthogonal_to(offset),
                    detail=offset.pretty(),
                )
            )
        return checks

    # ------------------------------------------------------------------
    # Quantum numbers
    # ------------------------------------------------------------------

    def table3_quantum_numbers(self, conjugate: bool = False) -> list[QuantumNumbers]:
        """
        Plane indices and (s, t), (s', t') of the nine e6 roots of J (or Jbar).

        Each root must equal ±(u_i + s b1 + t b2) and ±(v_j + s' b1' + t' b2');
        the result is compared with the transcribed table row by row.
        """
        parts = self.decompose(AlgebraName.E6)
        sign = -1 if conjugate else 1
        roots = part_of(parts, PartKind.JBAR if conjugate else PartKind.J, 1).roots
        bases = {p: tuple(parse_root(t) for t in E6_PLANE_BASES[p]) for p in (1, 2)}
        offsets = {p: [parse_root(t) for t in E6_PLANE_OFFSETS[p]] for p in (1, 2)}

        def locate(root: RootVector, plane: int) -> tuple[int, tuple[FieldScalar, FieldScalar]]:
            b1, b2 = bases[plane]
            s, t = root.inner(b1), root.inner(b2)
            residual = root - b1 * s - b2 * t
            for index, offset in enumerate(offsets[plane], start=1):
                if residual == offset * sign:
                    return index, (s, t)
            raise TranscriptionError(f"{root.pretty()} lies on no plane of family {plane}")

        computed = {}
        for root in roots:
            i, st = locate(root, 1)
            j, st_prime = locate(root, 2)
            computed[root] = QuantumNumbers(root, i, j, st, st_prime, conjugate)

        rows = []
        for row in self.repo.table3():
            root = parse_root(row.root) * sign
            entry = computed.get(root)
            if entry is None:
                raise TranscriptionError(f"table root {root.pretty()} is not in the e6 Jordan part")
            expected_st = tuple(FieldScalar.parse(v) * sign for v in row.st)
            expected_prime = tuple(FieldScalar.parse(v) * sign for v in row.st_prime)
            if (entry.plane1_index, entry.plane2_index, entry.st, entry.st_prime) != (
                row.plane1_index,
                row.plane2_index,
                expected_st,
                expected_prime,
            ):
                raise TranscriptionError(
                    f"row ({row.plane1_index}, {row.plane2_index}) disagrees with {root.pretty()}: "
                    f"computed planes ({entry.plane1_index}, {entry.plane2_index})"
                )
            rows.append(entry)
        if len(rows) != len(computed):
            raise TranscriptionError(f"table has {len(rows)} rows for {len(computed)} roots")
        return rows

    # ------------------------------------------------------------------
    # eta bases
    # ------------------------------------------------------------------

    def eta_embedding(self, target: str) -> EtaEmbeddingReport:
        """Images of the eta roots of a5 inside e6 or d6 inside e7."""
        if target == "a5-in-e6":
            return self._a5_in_e6()
        if target == "d6-in-e7":
            return self._d6_in_e7()
        raise UnknownAlgebraError(f"unknown embedding {target!r}; use a5-in-e6 or d6-in-e7")

    def _a5_in_e6(self) -> EtaEmbeddingReport:
        listed = self.repo.e6_eta_differences()
        difference: dict[tuple[int, int], RootVector] = {}
        for (i, j), v in listed.items():
            difference[(i, j)] = v
            difference[(j, i)] = -v
        # eta_i - eta_j + eta_j - eta_l = eta_i - eta_l
        for i, j, l in itertools.permutations(range(1, 7), 3):
            if difference[(i, j)] + difference[(j, l)] != difference[(i, l)]:
                raise TranscriptionError(f"eta differences ({i},{j}), ({j},{l}) and ({i},{l}) are inconsistent")
        images = {f"eta{i}-eta{j}": v for (i, j), v in sorted(difference.items())}
        return self._finish_embedding("a5-in-e6", AlgebraName.E6, images, "A5", None)

    def _d6_in_e7(self) -> EtaEmbeddingReport:
        eta = self.repo.d6_eta()
        orthonormal = all(
            eta[i].inner(eta[j]) == (1 if i == j else 0) for i in range(6) for j in range(6)
        )
        differences, sums = self.repo.d6_lists()
        listed = all(eta[i - 1] - eta[j - 1] == v for (i, j), v in differences.items()) and all(
            eta[i - 1] + eta[j - 1] == v for (i, j), v in sums.items()
        )
        images = {}
        for i, j in itertools.combinations(range(1, 7), 2):
            a, b = eta[i - 1], eta[j - 1]
            images[f"eta{i}+eta{j}"] = a + b
            images[f"eta{i}-eta{j}"] = a - b
            images[f"-eta{i}+eta{j}"] = b - a
            images[f"-eta{i}-eta{j}"] = -a - b
        report = self._finish_embedding("d6-in-e7", AlgebraName.E7, images, "D6", orthonormal)
        report.matches_lists = report.matches_lists and listed
        return report

    def _finish_embedding(
        self,
        target: str,
        ambient: AlgebraName,
        images: dict[str, RootVector],
        expected_type: str,
        orthonormal: bool | None,
    ) -> EtaEmbeddingReport:
        ambient_roots = set(self.roots.generate_roots(ambient).roots)
        outside = [label for label, v in images.items() if v not in ambient_roots]
        if outside:
            raise TranscriptionError(f"{outside[0]} of {target} is not a root of {ambient.value}")
        values = set(images.values())
        subsystem = self.jordan_pair_subalgebra(ambient, 1)
        cartan = self.roots.identify(self.roots.root_system_from(expected_type.lower(), values))
        logger.info("%s: %d images, type %s", target, len(values), cartan)
        return EtaEmbeddingReport(
            target=target,
            images={label: v.pretty() for label, v in images.items()},
            image_count=len(values),
            matches_lists=values == subsystem.root_set and len(values) == len(images),
            orthonormal=orthonormal,
            cartan_type=cartan,
        )

    # ------------------------------------------------------------------
    # Recognition inside e8
    # ------------------------------------------------------------------

    def recognition_source(self, sub: AlgebraName) -> frozenset[RootVector]:
        """g0 of e8 for e6; g0 with the Jordan pair on axis 1 for e7."""
        if sub == AlgebraName.E6:
            return part_of(self.decompose(AlgebraName.E8), PartKind.G0).roots
        return self.jordan_pair_subalgebra(AlgebraName.E8, 1).root_set

    def recognize_inside_e8(self, sub: AlgebraName | str) -> RecognitionReport:
        """
        Find the reading of the primed basis that maps the listed roots of ``sub``
        onto the corresponding root set of e8.
        """
        sub = resolve_name(sub)
        if sub not in SUBSTITUTIONS:
            raise UnknownAlgebraError(f"no recognition of {sub.value} inside e8; use e6 or e7")
        target = self.roots.generate_roots(sub).roots
        readings = {reading: [parse_root(t) for t in texts] for reading, texts in SUBSTITUTIONS[sub].items()}
        span = max(max(i for i, c in enumerate(root.coords) if c) for root in target) + 1
        for reading, vectors in readings.items():
            if len(vectors) != span:
                raise TranscriptionError(
                    f"reading {reading} of {sub.value} has {len(vectors)} vectors, the roots span {span} coordinates"
                )
        source = self.recognition_source(sub)
        attempts: dict[str, bool] = {}
        found = None
        for reading, vectors in readings.items():
            gram = [[a.inner(b) for b in vectors] for a in vectors]
            isometry = all(gram[i][j] == (1 if i == j else 0) for i in range(len(vectors)) for j in range(len(vectors)))
            image = set()
            for root in target:
                mapped = RootVector.zero()
                for coefficient, v in zip(root.coords[:span], vectors, strict=True):
                    if coefficient:
                        mapped = mapped + v * coefficient
                image.add(mapped)
            attempts[reading] = isometry and image == source
            logger.debug("reading %s of %s: %s", reading, sub.value, attempts[reading])
            if attempts[reading] and found is None:
                found = (reading, vectors, isometry)
        if found is None:
            raise SubstitutionNotFoundError(f"no reading maps the {sub.value} roots onto e8")
        reading, vectors, isometry = found
        return RecognitionReport(
            sub=sub.value,
            reading=reading,
            vectors=[v.pretty() for v in vectors],
            isometry=isometry,
            attempts=attempts,
        )

    # ------------------------------------------------------------------
    # Nested decomposition
    # ------------------------------------------------------------------

    def nested_decomposition(self, name: AlgebraName | str) -> NestedNode:
        """
        Decompose recursively: the plane step on k1..k3, then each g0 by a plane
        step on k4..k6, a split into components or a three-grading.
        """
        name = resolve_name(name)
        parts = self.decompose(name)
        rs = self.roots.generate_roots(name)
        root = NestedNode(name.value, "algebra", rs.root_set, self.roots.identify(rs))
        for part in parts:
            if part.tag == PartKind.G0.value:
                root.children.append(self._nest(part.roots, "g0", depth=1))
            elif part.tag == PartKind.OUTER_A2.value:
                root.children.append(NestedNode(self._a2_label(part.roots), part.tag, part.roots, "A2"))
            else:
                root.children.append(NestedNode(part.name, part.tag, part.roots))
        return root

    def _a2_label(self, roots: frozenset[RootVector]) -> str:
        for kind in (ParticleKind.A2_C, ParticleKind.A2_F, ParticleKind.A2_G1, ParticleKind.A2_G2):
            if roots == set(self.repo.a2_labels(kind)):
                return kind.value
        return "a2"

    def _nest(self, roots: frozenset[RootVector], label: str, depth: int) -> NestedNode:
        rs = self.roots.root_system_from(label, roots)
        cartan = self.roots.identify(rs)
        node = NestedNode(label, PartKind.G0.value, roots, cartan)
        if rs.rank <= 1:
            return node

        # Step 1: another a2 plane, on k4, k5, k6
        step = self._plane_step(roots, (4, 5, 6))
        if step is not None:
            for part in step:
                if part.tag == PartKind.G0.value:
                    if part.roots:
                        node.children.append(self._nest(part.roots, f"g0^{depth + 1}", depth + 1))
                elif part.tag == PartKind.OUTER_A2.value:
                    node.children.append(NestedNode(self._a2_label(part.roots), part.tag, part.roots, "A2"))
                else:
                    node.children.append(NestedNode(part.name, part.tag, part.roots))
            return node

        # Step 2: split a reducible g0
        components = self.roots.split_components(roots)
        if len(components) > 1:
            for component in components:
                sub = self.roots.root_system_from("component", component)
                sub_type = self.roots.identify(sub)
                label = self._a2_label(component) if sub_type == "A2" else sub_type.lower()
                node.children.append(NestedNode(label, "component", component, sub_type))
            return node

        # Step 3: three-grading by a cominuscule coweight
        grades = self._three_grading(rs)
        if grades is None:
            raise NoPlaneStructureError(f"{label} of type {cartan} has no plane or three-grading to recurse on")
        plus, zero, minus = grades
        node.children.append(NestedNode(f"J[{label}]", PartKind.J.value, plus))
        node.children.append(NestedNode(f"Jbar[{label}]", PartKind.JBAR.value, minus))
        if zero:
            node.children.append(self._nest(zero, f"g0^{depth + 1}", depth + 1))
        return node

    def _plane_step(self, roots: frozenset[RootVector], indices: tuple[int, int, int]) -> list[DecompositionPart] | None:
        if not hexagon(indices) <= roots:
            return None
        groups, unmatched = self.classify(roots, indices)
        if unmatched:
            return None
        parts = self._parts_from(groups, indices)
        sizes = {len(p) for p in parts if p.tag in (PartKind.J.value, PartKind.JBAR.value)}
        if len(sizes) != 1 or sizes.pop() not in J3_SIZES:
            return None
        return parts

    def _three_grading(
        self, rs: RootSystem
    ) -> tuple[frozenset[RootVector], frozenset[RootVector], frozenset[RootVector]] | None:
        simple = self.roots.simple_roots(rs)
        gram = [[a.inner(b) for b in simple] for a in simple]
        expansions = {r: solve_gram(gram, [a.inner(r) for a in simple]) for r in rs.roots}
        best = None
        for node in range(len(simple)):
            coefficients = [expansions[r][node] for r in rs.roots]
            if any(abs(c.as_fraction()) > 1 for c in coefficients):
                continue
            plus = frozenset(r for r in rs.roots if expansions[r][node] == 1)
            if best is None or len(plus) > len(best[0]):
                minus = frozenset(-r for r in plus)
                zero = frozenset(rs.roots) - plus - minus
                best = (plus, zero, minus)
        return best

    @staticmethod
    def leaf_inventory(tree: NestedNode) -> dict[str, int]:
        return {leaf.label: len(leaf.roots) for leaf in tree.leaves()}

    # ------------------------------------------------------------------
    # Particle labels
    # ------------------------------------------------------------------

    def label_particles(self) -> list[ParticleLabel]:
        """
        Label every e8 root as quark, antiquark, lepton, antilepton or one of the four a2.

        Validates:
        - Every root gets exactly one label
        - The quarks of color c are the Jordan roots on axis c
        """
        parts = self.decompose(AlgebraName.E8)
        classes: list[tuple[ParticleKind, int | None, set[RootVector]]] = []
        for color in AXES:
            quarks = set(self.repo.quarks(color))
            if quarks != part_of(parts, PartKind.J, color).roots:
                raise TranscriptionError(f"quarks of color {color} differ from J({color}) of e8")
            classes.append((ParticleKind.QUARK, color, quarks))
            classes.append((ParticleKind.ANTIQUARK, color, {-r for r in quarks}))
        for family in (4, 5, 6):
            leptons = set(self.repo.leptons(family))
            classes.append((ParticleKind.LEPTON, family, leptons))
            classes.append((ParticleKind.ANTILEPTON, family, {-r for r in leptons}))
        for kind in (ParticleKind.A2_C, ParticleKind.A2_F, ParticleKind.A2_G1, ParticleKind.A2_G2):
            classes.append((kind, None, set(self.repo.a2_labels(kind))))

        labels = []
        for root in self.roots.generate_roots(AlgebraName.E8).roots:
            matches = [(kind, index) for kind, index, members in classes if root in members]
            if len(matches) != 1:
                state = "unlabeled" if not matches else f"labeled {len(matches)} times"
                raise TranscriptionError(f"e8 root {root.pretty()} is {state}")
            kind, index = matches[0]
            labels.append(ParticleLabel(root, kind.value, index))
        return labels

    @staticmethod
    def label_counts(labels: Sequence[ParticleLabel]) -> dict[str, int]:
        counts: dict[str, int] = {}
        for label in labels:
            key = label.kind if label.index is None else f"{label.kind}({label.index})"
            counts[key] = counts.get(key, 0) + 1
        return counts
