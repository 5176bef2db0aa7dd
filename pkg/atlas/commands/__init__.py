"""
Command handlers for the atlas command line.

Each handler takes the parsed arguments and returns a ``CommandResult`` holding
the JSON payload, the human-readable text and the exit code. Handlers never
print; ``atlas.main`` chooses the output form.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from typing import Any, Callable

from atlas.core.config import settings
from atlas.models import AlgebraName, JacobiMode, NestedNode, RootVector
from atlas.repositories import get_repository
from atlas.schemas import (
    DecompositionExport,
    DecompositionPartExport,
    MagicSquareEntry,
    NestedNodeExport,
    ParticleLabelExport,
    ParticleReport,
    QuantumNumberRow,
    TaggedRoot,
)
from atlas.services import (
    ClaimRegistry,
    FigureService,
    HurwitzService,
    JordanService,
    LieService,
    ProjectionService,
    RootService,
    TitsService,
)
from atlas.services.titslie import TYPE_BY_DIMENSION_RANK


@dataclass
class CommandResult:
    payload: Any
    text: str
    exit_code: int = 0


def _status(passed: bool) -> int:
    return 0 if passed else 1


def _errata_lines() -> list[str]:
    lines = ["errata:"]
    for erratum in get_repository().errata():
        lines.append(f"  {erratum.location}: printed {erratum.printed}, used {erratum.used}")
    return lines


def nested_export(node: NestedNode) -> NestedNodeExport:
    return NestedNodeExport(
        label=node.label,
        kind=node.kind,
        size=len(node.roots),
        cartan_type=node.cartan_type,
        children=[nested_export(child) for child in node.children],
    )


def _nested_lines(node: NestedNode, depth: int = 0) -> list[str]:
    kind = f" {node.cartan_type}" if node.cartan_type else ""
    lines = [f"{'  ' * depth}{node.label} [{node.kind}{kind}] {len(node.roots)} roots"]
    for child in node.children:
        lines.extend(_nested_lines(child, depth + 1))
    return lines


# ============================================================================
# Root Commands
# ============================================================================


def roots(args: argparse.Namespace) -> CommandResult:
    """List the roots of an exceptional algebra."""
    service = RootService()
    rs = service.generate_roots(args.name)
    if args.count:
        return CommandResult({"name": rs.name, "count": len(rs)}, str(len(rs)))
    lines = [f"{rs.name}: {len(rs)} roots, rank {rs.rank}"] + [f"  {r.pretty()}" for r in rs.roots]
    return CommandResult(service.export_json(rs), "\n".join(lines))


def verify(args: argparse.Namespace) -> CommandResult:
    """Check the root system axioms on every pair of roots."""
    service = RootService()
    report = service.validate_root_system(service.generate_roots(args.name))
    lines = [
        f"{report.name}: {report.root_count} roots, {report.checked_pairs} pairs, "
        f"{report.violation_count} violations",
        f"squared lengths: {', '.join(report.lengths)}",
    ]
    lines += [f"  {v.kind}: {', '.join(v.roots)} ({v.detail})" for v in report.violations]
    return CommandResult(report, "\n".join(lines), _status(report.passed))


# ============================================================================
# Projection Commands
# ============================================================================


def decompose(args: argparse.Namespace) -> CommandResult:
    """Partition the roots by their projection on the a2 plane."""
    service = ProjectionService()
    name = AlgebraName(args.name)
    parts = service.decompose(name)
    if args.nested:
        tree = service.nested_decomposition(name)
        return CommandResult(nested_export(tree), "\n".join(_nested_lines(tree)))
    export = DecompositionExport(
        name=name.value,
        parts=[DecompositionPartExport(tag=p.tag, axis=p.axis, size=len(p)) for p in parts],
        roots=[
            TaggedRoot(tag=p.name, root=r.render())
            for p in parts
            for r in sorted(p.roots, key=RootVector.sort_key)
        ],
        cross_checks=["J(1) equals the listed h.w. roots", "g0 equals the listed g0 roots"],
    )
    lines = [f"{name.value}: " + ", ".join(f"{p.name}={len(p)}" for p in parts)]
    lines += _errata_lines()
    return CommandResult(export, "\n".join(lines))


def planes(args: argparse.Namespace) -> CommandResult:
    """Check containment, orthogonality and distance of the Jordan-pair planes."""
    report = ProjectionService().check_planes(args.name)
    lines = [f"{report.name}: squared distance {report.squared_distance}, distance {report.distance}"]
    lines += [f"  [{'ok' if c.passed else 'FAIL'}] {c.claim} {c.detail}".rstrip() for c in report.checks]
    return CommandResult(report, "\n".join(lines), _status(report.passed))


def table3(args: argparse.Namespace) -> CommandResult:
    """Quantum numbers of the nine roots of the e6 Jordan part."""
    rows = [
        QuantumNumberRow(
            root=q.root.pretty(),
            plane1_index=q.plane1_index,
            plane2_index=q.plane2_index,
            st=tuple(str(v) for v in q.st),
            st_prime=tuple(str(v) for v in q.st_prime),
            conjugate=q.conjugate,
        )
        for q in ProjectionService().table3_quantum_numbers(args.conjugate)
    ]
    lines = ["planes  (s, t)  (s', t')  root"]
    lines += [
        f"({r.plane1_index},{r.plane2_index})  ({', '.join(r.st)})  ({', '.join(r.st_prime)})  {r.root}"
        for r in rows
    ]
    lines += _errata_lines()
    return CommandResult(rows, "\n".join(lines))


def embed(args: argparse.Namespace) -> CommandResult:
    """eta-basis embeddings and the recognitions inside e8."""
    service = ProjectionService()
    if args.target in ("e6-in-e8", "e7-in-e8"):
        recognition = service.recognize_inside_e8(args.target[:2])
        lines = [f"{args.target}: reading {recognition.reading}, isometry {recognition.isometry}"]
        lines += [f"  k'{i} = {v}" for i, v in enumerate(recognition.vectors, start=1)]
        return CommandResult(recognition, "\n".join(lines), _status(recognition.isometry))
    report = service.eta_embedding(args.target)
    lines = [
        f"{report.target}: {report.image_count} images, type {report.cartan_type}, "
        f"matches lists {report.matches_lists}"
    ]
    if report.orthonormal is not None:
        lines.append(f"eta basis orthonormal: {report.orthonormal}")
    lines += [f"  {label} = {value}" for label, value in report.images.items()]
    passed = report.matches_lists and report.orthonormal is not False
    return CommandResult(report, "\n".join(lines), _status(passed))


def label_e8(args: argparse.Namespace) -> CommandResult:
    """Particle labels of the 240 roots of e8."""
    service = ProjectionService()
    labels = service.label_particles()
    counts = service.label_counts(labels)
    report = ParticleReport(
        labels=[ParticleLabelExport(root=p.root.render(), label=p.kind, index=p.index) for p in labels],
        counts=counts,
    )
    lines = [f"{key}: {value}" for key, value in counts.items()]
    return CommandResult(report, "\n".join(lines))


def figure(args: argparse.Namespace) -> CommandResult:
    """Emit an SVG root diagram, to a file with --svg or to standard output."""
    service = FigureService()
    if args.svg:
        path = service.emit_figure(args.name, args.svg)
        return CommandResult({"name": args.name, "path": str(path)}, f"wrote {path}")
    document = service.render_svg(args.name)
    return CommandResult({"name": args.name, "svg": document}, document.rstrip("\n"))


# ============================================================================
# Algebra Commands
# ============================================================================


def octonion_check(args: argparse.Namespace) -> CommandResult:
    """Zorn, composition, alternativity and derivation checks."""
    report = HurwitzService(LieService(args.seed)).octonion_check(args.samples, args.seed)
    lines = [f"zorn dot sign {report.zorn_dot_sign}; A- x B- = {report.zorn_example}"]
    lines += [f"  [{'ok' if c.passed else 'FAIL'}] {c.name} ({c.samples})" for c in report.checks]
    return CommandResult(report, "\n".join(lines), _status(report.passed))


def jordan_check(args: argparse.Namespace) -> CommandResult:
    """Jordan algebra, triple and pair axioms for J3^n."""
    service = JordanService(LieService(args.seed))
    reports = [service.jordan_check(n, args.samples, args.seed) for n in args.n]
    lines = []
    for report in reports:
        lines.append(f"J3^{report.n}: dim {report.dimension}, Der {report.derivation_dim}, str0 {report.str0_dim}")
        lines += [f"  [{'ok' if c.passed else 'FAIL'}] {c.name} ({c.samples})" for c in report.checks]
    return CommandResult(reports, "\n".join(lines), _status(all(r.passed for r in reports)))


def tkk(args: argparse.Namespace) -> CommandResult:
    """Three-graded algebras J + str(J) + Jbar."""
    service = JordanService(LieService(args.seed))
    reports = [service.tkk_check(n, args.samples, args.seed) for n in args.n]
    lines = []
    for report in reports:
        dims = ", ".join(f"{p.eigenvalue}:{p.dimension}" for p in report.grading.parts)
        lines.append(f"TKK(J3^{report.n}): dim {report.dimension}, grading {dims}, {report.normalization}")
        lines.append(f"  jacobi {report.jacobi.mode.value}: {report.jacobi.triples_checked} triples, {report.jacobi.violation_count} violations")
    return CommandResult(reports, "\n".join(lines), _status(all(r.passed for r in reports)))


def tits(args: argparse.Namespace) -> CommandResult:
    """Build tits(H, J) and check Jacobi."""
    lie = LieService(args.seed)
    service = TitsService(lie)
    L = service.tits_construct(args.h, args.j)
    if args.structure:
        return CommandResult(lie.export_json(L), f"{L.name}: dimension {L.dimension}")
    rank = service.generic_rank(L, seed=args.seed)
    block_coverage = L.dimension > settings.EXHAUSTIVE_JACOBI_MAX_DIM and args.mode != JacobiMode.EXHAUSTIVE.value
    jacobi = lie.jacobi_check(L, args.mode, seed=args.seed, block_coverage=block_coverage)
    entry = MagicSquareEntry(
        hurwitz_dim=args.h,
        jordan_n=args.j,
        dimension=L.dimension,
        rank=rank,
        identified_type=TYPE_BY_DIMENSION_RANK.get((L.dimension, rank), "?"),
        jacobi=jacobi,
    )
    lines = [
        f"{L.name}: dimension {L.dimension}, rank {rank}, type {entry.identified_type}",
        f"jacobi {jacobi.mode.value}: {jacobi.triples_checked} triples + {jacobi.block_triples_checked} block triples, "
        f"{jacobi.violation_count} violations",
    ]
    return CommandResult(entry, "\n".join(lines), _status(jacobi.passed))


def magic_square(args: argparse.Namespace) -> CommandResult:
    """All sixteen Tits algebras with their dimension, rank and type."""
    report = TitsService(LieService(args.seed)).magic_square(args.mode, seed=args.seed)
    grid: dict[int, list[str]] = {}
    for e in report.entries:
        grid.setdefault(e.hurwitz_dim, []).append(f"{e.identified_type}({e.dimension})")
    lines = ["H \\ J   1  2  4  8"] + [f"{h}: " + "  ".join(cells) for h, cells in grid.items()]
    lines.append(f"symmetric {report.symmetric}; lambda {report.lam}, mu {report.mu}")
    failed = [e for e in report.entries if e.jacobi is not None and not e.jacobi.passed]
    lines += [f"  jacobi FAIL tits({e.hurwitz_dim},{e.jordan_n})" for e in failed]
    return CommandResult(report, "\n".join(lines), _status(report.passed))


def chain(args: argparse.Namespace) -> CommandResult:
    """Dimension bookkeeping of the e8 chain and the Zorn grading of tits(8,8)."""
    service = TitsService(LieService(args.seed))
    report = service.chain_decompose_e8()
    lines = [f"{step.expression}: {' + '.join(map(str, step.terms))} = {step.total}" for step in report.steps]
    lines.append(f"leaves: {report.leaf_roots}, Cartan {report.cartan_dimension}")
    passed = report.passed
    payload: dict[str, Any] = {"chain": report}
    if args.grading:
        grading = service.zorn_grading_e8(seed=args.seed)
        lines.append("zorn grading: " + ", ".join(f"{p.label}={p.dimension}" for p in grading.parts))
        payload["grading"] = grading
        passed = passed and grading.passed
    return CommandResult(payload, "\n".join(lines), _status(passed))


# ============================================================================
# Claim Suite
# ============================================================================


def run_all(args: argparse.Namespace) -> CommandResult:
    """Run every claim, or those whose id starts with --filter."""
    registry = ClaimRegistry(args.seed, args.samples, args.perturb)
    report = registry.run_all(args.filter)
    lines = []
    for entry in report.entries:
        mark = "ok  " if entry.status == "pass" else "FAIL"
        line = f"[{mark}] {entry.claim_id} ({entry.criterion}) {entry.anchor}"
        if entry.witness:
            line += f"\n        {entry.witness}"
        lines.append(line)
    lines.append(f"{report.passed} passed, {report.failed} failed")
    lines += _errata_lines()
    return CommandResult(report, "\n".join(lines), report.exit_code)


COMMANDS: dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    "roots": roots,
    "verify": verify,
    "decompose": decompose,
    "planes": planes,
    "table3": table3,
    "embed": embed,
    "label-e8": label_e8,
    "figure": figure,
    "octonion-check": octonion_check,
    "jordan-check": jordan_check,
    "tkk": tkk,
    "tits": tits,
    "magic-square": magic_square,
    "chain": chain,
    "run-all": run_all,
}

__all__ = ["COMMANDS", "CommandResult", "nested_export"]
