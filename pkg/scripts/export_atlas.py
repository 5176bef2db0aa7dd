"""
Batch export script.

Writes the JSON documents of every root system, decomposition and Lie algebra
the atlas builds, and every SVG figure, into one directory.

Usage: python scripts/export_atlas.py <directory> [--with-e8]
"""

import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from pydantic_core import to_json

from atlas.commands import nested_export
from atlas.core.exceptions import AtlasError
from atlas.core.logging import configure_logging
from atlas.models import AlgebraName
from atlas.schemas import DecompositionExport, DecompositionPartExport, TaggedRoot
from atlas.services import (
    FigureService,
    HurwitzService,
    JordanService,
    LieService,
    ProjectionService,
    RootService,
    TitsService,
)
from atlas.services.figures import FIGURE_NAMES
from atlas.services.titslie import HURWITZ_SIZES


def write(target: Path, name: str, payload) -> None:
    path = target / name
    path.write_bytes(to_json(payload, indent=2) + b"\n")
    print(f"  ✓ {path}")


def export_roots(target: Path) -> None:
    """Root systems, decompositions and nested trees."""
    print("\n📐 Root systems:")
    roots = RootService()
    projection = ProjectionService(roots)
    for name in AlgebraName.exceptional():
        write(target, f"roots_{name.value}.json", roots.export_json(roots.generate_roots(name)))
    for name in AlgebraName.graded():
        parts = projection.decompose(name)
        document = DecompositionExport(
            name=name.value,
            parts=[DecompositionPartExport(tag=p.tag, axis=p.axis, size=len(p)) for p in parts],
            roots=[TaggedRoot(tag=p.name, root=r.render()) for p in parts for r in sorted(p.roots, key=lambda v: v.sort_key())],
        )
        write(target, f"decomposition_{name.value}.json", document)
    write(target, "nested_e8.json", nested_export(projection.nested_decomposition(AlgebraName.E8)))


def export_algebras(target: Path, with_e8: bool) -> None:
    """Structure constants of Der(H), Der(J), TKK(J) and tits(H, J)."""
    print("\n🧮 Lie algebras:")
    lie = LieService()
    hurwitz = HurwitzService(lie)
    jordan = JordanService(lie)
    tits = TitsService(lie, hurwitz, jordan)
    for dim in (4, 8):
        write(target, f"der_h{dim}.json", lie.export_json(hurwitz.derivation_algebra(dim)))
    for n in HURWITZ_SIZES:
        write(target, f"der_j{n}.json", lie.export_json(jordan.derivations_of_J(n)))
        write(target, f"tkk_j{n}.json", lie.export_json(jordan.tkk(n)))
    for h_dim in HURWITZ_SIZES:
        for j_n in HURWITZ_SIZES:
            if (h_dim, j_n) == (8, 8) and not with_e8:
                continue
            write(target, f"tits_{h_dim}_{j_n}.json", lie.export_json(tits.tits_construct(h_dim, j_n)))


def export_figures(target: Path) -> None:
    print("\n🖼️  Figures:")
    figures = FigureService()
    for name in FIGURE_NAMES:
        path = figures.emit_figure(name, target / f"{name}.svg")
        print(f"  ✓ {path}")


def main():
    """Main entry point."""
    if len(sys.argv) < 2:
        print("Usage: python scripts/export_atlas.py <directory> [--with-e8]")
        sys.exit(2)

    target = Path(sys.argv[1])
    with_e8 = "--with-e8" in sys.argv[2:]
    configure_logging()

    print("=" * 60)
    print("Atlas Export")
    print("=" * 60)
    try:
        target.mkdir(parents=True, exist_ok=True)
        export_roots(target)
        export_figures(target)
        export_algebras(target, with_e8)
    except KeyboardInterrupt:
        print("\n\nOperation cancelled by user.")
        sys.exit(1)
    except AtlasError as e:
        print(f"\n✗ Error: {e.detail}")
        sys.exit(e.exit_code)
    except OSError as e:
        print(f"\n✗ Cannot write to {target}: {e}")
        sys.exit(2)

    print("\n✓ Export complete!")


if __name__ == "__main__":
    main()
