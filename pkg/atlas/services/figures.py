"""
SVG root diagrams drawn from exact projections.

Coordinates stay exact until the final formatting step, where they are scaled
by ``settings.SVG_SCALE`` and printed with fixed precision so the output is
byte-for-byte reproducible.
"""

from __future__ import annotations

import html
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from atlas.core.config import settings
from atlas.core.exceptions import UnknownAlgebraError, UsageError
from atlas.models import AlgebraName, PartKind, RootVector
from atlas.models.exactnum import HALF, SQRT2, SQRT6, FieldScalar
from atlas.models.vectors import Subspace
from atlas.services.projection import ProjectionService, a2_projection, part_of

logger = logging.getLogger(__name__)

FIGURE_NAMES = ("g2", "f4", "e6", "e7", "e8", "c3")

# Orthonormal basis of the a2 plane: (k1 - k2)/r2 and (k1 + k2 - 2 k3)/r6
PLANE_X = RootVector.from_terms({1: 1, 2: -1}, SQRT2 * HALF)
PLANE_Y = RootVector.from_terms({1: 1, 2: 1, 3: -2}, SQRT6 * Fraction(1, 6))

DOT_RADIUS = 6
MARGIN = 60
PANEL_GAP = 40


@dataclass(frozen=True)
class FigurePoint:
    """A dot at exact plane coordinates with the number of roots it carries."""

    x: FieldScalar
    y: FieldScalar
    multiplicity: int
    label: str = ""

    def floats(self, scale: int) -> tuple[float, float]:
        return self.x.to_float()[0] * scale, -self.y.to_float()[0] * scale


def _fmt(value: float) -> str:
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text


class FigureService:
    """Collects projected points and emits SVG documents."""

    def __init__(self, projection: ProjectionService | None = None):
        self.projection = projection or ProjectionService()

    def figure_points(self, name: str) -> list[FigurePoint]:
        """Distinct projections on the a2 plane with their fiber sizes."""
        name = name.lower()
        if name not in FIGURE_NAMES or name == "c3":
            raise UnknownAlgebraError(f"no a2-plane figure for {name!r}")
        rs = self.projection.roots.generate_roots(AlgebraName(name))
        fibers: dict[RootVector, int] = {}
        for root in rs.roots:
            image = a2_projection(root)
            fibers[image] = fibers.get(image, 0) + 1
        points = []
        for image, count in fibers.items():
            label = f"{count}+{rs.rank}" if image.is_zero() else (str(count) if count > 1 else "")
            points.append(FigurePoint(image.inner(PLANE_X), image.inner(PLANE_Y), count, label))
        return sorted(points, key=lambda p: (p.y.to_float()[0], p.x.to_float()[0]))

    def c3_panels(self) -> list[tuple[str, list[FigurePoint]]]:
        """The Jbar, g0 and J roots of the axis-1 copy of c3 in f4, each in (s, t) on its plane."""
        parts = self.projection.decompose(AlgebraName.F4)
        planes = self.projection.build_planes(AlgebraName.F4)
        panels = []
        for label, tag, axis in (("Pi-(1)", PartKind.JBAR, 1), ("Pi0", PartKind.G0, None), ("Pi+(1)", PartKind.J, 1)):
            plane: Subspace = planes[label]
            points = []
            for root in sorted(part_of(parts, tag, axis).roots, key=RootVector.sort_key):
                s, t = plane.coordinates(root)
                points.append(FigurePoint(s, t, 1))
            panels.append((label, points))
        return panels

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------

    def render_svg(self, name: str) -> str:
        name = name.lower()
        if name not in FIGURE_NAMES:
            raise UnknownAlgebraError(f"no figure for {name!r}; choose one of {', '.join(FIGURE_NAMES)}")
        scale = settings.SVG_SCALE
        if name == "c3":
            return self._render_panels(self.c3_panels(), scale)
        return self._render_single(name, self.figure_points(name), scale)

    @staticmethod
    def _extent(points: list[FigurePoint], scale: int) -> float:
        return max((max(abs(c) for c in p.floats(scale)) for p in points), default=0.0) + MARGIN

    def _render_single(self, name: str, points: list[FigurePoint], scale: int) -> str:
        half = self._extent(points, scale)
        size = 2 * half
        svg_parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(size)}" height="{_fmt(size)}" '
            f'viewBox="{_fmt(-half)} {_fmt(-half)} {_fmt(size)} {_fmt(size)}">',
            f'  <title>{html.escape(name)} roots projected on the a2 plane</title>',
            f'  <line x1="{_fmt(-half)}" y1="0.000" x2="{_fmt(half)}" y2="0.000" stroke="#cccccc" stroke-width="1"/>',
            f'  <line x1="0.000" y1="{_fmt(-half)}" x2="0.000" y2="{_fmt(half)}" stroke="#cccccc" stroke-width="1"/>',
        ]
        svg_parts.extend(self._dots(points, scale, 0.0))
        svg_parts.append("</svg>")
        return "\n".join(svg_parts) + "\n"

    def _render_panels(self, panels: list[tuple[str, list[FigurePoint]]], scale: int) -> str:
        half = max(self._extent(points, scale) for _, points in panels)
        width = len(panels) * 2 * half + (len(panels) - 1) * PANEL_GAP
        height = 2 * half
        svg_parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
            f'viewBox="0.000 {_fmt(-half)} {_fmt(width)} {_fmt(height)}">',
            "  <title>c3: a2 and the Jordan pair (6, 6bar) on three parallel planes</title>",
        ]
        for index, (label, points) in enumerate(panels):
            center = half + index * (2 * half + PANEL_GAP)
            svg_parts.append(
                f'  <rect x="{_fmt(center - half)}" y="{_fmt(-half)}" width="{_fmt(2 * half)}" '
                f'height="{_fmt(height)}" fill="none" stroke="#cccccc" stroke-width="1"/>'
            )
            svg_parts.append(
                f'  <text x="{_fmt(center)}" y="{_fmt(-half + 20)}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="14">{html.escape(label)}</text>'
            )
            svg_parts.extend(self._dots(points, scale, center))
        svg_parts.append("</svg>")
        return "\n".join(svg_parts) + "\n"

    @staticmethod
    def _dots(points: list[FigurePoint], scale: int, shift: float) -> list[str]:
        lines = []
        for point in points:
            x, y = point.floats(scale)
            x += shift
            lines.append(f'  <circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{DOT_RADIUS}" fill="#1f4e79"/>')
            if point.label:
                lines.append(
                    f'  <text x="{_fmt(x + 9)}" y="{_fmt(y - 9)}" font-family="sans-serif" '
                    f'font-size="12">{html.escape(point.label)}</text>'
                )
        return lines

    def emit_figure(self, name: str, path: str | Path) -> Path:
        """Write the SVG for ``name``; raises UsageError when the path is not writable."""
        document = self.render_svg(name)
        target = Path(path)
        try:
            target.write_text(document, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write figure to {target}: {exc.strerror or exc}") from exc
        logger.info("wrote %s figure to %s", name, target)
        return target
