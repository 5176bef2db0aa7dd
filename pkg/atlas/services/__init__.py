"""
Service layer: root systems, projections, Hurwitz and Jordan algebras, Tits
algebras, figures and the claim registry.
"""

from atlas.services.claims import ClaimRegistry
from atlas.services.figures import FigureService
from atlas.services.hurwitz import HurwitzService
from atlas.services.jordan import JordanService
from atlas.services.lie import LieService
from atlas.services.projection import ProjectionService
from atlas.services.rootspace import RootService
from atlas.services.titslie import TitsService

__all__ = [
    "ClaimRegistry",
    "FigureService",
    "HurwitzService",
    "JordanService",
    "LieService",
    "ProjectionService",
    "RootService",
    "TitsService",
]
