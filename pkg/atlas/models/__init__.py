"""
Value types of the atlas: exact scalars, root vectors, Hurwitz and Jordan
elements, and Lie algebras.
"""

import enum

from atlas.models.exactnum import FieldScalar
from atlas.models.hurwitz import HurwitzElement, ZornMatrix
from atlas.models.jordan import JordanAlgebra, JordanElement
from atlas.models.lie import LieAlgebra
from atlas.models.linalg import SparseMatrix, SpanBasis
from atlas.models.roots import DecompositionPart, NestedNode, ParticleLabel, QuantumNumbers, RootSystem
from atlas.models.vectors import RootVector, Subspace


class AlgebraName(str, enum.Enum):
    """Root systems handled by the atlas."""

    G2 = "g2"
    F4 = "f4"
    E6 = "e6"
    E7 = "e7"
    E8 = "e8"
    A1 = "a1"
    A2 = "a2"
    A2_A2 = "a2+a2"
    A5 = "a5"
    C3 = "c3"
    D6 = "d6"

    @classmethod
    def exceptional(cls) -> tuple["AlgebraName", ...]:
        return (cls.G2, cls.F4, cls.E6, cls.E7, cls.E8)

    @classmethod
    def graded(cls) -> tuple["AlgebraName", ...]:
        """Algebras decomposed by the a2 plane: outer a2 + g0 + three Jordan pairs."""
        return (cls.F4, cls.E6, cls.E7, cls.E8)


class PartKind(str, enum.Enum):
    """Kinds of parts in an a2-plane decomposition."""

    OUTER_A2 = "outer_a2"
    G0 = "g0"
    J = "J"
    JBAR = "Jbar"


class ParityReading(str, enum.Enum):
    """Whether the irrational last term of a half-sum root counts towards the sign parity."""

    COUNTED = "counted"
    EXCLUDED = "excluded"


class ParticleKind(str, enum.Enum):
    """Labels of e8 roots by their position in the nested decomposition."""

    QUARK = "quark"
    ANTIQUARK = "antiquark"
    LEPTON = "lepton"
    ANTILEPTON = "antilepton"
    A2_C = "a2_c"
    A2_F = "a2_f"
    A2_G1 = "a2_g1"
    A2_G2 = "a2_g2"


class JacobiMode(str, enum.Enum):
    """Jacobi verification strategy."""

    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


__all__ = [
    "AlgebraName",
    "DecompositionPart",
    "FieldScalar",
    "HurwitzElement",
    "JacobiMode",
    "JordanAlgebra",
    "JordanElement",
    "LieAlgebra",
    "NestedNode",
    "ParityReading",
    "ParticleLabel",
    "PartKind",
    "ParticleKind",
    "QuantumNumbers",
    "RootSystem",
    "RootVector",
    "SpanBasis",
    "SparseMatrix",
    "Subspace",
    "ZornMatrix",
]
