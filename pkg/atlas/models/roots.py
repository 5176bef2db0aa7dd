"""
Root systems and the pieces they are cut into.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from atlas.models.exactnum import FieldScalar
from atlas.models.vectors import AMBIENT_DIM, RootVector


@dataclass(frozen=True)
class RootSystem:
    """A named, ordered, duplicate-free set of roots in R^8."""

    name: str
    roots: tuple[RootVector, ...]
    rank: int
    ambient_dim: int = AMBIENT_DIM

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, root: object) -> bool:
        return root in self.root_set

    @property
    def root_set(self) -> frozenset[RootVector]:
        return frozenset(self.roots)


@dataclass(frozen=True)
class DecompositionPart:
    """
    One piece of an a2-plane decomposition.

    ``tag`` is a ``PartKind`` value; ``axis`` is 1, 2 or 3 for Jordan parts and
    None for the outer a2 and g0.
    """

    tag: str
    roots: frozenset[RootVector]
    axis: int | None = None

    @property
    def name(self) -> str:
        return self.tag if self.axis is None else f"{self.tag}({self.axis})"

    def __len__(self) -> int:
        return len(self.roots)


@dataclass
class NestedNode:
    """Node of a nested decomposition tree; leaves carry the final root sets."""

    label: str
    kind: str
    roots: frozenset[RootVector]
    cartan_type: str | None = None
    children: list[NestedNode] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list[NestedNode]:
        if self.is_leaf:
            return [self]
        return [leaf for child in self.children for leaf in child.leaves()]


@dataclass(frozen=True)
class QuantumNumbers:
    """Plane indices and (s, t), (s', t') of one root of the e6 Jordan pair."""

    root: RootVector
    plane1_index: int
    plane2_index: int
    st: tuple[FieldScalar, FieldScalar]
    st_prime: tuple[FieldScalar, FieldScalar]
    conjugate: bool = False


@dataclass(frozen=True)
class ParticleLabel:
    """Label of an e8 root; ``index`` is the color or family where one applies."""

    root: RootVector
    kind: str
    index: int | None = None
