"""
Vectors of the ambient space R^8 with orthonormal basis k_1, ..., k_8.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from atlas.core.exceptions import DimensionMismatchError, NotParallelError
from atlas.models.exactnum import ZERO, FieldScalar, ScalarLike, sqrt_of_rational
from atlas.models.linalg import SpanBasis, solve_gram

AMBIENT_DIM = 8


class RootVector:
    """Immutable 8-component vector with exact real coordinates."""

    __slots__ = ("coords", "_hash")

    def __init__(self, coords: Iterable[ScalarLike]):
        values = tuple(FieldScalar.coerce(c) for c in coords)
        if len(values) != AMBIENT_DIM:
            raise DimensionMismatchError(f"root vectors have {AMBIENT_DIM} coordinates, got {len(values)}")
        self.coords: tuple[FieldScalar, ...] = values
        self._hash: int | None = None

    @classmethod
    def k(cls, index: int, coefficient: ScalarLike = 1) -> RootVector:
        """coefficient * k_index (1-based)."""
        coords: list[ScalarLike] = [0] * AMBIENT_DIM
        coords[index - 1] = coefficient
        return cls(coords)

    @classmethod
    def zero(cls) -> RootVector:
        return cls([0] * AMBIENT_DIM)

    @classmethod
    def from_terms(cls, terms: dict[int, ScalarLike], factor: ScalarLike = 1) -> RootVector:
        """factor * sum(terms[i] k_i)."""
        f = FieldScalar.coerce(factor)
        coords: list[ScalarLike] = [0] * AMBIENT_DIM
        for index, value in terms.items():
            coords[index - 1] = FieldScalar.coerce(value) * f
        return cls(coords)

    def __add__(self, other: RootVector) -> RootVector:
        return RootVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: RootVector) -> RootVector:
        return RootVector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> RootVector:
        return RootVector(-a for a in self.coords)

    def __mul__(self, factor: ScalarLike) -> RootVector:
        return RootVector(a * factor for a in self.coords)

    __rmul__ = __mul__

    def inner(self, other: RootVector) -> FieldScalar:
        total = ZERO
        for a, b in zip(self.coords, other.coords):
            if a and b:
                total = total + a * b
        return total

    def norm2(self) -> FieldScalar:
        return self.inner(self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def sort_key(self) -> tuple[Fraction, ...]:
        return tuple(c for coord in self.coords for c in coord.coords[:4])

    def permute_k123(self, perm: Sequence[int]) -> RootVector:
        """Send k_m to k_perm[m-1] for m = 1, 2, 3."""
        coords = list(self.coords)
        for m in range(3):
            coords[perm[m] - 1] = self.coords[m]
        return RootVector(coords)

    def sparse(self) -> dict[int, FieldScalar]:
        return {k: c for k, c in enumerate(self.coords) if c}

    def to_floats(self) -> tuple[float, ...]:
        return tuple(c.to_float()[0] for c in self.coords)

    def render(self) -> list[str]:
        return [str(c) for c in self.coords]

    def pretty(self) -> str:
        terms = []
        for index, c in enumerate(self.coords, start=1):
            if not c:
                continue
            text = str(c)
            if c == 1:
                body = f"k{index}"
            elif c == -1:
                body = f"-k{index}"
            else:
                body = f"({text})k{index}" if ("+" in text[1:] or "-" in text[1:]) else f"{text}k{index}"
            terms.append(body)
        return " + ".join(terms).replace("+ -", "- ") or "0"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootVector):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coords)
        return self._hash

    def __repr__(self) -> str:
        return f"RootVector({self.pretty()})"


def sorted_roots(roots: Iterable[RootVector]) -> tuple[RootVector, ...]:
    return tuple(sorted(roots, key=RootVector.sort_key))


def span_rank(vectors: Iterable[RootVector]) -> int:
    basis = SpanBasis()
    for v in vectors:
        basis.add(v.sparse())
    return basis.rank


@dataclass
class Subspace:
    """
    Linear or affine subspace ``offset + span(basis)`` of R^8.

    The offset is canonicalized to its component orthogonal to the linear part.
    """

    basis: tuple[RootVector, ...]
    offset: RootVector = field(default_factory=RootVector.zero)
    label: str = ""
    _gram: list[list[FieldScalar]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.basis = tuple(self.basis)
        if span_rank(self.basis) != len(self.basis):
            raise DimensionMismatchError(f"basis of {self.label or 'subspace'} is not independent")
        self._gram = [[u.inner(v) for v in self.basis] for u in self.basis]
        if not self.offset.is_zero():
            self.offset = self.offset - self.project_linear(self.offset)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def is_linear(self) -> bool:
        return self.offset.is_zero()

    def linear_part(self) -> Subspace:
        return Subspace(self.basis, label=f"{self.label} (linear part)")

    def project_linear(self, v: RootVector) -> RootVector:
        """Orthogonal projection of ``v`` onto span(basis)."""
        if not self.basis:
            return RootVector.zero()
        coefficients = solve_gram(self._gram, [b.inner(v) for b in self.basis])
        out = RootVector.zero()
        for c, b in zip(coefficients, self.basis):
            if c:
                out = out + b * c
        return out

    def contains(self, v: RootVector) -> bool:
        shifted = v - self.offset
        return shifted == self.project_linear(shifted)

    def is_orthogonal_to(self, v: RootVector) -> bool:
        return all(not b.inner(v) for b in self.basis)

    def is_parallel(self, other: Subspace) -> bool:
        if self.dimension != other.dimension:
            return False
        return span_rank(self.basis + other.basis) == self.dimension

    def squared_distance_to(self, other: Subspace) -> FieldScalar:
        """Squared distance between parallel subspaces."""
        if not self.is_parallel(other):
            raise NotParallelError(f"{self.label or 'subspace'} is not parallel to {other.label or 'subspace'}")
        gap = self.offset - other.offset
        gap = gap - self.project_linear(gap)
        return gap.norm2()

    def distance_to(self, other: Subspace) -> tuple[FieldScalar, FieldScalar | None]:
        """(squared distance, distance when it lies in the field)."""
        squared = self.squared_distance_to(other)
        root = sqrt_of_rational(squared.as_fraction()) if squared.is_rational() else None
        return squared, root

    def coordinates(self, v: RootVector) -> list[FieldScalar]:
        """Coefficients of ``v - offset`` on the basis; requires membership."""
        shifted = v - self.offset
        return solve_gram(self._gram, [b.inner(shifted) for b in self.basis])

