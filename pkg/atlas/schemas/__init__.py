"""
Pydantic schemas for JSON documents and verification reports.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from atlas.core.exceptions import ScalarParseError
from atlas.models import JacobiMode, ParticleKind
from atlas.models.exactnum import FieldScalar


def _check_scalar(value: str) -> str:
    try:
        FieldScalar.parse(value)
    except ScalarParseError as exc:
        raise ValueError(exc.detail) from exc
    return value


# ============================================================================
# Root Schemas
# ============================================================================


class RootSystemExport(BaseModel):
    """JSON form of a root system; scalars use the textual field format."""

    name: str = Field(..., min_length=1)
    rank: int = Field(..., ge=0, le=8)
    roots: list[list[str]]

    @field_validator("roots")
    @classmethod
    def validate_roots(cls, v: list[list[str]]) -> list[list[str]]:
        """Every root has eight parseable coordinates."""
        for root in v:
            if len(root) != 8:
                raise ValueError(f"a root has 8 coordinates, got {len(root)}")
            for coordinate in root:
                _check_scalar(coordinate)
        return v


class TaggedRoot(BaseModel):
    """A root together with the part it was classified into."""

    tag: str
    root: list[str] = Field(..., min_length=8, max_length=8)


class DecompositionPartExport(BaseModel):
    """One part of an a2-plane decomposition."""

    tag: str
    axis: Optional[int] = Field(None, ge=1, le=3)
    size: int = Field(..., ge=0)


class DecompositionExport(BaseModel):
    """Partition of a root system by its projections on the a2 plane."""

    name: str
    parts: list[DecompositionPartExport]
    roots: list[TaggedRoot]
    cross_checks: list[str] = Field(default_factory=list)


class NestedNodeExport(BaseModel):
    """Node of a nested decomposition tree."""

    label: str
    kind: str
    size: int
    cartan_type: Optional[str] = None
    children: list["NestedNodeExport"] = Field(default_factory=list)


class Violation(BaseModel):
    """One failed root-system axiom."""

    kind: Literal["zero", "duplicate", "negation", "integrality", "reflection", "multiple"]
    roots: list[str]
    detail: str


class ValidationReport(BaseModel):
    """Outcome of the exhaustive root-system axiom check."""

    name: str
    root_count: int
    checked_pairs: int
    violation_count: int = 0
    violations: list[Violation] = Field(default_factory=list)
    lengths: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0


# ============================================================================
# Projection Schemas
# ============================================================================


class PlaneCheck(BaseModel):
    """One containment, orthogonality or distance claim about the planes of an algebra."""

    claim: str
    passed: bool
    detail: str = ""


class PlanesReport(BaseModel):
    """Checks on the parallel planes and spaces carrying the Jordan pairs."""

    name: str
    squared_distance: str
    distance: Optional[str] = None
    checks: list[PlaneCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class QuantumNumberRow(BaseModel):
    """Plane indices and (s, t), (s', t') of one root of the e6 Jordan pair."""

    root: str
    plane1_index: int = Field(..., ge=1, le=3)
    plane2_index: int = Field(..., ge=1, le=3)
    st: tuple[str, str]
    st_prime: tuple[str, str]
    conjugate: bool = False

    @field_validator("st", "st_prime")
    @classmethod
    def validate_numbers(cls, v: tuple[str, str]) -> tuple[str, str]:
        """Quantum numbers are field scalars."""
        for value in v:
            _check_scalar(value)
        return v


class EtaEmbeddingReport(BaseModel):
    """Images of the eta roots and the checks made on them."""

    target: str
    images: dict[str, str]
    image_count: int
    matches_lists: bool
    orthonormal: Optional[bool] = None
    cartan_type: str


class RecognitionReport(BaseModel):
    """Coordinate substitution recognizing a subsystem of e8 as a listed algebra."""

    sub: str
    reading: str
    vectors: list[str]
    isometry: bool
    attempts: dict[str, bool]


class ParticleLabelExport(BaseModel):
    """Label of one e8 root."""

    root: list[str] = Field(..., min_length=8, max_length=8)
    label: ParticleKind
    index: Optional[int] = Field(None, ge=1, le=6)


class ParticleReport(BaseModel):
    """Partition of the e8 roots into particle classes."""

    labels: list[ParticleLabelExport]
    counts: dict[str, int]


# ============================================================================
# Algebra Schemas
# ============================================================================


class StructureConstantEntry(BaseModel):
    """One structure constant c_ij^k with i < j."""

    i: int = Field(..., ge=0)
    j: int = Field(..., ge=0)
    k: int = Field(..., ge=0)
    c: str

    @field_validator("c")
    @classmethod
    def validate_constant(cls, v: str) -> str:
        """Constants use the textual field format."""
        return _check_scalar(v)


class LieAlgebraExport(BaseModel):
    """Basis labels, provenance blocks and sparse structure constants."""

    name: str
    dimension: int
    labels: list[str]
    blocks: list[str]
    structure: list[StructureConstantEntry]


class JacobiViolation(BaseModel):
    """A basis triple with a nonzero Jacobiator."""

    indices: tuple[int, int, int]
    labels: tuple[str, str, str]
    residual_terms: int


class JacobiReport(BaseModel):
    """Outcome of a Jacobi identity check."""

    algebra: str
    dimension: int
    mode: JacobiMode
    seed: Optional[int] = None
    triples_checked: int
    block_triples_checked: int = 0
    violation_count: int = 0
    violations: list[JacobiViolation] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0


class PropertyCheck(BaseModel):
    """An identity checked on samples or exhaustively."""

    name: str
    samples: int
    failures: int = 0
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


class OctonionReport(BaseModel):
    """Hurwitz and Zorn property suite."""

    seed: int
    samples: int
    zorn_dot_sign: int
    derivation_ranks: dict[int, int]
    zorn_example: str
    checks: list[PropertyCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class JordanReport(BaseModel):
    """Jordan algebra, triple and pair axiom suite for one J3^n."""

    n: int
    dimension: int
    seed: int
    samples: int
    derivation_dim: int
    str0_dim: int
    checks: list[PropertyCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class GradedPart(BaseModel):
    """Eigenspace of a grading element."""

    label: str
    eigenvalue: str
    dimension: int


class GradingReport(BaseModel):
    """Eigenvalue decomposition of a Lie algebra and its bracket compatibility."""

    algebra: str
    parts: list[GradedPart]
    pairs_checked: int
    incompatible_pairs: int = 0

    @property
    def passed(self) -> bool:
        return self.incompatible_pairs == 0


class TkkReport(BaseModel):
    """Three-graded algebra J + str(J) + Jbar built from J3^n."""

    n: int
    dimension: int
    normalization: str
    grading: GradingReport
    jacobi: JacobiReport
    checks: list[PropertyCheck]

    @property
    def passed(self) -> bool:
        return self.grading.passed and self.jacobi.passed and all(c.passed for c in self.checks)


class MagicSquareEntry(BaseModel):
    """One Tits-constructed algebra of the magic square."""

    hurwitz_dim: int
    jordan_n: int
    dimension: int
    rank: int
    identified_type: str
    jacobi: Optional[JacobiReport] = None


class MagicSquareReport(BaseModel):
    """The 4x4 grid of Tits-constructed algebras."""

    entries: list[MagicSquareEntry]
    symmetric: bool
    lam: str
    mu: str

    @property
    def passed(self) -> bool:
        return self.symmetric and all(e.jacobi is None or e.jacobi.passed for e in self.entries)


class ChainStep(BaseModel):
    """One rewriting of e8 as a sum of summand dimensions."""

    expression: str
    terms: list[int]
    total: int


class ChainReport(BaseModel):
    """Dimension bookkeeping of the e8 decomposition chain."""

    steps: list[ChainStep]
    leaf_roots: dict[str, int]
    cartan_dimension: int

    @property
    def passed(self) -> bool:
        return all(step.total == 248 for step in self.steps)


class ErratumExport(BaseModel):
    """A corrected slip of the transcribed tables."""

    location: str
    printed: str
    used: str
    reason: str

    model_config = ConfigDict(from_attributes=True)


# ============================================================================
# Report Schemas
# ============================================================================


class ReportEntry(BaseModel):
    """Outcome of one checked claim."""

    claim_id: str = Field(..., pattern=r"^[A-Z0-9][A-Z0-9-]*$")
    criterion: int = Field(..., ge=1, le=15)
    anchor: str
    status: Literal["pass", "fail"]
    witness: Optional[str] = None


class RunReport(BaseModel):
    """Every selected claim with its status."""

    entries: list[ReportEntry]
    passed: int
    failed: int
    errata: list[ErratumExport] = Field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if self.failed == 0 else 1
