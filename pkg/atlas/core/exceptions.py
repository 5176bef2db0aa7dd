"""
Error hierarchy for the atlas package.

Every error carries the process exit code the command line reports for it
and a human-readable ``detail`` message.
"""


class AtlasError(Exception):
    """Base error; ``exit_code`` follows the CLI contract (1 failure, 2 usage)."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class UsageError(AtlasError):
    """Bad arguments, unknown claim prefixes or unwritable output paths."""

    exit_code = 2


class UnknownAlgebraError(UsageError):
    """Algebra name outside the supported enumeration for an operation."""


class ScalarParseError(AtlasError, ValueError):
    """Malformed textual field scalar."""

    exit_code = 2


class FieldDivisionError(AtlasError, ZeroDivisionError):
    """Division by the zero scalar."""


class DimensionMismatchError(AtlasError, ValueError):
    """Operands belong to different algebras or have different lengths."""


class NotInSpanError(AtlasError):
    """A vector has no coordinates in the requested span."""


class InvalidRootSystemError(AtlasError):
    """A set of vectors failed the root system axioms where validity is required."""


class TranscriptionError(AtlasError):
    """Computed data disagrees with a transcribed table or list."""


class NotParallelError(AtlasError):
    """Affine and linear subspaces do not share a linear part."""


class SubstitutionNotFoundError(AtlasError):
    """No reading of a coordinate substitution produces the expected root set."""


class NoPlaneStructureError(AtlasError):
    """A root set offers no a2 plane or three-grading to recurse on."""


class NonDiagonalizableError(AtlasError):
    """A grading element does not act diagonally on the supplied basis."""


class ConstructionError(AtlasError):
    """An algebraic construction could not be completed consistently."""
