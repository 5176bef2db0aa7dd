"""
Unit tests for Lie algebras given by structure constants.
"""

import math
from fractions import Fraction

import pytest

from atlas.core.exceptions import NonDiagonalizableError
from atlas.models import JacobiMode, LieAlgebra
from atlas.models.linalg import SpanBasis, SparseMatrix
from atlas.services.lie import ad_matrix, structure_from_span

# ============================================================================
# Fixtures
# ============================================================================


@pytest.fixture
def sl2():
    """sl2 on (e, f, h) with [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return LieAlgebra(
        name="sl2",
        labels=("e", "f", "h"),
        structure={(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}},
        blocks=("pair", "pair", "cartan"),
    )


@pytest.fixture
def abelian():
    """Two-dimensional abelian algebra."""
    return LieAlgebra(name="abelian", labels=("x", "y"), structure={})


# ============================================================================
# Model Tests
# ============================================================================


def test_bracket_antisymmetry(sl2):
    """Test that reversed brackets are negated."""
    assert sl2.bracket_basis(0, 1) == {2: 1}
    assert sl2.bracket_basis(1, 0) == {2: -1}
    assert sl2.bracket_basis(2, 2) == {}
    assert sl2.bracket({2: 1}, {0: 1}) == {0: 2}


def test_bracket_of_combinations(sl2):
    """Test bilinearity on combined vectors."""
    assert sl2.bracket({0: 1, 2: 1}, {1: 1}) == {2: 1, 1: -2}


def test_block_helpers(sl2):
    """Test provenance block lookup."""
    assert sl2.block_names() == ["pair", "cartan"]
    assert sl2.block_indices("pair") == [0, 1]


def test_structure_entries_are_sorted(sl2):
    """Test that entries come out in (i, j, k) order."""
    assert [entry[:3] for entry in sl2.structure_entries()] == [(0, 1, 2), (0, 2, 0), (1, 2, 1)]


def test_perturbed_copy(sl2):
    """Test that a perturbation shifts one constant and leaves the original intact."""
    shifted = sl2.perturbed(1, 0, 2, Fraction(1, 7))
    assert shifted.bracket_basis(0, 1) == {2: Fraction(6, 7)}
    assert sl2.bracket_basis(0, 1) == {2: 1}
    assert shifted.name == "sl2 (perturbed)"


# ============================================================================
# Jacobi Tests
# ============================================================================


def test_jacobi_exhaustive_passes(lie_service, sl2):
    """Test that sl2 satisfies Jacobi on its only triple."""
    report = lie_service.jacobi_check(sl2, JacobiMode.EXHAUSTIVE)
    assert report.passed
    assert report.triples_checked == 1
    assert report.seed is None


def test_jacobi_detects_perturbation(lie_service, sl2):
    """Test that [e,h] = -e instead of -2e is caught."""
    report = lie_service.jacobi_check(sl2.perturbed(0, 2, 0, 1), JacobiMode.EXHAUSTIVE)
    assert not report.passed
    assert report.violations[0].labels == ("e", "f", "h")


def test_rescaled_bracket_is_still_lie(lie_service, sl2):
    """Test that rescaling [e,f] alone keeps the Jacobi identity."""
    assert lie_service.jacobi_check(sl2.perturbed(0, 1, 2, 1), JacobiMode.EXHAUSTIVE).passed


def test_jacobi_sampled_is_seeded(lie_service, sl2):
    """Test that sampled mode records its seed and sample count."""
    report = lie_service.jacobi_check(sl2, JacobiMode.SAMPLED, samples=5, seed=11)
    assert report.triples_checked == 5
    assert report.seed == 11
    assert report.passed


def test_jacobi_block_coverage(lie_service, sl2):
    """Test that blocks with fewer than three elements add no triples."""
    report = lie_service.jacobi_check(sl2, JacobiMode.EXHAUSTIVE, block_coverage=True)
    assert report.block_triples_checked == 0


def test_jacobi_block_coverage_enumerates_blocks(lie_service, jordan_service):
    """Test that block coverage checks every triple of each graded block of TKK(J3^1)."""
    L = jordan_service.tkk(1)
    report = lie_service.jacobi_check(L, JacobiMode.SAMPLED, samples=3, seed=5, block_coverage=True)
    assert report.block_triples_checked == math.comb(6, 3) + math.comb(9, 3) + math.comb(6, 3)
    assert report.passed


def test_jacobi_small_dimension(lie_service, abelian):
    """Test that algebras below dimension three have nothing to check."""
    assert lie_service.jacobi_check(abelian).triples_checked == 0


# ============================================================================
# Rank and Killing Form Tests
# ============================================================================


def test_generic_rank(lie_service, sl2, abelian):
    """Test the rank as the minimal nullity of ad(x)."""
    assert lie_service.generic_rank(sl2) == 1
    assert lie_service.generic_rank(abelian) == 2


def test_killing_form(lie_service, sl2):
    """Test K(e, f) = 4 and K(h, h) = 8."""
    form = lie_service.killing_form(sl2)
    assert form[0][1] == 4
    assert form[2][2] == 8
    assert form[0][0] == 0


def test_is_semisimple(lie_service, sl2, abelian):
    """Test Cartan's criterion."""
    assert lie_service.is_semisimple(sl2)
    assert not lie_service.is_semisimple(abelian)


# ============================================================================
# Grading Tests
# ============================================================================


def test_grading_by_h(lie_service, sl2):
    """Test that ad(h) grades sl2 as (-2, 0, 2)."""
    graded = lie_service.grading_decompose(sl2, ad_matrix(sl2, {2: 1}))
    assert graded.dimensions() == {-2: 1, 0: 1, 2: 1}
    assert graded.report.passed
    assert [part.eigenvalue for part in graded.report.parts] == ["-2", "0", "2"]


def test_grading_rejects_non_eigenvector(lie_service, sl2):
    """Test that a basis vector outside an eigenspace raises."""
    with pytest.raises(NonDiagonalizableError):
        lie_service.grading_decompose(sl2, ad_matrix(sl2, {2: 1}), basis=[{0: 1, 1: 1}, {1: 1}, {2: 1}])


def test_eigenbasis(lie_service, sl2):
    """Test eigenvectors of ad(h) on the pair block."""
    vectors = lie_service.eigenbasis(ad_matrix(sl2, {2: 1}), [0, 1], range(-2, 3))
    assert vectors == [{1: 1}, {0: 1}]


def test_eigenbasis_requires_invariant_block(lie_service, sl2):
    """Test that a block mapped outside itself raises."""
    with pytest.raises(NonDiagonalizableError):
        lie_service.eigenbasis(ad_matrix(sl2, {0: 1}), [1], range(-2, 3))


# ============================================================================
# Construction and Export Tests
# ============================================================================


def test_structure_from_span():
    """Test structure constants of the 2x2 traceless matrices."""
    e = SparseMatrix(2, {0: {1: 1}})
    f = SparseMatrix(2, {1: {0: 1}})
    h = SparseMatrix(2, {0: {0: 1}, 1: {1: -1}})
    span = SpanBasis()
    for operator in (e, f, h):
        span.add(operator.flatten())
    structure = structure_from_span([e, f, h], span)
    assert structure[(0, 1)] == {2: 1}
    assert structure[(0, 2)] == {0: -2}
    assert structure[(1, 2)] == {1: 2}


def test_export_json(lie_service, sl2):
    """Test the JSON document uses the textual scalar format."""
    document = lie_service.export_json(sl2)
    assert document.dimension == 3
    assert [entry.c for entry in document.structure] == ["1", "-2", "2"]
