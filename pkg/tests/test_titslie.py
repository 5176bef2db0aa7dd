"""
Unit tests for the Tits construction, the fitted bracket constants, the magic
square and the gradings built on it.
"""

import math
from fractions import Fraction

import pytest

from atlas.core.exceptions import ConstructionError, DimensionMismatchError
from atlas.models import JacobiMode
from atlas.services.titslie import (
    LAMBDA,
    MAGIC_SQUARE_DIMENSIONS,
    MAGIC_SQUARE_RANKS,
    MU,
    ZORN_WEIGHTS,
    ConstantPerturbation,
    TitsService,
    rotation_derivation,
)

# ============================================================================
# Construction Tests
# ============================================================================


def test_tits_over_reals_is_so3(tits_service, lie_service):
    """Test that tits(1,1) is Der(J3^1) alone."""
    L = tits_service.tits_construct(1, 1)
    assert L.dimension == 3
    assert L.name == "tits(1,1)"
    assert lie_service.generic_rank(L) == 1


def test_tits_quaternions_real_matrices(tits_service, lie_service):
    """Test tits(4,1) = c3: dimension 21, rank 3, antisymmetric and Jacobi on every triple."""
    L = tits_service.tits_construct(4, 1)
    assert L.dimension == 21
    assert L.metadata["antisymmetry_violations"] == 0
    assert L.block_names() == ["Der(H)", "H0(x)J0", "Der(J)"]
    assert len(L.block_indices("H0(x)J0")) == 3 * 5
    assert tits_service.generic_rank(L) == 3
    report = lie_service.jacobi_check(L, JacobiMode.EXHAUSTIVE)
    assert report.passed
    assert report.triples_checked == 1330


@pytest.mark.parametrize("h_dim,j_n", [(2, 1), (1, 2), (2, 2)])
def test_small_dimensions(tits_service, h_dim, j_n):
    """Test the magic-square dimensions of the small corner."""
    assert tits_service.tits_construct(h_dim, j_n).dimension == MAGIC_SQUARE_DIMENSIONS[(h_dim, j_n)]


def test_bad_dimensions_raise(tits_service):
    """Test that H and J must come from dimensions 1, 2, 4, 8."""
    with pytest.raises(DimensionMismatchError) as exc_info:
        tits_service.tits_construct(3, 1)

    assert "(3, 1)" in exc_info.value.detail


def test_wrong_constants_break_jacobi(tits_service, lie_service):
    """Test that lam = mu = 1 gives an algebra that fails Jacobi."""
    L = tits_service.tits_construct(4, 1, Fraction(1), Fraction(1), check_antisymmetry=False)
    assert not lie_service.jacobi_check(L, JacobiMode.EXHAUSTIVE).passed


def test_fit_bracket_constants(tits_service):
    """Test that Jacobi determines lam = 1/4 and mu = 1/2."""
    assert tits_service.fit_bracket_constants() == (LAMBDA, MU) == (Fraction(1, 4), Fraction(1, 2))


# ============================================================================
# Perturbation Tests
# ============================================================================


def test_constant_perturbation_breaks_jacobi(lie_service, hurwitz_service, jordan_service, projection_service):
    """Test that a shifted constant of tits(4,1) fails the exhaustive check."""
    service = TitsService(
        lie_service, hurwitz_service, jordan_service, projection_service, ConstantPerturbation(4, 1)
    )
    L = service.tits_construct(4, 1)
    assert L.name == "tits(4,1) (perturbed)"
    assert not lie_service.jacobi_check(L, JacobiMode.EXHAUSTIVE).passed
    assert service.tits_construct(1, 1).name == "tits(1,1)"


def test_perturbation_stays_with_its_service(lie_service, hurwitz_service, jordan_service, projection_service):
    """Test that a perturbed build does not reach another service's cache."""
    perturbed = TitsService(
        lie_service, hurwitz_service, jordan_service, projection_service, ConstantPerturbation(4, 1)
    )
    assert perturbed.tits_construct(4, 1).name == "tits(4,1) (perturbed)"
    fresh = TitsService(lie_service, hurwitz_service, jordan_service, projection_service)
    L = fresh.tits_construct(4, 1)
    assert L.name == "tits(4,1)"
    assert fresh.tits_construct(4, 1) is L
    assert lie_service.jacobi_check(L, JacobiMode.EXHAUSTIVE).passed


def test_perturbation_needs_an_entry(tits_service):
    """Test that perturbing a missing constant raises."""
    L = tits_service.tits_construct(1, 1)
    with pytest.raises(ConstructionError):
        ConstantPerturbation(1, 1, entry=10_000).apply(L)


# ============================================================================
# Grading Tests
# ============================================================================


def test_rotation_derivation():
    """Test that the plane rotation sends u1 to u2 and u2 to -u1."""
    R = rotation_derivation(4, {(1, 2): 1})
    assert R.apply({1: 1}) == {2: 1}
    assert R.apply({2: 1}) == {1: -1}
    assert R.apply({0: 1, 3: 1}) == {}


def test_row_three_grading(tits_service):
    """Test that tits(4,1) grades as (J3^1, tits(2,1) + 1, J3^1)."""
    graded = tits_service.row_three_grading(1)
    assert graded.dimensions() == {-1: 6, 0: 9, 1: 6}
    assert graded.report.passed


def test_zorn_weights_sum_to_zero():
    """Test that the rotation weights are traceless."""
    assert sum(ZORN_WEIGHTS) == 0


@pytest.mark.slow
def test_zorn_grading_e8(tits_service):
    """Test L0 of dimension 86 and six parts of 27."""
    report = tits_service.zorn_grading_e8()
    dims = {part.label: part.dimension for part in report.parts}
    assert report.passed
    assert dims.pop("L0") == 86
    assert set(dims.values()) == {27}
    assert len(dims) == 6


# ============================================================================
# Magic Square Tests
# ============================================================================


@pytest.mark.slow
def test_e8_block_coverage_is_exhaustive(tits_service, lie_service):
    """Test that every triple inside each block of tits(8,8) is checked."""
    L = tits_service.tits_construct(8, 8)
    sizes = [len(L.block_indices(block)) for block in L.block_names()]
    assert sizes == [14, 182, 52]
    report = lie_service.jacobi_check(L, JacobiMode.SAMPLED, samples=10, seed=1729, block_coverage=True)
    assert report.block_triples_checked == math.comb(14, 3) + math.comb(182, 3) + math.comb(52, 3)
    assert report.passed


@pytest.mark.slow
def test_magic_square(tits_service):
    """Test all sixteen dimensions, ranks and types with sampled Jacobi checks."""
    report = tits_service.magic_square(JacobiMode.SAMPLED, samples=200, seed=1729)
    assert report.symmetric
    assert report.passed
    for entry in report.entries:
        key = (entry.hurwitz_dim, entry.jordan_n)
        assert entry.dimension == MAGIC_SQUARE_DIMENSIONS[key]
        assert entry.rank == MAGIC_SQUARE_RANKS[key]
        assert entry.identified_type != "?"
    types = {(e.hurwitz_dim, e.jordan_n): e.identified_type for e in report.entries}
    assert types[(8, 8)] == "e8"
    assert types[(2, 2)] == "a2+a2"


@pytest.mark.slow
def test_chain_decompose_e8(tits_service):
    """Test that every step of the e8 chain totals 248."""
    report = tits_service.chain_decompose_e8()
    assert [step.total for step in report.steps] == [248] * 4
    assert report.steps[0].terms == [14, 182, 52]
    assert report.cartan_dimension == 8
    assert sum(report.leaf_roots.values()) == 240
