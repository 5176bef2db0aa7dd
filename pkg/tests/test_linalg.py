"""
Unit tests for exact sparse linear algebra.
"""

from fractions import Fraction

import pytest

from atlas.core.exceptions import DimensionMismatchError, NotInSpanError
from atlas.models.exactnum import SQRT2
from atlas.models.linalg import (
    SpanBasis,
    SparseMatrix,
    combine,
    fraction_mod_p,
    nullspace,
    rank,
    rank_mod_p,
    reciprocal,
    solve_gram,
    sparse_to_dense,
)

# ============================================================================
# Vector Helper Tests
# ============================================================================


def test_combine_drops_cancelled_entries():
    """Test that cancelled entries leave the sparse vector."""
    assert combine((1, {0: 1, 1: 2}), (-1, {0: 1})) == {1: 2}
    assert combine((2, {3: Fraction(1, 2)}), (-1, {3: 1})) == {}


def test_reciprocal_stays_exact():
    """Test that integer reciprocals are Fractions."""
    assert reciprocal(3) == Fraction(1, 3)
    assert isinstance(reciprocal(3), Fraction)


def test_sparse_to_dense_checks_length():
    """Test that out-of-range indices raise."""
    assert sparse_to_dense({1: 5}, 3) == [0, 5, 0]
    with pytest.raises(DimensionMismatchError):
        sparse_to_dense({4: 1}, 3)


# ============================================================================
# Span Basis Tests
# ============================================================================


def test_span_basis_rank_and_membership():
    """Test incremental insertion, rank and membership."""
    basis = SpanBasis()
    assert basis.add({0: 1, 1: 1})
    assert basis.add({1: 1, 2: 1})
    assert not basis.add({0: 1, 2: -1})
    assert basis.rank == 2
    assert basis.contains({0: 2, 1: 3, 2: 1})
    assert not basis.contains({2: 1})


def test_span_basis_coordinates():
    """Test coordinates on the inserted members."""
    basis = SpanBasis()
    basis.add({0: 1, 1: 1})
    basis.add({1: 1, 2: 1})
    coordinates = basis.coordinates({0: 2, 1: 5, 2: 3})
    assert coordinates == {0: 2, 1: 3}


def test_span_basis_coordinates_outside_span():
    """Test that a vector outside the span raises NotInSpanError."""
    basis = SpanBasis()
    basis.add({0: 1})

    with pytest.raises(NotInSpanError) as exc_info:
        basis.coordinates({1: 1})

    assert "not in the span" in exc_info.value.detail


def test_span_basis_with_field_scalars():
    """Test elimination with irrational entries."""
    basis = SpanBasis()
    basis.add({0: SQRT2, 1: 1})
    assert basis.contains({0: 2, 1: SQRT2})
    assert rank([{0: SQRT2, 1: 1}, {0: 2, 1: SQRT2}]) == 1


# ============================================================================
# Dense Solver Tests
# ============================================================================


def test_nullspace():
    """Test the kernel of a rank-one matrix."""
    kernel = nullspace([[1, 1, 1]], 3)
    assert len(kernel) == 2
    for vector in kernel:
        assert sum(vector) == 0


def test_solve_gram():
    """Test a small non-singular system."""
    assert solve_gram([[2, 1], [1, 2]], [3, 3]) == [1, 1]


def test_solve_gram_singular():
    """Test that a singular Gram matrix raises."""
    with pytest.raises(DimensionMismatchError) as exc_info:
        solve_gram([[1, 1], [1, 1]], [1, 1])

    assert "singular" in exc_info.value.detail


def test_rank_mod_p():
    """Test rank over a prime field."""
    assert rank_mod_p([[1, 2], [2, 4]], 7) == 1
    assert rank_mod_p([[1, 0], [0, 7]], 7) == 1
    assert rank_mod_p([[1, 0], [0, 3]], 7) == 2
    assert rank_mod_p([], 7) == 0


def test_fraction_mod_p():
    """Test the image of a fraction in F_p."""
    assert (fraction_mod_p(Fraction(1, 2), 7) * 2) % 7 == 1


# ============================================================================
# Sparse Matrix Tests
# ============================================================================


def test_matrix_products_and_commutator():
    """Test products, commutators and traces of 2x2 matrices."""
    e = SparseMatrix(2, {0: {1: 1}})
    f = SparseMatrix(2, {1: {0: 1}})
    h = e.commutator(f)
    assert h == SparseMatrix(2, {0: {0: 1}, 1: {1: -1}})
    assert h.trace() == 0
    assert (e @ e).is_zero()
    assert e.transpose() == f


def test_matrix_apply_and_columns():
    """Test application and column extraction."""
    m = SparseMatrix.from_columns(3, [{0: 1}, {0: 2, 2: 1}, {}])
    assert m.apply({1: 1}) == {0: 2, 2: 1}
    assert m.column(1) == {0: 2, 2: 1}
    assert m.flatten() == {0: 1, 1: 2, 7: 1}
    assert list(m.entries()) == [(0, 0, 1), (0, 1, 2), (2, 1, 1)]


def test_matrix_combine():
    """Test linear combinations cancel exactly."""
    m = SparseMatrix.identity(2)
    assert (m - m).is_zero()
    assert m.combine(Fraction(1, 2), m) == SparseMatrix.identity(2, Fraction(3, 2))
    assert -m == m.scaled(-1)
