"""
Unit tests for the Jordan algebras J3^n, their operator algebras and the
three-graded algebra J + str(J) + Jbar.
"""

import random
from fractions import Fraction

import pytest

from atlas.core.exceptions import DimensionMismatchError
from atlas.models import HurwitzElement, JordanAlgebra, JordanElement
from atlas.models.linalg import SparseMatrix
from atlas.services import JordanService
from atlas.services.jordan import TKK_NORMALIZATION, random_vector

# ============================================================================
# Fixtures
# ============================================================================


@pytest.fixture(scope="module")
def j3_real(jordan_service):
    """J3 over the reals."""
    return jordan_service.algebra(1)


@pytest.fixture(scope="module")
def j3_complex(jordan_service):
    """J3 over the complex numbers."""
    return jordan_service.algebra(2)


# ============================================================================
# Element Tests
# ============================================================================


@pytest.mark.parametrize("n,dim", [(1, 6), (2, 9), (4, 15), (8, 27)])
def test_dimensions(n, dim):
    """Test dim J3^n = 3 + 3n."""
    J = JordanAlgebra(n)
    assert J.dim == dim
    assert len(J.labels) == dim


def test_bad_n_raises():
    """Test that J3^n needs a Hurwitz dimension."""
    with pytest.raises(DimensionMismatchError) as exc_info:
        JordanAlgebra(3)

    assert "n in 1, 2, 4, 8" in exc_info.value.detail


def test_unit_is_identity_for_circ():
    """Test 1 o x = x on a matrix element."""
    x = JordanElement.from_vector(2, {0: 1, 4: 2, 8: -1})
    assert JordanElement.unit(2).circ(x) == x


def test_element_trace_and_traceless():
    """Test trace and the traceless part."""
    x = JordanElement.from_vector(1, {0: 3, 1: 1, 3: 5})
    assert x.trace() == 4
    assert x.traceless().trace() == 0


def test_off_diagonal_square_is_diagonal():
    """Test that the square of the (1,2) entry unit is E11 + E22."""
    a = JordanElement(1, (0, 0, 0), (HurwitzElement.one(1), HurwitzElement.zero(1), HurwitzElement.zero(1)))
    assert a.circ(a).to_vector() == {0: 1, 1: 1}


def test_mismatched_dimensions_raise():
    """Test that elements over different Hurwitz algebras do not combine."""
    with pytest.raises(DimensionMismatchError):
        JordanElement.unit(1) + JordanElement.unit(2)


# ============================================================================
# Algebra Tests
# ============================================================================


def test_unit_and_trace_form(j3_complex):
    """Test L(1) = Id and the trace form on basis elements."""
    J = j3_complex
    assert J.multiplication(J.unit) == SparseMatrix.identity(J.dim)
    assert J.trace_form({0: 1}, {0: 1}) == 1
    assert J.trace_form({3: 1}, {3: 1}) == 2
    assert J.trace_form({3: 1}, {4: 1}) == 0


def test_jordan_identity(j3_complex):
    """Test (x o x) o (x o y) = x o ((x o x) o y) on seeded samples."""
    J = j3_complex
    rng = random.Random(7)
    for _ in range(10):
        x, y = random_vector(rng, J.dim), random_vector(rng, J.dim)
        xx = J.circ(x, x)
        assert J.circ(xx, J.circ(x, y)) == J.circ(x, J.circ(xx, y))


def test_traceless_coordinates(j3_real):
    """Test coordinates on E11 - E22, E22 - E33 and the off-diagonal units."""
    J = j3_real
    assert J.traceless_coordinates({0: 2, 1: -1, 2: -1, 4: 3}) == {0: 2, 1: 1, 3: 3}
    with pytest.raises(DimensionMismatchError):
        J.traceless_coordinates({0: 1})


def test_traceless(j3_real):
    """Test that the traceless projection removes a third of the trace."""
    assert j3_real.traceless({0: 3}) == {0: 2, 1: -1, 2: -1}


def test_adjoint_of_multiplication(j3_complex):
    """Test that L(x) is self-adjoint for the trace form."""
    J = j3_complex
    operator = J.multiplication({0: 1, 3: 2, 7: -1})
    assert J.adjoint(operator) == operator


# ============================================================================
# Quadratic Map Tests
# ============================================================================


def test_u_of_unit(jordan_service, j3_real):
    """Test U_1 = Id and V_1,1 = 2 Id."""
    J = j3_real
    identity = SparseMatrix.identity(J.dim)
    assert jordan_service.quadratic_U(J, J.unit) == identity
    assert jordan_service.linearized_V(J, J.unit, J.unit) == identity.scaled(2)


def test_apply_u_matches_operator(jordan_service, j3_complex):
    """Test that U_x y agrees with the operator U_x."""
    J = j3_complex
    rng = random.Random(2)
    x, y = random_vector(rng, J.dim), random_vector(rng, J.dim)
    assert jordan_service.apply_U(J, x, y) == jordan_service.quadratic_U(J, x).apply(y)


def test_v_by_definition(jordan_service, j3_complex):
    """Test V_x,y z = (U_(x+z) - U_x - U_z) y."""
    J = j3_complex
    rng = random.Random(4)
    x, y, z = (random_vector(rng, J.dim) for _ in range(3))
    assert jordan_service.apply_V(J, x, y, z) == jordan_service.V_by_definition(J, x, y, z)
    assert jordan_service.apply_V(J, x, y, z) == jordan_service.linearized_V(J, x, y).apply(z)


# ============================================================================
# Operator Algebra Tests
# ============================================================================


@pytest.mark.parametrize("n,derivations,structure", [(1, 3, 8), (2, 8, 16)])
def test_der_and_str0_dimensions(jordan_service, n, derivations, structure):
    """Test dim Der(J3^n) and dim str0(J3^n)."""
    assert jordan_service.derivations_of_J(n).dimension == derivations
    str0 = jordan_service.str0(n)
    assert str0.metadata["direct_sum"]
    assert str0.dimension == structure


def test_derivations_satisfy_jacobi(jordan_service, lie_service):
    """Test that Der(J3^1) = so(3) is a Lie algebra of rank 1."""
    algebra = jordan_service.derivations_of_J(1)
    assert lie_service.jacobi_check(algebra).passed
    assert lie_service.generic_rank(algebra) == 1


def test_tkk_of_real_matrices(jordan_service):
    """Test dim TKK(J3^1) = 21 with the (J+, str, J-) blocks."""
    L = jordan_service.tkk(1)
    assert L.dimension == 21
    assert L.block_names() == ["J+", "str", "J-"]
    assert L.metadata["offsets"] == (0, 6, 15)
    assert jordan_service.grading_element(L) == {6: 1, 7: 1, 8: 1}


def test_embed_and_component(jordan_service):
    """Test that J- vectors are shifted past str(J) and read back."""
    L = jordan_service.tkk(1)
    vector = jordan_service.embed(L, {0: 1, 5: 2}, -1)
    assert vector == {15: 1, 20: 2}
    assert jordan_service.component(L, vector, -1) == {0: 1, 5: 2}
    assert jordan_service.component(L, vector, 1) == {}


def test_same_grade_brackets_vanish(jordan_service):
    """Test [J+, J+] = 0 and [J-, J-] = 0 on actual brackets."""
    L = jordan_service.tkk(1)
    assert jordan_service.same_grade_brackets(L) == 0


def test_same_grade_brackets_detect_a_nonzero_bracket(jordan_service):
    """Test that a bracket between two J+ elements is counted."""
    L = jordan_service.tkk(1).perturbed(0, 1, 6, 1)
    assert jordan_service.same_grade_brackets(L) == 1


def test_caches_belong_to_the_instance(jordan_service, lie_service):
    """Test that each service builds and keeps its own algebras."""
    other = JordanService(lie_service)
    assert other.algebra(1) is other.algebra(1)
    assert other.algebra(1) is not jordan_service.algebra(1)
    assert other.tkk(1) is not jordan_service.tkk(1)
    assert other.tkk(1).dimension == jordan_service.tkk(1).dimension == 21


def test_tkk_normalization(jordan_service):
    """Test V_x,y z = 2 [[x+, y-], z+]."""
    assert jordan_service.tkk_normalization(1, samples=10, seed=3) == TKK_NORMALIZATION == Fraction(2)


def test_jordan_check(jordan_service):
    """Test the whole axiom suite on J3^1."""
    report = jordan_service.jordan_check(1, samples=10, seed=1729)
    assert report.passed, [c.name for c in report.checks if not c.passed]
    assert report.derivation_dim == 3
    assert report.str0_dim == 8


def test_tkk_check(jordan_service):
    """Test grading, Jacobi and dimension checks on TKK(J3^1)."""
    report = jordan_service.tkk_check(1)
    assert report.passed, [c.name for c in report.checks if not c.passed]
    assert report.jacobi.mode.value == "exhaustive"
    assert {part.eigenvalue: part.dimension for part in report.grading.parts} == {"-1": 6, "0": 9, "1": 6}


@pytest.mark.slow
@pytest.mark.parametrize("n,dim", [(2, 35), (4, 66)])
def test_tkk_dimensions(jordan_service, n, dim):
    """Test TKK(J3^2) and TKK(J3^4)."""
    assert jordan_service.tkk(n).dimension == dim
