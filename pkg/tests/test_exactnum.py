"""
Unit tests for exact field scalars.
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from atlas.core.exceptions import FieldDivisionError, ScalarParseError
from atlas.models.exactnum import (
    HALF,
    I,
    ONE,
    SQRT2,
    SQRT3,
    SQRT6,
    ZERO,
    FieldScalar,
    sqrt_of_rational,
)

# ============================================================================
# Strategies
# ============================================================================

coordinates = st.fractions(min_value=-5, max_value=5, max_denominator=6)
scalars = st.lists(coordinates, min_size=8, max_size=8).map(FieldScalar)
real_scalars = st.lists(coordinates, min_size=4, max_size=4).map(FieldScalar)


# ============================================================================
# Arithmetic Tests
# ============================================================================


def test_radical_products():
    """Test that the radicals multiply as square roots."""
    assert SQRT2 * SQRT2 == 2
    assert SQRT3 * SQRT3 == 3
    assert SQRT6 * SQRT6 == 6
    assert SQRT2 * SQRT3 == SQRT6
    assert SQRT6 * SQRT2 == SQRT3 * 2
    assert I * I == -1
    assert (I * SQRT2) * (I * SQRT3) == -SQRT6


def test_mixed_operands():
    """Test arithmetic with ints and Fractions on either side."""
    assert 1 + SQRT2 == FieldScalar.of(1, 1)
    assert 2 - SQRT3 == FieldScalar.of(2, 0, -1)
    assert SQRT2 * Fraction(1, 2) == FieldScalar.of(0, Fraction(1, 2))
    assert 2 / SQRT2 == SQRT2
    assert HALF + HALF == ONE


def test_inverse_of_unit():
    """Test that 1 + r2 has inverse r2 - 1."""
    x = FieldScalar.of(1, 1)
    assert x.inverse() == FieldScalar.of(-1, 1)
    assert x * x.inverse() == 1


def test_inverse_of_zero_raises():
    """Test that dividing by zero raises a field division error."""
    with pytest.raises(FieldDivisionError) as exc_info:
        ZERO.inverse()

    assert "division by zero" in exc_info.value.detail

    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_power():
    """Test integer powers, including negative exponents."""
    assert SQRT2**4 == 4
    assert SQRT3**-2 == FieldScalar.rational(Fraction(1, 3))
    assert I**4 == 1


def test_conjugation_fixes_radicals():
    """Test that conjugation negates only the imaginary part."""
    x = FieldScalar.of(1, 2, 3, 4, i=5, i_r2=6)
    assert x.conj() == FieldScalar.of(1, 2, 3, 4, i=-5, i_r2=-6)
    assert x.real == FieldScalar.of(1, 2, 3, 4)
    assert x.imag == FieldScalar.of(5, 6)


def test_rational_inspection():
    """Test rational and integer predicates."""
    assert FieldScalar.rational(3).is_integer()
    assert FieldScalar.rational(Fraction(3, 2)).is_rational()
    assert not FieldScalar.rational(Fraction(3, 2)).is_integer()
    assert not SQRT2.is_rational()
    assert SQRT2.is_real()
    assert not I.is_real()
    with pytest.raises(ValueError):
        SQRT2.as_fraction()


def test_too_many_coordinates():
    """Test that a scalar has at most eight coordinates."""
    with pytest.raises(ValueError):
        FieldScalar(range(9))


def test_equality_and_hash_with_rationals():
    """Test that rational scalars compare and hash like Fractions."""
    three = FieldScalar.rational(3)
    assert three == 3
    assert hash(three) == hash(3)
    assert FieldScalar.rational(Fraction(1, 2)) == Fraction(1, 2)
    assert SQRT2 != 2


# ============================================================================
# Sign and Ordering Tests
# ============================================================================


def test_exact_sign_of_close_values():
    """Test signs of expressions whose terms nearly cancel."""
    assert (SQRT6 - SQRT2 - 1).sign() == 1
    assert (SQRT2 - SQRT3).sign() == -1
    assert (SQRT2 + SQRT3 - 3).sign() == 1
    assert ZERO.sign() == 0


def test_ordering():
    """Test comparison operators."""
    assert SQRT2 < SQRT3 < 2
    assert SQRT6 > SQRT2 + 1
    assert HALF <= HALF
    assert SQRT3 >= Fraction(17, 10)


def test_sign_of_complex_raises():
    """Test that complex scalars have no sign."""
    with pytest.raises(ValueError):
        (1 + I).sign()


# ============================================================================
# Text Format Tests
# ============================================================================


def test_render():
    """Test the textual form."""
    assert str(ZERO) == "0"
    assert str(FieldScalar.of(Fraction(1, 2), 1, 0, Fraction(-3, 4))) == "1/2+r2-3/4*r6"
    assert str(-SQRT3) == "-r3"
    assert str(FieldScalar.of(1, i=2, i_r3=-1)) == "1+i*(2-r3)"
    assert str(I) == "i*(1)"


def test_parse():
    """Test parsing with omitted terms and signs."""
    assert FieldScalar.parse("1/2+r2-3/4*r6") == FieldScalar.of(Fraction(1, 2), 1, 0, Fraction(-3, 4))
    assert FieldScalar.parse("-1/6*r6") == SQRT6 * Fraction(-1, 6)
    assert FieldScalar.parse("i*(1)") == I
    assert FieldScalar.parse("1-i*(r2)") == 1 - I * SQRT2
    assert FieldScalar.parse(" 2 + r3 ") == 2 + SQRT3


@pytest.mark.parametrize("text", ["", "abc", "1/0", "1+i*(2", "3i*(1)", "--1", "r5"])
def test_parse_rejects_malformed(text):
    """Test that malformed scalars raise a parse error with exit code 2."""
    with pytest.raises(ScalarParseError) as exc_info:
        FieldScalar.parse(text)

    assert exc_info.value.exit_code == 2


def test_to_float():
    """Test the float approximation used for rendering."""
    re_part, im_part = (SQRT2 + I * 3).to_float()
    assert re_part == pytest.approx(1.41421356)
    assert im_part == pytest.approx(3.0)


# ============================================================================
# Square Root Tests
# ============================================================================


@pytest.mark.parametrize(
    "value,expected",
    [
        (0, ZERO),
        (4, FieldScalar.rational(2)),
        (8, SQRT2 * 2),
        (Fraction(3, 4), SQRT3 * HALF),
        (Fraction(2, 3), SQRT6 * Fraction(1, 3)),
        (Fraction(1, 2), SQRT2 * HALF),
    ],
)
def test_sqrt_of_rational(value, expected):
    """Test exact square roots inside Q(r2, r3)."""
    root = sqrt_of_rational(value)
    assert root == expected
    assert root * root == value


@pytest.mark.parametrize("value", [5, -1, Fraction(1, 5), 10])
def test_sqrt_outside_field(value):
    """Test that square roots outside the field are None."""
    assert sqrt_of_rational(value) is None


# ============================================================================
# Field Axiom Properties
# ============================================================================


@given(scalars, scalars, scalars)
def test_multiplication_is_associative(x, y, z):
    """Test (xy)z = x(yz)."""
    assert (x * y) * z == x * (y * z)


@given(scalars, scalars, scalars)
def test_distributive(x, y, z):
    """Test x(y + z) = xy + xz."""
    assert x * (y + z) == x * y + x * z


@given(scalars)
def test_inverse(x):
    """Test x * x^-1 = 1 for nonzero x."""
    assume(not x.is_zero())
    assert x * x.inverse() == 1


@given(scalars, scalars)
def test_conjugation_is_multiplicative(x, y):
    """Test conj(xy) = conj(x) conj(y)."""
    assert (x * y).conj() == x.conj() * y.conj()


@given(scalars)
def test_text_form_parses_back(x):
    """Test that the rendered form parses to the same scalar."""
    assert FieldScalar.parse(str(x)) == x


@given(real_scalars, real_scalars)
def test_sign_agrees_with_floats(x, y):
    """Test that exact comparison agrees with float comparison when they are far apart."""
    difference = x - y
    value = difference.to_float()[0]
    assume(abs(value) > 1e-9)
    assert difference.sign() == (1 if value > 0 else -1)
