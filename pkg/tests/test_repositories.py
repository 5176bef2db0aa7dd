"""
Unit tests for the transcribed root lists and their parser.
"""

from fractions import Fraction

import pytest

from atlas.core.exceptions import TranscriptionError, UnknownAlgebraError
from atlas.models import AlgebraName, ParticleKind
from atlas.models.vectors import RootVector
from atlas.repositories import (
    ERRATA,
    ROOT_COUNTS,
    TABLE3,
    e6_g0_components,
    expand_signs,
    g0_list,
    get_repository,
    highest_weight_list,
    lepton_roots,
    parse_root,
    parse_roots,
    quark_roots,
    signed_half_sums,
)

# ============================================================================
# Parser Tests
# ============================================================================


def test_parse_integral_root():
    """Test a plain difference of unit vectors."""
    assert parse_root("-k1+k4") == RootVector.k(4) - RootVector.k(1)


def test_parse_factored_root():
    """Test an irrational factor in front of the parenthesis."""
    root = parse_root("1/2*r2(k4+k5)")
    assert root.coords[3] == root.coords[4]
    assert root.coords[3] * root.coords[3] == Fraction(1, 2)
    assert root.norm2() == 1


@pytest.mark.parametrize(
    "text,norm2",
    [
        ("1/2(-k1+k2+k3+k4-k5-r3*k6)", 2),
        ("1/3*r3(k1+k2+k3)", 1),
        ("1/2(-k1+k2+k3-k4-k5-k6+r2*k7)", 2),
        ("-(k1-k2)", 2),
    ],
)
def test_parse_lengths(text, norm2):
    """Test squared lengths of parsed table entries."""
    assert parse_root(text).norm2() == norm2


def test_parse_ignores_spaces():
    """Test that spaces in the source text are dropped."""
    assert parse_root(" k1 - k2 ") == parse_root("k1-k2")


@pytest.mark.parametrize("text", ["k9", "1/2(k1", "x", "1/2(k1)(k2)", "k1++k2"])
def test_parse_rejects_malformed(text):
    """Test that malformed root text raises."""
    with pytest.raises(TranscriptionError) as exc_info:
        parse_root(text)

    assert repr(text) in exc_info.value.detail


def test_expand_signs():
    """Test every reading of ± in order."""
    assert expand_signs("a±b") == ["a+b", "a-b"]
    assert expand_signs("a±b±c") == ["a+b+c", "a+b-c", "a-b+c", "a-b-c"]
    assert expand_signs("k1") == ["k1"]


def test_parse_roots_expands():
    """Test that a list entry with ± yields both roots."""
    assert parse_roots(["-k1±k4"]) == [parse_root("-k1+k4"), parse_root("-k1-k4")]


def test_signed_half_sums_parity():
    """Test that even parity keeps half of the sign patterns."""
    roots = signed_half_sums("", ("k1", "k2", "k3", "k4"), "even")
    assert len(roots) == 8
    assert len(signed_half_sums("", ("k1", "k2", "k3", "k4"), None)) == 16
    assert all(r.norm2() == 1 for r in roots)


# ============================================================================
# List Tests
# ============================================================================


@pytest.mark.parametrize(
    "name,size",
    [(AlgebraName.F4, 6), (AlgebraName.E6, 9), (AlgebraName.E7, 15), (AlgebraName.E8, 27)],
)
def test_highest_weight_sizes(name, size):
    """Test the size of each listed h.w. Jordan part."""
    roots = highest_weight_list(name)
    assert len(roots) == size
    assert len(set(roots)) == size


@pytest.mark.parametrize(
    "name,size",
    [(AlgebraName.F4, 6), (AlgebraName.E6, 12), (AlgebraName.E7, 30), (AlgebraName.E8, 72)],
)
def test_g0_sizes(name, size):
    """Test the size of each listed g0."""
    roots = g0_list(name)
    assert len(roots) == size
    assert set(roots) == {-r for r in roots}


def test_g2_has_no_lists():
    """Test that g2 has no decomposition lists."""
    with pytest.raises(UnknownAlgebraError):
        highest_weight_list(AlgebraName.G2)
    with pytest.raises(UnknownAlgebraError):
        g0_list(AlgebraName.G2)


def test_e6_g0_components():
    """Test that the e6 g0 splits into two a2 of six roots."""
    first, second = e6_g0_components()
    assert len(first) == len(second) == 6
    assert set(first) | set(second) == set(g0_list(AlgebraName.E6))


def test_particle_list_sizes():
    """Test 27 quarks per color and 9 leptons per family, all of squared length 2."""
    quarks = quark_roots(1)
    leptons = lepton_roots(4)
    assert len(set(quarks)) == 27
    assert len(set(leptons)) == 9
    assert all(r.norm2() == 2 for r in quarks + leptons)


def test_root_counts():
    """Test the expected size of each root system."""
    assert list(ROOT_COUNTS.values()) == [12, 48, 72, 126, 240]


def test_tables():
    """Test nine quantum number rows and six corrected slips."""
    assert len(TABLE3) == 9
    assert all(row.plane1_index in (1, 2, 3) for row in TABLE3)
    assert len(ERRATA) == 6


# ============================================================================
# Repository Tests
# ============================================================================


def test_get_repository_is_shared():
    """Test that the repository is built once."""
    assert get_repository() is get_repository()


def test_repository_returns_copies(repository):
    """Test that callers cannot mutate the cached lists."""
    roots = repository.g0(AlgebraName.F4)
    roots.clear()
    assert len(repository.g0(AlgebraName.F4)) == 6


def test_repository_a2_labels(repository):
    """Test the four labelled a2 subsystems."""
    for kind in (ParticleKind.A2_C, ParticleKind.A2_F, ParticleKind.A2_G1, ParticleKind.A2_G2):
        assert len(repository.a2_labels(kind)) == 6


def test_repository_d6_lists(repository):
    """Test the six eta roots of the d6 inside e7."""
    assert len(repository.d6_eta()) == 6
    differences, sums = repository.d6_lists()
    assert differences
    assert sums
