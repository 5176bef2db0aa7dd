"""
Unit tests for a2-plane decompositions, planes, quantum numbers and embeddings.
"""

from fractions import Fraction

import pytest

from atlas.core.exceptions import TranscriptionError, UnknownAlgebraError
from atlas.models import AlgebraName, PartKind, RootVector
from atlas.repositories import SUBSTITUTIONS
from atlas.services.projection import (
    G0_SIZES,
    G0_TYPES,
    JORDAN_PAIR_TYPES,
    JORDAN_SIZES,
    a2_projection,
    axis_point,
    hexagon,
    part_of,
)

# ============================================================================
# Projection Helper Tests
# ============================================================================


def test_a2_projection_of_hexagon_point():
    """Test that k1 - k2 projects to itself."""
    root = RootVector.k(1) - RootVector.k(2)
    assert a2_projection(root) == root


def test_a2_projection_drops_other_coordinates():
    """Test that k4..k8 and the k1+k2+k3 direction project to zero."""
    assert a2_projection(RootVector.k(1) + RootVector.k(2) + RootVector.k(3)).is_zero()
    assert a2_projection(RootVector.k(5)).is_zero()


def test_axis_point():
    """Test 1/3(k2 + k3 - 2k1) and its norm 2/3."""
    point = axis_point(1)
    assert point == RootVector.from_terms({1: -2, 2: 1, 3: 1}, Fraction(1, 3))
    assert point.norm2() == Fraction(2, 3)


def test_hexagon():
    """Test the six roots of the outer a2."""
    assert len(hexagon()) == 6
    assert all(r.norm2() == 2 for r in hexagon())


# ============================================================================
# Decomposition Tests
# ============================================================================


@pytest.mark.parametrize("name", [AlgebraName.F4, AlgebraName.E6, AlgebraName.E7])
def test_decompose_sizes(projection_service, name):
    """Test outer a2 + 3(J + Jbar) + g0 sizes."""
    parts = projection_service.decompose(name)
    assert [p.name for p in parts] == [
        "outer_a2",
        "J(1)",
        "J(2)",
        "J(3)",
        "Jbar(1)",
        "Jbar(2)",
        "Jbar(3)",
        "g0",
    ]
    assert len(part_of(parts, PartKind.OUTER_A2)) == 6
    assert len(part_of(parts, PartKind.G0)) == G0_SIZES[name]
    for axis in (1, 2, 3):
        assert len(part_of(parts, PartKind.J, axis)) == JORDAN_SIZES[name]
        assert len(part_of(parts, PartKind.JBAR, axis)) == JORDAN_SIZES[name]


def test_decompose_rejects_g2(projection_service):
    """Test that g2 has no a2-plane decomposition."""
    with pytest.raises(UnknownAlgebraError) as exc_info:
        projection_service.decompose("g2")

    assert "no a2-plane decomposition" in exc_info.value.detail


def test_part_of_missing():
    """Test that an absent part raises KeyError."""
    with pytest.raises(KeyError):
        part_of([], PartKind.J, 1)


@pytest.mark.parametrize("name", [AlgebraName.F4, AlgebraName.E6, AlgebraName.E7])
def test_g0_types(projection_service, root_service, name):
    """Test the Cartan type of g0."""
    g0 = part_of(projection_service.decompose(name), PartKind.G0)
    rs = root_service.root_system_from("g0", g0.roots)
    assert root_service.identify(rs) == G0_TYPES[name]


def test_cyclic_image_moves_axes(projection_service):
    """Test that the cyclic permutation of k1, k2, k3 carries J(m) to J(m')."""
    parts = projection_service.decompose("e6")
    j1 = part_of(parts, PartKind.J, 1)
    image = projection_service.cyclic_image(j1)
    assert image.axis == 2
    assert image.roots == part_of(parts, PartKind.J, 2).roots


def test_cyclic_image_has_order_three(projection_service):
    """Test that three cyclic steps return the original part."""
    j1 = part_of(projection_service.decompose("f4"), PartKind.J, 1)
    image = j1
    for _ in range(3):
        image = projection_service.cyclic_image(image)
    assert image == j1


def test_negate_swaps_j_and_jbar(projection_service):
    """Test that negation carries J(m) to Jbar(m)."""
    parts = projection_service.decompose("f4")
    negated = projection_service.negate(part_of(parts, PartKind.J, 3))
    assert negated.tag == PartKind.JBAR.value
    assert negated.roots == part_of(parts, PartKind.JBAR, 3).roots


@pytest.mark.parametrize("name", [AlgebraName.F4, AlgebraName.E6])
def test_jordan_pair_subalgebra(projection_service, root_service, name):
    """Test g0 + J + Jbar is a root system of the expected type."""
    rs = projection_service.jordan_pair_subalgebra(name, 1)
    assert len(rs) == G0_SIZES[name] + 2 * JORDAN_SIZES[name]
    assert root_service.identify(rs) == JORDAN_PAIR_TYPES[name]


# ============================================================================
# Plane Tests
# ============================================================================


def test_f4_plane_labels(projection_service):
    """Test the plane names of f4."""
    planes = projection_service.build_planes("f4")
    assert set(planes) == {"Pi0", "Pi+(1)", "Pi+(2)", "Pi+(3)", "Pi-(1)", "Pi-(2)", "Pi-(3)"}
    assert planes["Pi0"].dimension == 2


def test_e6_plane_labels(projection_service):
    """Test that e6 adds the two g0 planes and their offset planes."""
    planes = projection_service.build_planes("e6")
    assert "Sigma0" in planes
    assert {"Pi0(1)", "Pi0(2)", "Pi+(1)1", "Pi-(2)3"} <= set(planes)


@pytest.mark.parametrize("name", ["f4", "e6", "e7"])
def test_check_planes(projection_service, name):
    """Test that every containment and distance claim holds with distance squared 2/3."""
    report = projection_service.check_planes(name)
    assert report.passed, [c.claim for c in report.checks if not c.passed]
    assert report.squared_distance == "2/3"
    assert report.distance is not None


def test_build_planes_rejects_g2(projection_service):
    """Test that g2 has no planes."""
    with pytest.raises(UnknownAlgebraError):
        projection_service.build_planes("g2")


# ============================================================================
# Quantum Number Tests
# ============================================================================


@pytest.mark.parametrize("conjugate", [False, True])
def test_table3_quantum_numbers(projection_service, conjugate):
    """Test the nine rows of plane indices and (s, t) coordinates."""
    rows = projection_service.table3_quantum_numbers(conjugate=conjugate)
    assert len(rows) == 9
    assert {(row.plane1_index, row.plane2_index) for row in rows} == {
        (i, j) for i in (1, 2, 3) for j in (1, 2, 3)
    }
    assert all(row.conjugate is conjugate for row in rows)


# ============================================================================
# Embedding Tests
# ============================================================================


def test_a5_in_e6(projection_service):
    """Test the thirty eta differences give a5 inside e6."""
    report = projection_service.eta_embedding("a5-in-e6")
    assert report.image_count == 30
    assert report.cartan_type == "A5"
    assert report.matches_lists


def test_d6_in_e7(projection_service):
    """Test the sixty eta sums and differences give d6 inside e7."""
    report = projection_service.eta_embedding("d6-in-e7")
    assert report.image_count == 60
    assert report.cartan_type == "D6"
    assert report.orthonormal
    assert report.matches_lists


def test_unknown_embedding(projection_service):
    """Test that only the two listed embeddings exist."""
    with pytest.raises(UnknownAlgebraError) as exc_info:
        projection_service.eta_embedding("e6-in-e7")

    assert "unknown embedding" in exc_info.value.detail


# ============================================================================
# e8 Tests
# ============================================================================


@pytest.mark.slow
def test_e8_decomposition(projection_service, root_service):
    """Test the 6 + 6 * 27 + 72 split of e8 and the e6 type of g0."""
    parts = projection_service.decompose("e8")
    assert sum(len(p) for p in parts) == 240
    g0 = part_of(parts, PartKind.G0)
    assert root_service.identify(root_service.root_system_from("g0", g0.roots)) == "E6"


@pytest.mark.slow
@pytest.mark.parametrize("sub", ["e6", "e7"])
def test_recognize_inside_e8(projection_service, sub):
    """Test that the primed basis under the index-shift reading is an isometry onto e8 roots."""
    report = projection_service.recognize_inside_e8(sub)
    assert report.reading == "index_shift"
    assert report.isometry
    assert report.attempts["index_shift"]


def test_recognize_rejects_f4(projection_service):
    """Test that only e6 and e7 are recognized inside e8."""
    with pytest.raises(UnknownAlgebraError):
        projection_service.recognize_inside_e8("f4")


def test_recognize_rejects_short_reading(projection_service, monkeypatch):
    """Test that a reading with fewer vectors than the e6 roots span raises."""
    monkeypatch.setitem(SUBSTITUTIONS, AlgebraName.E6, {"truncated": ("k4", "k5", "k6", "k7", "k8")})
    with pytest.raises(TranscriptionError) as exc_info:
        projection_service.recognize_inside_e8("e6")

    assert "5 vectors" in exc_info.value.detail
    assert "span 6 coordinates" in exc_info.value.detail


@pytest.mark.slow
def test_nested_decomposition_of_e8(projection_service):
    """Test that the nested leaves cover all 240 roots exactly once."""
    tree = projection_service.nested_decomposition("e8")
    assert tree.cartan_type == "E8"
    leaves = tree.leaves()
    covered = [r for leaf in leaves for r in leaf.roots]
    assert len(covered) == len(set(covered)) == 240
    assert sum(projection_service.leaf_inventory(tree).values()) == 240


@pytest.mark.slow
def test_label_particles(projection_service):
    """Test that every e8 root gets one label and each color has 27 quarks."""
    labels = projection_service.label_particles()
    assert len(labels) == 240
    counts = projection_service.label_counts(labels)
    for color in (1, 2, 3):
        assert counts[f"quark({color})"] == 27
        assert counts[f"antiquark({color})"] == 27
    assert sum(counts.values()) == 240
