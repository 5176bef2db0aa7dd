"""
Unit tests for the report and export schemas.
"""

import pytest
from pydantic import ValidationError

from atlas.models import JacobiMode
from atlas.repositories import ERRATA
from atlas.schemas import (
    ChainReport,
    ChainStep,
    ErratumExport,
    JacobiReport,
    ParticleLabelExport,
    PropertyCheck,
    QuantumNumberRow,
    ReportEntry,
    RootSystemExport,
    RunReport,
    StructureConstantEntry,
)

ZERO_ROOT = ["0"] * 8

# ============================================================================
# Root Schema Tests
# ============================================================================


def test_root_export_accepts_field_scalars():
    """Test a root written in the textual field format."""
    export = RootSystemExport(name="g2", rank=2, roots=[["1/3*r3", "-1", "0", "0", "0", "0", "0", "0"]])
    assert export.roots[0][0] == "1/3*r3"


@pytest.mark.parametrize(
    "fields",
    [
        {"name": "", "rank": 2, "roots": []},
        {"name": "g2", "rank": 9, "roots": []},
        {"name": "g2", "rank": 2, "roots": [["1", "0"]]},
        {"name": "g2", "rank": 2, "roots": [["1/0"] + ["0"] * 7]},
        {"name": "g2", "rank": 2, "roots": [["k1"] + ["0"] * 7]},
    ],
)
def test_root_export_rejects(fields):
    """Test empty names, ranks above 8, short roots and bad scalars."""
    with pytest.raises(ValidationError):
        RootSystemExport(**fields)


def test_quantum_number_row_validates_scalars():
    """Test that (s, t) are field scalars."""
    row = QuantumNumberRow(root="k1", plane1_index=1, plane2_index=2, st=("1/2", "0"), st_prime=("0", "-1/6*r6"))
    assert row.conjugate is False
    with pytest.raises(ValidationError):
        QuantumNumberRow(root="k1", plane1_index=1, plane2_index=2, st=("s", "0"), st_prime=("0", "0"))
    with pytest.raises(ValidationError):
        QuantumNumberRow(root="k1", plane1_index=4, plane2_index=2, st=("0", "0"), st_prime=("0", "0"))


def test_particle_label_index_range():
    """Test that particle indices run from 1 to 6."""
    assert ParticleLabelExport(root=ZERO_ROOT, label="quark", index=1).index == 1
    assert ParticleLabelExport(root=ZERO_ROOT, label="a2_c").index is None
    with pytest.raises(ValidationError):
        ParticleLabelExport(root=ZERO_ROOT, label="quark", index=7)
    with pytest.raises(ValidationError):
        ParticleLabelExport(root=ZERO_ROOT, label="gluon", index=1)


# ============================================================================
# Algebra Schema Tests
# ============================================================================


def test_structure_constant_validation():
    """Test that constants must parse and indices are non-negative."""
    assert StructureConstantEntry(i=0, j=1, k=2, c="-1/4").c == "-1/4"
    with pytest.raises(ValidationError):
        StructureConstantEntry(i=0, j=1, k=2, c="quarter")
    with pytest.raises(ValidationError):
        StructureConstantEntry(i=-1, j=1, k=2, c="1")


def test_jacobi_report_passed():
    """Test that passed follows the violation count."""
    report = JacobiReport(algebra="so3", dimension=3, mode=JacobiMode.EXHAUSTIVE, triples_checked=1)
    assert report.passed
    assert not report.model_copy(update={"violation_count": 1}).passed


def test_property_check_passed():
    """Test that a single failure fails the check."""
    assert PropertyCheck(name="alternativity", samples=10).passed
    assert not PropertyCheck(name="alternativity", samples=10, failures=1, witness="x").passed


def test_chain_report_passed():
    """Test that every step must total 248."""
    good = ChainStep(expression="g2 + f4", terms=[14, 182, 52], total=248)
    bad = ChainStep(expression="g2", terms=[14], total=14)
    assert ChainReport(steps=[good], leaf_roots={}, cartan_dimension=8).passed
    assert not ChainReport(steps=[good, bad], leaf_roots={}, cartan_dimension=8).passed


# ============================================================================
# Report Schema Tests
# ============================================================================


def test_erratum_from_attributes():
    """Test building the export from the repository dataclass."""
    export = ErratumExport.model_validate(ERRATA[0])
    assert export.location == ERRATA[0].location
    assert export.used == ERRATA[0].used


@pytest.mark.parametrize(
    "fields",
    [
        {"claim_id": "g2-axioms", "criterion": 1, "status": "pass"},
        {"claim_id": "-G2", "criterion": 1, "status": "pass"},
        {"claim_id": "G2-AXIOMS", "criterion": 0, "status": "pass"},
        {"claim_id": "G2-AXIOMS", "criterion": 16, "status": "pass"},
        {"claim_id": "G2-AXIOMS", "criterion": 1, "status": "maybe"},
    ],
)
def test_report_entry_rejects(fields):
    """Test claim id format, criterion range and status values."""
    with pytest.raises(ValidationError):
        ReportEntry(anchor="root table", **fields)


def test_run_report_exit_code():
    """Test exit code 0 without failures and 1 with any."""
    entry = ReportEntry(claim_id="G2-AXIOMS", criterion=1, anchor="root table", status="pass")
    assert RunReport(entries=[entry], passed=1, failed=0).exit_code == 0
    assert RunReport(entries=[entry], passed=0, failed=1).exit_code == 1
