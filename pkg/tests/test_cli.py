"""
Tests for the atlas command line: output forms and exit codes.
"""

import json

import pytest

from atlas.commands import COMMANDS, CommandResult
from atlas.main import build_parser, main

# ============================================================================
# Output Tests
# ============================================================================


def test_roots_count(capsys):
    """Test that --count prints only the number."""
    assert main(["roots", "g2", "--count"]) == 0
    assert capsys.readouterr().out.strip() == "12"


def test_roots_json(capsys):
    """Test the JSON form of the count."""
    assert main(["roots", "g2", "--count", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"name": "g2", "count": 12}


def test_roots_listing_json(capsys):
    """Test the root export document."""
    assert main(["roots", "f4", "--json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["rank"] == 4
    assert len(document["roots"]) == 48


def test_verify(capsys):
    """Test the verification summary."""
    assert main(["verify", "g2"]) == 0
    out = capsys.readouterr().out
    assert "g2: 12 roots, 144 pairs, 0 violations" in out
    assert "squared lengths: 2/3, 2" in out


def test_decompose_lists_errata(capsys):
    """Test that decomposition output ends with the corrected slips."""
    assert main(["decompose", "f4"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("f4: outer_a2=6, J(1)=6")
    assert "errata:" in out


def test_table3(capsys):
    """Test the nine quantum number rows."""
    assert main(["table3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("planes")
    assert sum(1 for line in lines if line.startswith("(")) == 9


def test_tits(capsys):
    """Test the summary of a small Tits algebra."""
    assert main(["tits", "4", "1"]) == 0
    out = capsys.readouterr().out
    assert "tits(4,1): dimension 21, rank 3, type c3" in out
    assert "0 violations" in out


def test_figure_to_stdout(capsys):
    """Test that the SVG goes to standard output without --svg."""
    assert main(["figure", "g2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("<svg")
    assert out.count("<circle") == 12


def test_figure_to_file(capsys, tmp_path):
    """Test that --svg writes the file and reports its path."""
    target = tmp_path / "g2.svg"
    assert main(["figure", "g2", "--svg", str(target)]) == 0
    assert capsys.readouterr().out.strip() == f"wrote {target}"
    assert target.read_text(encoding="utf-8").startswith("<svg")


def test_run_all_filter(capsys):
    """Test a filtered claim run."""
    assert main(["run-all", "--filter", "G2", "--samples", "10"]) == 0
    out = capsys.readouterr().out
    assert "[ok  ] G2-ROOT-COUNT" in out
    assert "2 passed, 0 failed" in out
    assert "errata:" in out


def test_run_all_perturbed(capsys):
    """Test that the hidden negative-control flag makes the run fail."""
    assert main(["run-all", "--filter", "G2", "--perturb", "root:g2"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL] G2-AXIOMS" in out
    assert "1 passed, 1 failed" in out


def test_run_all_json(capsys):
    """Test the JSON report."""
    assert main(["run-all", "--filter", "NEG", "--json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert [entry["status"] for entry in document["entries"]] == ["pass", "pass"]
    assert document["failed"] == 0


# ============================================================================
# Exit Code Tests
# ============================================================================


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["roots", "h4"],
        ["roots", "a2"],
        ["decompose", "g2"],
        ["verify", "g2", "--seed", "-1"],
        ["verify", "g2", "--seed", "x"],
        ["verify", "g2", "--samples", "0"],
        ["tits", "3", "1"],
        ["jordan-check", "--n", "3"],
        ["jordan-check", "3"],
        ["tkk", "x"],
    ],
)
def test_bad_arguments_exit_2(argv, capsys):
    """Test that argument errors exit with 2."""
    assert main(argv) == 2
    assert capsys.readouterr().err


def test_unknown_filter_exit_2(capsys):
    """Test that a prefix matching no claim is a usage error."""
    assert main(["run-all", "--filter", "ZZZ"]) == 2
    assert capsys.readouterr().err.startswith("atlas: error: no claim id starts with")


def test_bad_perturbation_exit_2(capsys):
    """Test that a malformed perturbation is a usage error."""
    assert main(["run-all", "--filter", "G2", "--perturb", "shift:g2"]) == 2
    assert "unknown perturbation" in capsys.readouterr().err


def test_unwritable_figure_exit_2(capsys, tmp_path):
    """Test that an unwritable --svg path exits with 2."""
    assert main(["figure", "g2", "--svg", str(tmp_path / "missing" / "g2.svg")]) == 2
    assert capsys.readouterr().err.startswith("atlas: error: cannot write figure to")


def test_version(capsys):
    """Test --version."""
    assert main(["--version"]) == 0
    assert capsys.readouterr().out.startswith("atlas ")


def test_jordan_check_positional(capsys):
    """Test that J3^n sizes are given as positional arguments."""
    assert main(["jordan-check", "1", "--samples", "5"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("J3^1: dim 6, Der 3, str0 8")
    assert "J3^2" not in out


def test_tkk_positional(capsys):
    """Test the TKK summary of J3^1."""
    assert main(["tkk", "1", "--samples", "5"]) == 0
    assert capsys.readouterr().out.startswith("TKK(J3^1): dim 21")


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["jordan-check"], [1, 2, 4, 8]),
        (["jordan-check", "2", "4"], [2, 4]),
        (["tkk", "1", "--n", "2"], [1, 2]),
    ],
)
def test_jordan_sizes_default_to_all(argv, expected, monkeypatch):
    """Test the sizes handed to the command, defaulting to 1 2 4 8."""
    seen = {}

    def record(args):
        seen["n"] = args.n
        return CommandResult({}, "")

    monkeypatch.setitem(COMMANDS, argv[0], record)
    assert main(argv) == 0
    assert seen["n"] == expected


@pytest.mark.parametrize("flag", ["--verify", "--mode"])
def test_magic_square_verify_flag(flag):
    """Test --verify and its --mode alias."""
    args = build_parser().parse_args(["magic-square", flag, "sampled"])
    assert args.mode == "sampled"


def test_magic_square_rejects_unknown_mode(capsys):
    """Test that only exhaustive and sampled are accepted."""
    assert main(["magic-square", "--verify", "auto"]) == 2
    assert "invalid choice" in capsys.readouterr().err


def test_parser_defaults():
    """Test the shared options of a subcommand."""
    args = build_parser().parse_args(["verify", "g2"])
    assert args.seed == 1729
    assert args.samples is None
    assert args.json is False
