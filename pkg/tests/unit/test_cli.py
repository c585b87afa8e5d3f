"""Unit tests for the cadist command line."""

import json

import pytest

from cadist.cli import build_parser, main
from cadist.cli.commands import parse_grid
from cadist.exceptions import ParameterRangeError


@pytest.fixture(autouse=True)
def quiet_logging(mocker):
    """Keep the CLI's logging setup away from the real environment."""
    mocker.patch("cadist.cli.main.configure_from_env")


def read_artifact(path):
    data = json.loads(path.read_text())
    return data["header"], data["result"]


def last_json_line(text):
    return json.loads(text.strip().splitlines()[-1])


def test_no_command_prints_help(capsys):
    """Test that running without a subcommand shows help."""
    assert main([]) == 0
    assert "cadist" in capsys.readouterr().out


def test_parser_has_all_subcommands():
    """Test the subcommand set."""
    parser = build_parser()
    for command in (
        "list",
        "verify",
        "hfun",
        "fill",
        "area",
        "dehn-check",
        "dense-loops",
        "phi",
        "compare",
        "classify",
    ):
        assert parser.parse_args([command]).command == command


def test_hfun_unary(tmp_path, capsys):
    """Test that h is identically zero for the unary structure."""
    assert main(["hfun", "--structure", "Z-unary", "--n", "12", "--out-dir", str(tmp_path)]) == 0
    lines = (tmp_path / "h-Z-unary.csv").read_text().splitlines()
    rows = [line for line in lines if not line.startswith("#")]
    assert rows[0] == "n,h,witness"
    assert [int(r.split(",")[1]) for r in rows[1:]] == [0] * 13
    assert any(line.startswith("# config_digest: ") for line in lines)
    header, result = read_artifact(tmp_path / "h-Z-unary.json")
    assert header["constants"]["m"] == 4
    assert result["structure"] == "Z-unary"
    assert "n,h,witness" in capsys.readouterr().out


def test_hfun_with_length_check(tmp_path):
    """Test the length bound artifact next to the profile."""
    args = ["hfun", "--structure", "Z-zigzag-binary", "--n", "6", "--check-length"]
    assert main([*args, "--out-dir", str(tmp_path)]) == 0
    _, result = read_artifact(tmp_path / "length-bound-Z-zigzag-binary.json")
    assert result["violation"] is None


def test_artifacts_identical_across_workers(tmp_path):
    """Test that worker count does not change any artifact byte."""
    for workers in ("1", "8"):
        args = ["hfun", "--structure", "Z-zigzag-binary", "--n", "8", "--workers", workers]
        assert main([*args, "--out-dir", str(tmp_path / workers)]) == 0
    for name in ("h-Z-zigzag-binary.csv", "h-Z-zigzag-binary.json"):
        assert (tmp_path / "1" / name).read_bytes() == (tmp_path / "8" / name).read_bytes()


def test_config_file_merge(tmp_path):
    """Test that flags override the config file."""
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"structure": "Z-unary", "n": 4, "seed": 9}))
    assert main(["hfun", "--config", str(config), "--n", "6", "--out-dir", str(tmp_path)]) == 0
    header, result = read_artifact(tmp_path / "h-Z-unary.json")
    assert len(result["entries"]) == 7
    assert header["seed"] == 9


def test_budget_exceeded_exit_code(tmp_path, capsys):
    """Test exit code 2 and the failure record when the word budget runs out."""
    args = ["hfun", "--structure", "Z-zigzag-binary", "--n", "10", "--max-words", "5"]
    assert main([*args, "--out-dir", str(tmp_path)]) == 2
    record = last_json_line(capsys.readouterr().out)
    assert record["status"] == "error"
    assert record["error"] == "EnumerationBudgetError"


def test_unknown_structure(tmp_path, capsys):
    """Test exit code 1 with a JSON record naming the error."""
    assert main(["verify", "--structure", "Q8-binary", "--out-dir", str(tmp_path)]) == 1
    captured = capsys.readouterr()
    record = last_json_line(captured.out)
    assert record["error"] == "UnknownStructureError"
    assert "Q8-binary" in captured.err


def test_verify(tmp_path):
    """Test the verification artifact of a catalog structure."""
    assert main(["verify", "--structure", "LL2", "--depth", "5", "--out-dir", str(tmp_path)]) == 0
    header, result = read_artifact(tmp_path / "verify-LL2.json")
    assert header["structure"] == "LL2"
    assert [c["name"] for c in result["checks"]][0] == "regularity"


def test_list(tmp_path, capsys):
    """Test the catalog listing."""
    assert main(["list", "--out-dir", str(tmp_path)]) == 0
    _, rows = read_artifact(tmp_path / "structures.json")
    assert len(rows) == 4
    assert "Z-unary" in capsys.readouterr().out


def test_fill(tmp_path):
    """Test the certificate of the commutator loop in Z^2."""
    args = ["fill", "--structure", "Z2-zigzag-binary", "--loop", "xyXY"]
    assert main([*args, "--out-dir", str(tmp_path)]) == 0
    _, result = read_artifact(tmp_path / "certificate-Z2-zigzag-binary.json")
    assert result["loop"] == ["x", "y", "X", "Y"]
    assert result["check"]["free_reduction_identity"]
    assert result["check"]["geodesics_within_h"]
    assert result["h_source"] == "computed"


def test_fill_not_a_loop(tmp_path, capsys):
    """Test that a non-trivial word is refused."""
    args = ["fill", "--structure", "Z2-zigzag-binary", "--loop", "xy"]
    assert main([*args, "--out-dir", str(tmp_path)]) == 1
    assert last_json_line(capsys.readouterr().out)["error"] == "NotALoopError"


def test_area(tmp_path, capsys):
    """Test the exact area of a commutator."""
    assert main(["area", "--word", "xxyXXY", "--out-dir", str(tmp_path)]) == 0
    _, result = read_artifact(tmp_path / "area-Z2.json")
    assert result["area"] == 2
    assert "area(xxyXXY) = 2" in capsys.readouterr().out


def test_dehn_check(tmp_path):
    """Test the Dehn inequality command on small loops."""
    args = ["dehn-check", "--sizes", "4", "--samples", "2", "--out-dir", str(tmp_path)]
    assert main(args) == 0
    header, reports = read_artifact(tmp_path / "dehn-Z2-zigzag-binary.json")
    assert header["presentation"] == "Z2"
    assert reports[0]["n"] == 4


def test_dense_loops(tmp_path):
    """Test the lamplighter witness loops."""
    assert main(["dense-loops", "--out-dir", str(tmp_path)]) == 0
    _, rows = read_artifact(tmp_path / "dense-loops-LL2.json")
    assert [r["length"] for r in rows] == [16, 24]
    assert all(r["is_loop"] for r in rows)


def test_phi(tmp_path):
    """Test the step function table."""
    args = ["phi", "--lengths", "16,24,32", "--upto", "40", "--out-dir", str(tmp_path)]
    assert main(args) == 0
    lines = (tmp_path / "phi.csv").read_text().splitlines()
    assert "# breakpoints: [16, 24, 32]" in lines
    assert "20,16" in lines
    assert "24,24" in lines


def test_phi_rejects_bad_lengths(tmp_path):
    """Test exit code 1 for lengths that do not increase."""
    assert main(["phi", "--lengths", "24,16", "--out-dir", str(tmp_path)]) == 1


def test_compare_incomparable(tmp_path, capsys):
    """Test the default comparison of the incomparable step function with the identity."""
    assert main(["compare", "--out-dir", str(tmp_path)]) == 0
    assert "all witnesses refuted both directions" in capsys.readouterr().out
    _, result = read_artifact(tmp_path / "compare.json")
    assert result["g_below_f"]["range_end"] == 2**32


def test_compare_witness(tmp_path):
    """Test a single witness check, passing and failing."""
    args = ["compare", "--g", "identity", "--f", "power:2", "--range", "1000"]
    assert main([*args, "--witness", "1,1,1", "--out-dir", str(tmp_path)]) == 0
    _, result = read_artifact(tmp_path / "preceq.json")
    assert result["holds"]
    args = ["compare", "--g", "power:2", "--f", "identity", "--range", "1000"]
    assert main([*args, "--witness", "3,1,1", "--out-dir", str(tmp_path)]) == 1


def test_breakpoints_only_forces_mode(tmp_path):
    """Test that --breakpoints-only replaces the exhaustive scan on a short range."""
    args = ["compare", "--g", "step:incomparable", "--f", "identity", "--range", "1000"]
    assert main([*args, "--out-dir", str(tmp_path / "plain")]) == 0
    _, plain = read_artifact(tmp_path / "plain" / "compare.json")
    assert plain["g_below_f"]["mode"] == "exhaustive"
    assert main([*args, "--breakpoints-only", "--out-dir", str(tmp_path / "forced")]) == 0
    _, forced = read_artifact(tmp_path / "forced" / "compare.json")
    assert forced["g_below_f"]["mode"] == "breakpoints"
    assert forced["f_below_g"]["mode"] == "breakpoints"


def test_breakpoints_only_needs_step(tmp_path):
    """Test that breakpoint mode requires a step function side."""
    args = ["compare", "--g", "identity", "--f", "power:2", "--breakpoints-only"]
    assert main([*args, "--out-dir", str(tmp_path)]) == 1


def test_classify(tmp_path):
    """Test growth evidence for the exponential."""
    assert main(["classify", "--f", "exp:2", "--out-dir", str(tmp_path)]) == 0
    _, result = read_artifact(tmp_path / "classify.json")
    assert result["superquadratic"]["evidence"]
    assert result["strong"]["found"]


def test_parse_grid():
    """Test the KxM grammar."""
    assert parse_grid("16x8") == (16, 8)
    for bad in ("16", "0x3", "ax2"):
        with pytest.raises(ParameterRangeError):
            parse_grid(bad)
