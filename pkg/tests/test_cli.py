"""
Command-line interface tests
"""
import json
import os
import subprocess
import sys

import pytest

from triple_lines.cli import build_parser, main, read_cubic
from triple_lines.errors import ParseError
from triple_lines.field import CoefficientField

FERMAT_TRIPLE_LINE = "1,0,-1,0,1,0,0,1,0,0"
STANDARD_LINE = "1,0,0,0,0,0,0,0,0,0"
SINGULAR_ALONG_A_PLANE = "x0^2*x2 + x1^2*x3 + x0*x1*x4"


def fixture_path(fixtures_dir, name):
    return os.path.join(fixtures_dir, name)


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


class TestParser:
    """Argument parser test suite"""

    def test_subcommands(self):
        """Test that every command parses"""
        parser = build_parser()
        for command in ["classify", "census", "verify-theorem", "smooth", "tangent"]:
            args = parser.parse_args([command, "--cubic", "x0^3"])
            assert args.command == command

    def test_unset_flags_stay_none(self):
        """Test that absent flags do not shadow config-file values"""
        args = build_parser().parse_args(["census", "--cubic", "x0^3"])
        assert args.jobs is None
        assert args.json_output is None
        assert args.allow_singular is None

    def test_unknown_method_is_rejected(self):
        """Test argparse choices"""
        with pytest.raises(SystemExit) as info:
            build_parser().parse_args(["census", "--cubic", "x0^3", "--method", "newton"])
        assert info.value.code == 2

    def test_read_cubic_sources(self, fixtures_dir):
        """Test file, JSON and inline text input"""
        field = CoefficientField.parse("Q(w)")
        from_file = read_cubic(fixture_path(fixtures_dir, "fermat.txt"), field)
        from_text = read_cubic("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", field)
        from_json = read_cubic(json.dumps(from_text.to_json()), field)
        assert from_file == from_text == from_json

    def test_read_cubic_rejects_garbage(self):
        """Test a malformed polynomial"""
        with pytest.raises(ParseError):
            read_cubic("x0^3 + 2y", CoefficientField.parse("Q(w)"))


class TestClassifyCommand:
    """classify command test suite"""

    def test_fermat_triple_line(self, capsys, fixtures_dir):
        """Test the JSON report for a triple line of the Fermat cubic"""
        code, report = run_json(
            capsys,
            ["classify", "--cubic", fixture_path(fixtures_dir, "fermat.txt"), "--line-pluecker", FERMAT_TRIPLE_LINE],
        )
        assert code == 0
        assert report["type"] == "SecondType"
        assert report["is_triple"] is True
        assert report["on_cubic"] is True
        assert report["stratum"] == "(0,1)"
        assert report["fano_tangent_dim"] == 2
        assert report["m_jacobian_rank"] <= 4
        assert report["line"]["pluecker"] == FERMAT_TRIPLE_LINE.split(",")

    def test_text_report(self, capsys, fixtures_dir):
        """Test the plain-text rendering"""
        code = main(
            ["classify", "--cubic", fixture_path(fixtures_dir, "double_example.txt"), "--line-pluecker", STANDARD_LINE]
        )
        out = capsys.readouterr().out
        assert code == 0
        assert out.startswith("Line classification\n")
        assert "SecondType" in out

    def test_line_off_the_cubic(self, capsys, fixtures_dir):
        """Test exit code 3 for a line not contained in X"""
        code = main(["classify", "--cubic", fixture_path(fixtures_dir, "fermat.txt"), "--line-pluecker", STANDARD_LINE])
        assert code == 3
        assert capsys.readouterr().out == ""

    def test_missing_line(self, fixtures_dir):
        """Test exit code 2 when no line is given"""
        assert main(["classify", "--cubic", fixture_path(fixtures_dir, "fermat.txt")]) == 2

    def test_both_line_forms(self, fixtures_dir):
        """Test exit code 2 when both line forms are given"""
        argv = [
            "classify",
            "--cubic",
            fixture_path(fixtures_dir, "fermat.txt"),
            "--line-pluecker",
            FERMAT_TRIPLE_LINE,
            "--line-span",
            "1,0,-1,0,0;0,1,0,-1,0",
        ]
        assert main(argv) == 2

    def test_bad_polynomial(self):
        """Test exit code 2 for unparsable input"""
        assert main(["classify", "--cubic", "x0^3 + 2y", "--line-pluecker", STANDARD_LINE]) == 2

    def test_missing_cubic(self):
        """Test exit code 2 when no cubic is given"""
        assert main(["smooth"]) == 2


class TestOtherCommands:
    """smooth, tangent, verify-theorem and census command test suite"""

    def test_smooth_fermat(self, capsys, fixtures_dir):
        """Test a smooth cubic"""
        code, report = run_json(capsys, ["smooth", "--cubic", fixture_path(fixtures_dir, "fermat.txt")])
        assert code == 0
        assert report["smooth"] is True
        assert report["witness"] is None
        assert report["field"] == "Q(w)"

    def test_smooth_reports_witness(self, capsys, fixtures_dir):
        """Test a singular cubic with a witness point"""
        code, report = run_json(capsys, ["smooth", "--cubic", fixture_path(fixtures_dir, "singular.txt")])
        assert code == 0
        assert report["smooth"] is False
        assert len(report["witness"]) == 5

    def test_tangent(self, capsys, fixtures_dir):
        """Test the tangent-space report on the Fermat triple line"""
        code, report = run_json(
            capsys,
            ["tangent", "--cubic", fixture_path(fixtures_dir, "fermat.txt"), "--line-span", "1,0,-1,0,0;0,1,0,-1,0"],
        )
        assert code == 0
        assert report["type"] == "SecondType"
        assert report["fano"]["dimension"] == 2
        assert report["m_curve"] is not None

    def test_verify_theorem_on_a_line(self, capsys, fixtures_dir):
        """Test the theorem check restricted to one explicit line"""
        code, report = run_json(
            capsys,
            [
                "verify-theorem",
                "--cubic",
                fixture_path(fixtures_dir, "triple_example.txt"),
                "--line-pluecker",
                STANDARD_LINE,
                "--no-census",
                "--samples",
                "0",
            ],
        )
        assert code == 0
        assert report["holds"] is True
        assert report["counterexamples"] == 0

    def test_census_refuses_singular(self, fixtures_dir):
        """Test exit code 6 on a singular cubic"""
        assert main(["census", "--cubic", fixture_path(fixtures_dir, "singular.txt")]) == 6

    @pytest.mark.parametrize("command", ["classify", "tangent", "verify-theorem"])
    def test_line_commands_refuse_singular(self, command, capsys, fixtures_dir):
        """Test exit code 6 before any line is classified on a singular cubic"""
        extra = ["--no-census", "--samples", "0"] if command == "verify-theorem" else []
        for cubic in [fixture_path(fixtures_dir, "singular.txt"), SINGULAR_ALONG_A_PLANE]:
            assert main([command, "--cubic", cubic, "--line-pluecker", STANDARD_LINE] + extra) == 6
        assert capsys.readouterr().out == ""

    def test_allow_singular_classifies(self, capsys):
        """Test --allow-singular lifts the refusal"""
        code, report = run_json(
            capsys,
            ["classify", "--cubic", SINGULAR_ALONG_A_PLANE, "--line-pluecker", STANDARD_LINE, "--allow-singular"],
        )
        assert code == 0
        assert report["type"] == "FirstType"

    @pytest.mark.slow
    def test_census_one_stratum(self, capsys, fixtures_dir):
        """Test a census restricted to the smallest Fermat stratum"""
        code, report = run_json(
            capsys, ["census", "--cubic", fixture_path(fixtures_dir, "fermat.txt"), "--stratum", "1,3"]
        )
        assert code == 0
        assert report["total"] == 9
        assert report["complete"] is True
        assert report["elapsed_seconds"] >= 0


class TestOutputAndConfig:
    """Report destination and config-file test suite"""

    def test_output_file(self, tmp_path, capsys, fixtures_dir):
        """Test that --output writes the report instead of stdout"""
        target = tmp_path / "reports" / "smooth.json"
        code = main(["smooth", "--cubic", fixture_path(fixtures_dir, "fermat.txt"), "--json", "--output", str(target)])
        assert code == 0
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text())["smooth"] is True
        assert [p.name for p in target.parent.iterdir()] == ["smooth.json"]

    def test_config_file(self, tmp_path, capsys, fixtures_dir):
        """Test defaults from a config file with a flag overriding one of them"""
        config = tmp_path / "run.json"
        config.write_text(
            json.dumps(
                {
                    "cubic": "x0^3",
                    "line-pluecker": FERMAT_TRIPLE_LINE,
                    "json": True,
                }
            )
        )
        code = main(["classify", "--config", str(config), "--cubic", fixture_path(fixtures_dir, "fermat.txt")])
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["is_triple"] is True

    def test_config_file_with_unknown_key(self, tmp_path):
        """Test exit code 2 for an unknown config key"""
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"cubic": "x0^3", "colour": "red"}))
        assert main(["smooth", "--config", str(config)]) == 2

    def test_log_file(self, tmp_path, capsys, fixtures_dir):
        """Test that logs go to the requested file and not to stdout"""
        log_file = tmp_path / "run.log"
        code = main(
            [
                "smooth",
                "--cubic",
                fixture_path(fixtures_dir, "fermat.txt"),
                "--json",
                "--log-level",
                "INFO",
                "--log-file",
                str(log_file),
            ]
        )
        assert code == 0
        json.loads(capsys.readouterr().out)
        assert "command_finished" in log_file.read_text()


@pytest.mark.integration
class TestModuleEntryPoint:
    """python -m triple_lines test suite"""

    def test_subprocess_run(self, fixtures_dir):
        """Test the module entry point end to end"""
        root = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
        env = dict(os.environ, PYTHONPATH=root)
        env.pop("LOG_LEVEL", None)
        result = subprocess.run(
            [sys.executable, "-m", "triple_lines", "smooth", "--cubic", fixture_path(fixtures_dir, "fermat.txt"), "--json"],
            capture_output=True,
            text=True,
            env=env,
            cwd=root,
            timeout=300,
        )
        assert result.returncode == 0
        assert json.loads(result.stdout)["smooth"] is True

    def test_subprocess_exit_code(self, fixtures_dir):
        """Test that the exit code reaches the shell"""
        root = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
        env = dict(os.environ, PYTHONPATH=root)
        result = subprocess.run(
            [sys.executable, "-m", "triple_lines", "census", "--cubic", fixture_path(fixtures_dir, "singular.txt")],
            capture_output=True,
            text=True,
            env=env,
            cwd=root,
            timeout=300,
        )
        assert result.returncode == 6
        assert result.stdout == ""
