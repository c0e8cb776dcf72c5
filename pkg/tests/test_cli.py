#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Unit tests for cli.py
"""

import json
import os

from cli import EXIT_OK, EXIT_QUALITY, EXIT_USAGE, build_parser, main
from diffop import load_operator
from fixtures_loader import FIXTURE_DIR

L1_PATH = os.path.join(FIXTURE_DIR, "L1.op")
N1_PATH = os.path.join(FIXTURE_DIR, "N1.op")
PI_TEXT = "3.14159265358979323846264338327950288419716939937510582097494459230781"


def run(capsys, argv):
    """Run the command line and parse its JSON output"""
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


class TestUsageErrors:
    """Test that usage problems exit with code 1"""

    def test_missing_command(self, capsys):
        assert main([]) == EXIT_USAGE

    def test_unknown_option(self, capsys):
        assert main(["analyze", "--fixture", "chi3-L6", "--bogus"]) == EXIT_USAGE

    def test_no_operator(self, capsys):
        assert main(["analyze", "--prec", "60"]) == EXIT_USAGE

    def test_fixture_and_file(self, capsys):
        assert main(["analyze", "--fixture", "chi3-L6", "--op", L1_PATH]) == EXIT_USAGE

    def test_precision_too_low(self, capsys):
        assert main(["analyze", "--op", L1_PATH, "--prec", "20"]) == EXIT_USAGE

    def test_unknown_fixture(self, capsys):
        assert main(["analyze", "--fixture", "chi5"]) == EXIT_USAGE

    def test_too_few_terms(self, capsys):
        assert main(["basis", "--op", L1_PATH, "--at", "0", "--prec", "50", "--terms", "5"]) == EXIT_USAGE

    def test_decimal_point_name(self, capsys):
        assert main(["basis", "--op", L1_PATH, "--at", "0.25", "--prec", "50", "--terms", "20"]) == EXIT_USAGE

    def test_parser_defaults(self):
        args = build_parser().parse_args(["connect", "--fixture", "chi3-L6", "--to", "1/4"])
        assert args.digits == 30
        assert args.orientation == "ccw"
        assert args.recognize is False


class TestOperatorCommands:
    """Test commands on a small operator file"""

    def test_analyze(self, capsys):
        """Test the singular point table"""
        code, doc = run(capsys, ["analyze", "--op", L1_PATH, "--prec", "50"])
        assert code == EXIT_OK
        assert doc["command"] == "analyze"
        points = {p["name"]: p for p in doc["points"]}
        assert set(points) == {"0", "1/4", "inf"}
        assert points["0"]["exponents"] == ["1"]
        assert points["0"]["apparent"] is True
        assert points["1/4"]["exponents"] == ["-1"]

    def test_basis(self, capsys):
        """Test exact coefficients of w/(1-4w)"""
        code, doc = run(capsys, ["basis", "--op", L1_PATH, "--at", "0", "--prec", "50", "--terms", "20",
                                 "--show", "4"])
        assert code == EXIT_OK
        block = doc["elements"][0]["blocks"][0]
        assert block["rho"] == "1"
        assert block["logs"][0] == ["1", "4", "16", "64"]
        assert doc["pinned"] is False

    def test_connect(self, capsys):
        """Test C(0,1/4) = 1/4 and its recognition"""
        code, doc = run(capsys, ["connect", "--op", L1_PATH, "--to", "1/4", "--prec", "60", "--terms", "160",
                                 "--recognize", "--constants", "1"])
        assert code == EXIT_OK
        conn = doc["connection"]
        assert conn["entries"] == [["0.25"]]
        assert conn["recognized"] == [["1/4"]]

    def test_connect_default_basis(self, capsys):
        """Test recognition over the default basis, which raises the precision"""
        code, doc = run(capsys, ["connect", "--op", L1_PATH, "--to", "1/4", "--prec", "60", "--terms", "160",
                                 "--recognize"])
        assert code == EXIT_OK
        conn = doc["connection"]
        assert conn["recognized"] == [["1/4"]]
        assert doc["precision"] > 60

    def test_connect_path_endpoints(self, capsys):
        """Test that a path must join --from and --to"""
        code = main(["connect", "--op", L1_PATH, "--to", "1/4", "--path", "0,1/2", "--prec", "60",
                     "--terms", "160"])
        assert code == EXIT_USAGE

    def test_monodromy_around_pole(self, capsys):
        """Test trivial monodromy around a simple pole"""
        code, doc = run(capsys, ["monodromy", "--op", L1_PATH, "--around", "1/4", "--prec", "60",
                                 "--terms", "160"])
        assert code == EXIT_OK
        assert doc["order"] == ["1/4"]
        assert doc["matrices"][0]["entries"] == [["1.0"]]
        assert doc["product_residual"] is None
        assert doc["matrices"][0]["jordan"] == [{"exponent_mod_1": "0", "blocks": [1]}]

    def test_decompose_at_pole(self, capsys):
        """Test the pole of w/(1-4w) seen from 1/4"""
        code, doc = run(capsys, ["decompose", "--op", L1_PATH, "--at", "1/4", "--weights", "1", "--prec", "60",
                                 "--terms", "160"])
        assert code == EXIT_OK
        assert doc["coefficients"] == ["0.25"]
        pole = doc["singular_part"][0]
        assert pole["exponent"] == "-1"
        assert pole["log_power"] == 0
        assert pole["coefficient"] == "0.25"

    def test_decompose_needs_weights(self, capsys):
        assert main(["decompose", "--op", L1_PATH, "--at", "1/4", "--prec", "60", "--terms", "160"]) == EXIT_USAGE

    def test_asymptotics_needs_designated_solution(self, capsys):
        assert main(["asymptotics", "--op", L1_PATH, "--prec", "60", "--terms", "160"]) == EXIT_USAGE

    def test_verify_without_checks(self, capsys):
        code, doc = run(capsys, ["verify", "--op", L1_PATH, "--prec", "50", "--terms", "20"])
        assert code == EXIT_OK
        assert doc["ok"] is True
        assert doc["factors"] == []


class TestRecognize:
    """Test the recognize command"""

    def test_pi(self, capsys):
        """Test a value given to more digits than the working precision"""
        code, doc = run(capsys, ["recognize", "--value", PI_TEXT, "--constants", "1,pi", "--prec", "60"])
        assert code == EXIT_OK
        assert doc["form"] == "pi"

    def test_rational_with_known_digits(self, capsys):
        code, doc = run(capsys, ["recognize", "--value", "0.75", "--digits-known", "50", "--constants", "1",
                                 "--prec", "60"])
        assert code == EXIT_OK
        assert doc["form"] == "3/4"

    def test_too_few_digits(self, capsys):
        """Test that a short value cannot be recognized"""
        assert main(["recognize", "--value", "0.75", "--constants", "1", "--prec", "60"]) == EXIT_QUALITY

    def test_default_basis_needs_digits(self, capsys):
        """Test that 60 digits do not cover the smallest default tier"""
        assert main(["recognize", "--value", PI_TEXT, "--prec", "60"]) == EXIT_QUALITY

    def test_added_constant(self, capsys, tmp_path):
        """Test a constant read from a file"""
        source = tmp_path / "p.txt"
        source.write_text("# pi\n" + PI_TEXT + "\n")
        code, doc = run(capsys, ["recognize", "--value", PI_TEXT, "--basis", "1", "--add", f"P={source}",
                                 "--prec", "60"])
        assert code == EXIT_OK
        assert doc["form"] == "P"

    def test_added_constants_repeat(self, capsys, tmp_path):
        """Test two --add items and a multiple of the second"""
        first, second = tmp_path / "a.txt", tmp_path / "b.txt"
        first.write_text("0.1234567890123456789012345678901234567890123456789012345678901234\n")
        second.write_text(PI_TEXT + "\n")
        code, doc = run(capsys, ["recognize", "--value", "6.28318530717958647692528676655900576839433879875021",
                                 "--basis", "1", "--add", f"A={first}", "--add", f"P={second}", "--prec", "60",
                                 "--max-height", "100", "--digits-known", "40"])
        assert code == EXIT_OK
        assert doc["form"] == "2*P"

    def test_bad_add_item(self, capsys, tmp_path):
        assert main(["recognize", "--value", PI_TEXT, "--add", "P", "--prec", "60"]) == EXIT_USAGE

    def test_empty_constant_file(self, capsys, tmp_path):
        source = tmp_path / "p.txt"
        source.write_text("# nothing here\n")
        assert main(["recognize", "--value", PI_TEXT, "--add", f"P={source}", "--prec", "60"]) == EXIT_USAGE

    def test_not_a_number(self, capsys):
        assert main(["recognize", "--value", "three", "--prec", "60"]) == EXIT_USAGE


class TestOpmul:
    """Test operator composition"""

    def test_product_to_stdout(self, capsys):
        code, doc = run(capsys, ["opmul", "--left", L1_PATH, "--right", N1_PATH])
        assert code == EXIT_OK
        assert doc["order"] == 2
        assert "order: 2" in doc["operator"]

    def test_product_to_file(self, capsys, tmp_path):
        """Test that the written product loads back"""
        target = tmp_path / "L1N1.op"
        code, doc = run(capsys, ["opmul", "--left", L1_PATH, "--right", N1_PATH, "-o", str(target)])
        assert code == EXIT_OK
        assert doc["operator"] is None
        assert load_operator(str(target)).order == 2

    def test_missing_file(self, capsys, tmp_path):
        assert main(["opmul", "--left", str(tmp_path / "x.op"), "--right", N1_PATH]) == EXIT_USAGE


class TestQualityExit:
    """Test the quality exit code"""

    def test_disjoint_disks(self, capsys):
        """Test that an impossible matching step exits with code 2"""
        code = main(["connect", "--op", L1_PATH, "--to", "inf", "--prec", "60", "--terms", "160"])
        assert code == EXIT_QUALITY
