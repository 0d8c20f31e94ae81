import json
import math
import subprocess
import sys

import pytest

from sectorbalance.cli import run_cli

PI = math.pi

PIZZA = "0,0.7853981633974483,1.5707963267948966,2.356194490192345"


def run(capsys, argv):
    code = run_cli(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAreas:
    def test_centered_quarters(self, capsys):
        code, out, _ = run(capsys, ["areas", "--a", "1", "--r0", "0", "--theta0", "0",
                                    "--chords", "0,1.5707963267948966"])
        assert code == 0
        doc = json.loads(out)
        assert len(doc["sectors"]) == 4
        for sector in doc["sectors"]:
            assert sector["area"] == pytest.approx(PI / 4, rel=1e-15)
        assert doc["total"] == pytest.approx(PI, rel=1e-15)

    def test_csv_schema(self, capsys):
        code, out, _ = run(capsys, ["areas", "--a", "1", "--r0", "0.3", "--theta0", "0",
                                    "--chords", "0,1.2", "--format", "csv"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "index,theta_lo,theta_hi,area,parity"
        assert len(lines) == 5
        assert lines[1].startswith("1,0,")
        assert lines[1].endswith(",odd")
        assert lines[2].endswith(",even")

    def test_quadrature_mode_matches_closed(self, capsys):
        base = ["--a", "1.2", "--r0", "0.5", "--theta0", "0.4", "--chords", "0.1,0.9"]
        code, closed_out, _ = run(capsys, ["areas", *base])
        code2, quad_out, _ = run(capsys, ["areas", *base, "--mode", "quadrature"])
        assert code == 0 and code2 == 0
        closed = json.loads(closed_out)
        quad = json.loads(quad_out)
        for s_closed, s_quad in zip(closed["sectors"], quad["sectors"]):
            assert s_quad["area"] == pytest.approx(s_closed["area"], rel=1e-10)

    def test_montecarlo_mode_reports_stderr(self, capsys):
        code, out, _ = run(capsys, ["areas", "--a", "1", "--r0", "0.5", "--theta0", "0",
                                    "--chords", "0,1.5707963267948966",
                                    "--mode", "montecarlo", "--samples", "200000",
                                    "--seed", "42"])
        assert code == 0
        doc = json.loads(out)
        assert doc["samples"] == 200000
        assert doc["seed"] == 42
        closed = [1.2637039021427074, 0.3070924246521892, 0.30709242465218906,
                  1.2637039021427072]
        for sector, ref in zip(doc["sectors"], closed):
            assert abs(sector["area"] - ref) <= 4.0 * sector["stderr"]
        assert doc["total"] == pytest.approx(PI, rel=1e-12)

    def test_pole_outside_is_domain_error(self, capsys):
        code, _, err = run(capsys, ["areas", "--a", "1", "--r0", "1.5", "--theta0", "0",
                                    "--chords", "0,1"])
        assert code == 2
        assert "r0" in err

    def test_bad_flag_is_usage_error(self, capsys):
        assert run_cli(["areas", "--bogus"]) == 1

    def test_missing_chords_is_usage_error(self, capsys):
        code, _, err = run(capsys, ["areas", "--a", "1"])
        assert code == 1
        assert "chords" in err

    def test_degrees_flag_converts_inputs(self, capsys):
        _, rad_out, _ = run(capsys, ["areas", "--a", "1", "--r0", "0.4",
                                     "--theta0", str(PI / 6), "--chords", f"0,{PI / 2}"])
        _, deg_out, _ = run(capsys, ["areas", "--a", "1", "--r0", "0.4",
                                     "--theta0", "30", "--chords", "0,90", "--degrees"])
        rad = json.loads(rad_out)
        deg = json.loads(deg_out)
        for s_rad, s_deg in zip(rad["sectors"], deg["sectors"]):
            assert s_deg["area"] == pytest.approx(s_rad["area"], rel=1e-12)


class TestResidual:
    def test_pizza_residual_near_zero(self, capsys):
        code, out, _ = run(capsys, ["residual", "--case", "eight", "--a", "1",
                                    "--r0", "0.6", "--theta0", "0.3",
                                    "--chords", PIZZA])
        assert code == 0
        doc = json.loads(out)
        assert doc["case"] == "eight"
        assert abs(doc["residual"]) <= 1e-10

    def test_quadrature_mode(self, capsys):
        code, out, _ = run(capsys, ["residual", "--case", "six", "--a", "1",
                                    "--r0", "0.5", "--theta0", "0",
                                    "--chords", "0.1,1.0471975511965976,2.0943951023931953",
                                    "--mode", "quadrature"])
        assert code == 0
        doc = json.loads(out)
        assert doc["residual"] == pytest.approx(-0.099791942353575136, abs=1e-10)

    def test_audit_includes_both_variants(self, capsys):
        code, out, _ = run(capsys, ["residual", "--case", "six", "--a", "1",
                                    "--r0", "0.5", "--theta0", "0.3",
                                    "--chords=-0.2,0.3,0.8", "--audit"])
        assert code == 0
        doc = json.loads(out)
        assert doc["audit"]["corrected"] == pytest.approx(0.0, abs=1e-12)
        assert doc["audit"]["as-printed"] == pytest.approx(0.25 * math.sin(1.0), abs=1e-12)
        assert doc["audit"]["quadrature"] == pytest.approx(0.0, abs=1e-10)

    def test_audit_at_center_is_domain_error(self, capsys):
        code, _, err = run(capsys, ["residual", "--case", "six", "--a", "1",
                                    "--r0", "0", "--theta0", "0",
                                    "--chords=-0.2,0.3,0.8", "--audit"])
        assert code == 2
        assert "as-printed" in err

    def test_case_size_mismatch_is_domain_error(self, capsys):
        code, _, _ = run(capsys, ["residual", "--case", "eight", "--a", "1",
                                  "--r0", "0.2", "--theta0", "0", "--chords", "0,1"])
        assert code == 2


class TestSolve:
    def test_free_angle_with_bracket(self, capsys):
        code, out, _ = run(capsys, ["solve", "--case", "eight", "--a", "1",
                                    "--r0", "0.5", "--theta0", "0.2",
                                    "--chords", "0,0.8,1.3,2", "--free-index", "4",
                                    "--bracket", "1.3000001,3.14"])
        assert code == 0
        doc = json.loads(out)
        assert doc["free_parameter"] == "theta4"
        assert doc["root"] == pytest.approx(2.078924155611765, abs=1e-9)
        assert abs(doc["residual_at_root"]) <= 1e-10
        assert abs(doc["oracle_check"]) <= 1e-9

    def test_free_angle_auto_scan(self, capsys):
        code, out, _ = run(capsys, ["solve", "--case", "eight", "--a", "1",
                                    "--r0", "0.5", "--theta0", "0.2",
                                    "--chords", "0,0.8,1.3,2", "--free-index", "4"])
        assert code == 0
        doc = json.loads(out)
        assert doc["root"] == pytest.approx(2.078924155611765, abs=1e-9)

    def test_freed_slot_value_is_ignored(self, capsys):
        # The 4th chord entry is a placeholder; even one that breaks the fan
        # ordering must not matter once the angle is freed.
        code, out, _ = run(capsys, ["solve", "--a", "1", "--r0", "0.5",
                                    "--theta0", "0.2", "--chords", "0,0.8,1.3,99",
                                    "--free-index", "4",
                                    "--bracket", "1.3000001,3.14"])
        assert code == 0
        doc = json.loads(out)
        assert doc["case"] == "eight"
        assert doc["root"] == pytest.approx(2.078924155611765, abs=1e-9)

    def test_pole_radius_solve(self, capsys):
        code, out, _ = run(capsys, ["solve", "--case", "four", "--a", "1",
                                    "--theta0", "0",
                                    "--chords=-0.7353981633974483,0.7353981633974483"])
        assert code == 0
        doc = json.loads(out)
        assert doc["free_parameter"] == "r0"
        assert doc["root"] == pytest.approx(0.31702064891745718, abs=1e-10)

    def test_no_sign_change_is_solver_error(self, capsys):
        code, _, err = run(capsys, ["solve", "--case", "eight", "--a", "1",
                                    "--r0", "0", "--theta0", "0",
                                    "--chords", "0,0.4,0.9,1.0", "--free-index", "4",
                                    "--bracket", "0.95,1.2"])
        assert code == 3
        assert "sign change" in err

    def test_pole_radius_needs_binary_case(self, capsys):
        code, _, _ = run(capsys, ["solve", "--case", "six", "--a", "1", "--theta0", "0",
                                  "--chords=-0.5,0,0.5"])
        assert code == 1

    def test_free_index_out_of_range(self, capsys):
        code, _, _ = run(capsys, ["solve", "--a", "1", "--chords", "0,1",
                                  "--free-index", "3"])
        assert code == 1

    @pytest.mark.parametrize("bracket", ["1,2,3", "1", "a,b"])
    def test_malformed_bracket_is_usage_error(self, capsys, bracket):
        code, _, _ = run(capsys, ["solve", "--a", "1", "--chords", "0,1",
                                  "--free-index", "2", "--bracket", bracket])
        assert code == 1


class TestSweep:
    def test_grid_values_and_nan_as_null(self, capsys):
        code, out, _ = run(capsys, ["sweep", "--case", "four", "--a", "1",
                                    "--chords", "0,1.2", "--grid", "r0=0:1.2:4"])
        assert code == 0
        doc = json.loads(out)
        assert doc["axes"] == [{"name": "r0", "lo": 0, "hi": 1.2, "count": 4}]
        assert len(doc["values"]) == 4
        assert doc["values"][3] is None  # r0 = 1.2 >= a
        assert doc["values"][0] == pytest.approx(1.2 - PI / 2, rel=1e-12)

    def test_csv_rows(self, capsys):
        code, out, _ = run(capsys, ["sweep", "--a", "1", "--chords", "0,1.2",
                                    "--grid", "r0=0:0.5:2", "--grid", "theta0=0:1:2",
                                    "--format", "csv"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "r0,theta0,residual"
        assert len(lines) == 5

    def test_missing_grid_is_usage_error(self, capsys):
        assert run_cli(["sweep", "--a", "1", "--chords", "0,1"]) == 1

    def test_malformed_grid_is_usage_error(self, capsys):
        assert run_cli(["sweep", "--a", "1", "--chords", "0,1",
                        "--grid", "r0=0-1-5"]) == 1

    def test_unknown_axis_is_domain_error(self, capsys):
        assert run_cli(["sweep", "--a", "1", "--chords", "0,1",
                        "--grid", "radius=0:1:5"]) == 2


class TestRender:
    def test_svg_on_stdout(self, capsys):
        code, out, _ = run(capsys, ["render", "--a", "1", "--r0", "0", "--theta0", "0",
                                    "--chords", "0.4"])
        assert code == 0
        assert out.startswith("<svg ")
        assert out.endswith("</svg>\n")


class TestConfigFile:
    def test_config_file_drives_run(self, capsys, tmp_path):
        path = tmp_path / "run.json"
        path.write_text('{"a": 1, "r0": 0.6, "theta0": 0.3, "chords": '
                        f"[{PIZZA}]}}", encoding="utf-8")
        code, out, _ = run(capsys, ["residual", "--config", str(path)])
        assert code == 0
        assert abs(json.loads(out)["residual"]) <= 1e-10

    def test_flags_override_config(self, capsys, tmp_path):
        path = tmp_path / "run.json"
        path.write_text('{"a": 1, "r0": 0.6, "theta0": 0.3, "chords": [0, 1.2]}',
                        encoding="utf-8")
        code, out, _ = run(capsys, ["areas", "--config", str(path), "--r0", "0"])
        assert code == 0
        assert json.loads(out)["r0"] == 0

    def test_missing_file_is_usage_error(self, capsys):
        assert run_cli(["areas", "--config", "/nonexistent.json"]) == 1

    def test_malformed_config_is_usage_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")
        assert run_cli(["areas", "--config", str(path)]) == 1


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["areas", "--a", "1.3", "--r0", "0.5", "--theta0", "0.7",
             "--chords", "0.2,0.9,1.6"],
            ["areas", "--a", "1.3", "--r0", "0.5", "--theta0", "0.7",
             "--chords", "0.2,0.9,1.6", "--format", "csv"],
            ["areas", "--a", "1", "--r0", "0.4", "--theta0", "0", "--chords", "0,1",
             "--mode", "montecarlo", "--samples", "50000", "--seed", "9"],
            ["render", "--a", "1.3", "--r0", "0.5", "--theta0", "0.7",
             "--chords", "0.2,0.9,1.6"],
        ],
    )
    def test_repeated_runs_byte_identical(self, capsys, argv):
        code1, out1, _ = run(capsys, argv)
        code2, out2, _ = run(capsys, argv)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_out_file_matches_stdout(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        argv = ["areas", "--a", "1", "--r0", "0.2", "--theta0", "0", "--chords", "0,1"]
        code, out, _ = run(capsys, argv)
        code2 = run_cli([*argv, "--out", str(path)])
        assert code == code2 == 0
        assert path.read_text(encoding="utf-8") == out

    def test_subprocess_runs_byte_identical(self, tmp_path):
        argv = [sys.executable, "-m", "sectorbalance", "areas", "--a", "1",
                "--r0", "0.5", "--theta0", "0.1", "--chords", "0,0.8",
                "--mode", "montecarlo", "--samples", "30000", "--seed", "3"]
        first = subprocess.run(argv, capture_output=True, check=True).stdout
        second = subprocess.run(argv, capture_output=True, check=True).stdout
        assert first == second


class TestVerifySubcommand:
    def test_scaled_down_battery_passes(self, capsys):
        code, out, err = run(capsys, ["verify", "--trials", "40", "--samples", "20000"])
        assert code == 0
        doc = json.loads(out)
        assert doc["passed"] is True
        assert len(doc["checks"]) == 9
        assert err.count("PASS") == 9

    def test_csv_listing(self, capsys):
        code, out, _ = run(capsys, ["verify", "--trials", "20", "--samples", "10000",
                                    "--format", "csv"])
        assert code == 0
        assert out.splitlines()[0] == "name,passed,detail"
