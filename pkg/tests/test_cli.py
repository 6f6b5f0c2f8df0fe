import csv
import io
import json
import math

import pytest

from casdisp.cli import main
from casdisp.lifshitz import QuadratureError


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCompute:
    def test_analytic_json_reference_values(self, capsys):
        code, out, err = run_cli(
            capsys, "compute", "--L", "1", "--n0", "1", "--method", "analytic",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        (result,) = payload["results"]
        assert result["total"] == pytest.approx(-0.013707784, abs=1e-9)
        assert result["force"] == pytest.approx(-0.041123352, abs=1e-9)
        assert err == ""

    def test_json_contains_every_breakdown_field(self, capsys):
        code, out, err = run_cli(
            capsys, "compute", "--L", "0.1", "--n0", "1", "--n1", "0.01",
            "--method", "both", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        expected_keys = {
            "method", "e0", "delta_e", "e_surface", "total", "force",
            "error_estimate", "force_error_estimate", "beyond_validity",
        }
        for result in payload["results"]:
            assert set(result) == expected_keys
        assert payload["scenario"]["model"]["type"] == "cauchy"
        # warning path: diagnostics on stderr, data stream untouched
        assert "warning" in err
        assert "warning" not in out

    def test_methods_agree(self, capsys):
        code, out, _ = run_cli(
            capsys, "compute", "--L", "1", "--n0", "1", "--n1", "0",
            "--method", "both", "--format", "json",
        )
        assert code == 0
        analytic, lifshitz = json.loads(out)["results"]
        assert analytic["method"] == "analytic"
        assert lifshitz["method"] == "lifshitz"
        assert lifshitz["total"] == pytest.approx(analytic["total"], rel=1e-8)

    def test_validity_warning_exit_zero(self, capsys):
        code, out, err = run_cli(
            capsys, "compute", "--L", "0.1", "--n0", "1", "--n1", "0.01",
            "--method", "analytic", "--format", "csv",
        )
        assert code == 0
        assert "warning" in err
        assert out.splitlines()[1].endswith(",1")

    def test_si_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "compute", "--L", "1", "--n0", "1", "--method", "analytic",
            "--format", "json", "--si", "--length-unit", "1e-6",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["units"]["mode"] == "si"
        assert payload["results"][0]["force"] == pytest.approx(-1.3001e-3, rel=1e-4)

    def test_si_without_length_unit_is_argument_error(self, capsys):
        code, _, err = run_cli(
            capsys, "compute", "--L", "1", "--n0", "1", "--method", "analytic",
            "--format", "json", "--si",
        )
        assert code == 2
        assert "error" in err

    def test_surface_term(self, capsys):
        code, out, _ = run_cli(
            capsys, "compute", "--L", "1", "--n0", "1", "--cs", "0.01",
            "--method", "analytic", "--format", "json",
        )
        assert code == 0
        result = json.loads(out)["results"][0]
        assert result["e_surface"] == pytest.approx(0.01)
        assert result["force"] == pytest.approx(-math.pi**2 / 240.0 + 0.04, rel=1e-12)

    def test_missing_required_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["compute", "--n0", "1", "--method", "analytic", "--format", "json"])
        assert excinfo.value.code == 2
        capsys.readouterr()

    def test_tabulated_analytic_is_argument_error(self, capsys, tmp_path):
        table = tmp_path / "n.csv"
        table.write_text("0.0,1.5\n1.0,1.4\n")
        code, _, err = run_cli(
            capsys, "compute", "--L", "1", "--ns-table", str(table),
            "--method", "analytic", "--format", "csv",
        )
        assert code == 2
        assert "error" in err

    def test_tabulated_lifshitz(self, capsys, tmp_path):
        table = tmp_path / "n.csv"
        table.write_text("xi,n\n0.0,1.5\n10.0,1.5\n")
        code, out, _ = run_cli(
            capsys, "compute", "--L", "1", "--ns-table", str(table),
            "--method", "lifshitz", "--format", "json",
        )
        assert code == 0
        result = json.loads(out)["results"][0]
        assert result["total"] == pytest.approx(-math.pi**2 / (720.0 * 1.5), rel=1e-8)

    def test_missing_table_file_exits_4(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "compute", "--L", "1", "--ns-table", str(tmp_path / "no.csv"),
            "--method", "lifshitz", "--format", "json",
        )
        assert code == 4
        assert "error" in err

    def test_unwritable_output_exits_4(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "compute", "--L", "1", "--n0", "1", "--method", "analytic",
            "--format", "csv", "--out", str(tmp_path / "missing" / "x.csv"),
        )
        assert code == 4
        assert "error" in err

    def test_quadrature_failure_exits_3(self, capsys, monkeypatch):
        def explode(*args, **kwargs):
            raise QuadratureError("subdivision limit reached")

        monkeypatch.setattr("casdisp.cli.total_energy_lifshitz", explode)
        code, _, err = run_cli(
            capsys, "compute", "--L", "1", "--n0", "1", "--method", "lifshitz",
            "--format", "csv",
        )
        assert code == 3
        assert "subdivision limit" in err

    def test_output_file(self, capsys, tmp_path):
        out_path = tmp_path / "result.csv"
        code, out, _ = run_cli(
            capsys, "compute", "--L", "1", "--n0", "1", "--method", "analytic",
            "--format", "csv", "--out", str(out_path),
        )
        assert code == 0
        assert out == ""
        assert out_path.read_text().startswith("L,e0,delta_e")


class TestConfig:
    def test_config_supplies_flags(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# fixture\nL = 1\nn0 = 1\nmethod = analytic\nformat = csv\n")
        code, out, _ = run_cli(capsys, "compute", "--config", str(cfg))
        assert code == 0
        assert out.startswith("L,")

    def test_flags_override_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("L = 1\nn0 = 1\nmethod = analytic\nformat = csv\n")
        _, base_out, _ = run_cli(capsys, "compute", "--config", str(cfg))
        _, override_out, _ = run_cli(capsys, "compute", "--config", str(cfg), "--L", "2")
        assert base_out != override_out
        assert override_out.splitlines()[1].startswith("2.0000000000000000e+00")

    def test_unknown_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("L = 1\nn0 = 1\nmethod = analytic\nformat = csv\nbogus = 1\n")
        code, _, err = run_cli(capsys, "compute", "--config", str(cfg))
        assert code == 2
        assert "bogus" in err


class TestSweep:
    SWEEP_ARGS = (
        "sweep", "--variable", "L", "--min", "0.5", "--max", "5", "--points", "6",
        "--scale", "log", "--n0", "1", "--method", "both", "--format", "csv",
    )

    def test_byte_identical_reruns(self, capsys):
        code1, out1, _ = run_cli(capsys, *self.SWEEP_ARGS)
        code2, out2, _ = run_cli(capsys, *self.SWEEP_ARGS)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_csv_round_trip(self, capsys):
        _, out, _ = run_cli(capsys, *self.SWEEP_ARGS)
        rows = list(csv.reader(io.StringIO(out)))
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerows(rows)
        assert buffer.getvalue() == out

    def test_rows_per_point_per_method_in_grid_order(self, capsys):
        _, out, _ = run_cli(capsys, *self.SWEEP_ARGS)
        rows = list(csv.reader(io.StringIO(out)))[1:]
        assert len(rows) == 12
        assert [row[6] for row in rows[:2]] == ["analytic", "lifshitz"]
        grid = [float(row[0]) for row in rows[::2]]
        assert grid == sorted(grid)

    def test_scaling_column_constant(self, capsys):
        # total * L^3 is flat in L when n1 = 0
        _, out, _ = run_cli(
            capsys, "sweep", "--variable", "L", "--min", "0.5", "--max", "5",
            "--points", "10", "--scale", "log", "--n0", "1.5",
            "--method", "lifshitz", "--format", "csv",
        )
        rows = list(csv.reader(io.StringIO(out)))[1:]
        values = [float(r[4]) * float(r[0]) ** 3 for r in rows]
        expected = -math.pi**2 / (720.0 * 1.5)
        assert all(abs(v / expected - 1.0) < 1e-8 for v in values)

    def test_n1_sweep_linear_in_n1(self, capsys):
        _, out, _ = run_cli(
            capsys, "sweep", "--variable", "n1", "--min", "0", "--max", "1e-3",
            "--points", "5", "--L", "1", "--n0", "1", "--method", "analytic",
            "--format", "csv",
        )
        rows = list(csv.reader(io.StringIO(out)))[1:]
        slope = -math.pi**4 / 2520.0
        for row in rows:
            n1, delta = float(row[0]), float(row[2])
            assert delta == pytest.approx(slope * n1, abs=1e-12)

    def test_too_few_points_exits_2(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main([
                "sweep", "--variable", "L", "--min", "1", "--max", "2",
                "--points", "1", "--n0", "1", "--method", "analytic",
                "--format", "csv",
            ])
        assert excinfo.value.code == 2
        capsys.readouterr()

    def test_json_rows(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--variable", "L", "--min", "1", "--max", "2",
            "--points", "2", "--n0", "1", "--method", "analytic",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["sweep"]["points"] == 2
        assert len(payload["rows"]) == 2
        assert payload["rows"][0]["L"] == 1.0


class TestValidate:
    def test_default_passes(self, capsys):
        code, out, _ = run_cli(capsys, "validate")
        assert code == 0
        lines = out.strip().splitlines()
        assert all(line.startswith("PASS") for line in lines[:-1])
        assert lines[-1].endswith("checks passed")

    def test_unreachable_tolerance_fails(self, capsys):
        code, out, _ = run_cli(capsys, "validate", "--tol", "1e-15")
        assert code == 1
        assert "FAIL" in out

    def test_loose_tolerance_passes(self, capsys):
        code, _, _ = run_cli(capsys, "validate", "--tol", "1e-3")
        assert code == 0
