"""End-to-end CLI checks: wire formats, exit codes, reproducibility."""

import json
import math

import pytest

from diskalg.cli import main


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


Z_SERIES = '{"coeffs": [[0, 0], [1, 0]]}'
QUAD_PLUS_ONE = '{"coeffs": [[1, 0], [0, 0], [1, 0]]}'


class TestSeminormCommand:
    def test_coeff_family_of_z(self, capsys):
        code, out, _ = run_cli(capsys, "seminorm", "--series", Z_SERIES,
                               "--p", "2", "--c", "1", "--family", "coeff")
        assert code == 0
        payload = json.loads(out)
        assert payload["value"] == pytest.approx(math.exp(-1), rel=1e-12)

    def test_integral_family_reports_residual(self, capsys):
        code, out, _ = run_cli(capsys, "seminorm",
                               "--series", '{"coeffs": [[1, 0]]}',
                               "--p", "2", "--c", "1", "--family", "integral")
        assert code == 0
        payload = json.loads(out)
        assert payload["value"] == pytest.approx(0.21938393439552027, abs=1e-9)
        assert payload["residual"] <= 1e-9
        assert payload["nodes"] > 0

    def test_usage_error_on_bad_p(self, capsys):
        code, out, err = run_cli(capsys, "seminorm", "--series", Z_SERIES,
                                 "--p", "0.5", "--c", "1", "--family", "coeff")
        assert code == 2
        assert json.loads(err)["error"]["type"] == "usage"

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "series.json"
        path.write_text(Z_SERIES)
        code, out, _ = run_cli(capsys, "seminorm", "--series", str(path),
                               "--p", "2", "--c", "1", "--family", "coeff")
        assert code == 0


class TestIdealCommands:
    def test_ideal_check_example(self, capsys):
        code, out, _ = run_cli(capsys, "ideal-check", "--series", QUAD_PLUS_ONE,
                               "--lambda", "0.5,0", "--tol", "1e-12")
        assert code == 0
        payload = json.loads(out)
        assert payload == {"contains": False, "value": [1.25, 0.0],
                           "tol": 1e-12}

    def test_factor_emits_series_json(self, capsys):
        code, out, _ = run_cli(capsys, "factor", "--series", QUAD_PLUS_ONE,
                               "--lambda", "0.5,0")
        assert code == 0
        payload = json.loads(out)
        assert payload == {"coeffs": [[0.5, 0.0], [1.0, 0.0]]}

    def test_quotient_norm_regimes(self, capsys):
        code, out, _ = run_cli(capsys, "quotient-norm", "--series", QUAD_PLUS_ONE,
                               "--lambda", "0.5,0", "--r", "0.75")
        payload = json.loads(out)
        assert code == 0
        assert payload["lower"] == pytest.approx(1.25)
        assert payload["upper"] == pytest.approx(1.25)
        code, out, _ = run_cli(capsys, "quotient-norm", "--series", QUAD_PLUS_ONE,
                               "--lambda", "0.5,0", "--r", "0.25",
                               "--kbudget", "64")
        payload = json.loads(out)
        assert payload["lower"] == 0.0
        assert payload["upper"] <= 1.25 * 0.5**64 * (1 + 1e-12)

    def test_lambda_outside_disk_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "ideal-check", "--series", Z_SERIES,
                               "--lambda", "1.5,0")
        assert code == 2


class TestMetricCommand:
    def test_privalov_constant_difference(self, capsys):
        f = '{"coeffs": [[2, 0], [1, 0]]}'
        g = '{"coeffs": [[1, 0], [1, 0]]}'
        code, out, _ = run_cli(capsys, "metric", "--series", f, "--series2", g,
                               "--p", "3", "--kind", "privalov")
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(math.log(2), abs=1e-10)

    def test_envelope_reports_tail(self, capsys):
        f = '{"coeffs": [[1, 0]]}'
        g = '{"coeffs": [[0, 0]]}'
        code, out, _ = run_cli(capsys, "metric", "--series", f, "--series2", g,
                               "--p", "2", "--kind", "envelope")
        payload = json.loads(out)
        assert code == 0
        assert 0 < payload["value"] < 1
        assert payload["tail_bound"] <= 2.0**-40


class TestClassifyCommand:
    def test_geometric_member(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--rule", "geometric",
                               "--params", "rho=1.0", "--p", "2",
                               "--nmax", "4096")
        assert code == 0
        assert json.loads(out)["verdict"] == "member"

    def test_stretched_non_member_with_default_beta(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--rule", "stretched-exp",
                               "--params", "eps=0.1", "--p", "2",
                               "--nmax", "4096")
        assert json.loads(out)["verdict"] == "non_member"

    def test_power_table_via_series(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--rule", "power-table",
                               "--series", json.dumps(
                                   {"coeffs": [[1, 0]] * 600}),
                               "--p", "2", "--nmax", "512")
        assert code == 0
        assert json.loads(out)["verdict"] == "member"

    def test_bad_params_rejected(self, capsys):
        code, _, err = run_cli(capsys, "classify", "--rule", "stretched-exp",
                               "--params", "beta", "--p", "2")
        assert code == 2


class TestVerifyCommand:
    def test_t3_first_small(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--theorem", "t3-first",
                               "--seed", "7", "--corpus-size", "20",
                               "--p", "2", "--c", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["failed"] == 0
        assert payload["checked"] == 20

    def test_byte_identical_reports(self, capsys):
        args = ("verify", "--theorem", "t3-first", "--seed", "11",
                "--corpus-size", "15", "--p", "1.5,2", "--c", "0.5,1")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_functional_requires_lambda(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--theorem", "functional",
                               "--seed", "1", "--corpus-size", "5")
        assert code == 2
        assert json.loads(err)["error"]["type"] == "usage"

    def test_hurwitz_runs(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--theorem", "hurwitz",
                               "--lambda", "0.2,0.1", "--r", "0.7",
                               "--seed", "3")
        assert code == 0
        assert json.loads(out)["failed"] == 0

    def test_csv_and_out_files(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        csv_path = tmp_path / "margins.csv"
        code, out, _ = run_cli(capsys, "verify", "--theorem", "t3-first",
                               "--seed", "2", "--corpus-size", "8",
                               "--p", "2", "--c", "1",
                               "--out", str(out_path), "--csv", str(csv_path))
        assert code == 0
        assert out == ""
        report = json.loads(out_path.read_text())
        assert report["checked"] == 8
        assert csv_path.read_text().startswith("p,c,entry,degree,margin")


class TestGenCorpus:
    def test_emits_entries(self, capsys):
        code, out, _ = run_cli(capsys, "gen-corpus", "--seed", "3",
                               "--corpus-size", "4")
        assert code == 0
        payload = json.loads(out)
        assert len(payload["entries"]) == 4
        assert payload["seed"] == 3

    def test_deterministic(self, capsys):
        _, out1, _ = run_cli(capsys, "gen-corpus", "--seed", "5",
                             "--corpus-size", "6")
        _, out2, _ = run_cli(capsys, "gen-corpus", "--seed", "5",
                             "--corpus-size", "6")
        assert out1 == out2
