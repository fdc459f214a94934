import json
import subprocess
import sys

import numpy as np
import pytest

from wiretap_exponents import cli
from wiretap_exponents.exponent_engine import ExponentCurve

CONFIG = {
    "bob": [[0.9, 0.1], [0.1, 0.9]],
    "eve": [[0.7, 0.3], [0.3, 0.7]],
    "costs": [1.0, 2.0],
    "gamma": 1.4,
    "q": [0.6, 0.4],
}


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(CONFIG))
    return str(path)


def run_cli(args):
    return subprocess.run(
        [sys.executable, "-m", "wiretap_exponents.cli", *args],
        capture_output=True,
        text=True,
    )


class TestCsvEmission:
    def test_roundtrip_is_bitwise(self, tmp_path):
        rng = np.random.default_rng(0)
        rates = np.cumsum(rng.random(20)) + 0.01
        exps = rng.random(20)
        curve = ExponentCurve(rates, exps, {"argmax_rho": list(rng.random(20))})
        path = tmp_path / "curve.csv"
        path.write_text(cli.curve_to_csv(curve))
        back_rates, back_exps = cli.read_curve_csv(path)
        assert np.array_equal(back_rates, rates)
        assert np.array_equal(back_exps, exps)

    def test_missing_diagnostics_emitted_empty(self):
        curve = ExponentCurve([0.1, 0.2], [0.5, 0.4])
        text = cli.curve_to_csv(curve)
        line = text.strip().splitlines()[-1]
        assert line.endswith(",,,")


class TestCommands:
    def test_capacity_json(self, config_path, capsys):
        code = cli.main(["capacity", "--config", config_path])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["more_capable"] is True
        assert payload["value_nats"] > 0.2

    def test_exponents_to_files(self, config_path, tmp_path):
        out = tmp_path / "curves.csv"
        code = cli.main(
            ["exponents", "--config", config_path, "--points", "5", "--out", str(out)]
        )
        assert code == 0
        rel = tmp_path / "curves_reliability.csv"
        sec = tmp_path / "curves_secrecy.csv"
        assert rel.exists() and sec.exists()
        rates, exps = cli.read_curve_csv(rel)
        assert rates.size == 5
        assert np.all(np.diff(exps) <= 1e-12)

    def test_deterministic_output(self, config_path, capsys):
        cli.main(["exponents", "--config", config_path, "--points", "4", "--format", "json"])
        first = capsys.readouterr().out
        cli.main(["exponents", "--config", config_path, "--points", "4", "--format", "json"])
        second = capsys.readouterr().out
        assert first == second

    def test_poisson_capacity(self, capsys):
        code = cli.main(
            ["poisson", "capacity", "--Ay", "12", "--Az", "5", "--ly", "0.5", "--lz", "1.5", "--gamma", "0.5"]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["residual"] < 1e-12

    def test_gaussian_capacity(self, capsys):
        code = cli.main(
            ["gaussian", "capacity", "--Ay", "1", "--Az", "0.5", "--sy", "0.5", "--sz", "0.8", "--gamma", "0.5"]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["value_nats"] == pytest.approx(0.46010231559764575, abs=1e-12)

    def test_gaussian_curve_csv(self, capsys):
        code = cli.main(
            [
                "gaussian", "reliability", "--variant", "gallager",
                "--Ay", "1", "--Az", "0.5", "--sy", "0.5", "--sz", "0.8", "--gamma", "0.5",
                "--points", "7",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "rate,exponent" in out

    def test_ensemble_report(self, capsys):
        code = cli.main(
            ["ensemble", "--n", "3", "--M", "2", "--L", "2", "--eps-y", "0.1", "--eps-z", "0.3"]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["exact_error"] <= payload["bound_error"]
        assert payload["exact_divergence"] <= payload["bound_psi"]

    def test_figures_single(self, tmp_path, capsys):
        code = cli.main(
            ["figures", "--which", "10", "--out-dir", str(tmp_path), "--points", "9"]
        )
        assert code == 0
        manifest = json.loads(capsys.readouterr().out)
        assert manifest["figures"]["10"]["ok"] is True
        for fname in manifest["figures"]["10"]["files"]:
            assert (tmp_path / fname).exists()

    def test_tradeoff_exchange(self, config_path, capsys):
        code = cli.main(
            [
                "tradeoff", "--config", config_path, "--mechanism", "rate_exchange",
                "--sweep", "0.05", "--points", "5",
            ]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert all(s["ok"] for s in payload["scenarios"])


class TestExitCodes:
    def test_usage_error_is_one(self):
        proc = run_cli(["not-a-command"])
        assert proc.returncode == 1

    def test_precondition_error_is_two(self):
        proc = run_cli(
            ["poisson", "capacity", "--Ay", "1", "--Az", "5", "--ly", "0.5", "--lz", "1.5", "--gamma", "0.5"]
        )
        assert proc.returncode == 2
        assert "precondition violation" in proc.stderr

    def test_unknown_figure_id_is_two(self, tmp_path):
        proc = run_cli(["figures", "--which", "99", "--out-dir", str(tmp_path)])
        assert proc.returncode == 2
        assert "valid ids" in proc.stderr

    def test_bad_config_key_is_two(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({**CONFIG, "zzz": 1}))
        proc = run_cli(["capacity", "--config", str(path)])
        assert proc.returncode == 2
