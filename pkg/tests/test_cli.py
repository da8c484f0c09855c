import json
import subprocess
import sys

import pytest

from donorpair.cli import main
from donorpair.exchange import exchange_table


def run_cli(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


class TestJtable:
    def test_reference_row(self, capsys):
        code, out, err = run_cli(["jtable", "40", "51"], capsys)
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "N,a_nm,J_MHz"
        assert len(lines) == 13
        row47 = dict(zip(lines[0].split(","), lines[8].split(",")))
        assert float(row47["J_MHz"]) == pytest.approx(1.97, rel=0.01)
        assert out.endswith("\n")
        assert "config" in err

    def test_single_row(self, capsys):
        code, out, _ = run_cli(["jtable", "47", "47"], capsys)
        assert code == 0
        assert len(out.strip().split("\n")) == 2

    def test_csv_roundtrip_is_exact(self, capsys):
        code, out, _ = run_cli(["jtable", "40", "51"], capsys)
        rows = [line.split(",") for line in out.strip().split("\n")[1:]]
        expected = exchange_table(40, 51)
        for row, (n, a_nm, j_mhz) in zip(rows, expected):
            assert int(row[0]) == n
            assert float(row[1]) == a_nm      # repr round-trip, bit exact
            assert float(row[2]) == j_mhz

    def test_invalid_range_is_validity_error(self, capsys):
        code, _, err = run_cli(["jtable", "50", "40"], capsys)
        assert code == 3
        assert "error" in err

    def test_usage_error_exit_code(self):
        proc = subprocess.run(
            [sys.executable, "-m", "donorpair.cli", "jtable", "40"],
            capture_output=True, text=True)
        assert proc.returncode == 2


class TestSpectrum:
    def test_nominal_report(self, capsys):
        code, out, _ = run_cli(["spectrum", "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        rows = {r["level"]: r for r in doc["rows"]}
        assert len(rows) == 16
        # the fully polarized level is decoupled: exact equals leading order
        assert rows[15]["exact_MHz"] == pytest.approx(rows[15]["zeroth_MHz"], abs=1e-9)
        assert abs(rows[15]["exact_MHz"] - (-92366.3127)) < 0.01
        assert doc["config"]["max_pert_dev_Hz"] < 100.0
        assert doc["config"]["pert_dev_flagged"] is False

    def test_displaced_chain_j_column(self, capsys):
        code, out, _ = run_cli(["spectrum", "--m1", "-1", "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["config"]["J_MHz"] == pytest.approx(1.306, rel=0.01)

    def test_deviation_column_small(self, capsys):
        code, out, _ = run_cli(["spectrum", "--format", "json"], capsys)
        doc = json.loads(out)
        assert all(abs(r["dev_Hz"]) <= 100.0 for r in doc["rows"])


class TestDesign:
    def test_gate_a(self, capsys):
        code, out, _ = run_cli(["design", "--gate", "a", "--K", "1",
                                "--format", "json"], capsys)
        assert code == 0
        row = json.loads(out)["rows"][0]
        assert row["Omega_MHz"] == pytest.approx(67.82, abs=0.02)
        assert row["Delta_MHz"] == pytest.approx(-117.47, abs=0.02)
        assert row["nu_MHz"] == pytest.approx(-92.35e3, abs=10.0)
        assert row["tau_us"] == pytest.approx(7.37e-3, rel=1e-3)

    def test_gate_b_reports_leading_order(self, capsys):
        code, out, _ = run_cli(["design", "--gate", "b", "--format", "json"], capsys)
        row = json.loads(out)["rows"][0]
        assert row["nu_leading_MHz"] == pytest.approx(115.655, abs=2e-3)
        assert row["K"] == 2000

    def test_displaced_design_reports_detuning_shift(self, capsys):
        code, out, _ = run_cli(["design", "--gate", "b", "--m1", "-1",
                                "--format", "json"], capsys)
        row = json.loads(out)["rows"][0]
        assert row["detuning_shift_kHz"] == pytest.approx(-1.72, abs=0.05)


class TestSweep:
    def test_cardinality(self, capsys):
        code, out, _ = run_cli(["sweep", "--gate", "a", "--K", "1,2,3,4"], capsys)
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "m,K,P"
        assert len(lines) == 1 + 9 * 4

    def test_neighbor_sweep(self, capsys):
        code, out, _ = run_cli(["sweep", "--gate", "b", "--K", "2000",
                                "--displaced-atom", "2"], capsys)
        assert code == 0
        assert len(out.strip().split("\n")) == 10


class TestEnsemble:
    ARGS = ["ensemble", "--chains", "40", "--realizations", "2", "--law", "A",
            "--Kn", "2000", "--seed", "7"]

    def test_deterministic_bytes(self, capsys):
        _, out1, _ = run_cli(self.ARGS + ["--threads", "1"], capsys)
        _, out2, _ = run_cli(self.ARGS + ["--threads", "2"], capsys)
        assert out1 == out2
        header, row = out1.strip().split("\n")
        assert header == "K_n,law,mean_P,stderr"
        assert row.startswith("2000,A,")


class TestEeCnot:
    def test_table(self, capsys):
        code, out, _ = run_cli(["ee-cnot", "--K", "1"], capsys)
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 10
        values = {int(l.split(",")[0]): float(l.split(",")[1]) for l in lines[1:]}
        assert values[0] < 1e-3
        assert values[-1] > 0.5


class TestConfigFile:
    def test_precedence(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"m1": -1, "format": "json"}))
        code, out, _ = run_cli(["--config", str(cfg), "spectrum"], capsys)
        doc = json.loads(out)
        assert doc["config"]["geometry"]["m1"] == -1
        # flags beat the file
        code, out, _ = run_cli(["--config", str(cfg), "spectrum", "--m1", "2"], capsys)
        assert json.loads(out)["config"]["geometry"]["m1"] == 2

    def test_unknown_keys_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"bogus": 1}))
        code, _, err = run_cli(["--config", str(cfg), "spectrum"], capsys)
        assert code == 3
        assert "bogus" in err

    def test_out_file(self, tmp_path, capsys):
        out_path = tmp_path / "table.csv"
        code, _, err = run_cli(["jtable", "47", "48", "--out", str(out_path)], capsys)
        assert code == 0
        assert out_path.read_text().startswith("N,a_nm,J_MHz")

    def test_outdir_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("DONORPAIR_OUTDIR", str(tmp_path))
        code, _, _ = run_cli(["jtable", "47", "48"], capsys)
        assert code == 0
        assert (tmp_path / "jtable.csv").exists()
