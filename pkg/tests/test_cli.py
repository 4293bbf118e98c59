"""Tests for the command-line interface."""

import json
import math
import subprocess
import sys

import pytest

from parabose.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


class TestCgc:
    """Coefficient tables."""

    def test_single_entry(self, capsys):
        code, rep = report(capsys, "cgc", "--mu1", "1/2", "--mu2", "1/2", "--emax", "0")
        assert code == 0
        assert rep["results"]["levels"][0]["rows"][0]["coefficients"] == [1.0]
        assert set(rep) == {"command", "params", "results", "erratum_findings", "status"}

    def test_level_one(self, capsys):
        code, rep = report(capsys, "cgc", "--mu1", "1/2", "--mu2", "1/2", "--emax", "1")
        rows = rep["results"]["levels"][1]["rows"]
        values = [abs(v) for row in rows for v in row["coefficients"]]
        assert values == pytest.approx([1 / math.sqrt(2)] * 4)

    def test_rationals_serialized(self, capsys):
        _, rep = report(capsys, "cgc", "--mu1", "0.75", "--mu2", "2", "--emax", "0")
        assert rep["params"]["mu1"] == "3/4"
        assert rep["params"]["mu2"] == "2/1"

    def test_closed_matches_oracle(self, capsys):
        args = ["cgc", "--mu1", "1/4", "--mu2", "3/2", "--eps2", "-1", "--emax", "6"]
        _, oracle = report(capsys, *args)
        _, closed = report(capsys, *args, "--method", "closed")
        for a, b in zip(oracle["results"]["levels"], closed["results"]["levels"]):
            for ra, rb in zip(a["rows"], b["rows"]):
                assert ra["coefficients"] == pytest.approx(rb["coefficients"], abs=1e-12)

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "cgc", "--emax", "1", "--format", "csv")
        lines = out.strip().splitlines()
        assert lines[0] == "E,n12,j,n1,n2,value"
        assert len(lines) == 1 + 1 + 4

    def test_round_trip(self, capsys, tmp_path):
        path = tmp_path / "table.json"
        main(["cgc", "--mu1", "1/4", "--mu2", "3/4", "--eps1", "-1", "--emax", "4",
              "--output", str(path)])
        first = json.loads(path.read_text())
        p = first["params"]
        main(["cgc", "--mu1", p["mu1"], "--mu2", p["mu2"], "--eps1", str(p["eps1"]),
              "--eps2", str(p["eps2"]), "--emax", str(p["emax"]), "--method", p["method"],
              "--output", str(path)])
        assert json.loads(path.read_text()) == first
        assert capsys.readouterr().out == ""

    def test_domain_errors(self, capsys):
        assert run(capsys, "cgc", "--emax", "65")[0] == 3
        assert run(capsys, "cgc", "--mu1=-1/2")[0] == 3

    def test_parse_errors(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["cgc", "--mu1", "half"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main(["cgc", "--eps1", "0"])
        assert exc.value.code == 2


class TestVerify:
    """Verification sweeps."""

    def test_orthogonality_exact(self, capsys):
        code, rep = report(capsys, "verify", "--suite", "orthogonality", "--max-level", "8")
        assert code == 0 and rep["status"] == "pass"
        assert all(c["max_residual"] == 0 for c in rep["results"]["checks"])

    def test_genfun_level_ten(self, capsys):
        code, rep = report(capsys, "verify", "--suite", "genfun", "--max-level", "10")
        assert code == 0 and rep["status"] == "pass"
        assert all(c["max_residual"] <= 1e-10 for c in rep["results"]["checks"])

    def test_residual_lines_on_stderr(self, capsys):
        code, out, err = run(capsys, "verify", "--suite", "su11", "--max-level", "3")
        assert code == 0
        assert "[PASS] su11" in err
        assert json.loads(out)["erratum_findings"]

    def test_small_full_sweep(self, capsys):
        code, rep = report(capsys, "verify", "--suite", "all", "--mu-grid", "1/2,3/2",
                           "--max-level", "4")
        assert code == 0 and rep["status"] == "pass"
        locations = [f["location"] for f in rep["erratum_findings"]]
        assert any("j=1, mu1=1/2, mu2=1/2" in loc for loc in locations)

    def test_threads_give_same_report(self, capsys, monkeypatch):
        args = ["verify", "--suite", "unitarity", "--mu-grid", "1/4,1/2", "--max-level", "3"]
        _, serial = report(capsys, *args)
        monkeypatch.setenv("PARABOSE_THREADS", "3")
        _, threaded = report(capsys, *args)
        assert serial == threaded

    def test_bad_grid(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--mu-grid", "1/2,x"])
        assert exc.value.code == 2
        assert run(capsys, "verify", "--mu-grid=-1/2")[0] == 3


class TestGenfun:
    """Generating-function output."""

    def test_ground(self, capsys):
        _, rep = report(capsys, "genfun", "--n12", "0", "--j", "0")
        assert rep["results"]["coefficients"] == [1.0]

    def test_level_one(self, capsys):
        _, rep = report(capsys, "genfun", "--n12", "0", "--j", "1", "--mu1", "1/2",
                        "--mu2", "1/2")
        assert [abs(c) for c in rep["results"]["coefficients"]] == pytest.approx([0.5, 0.5])

    def test_closed_form(self, capsys):
        _, rep = report(capsys, "genfun", "--n12", "3", "--j", "2", "--emit", "closed-form")
        res = rep["results"]
        assert all("/" in v for v in res["first_2F1"])
        assert res["K"] == 1

    def test_odd_prefactor_finding(self, capsys):
        code, rep = report(capsys, "genfun", "--n12", "3", "--j", "1")
        assert code == 0 and rep["status"] == "pass"
        assert rep["erratum_findings"]


class TestWavefun:
    """Wavefunction output."""

    def test_psi1d(self, capsys):
        _, rep = report(capsys, "wavefun", "--kind", "psi1d", "--n", "2", "--mu", "1/2")
        assert rep["results"]["monic_coefficients"] == ["-1/1", "0/1", "1/1"]

    def test_coupled(self, capsys):
        _, rep = report(capsys, "wavefun", "--kind", "coupled", "--n12", "1", "--j", "1")
        powers = {(t["x_power"], t["y_power"]) for t in rep["results"]["terms"]}
        assert all(i + k <= 2 for i, k in powers)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "parabose", "cgc", "--emax", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
    proc = subprocess.run([sys.executable, "-m", "parabose", "cgc", "--mu1", "a/b"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
