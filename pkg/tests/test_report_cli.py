import io
import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from axialcurv.cli import EXIT_CHECK_FAILED, EXIT_CORANK, EXIT_SCHEMA, EXIT_UNSUPPORTED, main
from axialcurv.curvatures import axial_oracle
from axialcurv.errors import UnsupportedError
from axialcurv.jetcore import MongeJet, load_germ, parse_germ
from axialcurv.report import AnalysisReport, analyze, format_table
from conftest import FIXTURES

R2 = math.sqrt(2)


def write_germ(tmp_path, name, n, k, comps):
    doc = {"n": n, "k": k, "components": [[{"exp": e, "coeff": c} for e, c in comp] for comp in comps]}
    p = tmp_path / f"{name}.json"
    p.write_text(json.dumps(doc))
    return p


@pytest.fixture(autouse=True)
def _restore_tol_env(monkeypatch):
    monkeypatch.delenv("AXIALCURV_TOL", raising=False)
    yield


class TestReport:
    def test_worked_values(self):
        rep = analyze(load_germ(FIXTURES / "r4_z2_worked.json"))
        vals = {e["i"]: sorted(e["values"]) for e in rep.axial}
        assert vals[1] == pytest.approx([2 - R2, 2 + R2], abs=1e-9)
        assert vals[2] == pytest.approx([-7, -1], abs=1e-9)
        assert rep.orbit["tag"] == "Z2_0"
        assert all(c["status"] != "fail" for c in rep.checks)

    def test_round_trip(self):
        rep = analyze(load_germ(FIXTURES / "r5_z2_worked.json"))
        text = rep.to_json()
        again = AnalysisReport.from_json(text)
        assert again == AnalysisReport.from_dict(json.loads(text))
        assert again.to_json() == text

    def test_repeated_runs_identical(self):
        f = load_germ(FIXTURES / "r4_ellipse.json")
        assert analyze(f).to_json() == analyze(f).to_json()

    def test_zero_jet(self, tmp_path):
        p = write_germ(tmp_path, "zero", 3, 1, [[([1, 0, 0], 1)], [([0, 1, 0], 1)], [], []])
        rep = analyze(load_germ(p))
        assert rep.orbit["tag"] == "ZERO"
        assert np.all(np.array(rep.monge["a"]) == 0)
        assert all(v == 0 for e in rep.axial for v in e["values"])
        assert rep.umbilic["defined"] and rep.umbilic["value"] == 0

    def test_plane_orbit_warning(self):
        rep = analyze(load_germ(FIXTURES / "r4_xzyz_worked.json"))
        assert rep.orbit["tag"] == "XZ_YZ"
        assert not rep.principal_comparison[0]["coincide"]
        assert any("do not coincide" in w for w in rep.warnings)

    def test_unsupported(self):
        f = parse_germ({"n": 4, "k": 1, "components": [[{"exp": [1, 0, 0, 0], "coeff": 1}],
                                                        [{"exp": [0, 1, 0, 0], "coeff": 1}],
                                                        [{"exp": [0, 0, 1, 0], "coeff": 1}], [], []]})
        with pytest.raises(UnsupportedError, match="supported"):
            analyze(f)

    def test_table(self):
        text = format_table(analyze(load_germ(FIXTURES / "cuspidal_edge_r4.json")))
        assert "HalfLine" in text and "umbilic      4" in text


class TestAnalyzeCommand:
    def test_json(self, capsys):
        assert main(["analyze", str(FIXTURES / "r4_z2_worked.json")]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["orbit"]["tag"] == "Z2_0"

    def test_pretty(self, capsys):
        assert main(["analyze", "--pretty", str(FIXTURES / "r4_z2_worked.json")]) == 0
        assert capsys.readouterr().out.startswith("orbit        Z2_0")

    def test_out(self, tmp_path):
        out = tmp_path / "rep.json"
        assert main(["analyze", str(FIXTURES / "r4_strip.json"), "--out", str(out)]) == 0
        assert json.loads(out.read_text())["locus_shape"] == "Strip"

    def test_corrupted(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{ not json")
        assert main(["analyze", str(p)]) == EXIT_SCHEMA

    def test_missing_file(self, tmp_path):
        assert main(["analyze", str(tmp_path / "nope.json")]) == EXIT_SCHEMA

    def test_corank(self, tmp_path):
        p = write_germ(tmp_path, "imm", 2, 1, [[([1, 0], 1)], [([0, 1], 1)], [([2, 0], 1)]])
        assert main(["analyze", str(p)]) == EXIT_CORANK

    def test_unsupported(self, tmp_path, capsys):
        p = write_germ(tmp_path, "n4", 4, 1, [[([1, 0, 0, 0], 1)], [([0, 1, 0, 0], 1)],
                                              [([0, 0, 1, 0], 1)], [], []])
        assert main(["analyze", str(p)]) == EXIT_UNSUPPORTED
        assert "(n=3, k=2)" in capsys.readouterr().err

    def test_tol_sets_env(self):
        assert main(["--tol", "1e-6", "analyze", str(FIXTURES / "r4_zero.json"), "--out", os.devnull]) == 0
        assert float(os.environ["AXIALCURV_TOL"]) == 1e-6

    def test_subcommand_tol(self):
        assert main(["analyze", str(FIXTURES / "r4_zero.json"), "--tol", "1e-7", "--out", os.devnull]) == 0
        assert float(os.environ["AXIALCURV_TOL"]) == 1e-7


class TestLocusCommand:
    def _read(self, text):
        lines = text.strip().splitlines()
        return lines[0].split(","), np.loadtxt(io.StringIO("\n".join(lines[1:])), delimiter=",", ndmin=2)

    def test_grid_and_columns(self, capsys):
        assert main(["locus", str(FIXTURES / "r4_z2_worked.json"), "--grid", "8,2,5"]) == 0
        head, data = self._read(capsys.readouterr().out)
        assert head == ["theta", "gamma", "c1", "c2"]
        assert data.shape == (40, 4)
        assert data[:, 1].min() == -2 and data[:, 1].max() == 2

    def test_gamma_range(self, capsys):
        assert main(["locus", str(FIXTURES / "r4_z2_worked.json"), "--grid", "4,1,3", "--gamma-range", "0,5"]) == 0
        _, data = self._read(capsys.readouterr().out)
        assert sorted(set(data[:, 1])) == [0.0, 2.5, 5.0]

    def test_out_file(self, tmp_path):
        out = tmp_path / "pts.csv"
        assert main(["locus", str(FIXTURES / "surface_parabola_k1.json"), "--grid", "1,3,7", "--out", str(out)]) == 0
        head, data = self._read(out.read_text())
        assert head == ["y", "c1", "c2"] and data.shape == (7, 3)

    def test_zero_jet_repeats(self, capsys):
        assert main(["locus", str(FIXTURES / "r4_zero.json"), "--grid", "6,1,3"]) == 0
        _, data = self._read(capsys.readouterr().out)
        assert np.all(data[:, 2:] == data[0, 2:])

    def test_planar_region_is_one_sided(self, capsys):
        """The region lies above the minimal axial value along v1 and grows without bound."""
        path = FIXTURES / "r4_planar_region.json"
        assert main(["locus", str(path), "--grid", "90,10,81"]) == 0
        _, data = self._read(capsys.readouterr().out)
        rep = analyze(load_germ(path), checks=False)
        v1 = np.array(rep.frame["vectors"][0])
        proj = data[:, 2:] @ v1
        m_vals = rep.axial[0]["values"]
        assert proj.min() >= min(m_vals) - 1e-9
        assert proj.max() > 20 * max(1.0, abs(max(m_vals)))
        assert np.linalg.matrix_rank(data[:, 2:] - data[:, 2:].mean(0), tol=1e-6) == 2

    def test_parabola_sweep_unbounded_in_two_directions(self, capsys):
        path = str(FIXTURES / "r5_xzyzz2.json")
        spreads = []
        for g in (5, 20):
            assert main(["locus", path, "--grid", f"36,{g},41"]) == 0
            _, data = self._read(capsys.readouterr().out)
            assert data.shape[1] == 5
            spreads.append(np.linalg.svd(data[:, 2:] - data[:, 2:].mean(0), compute_uv=False))
        assert np.sum(spreads[1] > 3 * spreads[0]) >= 2


class TestVerifyCommand:
    def test_corpus(self, capsys):
        assert main(["verify", "--corpus"]) == 0
        cap = capsys.readouterr()
        results = json.loads(cap.out)
        assert results and all(r["status"] != "fail" for r in results)
        assert ", 0 failed" in cap.err

    def test_single_fixture(self, capsys):
        assert main(["verify", str(FIXTURES / "r4_z2_worked.json"), "--pretty"]) == 0
        out = capsys.readouterr().out
        assert "gauss" in out and "pass" in out

    def test_corrupted(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({"n": 2, "k": 1, "components": [[{"exp": [1], "coeff": 1}], [], []]}))
        assert main(["verify", str(p)]) == EXIT_SCHEMA

    def test_no_input(self):
        assert main(["verify"]) == EXIT_SCHEMA

    def test_failing_check_exit_code(self, monkeypatch, capsys):
        import axialcurv.cli as cli
        from axialcurv.verify import CheckResult

        monkeypatch.setattr(cli, "run_checks", lambda m, f: [CheckResult("forced", "fail")])
        assert main(["verify", str(FIXTURES / "r4_zero.json")]) == EXIT_CHECK_FAILED


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "axialcurv.cli", "analyze", "--pretty",
                           str(FIXTURES / "r4_xzyz_worked.json")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "XZ_YZ" in proc.stdout


def test_oracle_value_in_plane_orbit_report():
    rep = analyze(load_germ(FIXTURES / "r4_xzyz_worked.json"), checks=False)
    m = MongeJet(rep.monge["n"], rep.monge["k"], np.array(rep.monge["a"]))
    assert any(abs(v - 3.0) < 1e-8 for v in axial_oracle(m, [1.0, 0.0]).values)
