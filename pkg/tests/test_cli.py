import csv
import io
import json
import subprocess
import sys

import pytest

from threebody1d import cli, hamiltonian
from threebody1d.checks import REFERENCE_DIMENSIONS


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


class TestDims:
    def test_matches_reference(self, capsys):
        code, out, _ = run(capsys, "dims", "--nmax", "12")
        assert code == 0
        table = rows(out)
        assert table[0] == ["N", "D_N", "D_Ntilde", "A1", "B2", "B1", "A2"]
        assert len(table) == 14
        assert [tuple(map(int, r[1:])) for r in table[1:]] == list(REFERENCE_DIMENSIONS)

    def test_json(self, capsys):
        code, out, _ = run(capsys, "dims", "--nmax", "3", "--format", "json")
        assert code == 0
        assert json.loads(out)[3] == {"N": 3, "D_N": 20, "D_Ntilde": 10, "A1": 2, "B2": 1, "B1": 1, "A2": 0}


class TestAme:
    def test_b2_single_element(self, capsys):
        code, out, _ = run(capsys, "ame", "--sector", "B2", "--nmax", "3")
        assert code == 0
        table = rows(out)
        assert table[0][-1] == "w" and len(table) == 2
        assert table[1][:10] == ["B2", "3", "0", "0", "0", "3", "-", "0", "3", "-"]
        assert float(table[1][-1]) == pytest.approx(0.748016775752686, rel=1e-14)

    def test_upper_triangle(self, capsys):
        _, out, _ = run(capsys, "ame", "--sector", "A1", "--nmax", "8")
        body = rows(out)[1:]
        assert len(body) == 7 * 8 // 2
        assert all(int(r[2]) <= int(r[3]) for r in body)


class TestSpectrumAndSweep:
    def test_spectrum_zero_coupling(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--sector", "E2+", "--nmax", "4", "--coupling", "0")
        assert code == 0
        body = rows(out)[1:]
        assert [float(r[4]) for r in body] == [3.0, 5.0, 5.0]
        assert [float(r[5]) for r in body] == [3.5, 5.5, 5.5]

    def test_negative_range_and_tonks(self, capsys, tmp_path):
        out_path = tmp_path / "b2.csv"
        code, _, _ = run(capsys, "sweep", "--sector", "BBB-", "--nmax", "9", "--coupling", "-1:1:0.5",
                         "--tonks", "--tonks-levels", "3", "--out", str(out_path))
        assert code == 0
        table = rows(out_path.read_text())
        assert {r[2] for r in table[1:]} == {"-1", "-0.5", "0", "0.5", "1", "inf"}
        assert [float(r[4]) for r in table[1:] if r[2] == "inf"] == [7.0, 9.0, 11.0]
        meta = json.loads(out_path.with_suffix(".json").read_text())
        assert meta["sector"] == "B2" and meta["grid"]["n_points"] == 5 and meta["tonks_reference"]

    def test_tonks_only_bosonic(self, capsys):
        code, _, err = run(capsys, "sweep", "--sector", "E1+", "--nmax", "4", "--coupling", "1", "--tonks")
        assert code == 2 and "A1 and B2" in err

    def test_deterministic_bytes(self, tmp_path, capsys):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p, threads in zip(paths, ("1", "3")):
            assert run(capsys, "sweep", "--sector", "A1", "--nmax", "14", "--coupling", "-3:3:0.25",
                       "--threads", threads, "--out", str(p))[0] == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "sweep", "--sector", "A1", "--nmax", "2", "--coupling", "0,1", "--format", "json")
        payload = json.loads(out)
        assert code == 0 and payload["couplings"] == [0.0, 1.0]
        assert payload["energies"][0] == [1.0, 3.0]

    def test_fff_alias_warns(self, capsys):
        code, out, err = run(capsys, "spectrum", "--sector", "FFF-", "--nmax", "6", "--coupling", "2")
        assert code == 0 and "warning" in err
        assert [float(r[4]) for r in rows(out)[1:]] == [4.0, 6.0]


class TestConvergeDensity:
    def test_converge(self, capsys):
        code, out, _ = run(capsys, "converge", "--sector", "A1", "--coupling", "3", "--nmax-list", "4,8,12", "--levels", "2")
        body = rows(out)[1:]
        assert code == 0 and len(body) == 6
        ground = [float(r[4]) for r in body if r[3] == "0"]
        assert ground == sorted(ground, reverse=True)

    def test_converge_bad_list(self, capsys):
        assert run(capsys, "converge", "--sector", "A1", "--coupling", "3", "--nmax-list", "8,4")[0] == 2

    def test_density(self, capsys, tmp_path):
        p = tmp_path / "d.csv"
        code, _, err = run(capsys, "density", "--sector", "A1", "--nmax", "10", "--coupling", "2",
                           "--n-rho", "41", "--n-phi", "24", "--out", str(p))
        assert code == 0 and "normalization residual" in err
        lines = p.read_text().splitlines()
        assert lines[0] == "# sector=A1"
        header = next(i for i, line in enumerate(lines) if not line.startswith("#"))
        assert lines[header] == "rho,phi,density"
        assert len(lines) - header - 1 == 41 * 24

    def test_density_level_range(self, capsys):
        assert run(capsys, "density", "--sector", "A1", "--nmax", "2", "--coupling", "1", "--level", "5")[0] == 2


class TestUsage:
    @pytest.mark.parametrize(
        "argv",
        [
            ["spectrum", "--sector", "Q9", "--nmax", "4", "--coupling", "1"],
            ["dims", "--nmax", "-1"],
            ["dims", "--nmax", "9999"],
            ["sweep", "--sector", "A1", "--nmax", "4", "--coupling", "3:1:1"],
            ["spectrum", "--sector", "A1"],
            ["bogus"],
            [],
            ["verify", "--tol", "nonsense"],
        ],
    )
    def test_exit_two(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("sector = B2\nnmax = 3\ncoupling = 0\n")
        code, out, _ = run(capsys, "--config", str(cfg), "spectrum")
        assert code == 0
        assert rows(out)[1][:2] == ["B2", "3"]
        # command-line flags win over the file
        code, out, _ = run(capsys, "--config", str(cfg), "spectrum", "--nmax", "9")
        assert rows(out)[1][1] == "9"

    def test_missing_config(self, capsys, tmp_path):
        assert run(capsys, "--config", str(tmp_path / "nope"), "dims", "--nmax", "2")[0] == 2

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "threebody1d", "dims", "--nmax", "1"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[-1] == "1,4,3,1,0,0,0"


class TestVerify:
    def test_quick_passes(self, capsys, tmp_path):
        p = tmp_path / "report.json"
        code, _, err = run(capsys, "verify", "--quick", "--out", str(p))
        assert code == 0
        rep = json.loads(p.read_text())
        assert rep["passed"] and rep["mode"] == "quick"
        assert err.count("PASS") == len(rep["checks"])

    def test_mutated_closed_form_fails(self, capsys, monkeypatch):
        monkeypatch.setitem(hamiltonian.ANGULAR_CLOSED_FORM, "A1", -6)
        code, out, err = run(capsys, "verify", "--quick")
        assert code == 1
        assert "angular_closed_forms" in err.splitlines()[-1]
        failing = [c["name"] for c in json.loads(out)["checks"] if not c["passed"]]
        assert failing == ["angular_closed_forms"]

    def test_tolerance_override(self, capsys):
        code, out, _ = run(capsys, "verify", "--quick", "--tol", "radial_vs_quadrature_n8=1e-30")
        assert code == 1
        check = next(c for c in json.loads(out)["checks"] if c["name"] == "radial_vs_quadrature_n8")
        assert check["tolerance"] == 1e-30 and not check["passed"]
