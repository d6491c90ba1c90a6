"""Command-line interface: exit codes, outputs, determinism, schemas."""

import json

import numpy as np
import pytest

import chargedbh as cb
from chargedbh.cli import main


def run(args):
    return main(args)


class TestRntReport:
    def test_schwarzschild(self, tmp_path, schema_validator):
        out = tmp_path / "r.json"
        assert run(["rnt-report", "--n", "3", "--m", "1", "--q", "0", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        schema_validator(doc, "rnt_report.schema.json")
        assert doc["r_plus"] == 2.0
        penrose = [c for c in doc["certificates"] if c["name"] == "penrose"][0]
        assert abs(penrose["slack"]) < 1e-12

    def test_charged_penrose_slack_zero(self, tmp_path):
        out = tmp_path / "r.json"
        assert run(["rnt-report", "--n", "3", "--m", "1", "--q", "0.5", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        penrose = [c for c in doc["certificates"] if c["name"] == "penrose"][0]
        assert abs(penrose["slack"]) < 1e-12

    def test_naked_singularity_exit_2(self, capsys):
        assert run(["rnt-report", "--n", "3", "--m", "1", "--q", "2"]) == 2
        assert "naked singularity regime" in capsys.readouterr().err

    def test_extremal_embedding_marked(self, tmp_path):
        out = tmp_path / "r.json"
        assert run(["rnt-report", "--n", "3", "--m", "1", "--q", "1", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["extremal"] is True
        assert doc["embedding"] == []
        assert doc["embedding_note"].startswith("n/a")


class TestImcfRun:
    def test_sphere_run(self, tmp_path, schema_validator):
        csv = tmp_path / "f.csv"
        out = tmp_path / "f.json"
        rc = run([
            "imcf-run", "--n", "3", "--resolution", "32", "--shape", "sphere",
            "--radius", "1", "--t-end", "0.2", "--dt", "0.002", "--sample-every", "20",
            "--charge", "0.5", "--csv", str(csv), "--json", str(out),
        ])
        assert rc == 0
        doc = json.loads(out.read_text())
        schema_validator(doc, "imcf_summary.schema.json")
        assert doc["completed"] and doc["monotonicity"]["decay_non_increasing"]
        assert doc["chain"]["ordered"]
        lines = csv.read_text().splitlines()
        assert lines[0] == "t,area,intH,roundness,M,I0,I1,I2"
        assert len(lines) >= 3

    def test_sphere_decay_column_constant(self, tmp_path):
        csv = tmp_path / "f.csv"
        run([
            "imcf-run", "--n", "3", "--resolution", "32", "--shape", "sphere",
            "--t-end", "0.3", "--dt", "0.003", "--sample-every", "10",
            "--csv", str(csv), "--json", str(tmp_path / "f.json"),
        ])
        rows = np.loadtxt(csv, delimiter=",", skiprows=1)
        m_col = rows[:, 4]
        assert np.abs(m_col - m_col[0]).max() < 1e-10

    def test_spheroid_decay_non_increasing(self, tmp_path):
        csv = tmp_path / "f.csv"
        rc = run([
            "imcf-run", "--n", "4", "--resolution", "32", "--shape", "spheroid",
            "--a", "1", "--c", "1.6", "--t-end", "0.5", "--dt", "0.005",
            "--sample-every", "5", "--csv", str(csv), "--json", str(tmp_path / "f.json"),
        ])
        assert rc == 0
        rows = np.loadtxt(csv, delimiter=",", skiprows=1)
        assert np.diff(rows[:, 4]).max() <= 1e-8

    def test_breakdown_exit_3_partial_csv(self, tmp_path, schema_validator):
        csv = tmp_path / "f.csv"
        out = tmp_path / "f.json"
        rc = run([
            "imcf-run", "--n", "3", "--mode", "full", "--resolution", "16",
            "--shape", "spheroid", "--a", "1", "--c", "0.4", "--t-end", "2",
            "--dt", "0.5", "--safety-factor", "1e9",
            "--csv", str(csv), "--json", str(out),
        ])
        assert rc == 3
        doc = json.loads(out.read_text())
        schema_validator(doc, "imcf_summary.schema.json")
        assert not doc["completed"] and doc["breakdown"] is not None
        assert len(csv.read_text().splitlines()) >= 2

    def test_bad_surface_file_exit_2(self, tmp_path):
        bad = tmp_path / "s.txt"
        bad.write_text("# nonsense\n1 2 3\n")
        rc = run(["imcf-run", "--surface", str(bad), "--json", str(tmp_path / "o.json")])
        assert rc == 2

    def test_surface_file_input(self, tmp_path):
        grid = cb.axisymmetric_grid(3, 32)
        cb.save_surface(cb.make_spheroid(grid, 1.0, 1.3), tmp_path / "s.txt")
        rc = run([
            "imcf-run", "--n", "3", "--surface", str(tmp_path / "s.txt"),
            "--t-end", "0.1", "--dt", "0.002", "--json", str(tmp_path / "o.json"),
        ])
        assert rc == 0


class TestVerify:
    def _write(self, tmp_path, text):
        path = tmp_path / "data.txt"
        path.write_text(text)
        return str(path)

    def test_exact_family_all_pass(self, tmp_path, schema_validator):
        data = self._write(tmp_path, "n = 4\nprofile = rnt\nm = 2\nq = 1\n")
        out = tmp_path / "v.json"
        assert run(["verify", "--data", data, "--resolution", "48", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        schema_validator(doc, "verify_bundle.schema.json")
        assert doc["mass"]["total"] == pytest.approx(2.0, abs=1e-6)
        assert doc["adm_mass_limit"] == pytest.approx(2.0, abs=1e-4)
        assert all(c["verdict"] == "pass" for c in doc["certificates"])

    def test_undercharged_field_passes_with_slack(self, tmp_path):
        data = self._write(
            tmp_path, "n = 3\nprofile = rnt\nm = 1\nq = 0.5\ncharge_scale = 0.9\n"
        )
        out = tmp_path / "v.json"
        assert run(["verify", "--data", data, "--resolution", "48", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        penrose = [c for c in doc["certificates"] if c["name"] == "penrose"][0]
        assert penrose["verdict"] == "pass" and penrose["slack"] > 1e-3

    def test_overcharged_field_exit_4(self, tmp_path, schema_validator):
        data = self._write(
            tmp_path, "n = 3\nprofile = rnt\nm = 1\nq = 0.5\ncharge_scale = 1.1\n"
        )
        out = tmp_path / "v.json"
        assert run(["verify", "--data", data, "--resolution", "48", "--out", str(out)]) == 4
        doc = json.loads(out.read_text())
        schema_validator(doc, "verify_bundle.schema.json")
        assert not doc["energy_condition"]["ok"]
        assert len(doc["energy_condition"]["residual_profile"]) > 0

    def test_missing_file_exit_2(self, tmp_path):
        assert run(["verify", "--data", str(tmp_path / "absent.txt")]) == 2


class TestSweep:
    def test_grid_rows_and_zero_slack(self, tmp_path):
        csv = tmp_path / "s.csv"
        rc = run([
            "sweep", "--n-list", "3,4,5", "--m-list", "1", "--q-list", "0,0.5,0.99",
            "--q-rel", "--csv", str(csv),
        ])
        assert rc == 0
        lines = csv.read_text().splitlines()
        assert len(lines) == 10  # header + 9 rows
        header = lines[0].split(",")
        i_slack = header.index("penrose_slack")
        for line in lines[1:]:
            assert abs(float(line.split(",")[i_slack])) < 1e-10

    def test_extremal_row_flagged(self, tmp_path):
        csv = tmp_path / "s.csv"
        run(["sweep", "--n-list", "3", "--m-list", "1", "--q-list", "1", "--csv", str(csv)])
        lines = csv.read_text().splitlines()
        header, row = lines[0].split(","), lines[1].split(",")
        assert row[header.index("extremal")] == "yes"
        assert row[header.index("u_at_2rplus")] == "n/a"
        assert row[header.index("r_plus")] == "1"

    def test_invalid_point_carries_error_column(self, tmp_path):
        csv = tmp_path / "s.csv"
        rc = run(["sweep", "--n-list", "3", "--m-list", "1", "--q-list", "0,2", "--csv", str(csv)])
        assert rc == 0
        lines = csv.read_text().splitlines()
        assert len(lines) == 3
        assert "naked singularity" in lines[2]

    def test_empty_grid_exit_2(self, tmp_path):
        assert run(["sweep", "--n-list", "", "--m-list", "1", "--q-list", "0"]) == 2

    def test_jobs_preserve_order(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["sweep", "--n-list", "3,4,5,6", "--m-list", "1,2", "--q-list",
                "0,0.3,0.9", "--q-rel"]
        run(args + ["--csv", str(a), "--jobs", "1"])
        run(args + ["--csv", str(b), "--jobs", "4"])
        assert a.read_bytes() == b.read_bytes()


class TestDeterminism:
    def test_reports_byte_identical(self, tmp_path):
        outs = []
        for k in (1, 2):
            out = tmp_path / f"r{k}.json"
            run(["rnt-report", "--n", "4", "--m", "1.5", "--q", "0.7", "--out", str(out)])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_flow_byte_identical(self, tmp_path):
        blobs = []
        for k in (1, 2):
            csv = tmp_path / f"f{k}.csv"
            out = tmp_path / f"f{k}.json"
            run([
                "imcf-run", "--n", "3", "--resolution", "24", "--shape", "spheroid",
                "--a", "1", "--c", "1.4", "--t-end", "0.2", "--dt", "0.004",
                "--sample-every", "10", "--charge", "0.3",
                "--csv", str(csv), "--json", str(out),
            ])
            blobs.append(csv.read_bytes() + out.read_bytes())
        assert blobs[0] == blobs[1]

    def test_csv_full_precision(self, tmp_path):
        csv = tmp_path / "s.csv"
        run(["sweep", "--n-list", "3", "--m-list", "1", "--q-list", "0.5", "--csv", str(csv)])
        row = csv.read_text().splitlines()[1].split(",")
        # r_minus = 1 - sqrt(0.75) carries full double precision
        assert row[4] == f"{1 - 0.75**0.5:.17g}"
