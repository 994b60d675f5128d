import csv
import io
import json
import subprocess
import sys

import pytest

from specsing.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_process(*argv):
    return subprocess.run([sys.executable, "-m", "specsing", *argv], capture_output=True, check=False)


def test_table1_default_rows(capsys):
    code, out, _ = run(capsys, "table1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["n"] for r in rows] == ["0", "1", "2", "10", "100"]
    assert float(rows[0]["ak_n"]) == pytest.approx(1.06468255, rel=1e-8)
    assert float(rows[4]["a2z_n"]) == pytest.approx(2891.85852, rel=1e-8)


def test_table1_empty_selection(capsys):
    code, out, _ = run(capsys, "table1", "--n", "")
    assert code == 0 and out == "n,r_n,y_n,ak_n,a2z_n,residual\n"


def test_table1_negative_index_json(capsys):
    code, out, _ = run(capsys, "table1", "--n=-1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "sst-1"
    (row,) = doc["rows"]
    assert row["n"] == -1
    assert row["ak_n"] == pytest.approx(-7.52928304, rel=1e-8)
    assert row["a2z_n"] == pytest.approx(-27.7830976, rel=1e-8)


def test_scan_peaks_at_singularity(capsys):
    code, out, _ = run(capsys, "scan", "--a", "1", "--z", "2.07173713", "--kmin", "1.06", "--kmax", "1.07", "--points", "101")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 101
    peak = max(rows, key=lambda r: float(r["T2"]) if r["T2"] else float("inf"))
    assert float(peak["k"]) == pytest.approx(1.0647, abs=1e-3)
    assert peak["diverged_flag"] in ("0", "1")


@pytest.mark.parametrize(
    "argv",
    [
        ("scan", "--a", "1", "--z", "0", "--kmin", "1", "--kmax", "2", "--points", "3"),
        ("scan", "--a", "1", "--z", "1", "--kmin", "2", "--kmax", "1", "--points", "3"),
        ("scan", "--a", "-1", "--z", "1", "--kmin", "1", "--kmax", "2", "--points", "3"),
    ],
)
def test_scan_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("specsing:")


def test_argparse_errors_exit_two():
    proc = run_process("table1", "--n", "x")
    assert proc.returncode == 2


def test_waveguide_design(capsys):
    code, out, _ = run(
        capsys, "waveguide", "design", "--n", "0", "--m", "1", "--homega-ev", "5", "--homegap-ev", "0.2", "--hdelta-ev", "1.25"
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["alpha_nm"] == pytest.approx(1004.17, rel=1e-3)
    assert doc["beta_nm"] == pytest.approx(62.0464, rel=1e-3)
    assert doc["hs_ev"] == pytest.approx(0.016, rel=1e-3)


WG_SCAN = ("waveguide", "scan", "--alpha-nm", "1004.17", "--beta-nm", "62.0464", "--homegap-ev", "0.2", "--hdelta-ev", "1.25")


def test_waveguide_scan_flags_and_peak(capsys):
    code, out, _ = run(
        capsys, *WG_SCAN, "--ratio-min", "0.5", "--ratio-max", "1.5", "--points", "2001", "--homega-ref-ev", "5"
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["below_cutoff_flag"] == "1" and rows[0]["T2"] == ""
    live = [r for r in rows if r["T2"]]
    peak = max(live, key=lambda r: float(r["T2"]))
    assert abs(float(peak["omega_ratio"]) - 1) < 1e-2


def test_waveguide_scan_without_gain_is_flat(capsys):
    argv = list(WG_SCAN)
    argv[argv.index("0.2")] = "0"
    code, out, _ = run(capsys, *argv, "--ratio-min", "1.0", "--ratio-max", "1.5", "--points", "11", "--homega-ref-ev", "5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert all(float(r["T2"]) == pytest.approx(1) for r in rows)


def test_waveguide_scan_all_evanescent(capsys):
    code, out, err = run(capsys, *WG_SCAN, "--ratio-min", "0.5", "--ratio-max", "0.9", "--points", "5")
    assert code == 3 and out == "" and "cutoff" in err


def test_verify_barrier_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "barrier")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert any("closed-form" in c["name"] for c in doc["checks"])


def test_verify_core_reports_each_check(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "core")
    doc = json.loads(out)
    names = [c["name"] for c in doc["checks"]]
    assert "det M = 1 within 1e-10" in names
    # the exit status mirrors the report
    assert code == (0 if doc["passed"] else 1)


def test_out_file(tmp_path, capsys):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table1", "--n", "0", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("n,r_n")


@pytest.mark.parametrize(
    "argv",
    [
        ("table1",),
        ("table1", "--format", "json"),
        ("scan", "--a", "1", "--z", "2.07173713", "--kmin", "0.5", "--kmax", "2", "--points", "50", "--format", "json"),
        (*WG_SCAN, "--ratio-min", "0.99", "--ratio-max", "1.01", "--points", "41"),
    ],
)
def test_repeated_runs_are_byte_identical(argv):
    first, second = run_process(*argv), run_process(*argv)
    assert first.returncode == 0
    assert first.stdout == second.stdout and first.stdout
