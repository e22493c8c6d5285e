import csv
import io
import subprocess
import sys

import pytest

from rhwave.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_zeros(capsys):
    code, out, _ = run(capsys, "zeros", "--count", "2")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == EXIT_OK
    assert rows[0] == ["index", "ordinate", "zeta_prime_re", "zeta_prime_im"]
    assert rows[1][1].startswith("14.134725141")
    assert rows[2][1].startswith("21.022039")


def test_ck_methods(capsys):
    vals = {}
    for m in ("direct", "exp", "binomial"):
        code, out, _ = run(capsys, "ck", "--alpha", "2", "--beta", "2", "--k", "1", "--method", m, "--sieve-limit", "1e4")
        assert code == EXIT_OK
        vals[m] = float(out.split()[1])
        assert f"method     {m}" in out
    assert vals["binomial"] == pytest.approx(-0.3160113, abs=1e-7)
    assert vals["direct"] == pytest.approx(vals["binomial"], abs=1e-4)


def test_amplitude(capsys):
    code, out, _ = run(capsys, "amplitude", "--alpha", "3.5", "--beta", "4")
    assert code == EXIT_OK
    assert float(out.split()[1]) == pytest.approx(0.008411, rel=0.01)


def test_amplitude_multi_zero(capsys):
    code, out, _ = run(capsys, "amplitude", "--alpha", "2", "--beta", "6", "--zeros", "3")
    assert code == EXIT_OK and "peak_psi_bar_3_zeros" in out


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--alpha", "2", "--beta", "2", "--cap", "1000", "--target", "0.000078", "--emit-curve", "--step", "1")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert float(lines[0].split()[1]) == pytest.approx(16.9, abs=1e-9)
    assert lines[1] == "x,bound,bound_exact"


def test_scan_csv_stdout(capsys):
    code, out, err = run(capsys, "scan", "--alpha", "2", "--beta", "2", "--k-min", "1", "--k-max", "1000",
                         "--points", "20", "--sieve-limit", "1e4")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "x", "c_k", "psi", "psi_bar", "tail_bound"]
    assert len(rows) > 10
    assert "max|psi|" in err


def test_scan_json_file_and_checkpoint(tmp_path, capsys):
    out = tmp_path / "s.json"
    code, *_ = run(capsys, "scan", "--alpha", "2", "--beta", "2", "--k-max", "100", "--points", "5",
                   "--sieve-limit", "1000", "--format", "json", "--out", str(out))
    assert code == EXIT_OK and out.exists()
    ck = tmp_path / "c.csv"
    args = ["scan", "--alpha", "2", "--beta", "2", "--k-max", "100", "--points", "9", "--sieve-limit", "1000",
            "--checkpoint", "--out", str(ck)]
    assert run(capsys, *args)[0] == EXIT_OK
    first = ck.read_text()
    assert run(capsys, *args)[0] == EXIT_OK
    assert ck.read_text() == first


def test_sweep(tmp_path, capsys):
    code, out, _ = run(capsys, "sweep", "--betas", "4,8", "--k-max", "1000", "--points", "20",
                       "--sieve-limit", "1e4", "--out", str(tmp_path / "sw.csv"))
    assert code == EXIT_OK
    assert (tmp_path / "sw.ck.csv").exists()
    assert "beta=8 onset_x=" in out


@pytest.mark.parametrize("argv", [
    ["ck", "--alpha", "2", "--beta", "0", "--k", "3"],
    ["ck", "--alpha", "0.9", "--beta", "2", "--k", "3"],
    ["ck", "--alpha", "2", "--beta", "2", "--k", "41", "--method", "binomial"],
    ["ck", "--alpha", "2", "--beta", "2", "--k", "3", "--method", "bogus"],
    ["scan", "--alpha", "2", "--beta", "2", "--k-max", "10", "--checkpoint"],
    ["bounds", "--alpha", "1", "--beta", "2", "--cap", "10", "--target", "1"],
    ["zeros", "--count", "31"],
    ["nonsense"],
])
def test_config_errors_exit_2(capsys, argv):
    assert main(argv) == EXIT_CONFIG


def test_io_error_exit_3(tmp_path, capsys):
    code, *_ = run(capsys, "scan", "--alpha", "2", "--beta", "2", "--k-max", "10", "--points", "3",
                   "--sieve-limit", "100", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == EXIT_IO


def test_exploratory_flag(capsys):
    code, *_ = run(capsys, "ck", "--alpha", "0.9", "--beta", "2", "--k", "3", "--exploratory", "--sieve-limit", "1000")
    assert code == EXIT_OK


def test_console_script_verify():
    proc = subprocess.run([sys.executable, "-m", "rhwave.cli", "verify"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "all checks passed" in proc.stdout
