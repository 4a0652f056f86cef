import io
import subprocess
import sys

import pytest

from vortexff.cli import main
from vortexff.sweeps import read_csv

ELASTIC = ["--initial", "1s", "--final", "1s", "--l-in", "0", "--l-out", "0", "--wavelength-nm", "1",
           "--abs-tol", "1e-12", "--rel-tol", "1e-5"]


def rows_at(path):
    with open(path) as fh:
        return read_csv(fh)


def test_amplitude_to_file(tmp_path):
    out = tmp_path / "a.csv"
    assert main(["amplitude", *ELASTIC, "--theta-rad", "0.5", "--out", str(out)]) == 0
    (row,) = rows_at(out)
    assert row.axis_value == 0.5 and row.converged


def test_amplitude_to_stdout(capsys):
    assert main(["amplitude", *ELASTIC]) == 0
    (row,) = read_csv(io.StringIO(capsys.readouterr().out))
    assert row.M_re == pytest.approx(1.0, abs=1e-6)


def test_sweep_command(tmp_path):
    out = tmp_path / "s.csv"
    argv = ["sweep", *ELASTIC, "--axis", "theta", "--from", "0.1", "--to", "1.0", "--points", "3",
            "--scale", "log", "--out", str(out)]
    assert main(argv) == 0
    rows = rows_at(out)
    assert [r.axis_value for r in rows][::2] == [0.1, 1.0]


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.conf"
    cfg.write_text("# elastic ground state\ninitial = 1s\nfinal = 1s\nl_in = 0\nl-out = 0\n"
                   "wavelength-nm = 1\ntheta-rad = 0.3\nabs-tol = 1e-12\nrel-tol = 1e-5\n")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["amplitude", "--config", str(cfg), "--out", str(a)]) == 0
    assert main(["amplitude", "--config", str(cfg), "--theta-rad", "0.9", "--out", str(b)]) == 0
    assert rows_at(a)[0].axis_value == 0.3
    assert rows_at(b)[0].axis_value == 0.9


@pytest.mark.parametrize(
    "argv",
    [
        ["amplitude", "--final", "3x"],
        ["amplitude", "--pol-overlap", "2"],
        ["amplitude", "--wavelength-nm", "-1"],
        ["amplitude", "--theta-rad", "4"],
        ["sweep", "--axis", "theta", "--from", "1", "--to", "0", "--points", "3"],
        ["sweep", "--axis", "phi", "--from", "0", "--to", "1", "--points", "3"],
        ["figure", "--id", "7"],
        ["amplitude", "--bogus"],
        [],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    assert main(argv) == 1
    assert "error" in capsys.readouterr().err


def test_bad_config_file(tmp_path):
    bad = tmp_path / "bad.conf"
    bad.write_text("no equals sign here\n")
    assert main(["amplitude", "--config", str(bad)]) == 1
    assert main(["amplitude", "--config", str(tmp_path / "missing.conf")]) == 1


def test_unconverged_exit_2(tmp_path):
    out = tmp_path / "u.csv"
    argv = ["sweep", "--theta-rad", "0.5", "--axis", "theta", "--from", "0.4", "--to", "0.6", "--points", "2",
            "--abs-tol", "1e-16", "--rel-tol", "1e-12", "--max-evals", "3000", "--out", str(out)]
    assert main(argv) == 2
    rows = rows_at(out)
    assert len(rows) == 2 and not any(r.converged for r in rows)


def test_figure_command(tmp_path):
    out = tmp_path / "f.csv"
    assert main(["figure", "--id", "5b", "--points", "3", "--out", str(out)]) == 0
    rows = rows_at(out)
    assert [r.axis_value for r in rows][::2] == [0.05, 1e3]
    assert all(r.dsigma_v > 0 for r in rows)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "vortexff", "amplitude", *ELASTIC], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.startswith("axis_value,")
