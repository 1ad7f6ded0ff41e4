import csv
import io
import json
import math
import subprocess
import sys

import pytest

from eurbounds.cli import main, parse_observable, sweep_values


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_bounds_table():
    code, out, err = run("bounds", "--state", "mm", "--cx", "0.5", "--cy", "-0.2", "--cz", "-0.3")
    assert code == 0 and err == ""
    table = dict(line.split(None, 1) for line in out.splitlines() if not line.startswith("obs_"))
    assert table["L1"].strip() == "1.558872"
    assert table["L3"].strip() == table["L4"].strip() == "1.745346"
    assert table["converged"].strip() == "true"


def test_global_flags_before_or_after_subcommand():
    _, before, _ = run("--format", "json-lines", "--side", "A", "bounds", "--state", "werner", "--p", "0.5")
    _, after, _ = run("bounds", "--state", "werner", "--p", "0.5", "--format", "json-lines", "--side", "A")
    assert before == after
    rec = json.loads(before)
    assert rec["side"] == "A" and rec["state"] == "werner(p=0.5)"


def test_bounds_csv_and_bd_default_settings():
    code, out, _ = run("bounds", "--state", "bd", "--p", "0.5", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows[0][0] == "param"
    assert rows[1][1:6] == ["2.000000", "1.000000", "1.000000", "1.000000", "1.000000"]


def test_bounds_explicit_angles_and_optimize():
    code, out, _ = run("bounds", "--state", "pe", "--alpha", "0.3", "--obs-r", "0,0", "--obs-s", "90,0", "--format", "json-lines")
    assert code == 0
    assert json.loads(out)["l3"] == pytest.approx(0.250225, abs=1e-6)
    code, out, _ = run("bounds", "--state", "pe", "--alpha", "0.3", "--optimize-settings", "--format", "json-lines")
    assert json.loads(out)["l3"] == pytest.approx(0.250225, abs=1e-6)


def test_parse_observable():
    assert parse_observable("Z").theta == 0.0
    obs = parse_observable("90,450")
    assert obs.phi == pytest.approx(math.pi / 2)


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "--state", "werner"],
        ["bounds", "--state", "werner", "--p", "1.2"],
        ["bounds", "--state", "mm", "--cx", "0.9", "--cy", "0.9", "--cz", "0.9"],
        ["bounds", "--state", "werner", "--p", "0.2", "--obs-r", "north"],
        ["bounds", "--state", "werner", "--p", "0.2", "--obs-r", "200,0"],
        ["figure", "--id", "3"],
        ["verify", "--samples", "0"],
        ["sweep", "--state", "werner", "--param", "p", "--from", "0", "--to", "2", "--steps", "3"],
        ["sweep", "--state", "werner", "--param", "alpha", "--from", "0", "--to", "1", "--steps", "3"],
        ["sweep", "--state", "werner", "--param", "p", "--from", "0", "--to", "1", "--steps", "1"],
        ["sweep", "--state", "mm", "--param", "cx", "--from", "0", "--to", "0.1", "--steps", "2"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    assert main(["bounds"]) == 2
    assert main(["launch"]) == 2
    assert "usage" in capsys.readouterr().err


def test_io_error_exit_3(tmp_path):
    code, _, err = run("figure", "--id", "2", "--out", str(tmp_path / "missing" / "f.csv"))
    assert code == 3
    assert "I/O error" in err


def test_sweep_writes_csv(tmp_path):
    path = tmp_path / "w.csv"
    code, out, _ = run("sweep", "--state", "werner", "--param", "p", "--from", "0", "--to", "1", "--steps", "11", "--out", str(path))
    assert code == 0 and out == ""
    lines = path.read_text().splitlines()
    assert lines[0] == "# args: sweep --state werner --param p --from 0.0 --to 1.0 --steps 11 --obs-r z --obs-s x --side B"
    assert str(tmp_path) not in lines[0]
    rows = list(csv.reader(lines[1:]))
    assert len(rows) == 12
    assert [r[0] for r in rows[1:]] == [f"{k / 10:.6f}" for k in range(11)]
    assert all(float(r[1]) == 2.0 for r in rows[1:])


def test_sweep_with_fixed_parameters():
    code, out, _ = run("sweep", "--state", "mm", "--param", "cx", "--cy", "0", "--cz", "0", "--from", "0", "--to", "0.5", "--steps", "3")
    assert code == 0
    assert len(out.splitlines()) == 5


def test_sweep_values_hit_endpoints():
    v = sweep_values(0.0, 0.3, 4)
    assert v[0] == 0.0 and v[-1] == 0.3 and len(v) == 4


def test_figure_files(tmp_path):
    csv_path, svg_path = tmp_path / "f1.csv", tmp_path / "f1.svg"
    code, out, _ = run("figure", "--id", "1", "--out", str(csv_path), "--svg", str(svg_path))
    assert code == 0 and out == ""
    assert csv_path.read_text().startswith("# args: figure --id 1\n")
    assert svg_path.read_text().rstrip().endswith("</svg>")


def test_verify_summary():
    code, out, _ = run("verify", "--samples", "3", "--seed", "5", "--pairs", "2")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 11
    assert all(line.startswith("PASS") for line in lines[:10])
    assert lines[-1] == "OK: samples=3 seed=5 tol=1e-07"


def test_verify_failure_exit_1():
    # an absurd negative tolerance turns every zero-slack identity into a violation
    code, out, _ = run("verify", "--samples", "1", "--seed", "5", "--pairs", "1", "--tol", "-1")
    assert code == 1
    assert "FAILED" in out and "seed=5" in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "eurbounds.cli", "figure", "--id", "2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[2].startswith("classical p=0.5,2.000000")
