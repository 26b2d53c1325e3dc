import csv
import io
import json
import subprocess
import sys

import pytest

from sdim import cli, spectrum

KEYS = ["space", "params", "cutoff", "method", "estimate", "expected", "pass", "diagnostics", "seconds"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_sdim_group_json(capsys):
    code, out = run(capsys, "sdim", "suq-group", "--l", "2", "--cutoff", "100", "--method", "fit", "--json")
    data = json.loads(out.out)
    assert code == 0 and list(data) == KEYS
    assert data["pass"] and abs(data["estimate"] - 8) <= 0.3
    assert data["cutoff"] == 100 and data["params"] == {"l": 2}


def test_sdim_podles(capsys):
    code, out = run(capsys, "sdim", "podles", "--q", "0.5", "--json")
    data = json.loads(out.out)
    assert code == 0 and data["estimate"] == 0.0 and data["expected"] == 0.0


def test_sdim_cuntz(capsys):
    code, out = run(capsys, "sdim", "cuntz", "--n", "2", "--json")
    data = json.loads(out.out)
    assert code == 0 and data["estimate"] == "infinity" and data["expected"] == "infinity"


def test_sdim_scan(capsys):
    code, out = run(capsys, "sdim", "torus", "--n", "3", "--method", "scan", "--json")
    data = json.loads(out.out)
    assert code == 0 and data["method"] == "scan" and abs(data["estimate"] - 3) <= 0.2


@pytest.mark.parametrize("argv", [
    ["sdim", "suq-sphere", "--l", "1"],
    ["sdim", "suq-group"],
    ["sdim", "torus", "--n", "0"],
    ["sdim", "podles", "--q", "1.5"],
    ["sdim", "cuntz", "--n", "1"],
    ["sdim", "klein-bottle"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 2


def test_estimation_error_exit(monkeypatch, capsys):
    def boom(*a, **k):
        raise spectrum.EstimationError("every probe was indeterminate", {"probes": {}})

    monkeypatch.setattr(spectrum, "estimate_sdim", boom)
    code, out = run(capsys, "sdim", "torus", "--n", "2")
    assert code == 3 and "indeterminate" in out.err


def test_table_text(capsys):
    code, out = run(capsys, "table")
    lines = out.out.strip().splitlines()
    assert code == 0 and len(lines) == 7 and all(line.endswith("PASS") for line in lines[1:])


def test_table_csv(capsys):
    code, out = run(capsys, "table", "--csv")
    rows = list(csv.reader(io.StringIO(out.out)))
    assert rows[0] == ["space", "params", "estimate", "expected", "pass", "seconds"]
    assert [r[0] for r in rows[1:]] == list(cli.SPACES)
    assert all(r[4] == "true" for r in rows[1:])


def test_table_json_stable(capsys, monkeypatch):
    _, first = run(capsys, "table", "--json")
    monkeypatch.setenv("SDIM_THREADS", "4")
    _, second = run(capsys, "table", "--json")
    assert first.out == second.out
    data = json.loads(first.out)
    assert len(data) == 6 and all(list(d) == KEYS for d in data)


def test_table_all(capsys):
    code, out = run(capsys, "table", "--all", "--csv")
    assert code == 0 and len(out.out.strip().splitlines()) == 1 + len(cli.TABLE_ROWS_ALL)


def test_timing_and_out(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out = run(capsys, "sdim", "torus", "--n", "1", "--json", "--timing", "--out", str(target))
    data = json.loads(target.read_text())
    assert code == 0 and data["seconds"] >= 0 and target.read_text() == out.out


@pytest.mark.parametrize("argv", [
    ["verify", "axis", "--l", "2", "--max-entry", "4"],
    ["verify", "weyl", "--l", "3", "--n-max", "6"],
    ["verify", "paths", "--l", "3", "--max-entry", "6", "--samples", "50", "--seed", "3"],
    ["verify", "shells"],
    ["verify", "commutators", "su2-classical", "--d", "n", "--cutoff", "4"],
    ["verify", "commutators", "suq-group", "--l", "2", "--cutoff", "3"],
    ["verify", "commutators", "podles", "--q", "0.5", "--cutoff", "20"],
])
def test_verify_pass(argv, capsys):
    code, out = run(capsys, *argv, "--json")
    assert code == 0 and json.loads(out.out)["pass"]


@pytest.mark.parametrize("argv", [
    ["verify", "commutators", "su2-classical", "--d", "n2", "--cutoff", "3"],
    ["verify", "commutators", "suq-group", "--l", "1", "--d", "2^r11", "--cutoff", "3"],
    ["verify", "commutators", "podles", "--q", "0.5", "--d", "q^-2k", "--cutoff", "12"],
])
def test_verify_fail(argv, capsys):
    code, out = run(capsys, *argv, "--json")
    assert code == 1 and not json.loads(out.out)["pass"]
    assert "failed" in out.err


def test_verify_paths_seeded(capsys):
    args = ["verify", "paths", "--l", "2", "--max-entry", "5", "--seed", "7", "--json"]
    _, a = run(capsys, *args)
    _, b = run(capsys, *args)
    assert a.out == b.out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sdim", "sdim", "cuntz", "--n", "3", "--csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("cuntz,n=3,infinity,infinity,true")
