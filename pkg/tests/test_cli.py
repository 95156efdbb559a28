import json
import subprocess
import sys

import pytest

from skewinv.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = call(capsys, *argv)
    return code, json.loads(out)


def test_sigma(capsys):
    code, r = report(capsys, "sigma", "--n", "3", "--t", "2", "--word", "1")
    assert code == 0
    assert r["result"]["polynomial"] == "x12(1)^2 + x13(1)^2 + x23(1)^2"
    assert list(r) == ["command", "version", "seed", "status", "result", "notes", "wall_time_seconds"]


def test_trace_n2_carries_sign_note(capsys):
    code, r = report(capsys, "trace", "--n", "2", "--word", "1,2")
    assert code == 0
    assert r["result"]["polynomial"] == "(-2)*x12(1)*x12(2)"
    assert r["notes"][0]["item"] == "n = 2 trace formula sign"


def test_hsp(capsys):
    code, r = report(capsys, "hsp", "--case", "A", "--d", "2")
    assert code == 0
    assert r["result"]["count_check"]["count"] == 3
    assert r["result"]["independence"]["rank"] == 3
    assert r["notes"][0]["item"] == "h_r index range for family A"


def test_canon(capsys):
    code, r = report(capsys, "canon", "--blocks", "K3;0:1", "--check-sigma")
    assert code == 0
    assert r["result"]["all_sigma_zero"] and len(r["result"]["sigma"]) == 4
    code, r = report(capsys, "canon", "--blocks", "K4:mu=1", "--check-sigma")
    assert code == 1


def test_certificate(capsys):
    code, r = report(capsys, "certificate", "--name", "N4_Q1")
    assert code == 0 and r["result"]["certificates"][0]["passed"]


def test_eval(capsys, tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"matrices": [{"n": 3, "upper": ["1", "0", "0"]}, {"n": 3, "upper": ["1", "0", "0"]}]}))
    code, r = report(capsys, "eval", "--matrices", str(p), "--t", "1", "--word", "1,2")
    assert code == 0 and r["result"]["value"] == "-2/1"


def test_mingens_csv(capsys):
    code, out, _ = call(capsys, "mingens", "--n", "2", "--d", "2", "--maxdeg", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "mdeg,dimension,new_generators"


def test_generation(capsys):
    code, r = report(capsys, "generation", "--n", "3", "--d", "2", "--maxdeg", "6")
    assert code == 0 and r["result"]["generates"]


def test_identities(capsys):
    code, r = report(capsys, "identities")
    assert code == 0 and all(c["verdict"] == "pass" for c in r["result"]["checks"])


def test_report_subset(capsys):
    code, r = report(capsys, "report", "--criteria", "9,10")
    assert code == 0
    assert [c["criterion"] for c in r["result"]["criteria"]] == [9, 10]
    assert len(r["notes"]) == 3


def test_out_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, text, _ = call(capsys, "sigma", "--n", "3", "--t", "2", "--out", str(out))
    assert code == 0 and text == ""
    assert json.loads(out.read_text())["result"]["terms"] == 3


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["sigma", "--n", "3"],
    ["sigma", "--n", "3", "--t", "9"],
    ["trace", "--n", "3", "--word", "a,b"],
    ["hsp", "--case", "A", "--d", "1"],
    ["trace", "--n", "3", "--format", "csv"],
    ["certificate", "--name", "NOPE"],
    ["report"],
    ["generation", "--n", "4", "--d", "2"],
    ["canon", "--blocks", "K1"],
])
def test_usage_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert err.startswith("skewinv: error:") and err.count("\n") == 1
    assert json.loads(out)["status"] == "error"


def test_determinism(capsys):
    argv = ["hsp", "--case", "B", "--seed", "3"]
    _, a = report(capsys, *argv)
    _, b = report(capsys, *argv)
    a.pop("wall_time_seconds"), b.pop("wall_time_seconds")
    assert json.dumps(a) == json.dumps(b)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "skewinv.cli", "sigma", "--n", "2", "--t", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["polynomial"] == "x12(1)^2"
