import json
import math

import numpy as np
import pytest

from entcap import cli
from entcap.ancilla import example1_max_entropy, example2_renyi_me
from entcap.numerics import random_unitary

P = math.pi
SWAP = np.eye(4)[[0, 2, 1, 3]]


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def gate_file(tmp_path, gate, name="g"):
    path = tmp_path / f"{name}.json"
    cli.write_gate(path, gate, name)
    return str(path)


@pytest.mark.parametrize(
    "text, value",
    [("pi/4", P / 4), ("3pi/8", 3 * P / 8), ("-pi", -P), ("0.25", 0.25), ("2*pi/3", 2 * P / 3), ("PI/16", P / 16)],
)
def test_parse_angle(text, value):
    assert cli.parse_angle(text) == pytest.approx(value, abs=1e-15)


def test_fmt_twelve_digits():
    assert cli.fmt(P) == "3.14159265359"
    assert cli.fmt(0.75) == "0.75"
    assert cli.fmt(-0.0) == "0"


def test_decompose_swap(tmp_path, capsys):
    code, out, _ = run(["decompose", gate_file(tmp_path, SWAP, "SWAP")], capsys)
    assert code == cli.EXIT_OK
    doc = json.loads(out)
    assert np.allclose(doc["alpha_raw"], [P / 4] * 3, atol=1e-11)
    assert doc["c_max"] == pytest.approx(0, abs=1e-11)
    assert doc["name"] == "SWAP"


def test_decompose_identity(tmp_path, capsys):
    code, out, _ = run(["decompose", gate_file(tmp_path, np.eye(4))], capsys)
    assert code == 0
    assert np.allclose(json.loads(out)["alpha_raw"], 0)


def test_report_reverifies(tmp_path, capsys):
    g = random_unitary(4, 12)
    out_path = tmp_path / "rep.json"
    code, _, _ = run(["decompose", gate_file(tmp_path, g), "--out", str(out_path)], capsys)
    assert code == 0
    doc = json.loads(out_path.read_text())
    # the file stores 12 significant digits, so rebuild the gate from it too
    stored, _ = cli.read_gate(gate_file(tmp_path, g))
    res = cli.check_report(doc, stored)
    assert res["reconstruction"] < 1e-8
    assert res["c_max"] < 1e-8


def test_error_exit_codes(tmp_path, capsys):
    bad = gate_file(tmp_path, 2 * np.eye(4), "bad")
    assert run(["decompose", bad], capsys)[0] == cli.EXIT_NOT_UNITARY
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run(["decompose", str(junk)], capsys)[0] == cli.EXIT_PARSE
    small = tmp_path / "small.json"
    small.write_text(json.dumps({"matrix": [[[1, 0]]]}))
    assert run(["decompose", str(small)], capsys)[0] == cli.EXIT_PARSE
    assert run(["decompose", str(tmp_path / "missing.json")], capsys)[0] == cli.EXIT_IO
    code, _, err = run(["capability"], capsys)
    assert code == cli.EXIT_CONFLICT and err.count("\n") == 1
    g = gate_file(tmp_path, SWAP)
    assert run(["capability", g, "--alphas", "0", "0", "0"], capsys)[0] == cli.EXIT_CONFLICT
    assert run(["optimize", "--alphas", "0", "0", "0", "--measure", "concurrence"], capsys)[0] == cli.EXIT_MEASURE
    assert run(["optimize", "--alphas", "0", "0", "0", "--measure", "bogus"], capsys)[0] == cli.EXIT_MEASURE
    code, _, _ = run(["optimize", "--alphas", "0", "0", "0", "--measure", "renyi", "--budget", "4"], capsys)
    assert code == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        cli.main(["decompose"])
    assert exc.value.code == cli.EXIT_USAGE


def test_capability_alphas(capsys):
    code, out, _ = run(["capability", "--alphas", "pi/4", "0", "0"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["c_max"] == 1 and doc["perfect_entangler"] is True
    code, out, _ = run(["capability", "--alphas", "pi/16", "pi/32", "0", "--oracle", "48"], capsys)
    doc = json.loads(out)
    assert doc["c_max"] == pytest.approx(math.sin(3 * P / 16), abs=1e-11)
    assert doc["oracle"]["discrepancy"] < 1e-3


def test_capability_swap_file(tmp_path, capsys):
    code, out, _ = run(["capability", gate_file(tmp_path, SWAP)], capsys)
    assert code == 0 and json.loads(out)["c_max"] == pytest.approx(0, abs=1e-11)


def test_fig1_csv(tmp_path, capsys):
    code, out, _ = run(["fig1", "--steps", "2", "--alpha-max", "pi/4"], capsys)
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "alpha,e_renyi_me,e_renyi_pv"
    assert lines[1] == "0,0,0"
    assert lines[2].split(",")[:2] == ["0.785398163397", "0.75"]
    assert float(lines[2].split(",")[2]) == pytest.approx(0, abs=1e-12)
    assert lines[3].startswith("# crossover_alpha = ")
    a0 = float(lines[3].split("=")[1])
    assert round(a0 / P, 3) == 0.109
    path = tmp_path / "f.csv"
    assert run(["fig1", "--steps", "101", "--out", str(path)], capsys)[0] == 0
    text = path.read_text()
    assert len([l for l in text.splitlines() if l and l[0].isdigit()]) == 101
    run(["fig1", "--steps", "101", "--out", str(tmp_path / "g.csv")], capsys)
    assert (tmp_path / "g.csv").read_bytes() == path.read_bytes()
    assert run(["fig1", "--steps", "1"], capsys)[0] == cli.EXIT_USAGE
    assert run(["fig1", "--out", str(tmp_path / "no" / "dir.csv")], capsys)[0] == cli.EXIT_IO


def test_optimize_reports(capsys):
    code, out, _ = run(["optimize", "--alphas", "0.3", "0", "0", "--measure", "entropy"], capsys)
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(example1_max_entropy(0.3), abs=1e-4)
    a = 2 * math.acos(0.2) / 4
    argv = ["optimize", "--alphas", *[repr(a)] * 3, "--measure", "renyi", "--budget", "8"]
    code, out1, _ = run(argv, capsys)
    assert json.loads(out1)["value"] == pytest.approx(example2_renyi_me(a), abs=1e-4)
    assert run(argv, capsys)[1] == out1


def test_verify_is_deterministic(capsys):
    argv = ["verify", "--seed", "3", "--trials", "100", "--oracle-trials", "5"]
    code, out1, _ = run(argv, capsys)
    assert code == 0
    assert "round_trip 100/100 pass" in out1
    assert out1.splitlines()[-1] == "PASS"
    assert run(argv, capsys)[1] == out1


def test_reports_are_byte_deterministic(tmp_path, capsys):
    g = gate_file(tmp_path, random_unitary(4, 99))
    assert run(["decompose", g], capsys)[1] == run(["decompose", g], capsys)[1]
