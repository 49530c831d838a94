"""CLI behaviour and golden outputs.

Set GREENHH_REGEN=1 to rewrite the golden files from the current engine.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from greenhh import CyclicGroup, burnside_mackey
from greenhh.cli import main
from greenhh.serialize import dumps, mackey_to_json

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("GREENHH_REGEN") == "1"

CASES = {
    "hh_Z_p3_n1.json": ["hh", "--ring", "Z", "--p", "3", "--n", "1", "--max-degree", "3"],
    "hh_Z_p2_n0.json": ["hh", "--ring", "Z", "--p", "2", "--n", "0", "--max-degree", "2"],
    "hh_Fp_p2_n1.json": ["hh", "--ring", "Fp", "--p", "2", "--n", "1", "--max-degree", "1"],
    "hh_Z_p3_n1.txt": ["hh", "--ring", "Z", "--p", "3", "--n", "1", "--max-degree", "3", "--format", "text"],
    "tr_Z_p2_n3_d0.json": ["tr", "--ring", "Z", "--p", "2", "--n-max", "3", "--degree", "0"],
    "tr_Z_p2_n3_d1.json": ["tr", "--ring", "Z", "--p", "2", "--n-max", "3", "--degree", "1"],
    "tr_Fp_p2_n2.json": ["tr", "--ring", "Fp", "--p", "2", "--n-max", "2", "--degree", "0"],
    "tr_Fp_p3_n2.txt": ["tr", "--ring", "Fp", "--p", "3", "--n-max", "2", "--format", "text"],
    "e2_g2_t4.json": ["e2", "--gens", "2", "--trunc", "4"],
    "e2_g2_t4.txt": ["e2", "--gens", "2", "--trunc", "4", "--format", "text"],
    "koszul_g1_t2.json": ["koszul", "--gens", "1", "--trunc", "2"],
    "check_burnside_c4.json": ["check", "--input", "burnside_c4.json"],
}


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_burnside_c4_golden():
    text = dumps(mackey_to_json(burnside_mackey(CyclicGroup(4))))
    path = GOLDEN / "burnside_c4.json"
    if REGEN:
        path.write_text(text)
    assert path.read_text() == text


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys, monkeypatch):
    monkeypatch.chdir(GOLDEN)
    code, out, _ = run(CASES[name], capsys)
    assert code == 0
    path = GOLDEN / name
    if REGEN:
        path.write_text(out)
    assert out == path.read_text()


def test_deterministic_twice(capsys):
    argv = CASES["tr_Z_p2_n3_d0.json"]
    assert run(argv, capsys)[1] == run(argv, capsys)[1]


def test_hh_Z_values(capsys):
    _, out, _ = run(CASES["hh_Z_p3_n1.json"], capsys)
    d = json.loads(out)["result"]["degrees"]
    assert d[0]["invariants"] == [[1, []], [2, []]]
    assert all(x["invariants"] == [[0, []], [0, []]] for x in d[1:])


def test_hh_trivial_group(capsys):
    _, out, _ = run(CASES["hh_Z_p2_n0.json"], capsys)
    d = json.loads(out)["result"]["degrees"]
    assert [x["invariants"] for x in d] == [[[1, []]], [[0, []]], [[0, []]]]


def test_tr_values(capsys):
    r0 = json.loads(run(CASES["tr_Z_p2_n3_d0.json"], capsys)[1])["result"]
    assert [s[0] for s in r0["stages"]] == [1, 2, 3, 4]
    assert r0["classification"] == "Z^infinity"
    r1 = json.loads(run(CASES["tr_Z_p2_n3_d1.json"], capsys)[1])["result"]
    assert r1["classification"] == "0"
    rf = json.loads(run(CASES["tr_Fp_p2_n2.json"], capsys)[1])["result"]
    assert rf["classification"] == "pro-p cyclic (consistent with Z_p)"


def test_e2_table(capsys):
    r = json.loads(run(CASES["e2_g2_t4.json"], capsys)[1])["result"]
    gens = {g["name"]: (g["filtration"], g["degree"]) for g in r["generators"]}
    assert gens == {"b1": (0, "(1,1)"), "b2": (0, "(2,2)"), "z1": (1, "(1,1)"), "z2": (1, "(2,2)")}
    assert r["collapse"] is True and r["oracle_agrees"] is True


def test_koszul_one(capsys):
    r = json.loads(run(CASES["koszul_g1_t2.json"], capsys)[1])["result"]
    assert [(g["name"], g["filtration"], g["degree"]) for g in r["generators"]] == [("z1", 1, "(1,1)")]


def test_check_pass(capsys, monkeypatch):
    monkeypatch.chdir(GOLDEN)
    code, out, _ = run(CASES["check_burnside_c4.json"], capsys)
    assert code == 0 and json.loads(out)["result"]["pass"] is True


def test_check_failing_functor(tmp_path, capsys):
    bad = {"group_order": 3, "levels": [{"generators": 1, "relations": []}] * 2,
           "res": {"1": [[1]]}, "tr": {"1": [[0]]}, "weyl": {}}
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(bad))
    code, out, _ = run(["check", "--input", str(f)], capsys)
    assert code == 2
    assert json.loads(out)["result"]["pass"] is False


@pytest.mark.parametrize("argv, flag", [
    (["hh", "--p", "4", "--n", "1"], "--p"),
    (["hh", "--p", "2", "--n", "-1"], "--n"),
    (["hh", "--ring", "nonexistent.json", "--p", "2", "--n", "1"], "--ring"),
    (["tr", "--p", "2", "--n-max", "0"], "--n-max"),
    (["check", "--input", "missing.json"], "--input"),
])
def test_input_errors(argv, flag, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and flag in err


def test_ring_without_norm_is_input_error(tmp_path, capsys):
    from greenhh.green import ring_truncated_poly

    f = tmp_path / "dual.json"
    f.write_text(json.dumps(ring_truncated_poly(2, 2).to_json()))
    code, _, err = run(["hh", "--ring", str(f), "--p", "2", "--n", "1"], capsys)
    assert code == 2 and "--ring" in err


def test_ring_file_trivial_group(tmp_path, capsys):
    from greenhh.green import ring_truncated_poly

    f = tmp_path / "dual.json"
    f.write_text(json.dumps(ring_truncated_poly(2, 2).to_json()))
    code, out, _ = run(["hh", "--ring", str(f), "--p", "2", "--n", "0", "--max-degree", "1"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["degrees"][0]["invariants"] == [[0, [2, 2]]]


def test_budget_exit(capsys):
    code, _, err = run(["hh", "--p", "2", "--n", "1", "--max-degree", "3", "--q-max", "2"], capsys)
    assert code == 3 and "budget" in err


def test_timing_flag(capsys):
    _, out, _ = run(["koszul", "--gens", "1", "--trunc", "2", "--timing"], capsys)
    assert "seconds" in json.loads(out)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "greenhh", "koszul", "--gens", "1", "--trunc", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert (GOLDEN / "koszul_g1_t2.json").read_text() == r.stdout
