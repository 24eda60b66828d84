import io
import json
import subprocess
import sys

import pytest

from bipancyclic import fixtures
from bipancyclic.cli import run
from bipancyclic.graph import format_edge_list, parse_edge_list, validate_cycle, CycleWitness


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, make in fixtures.ALL.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(format_edge_list(make()))
        paths[name] = p
    return paths


def test_extract_json(files):
    code, out, err = call("extract", files["g6"], "--json")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["method"] == "condition2"
    assert len(doc["cycle"]) == 10
    w = CycleWitness(tuple(v for _, v in doc["cycle"]))
    assert validate_cycle(fixtures.g6(), w, 10)
    assert set(doc) == {"n", "method", "indices", "cycle", "omitted", "omitted_adjacent"}


def test_extract_text(files):
    code, out, _ = call("extract", files["g8s"])
    assert code == 0
    assert "method: structural" in out
    assert "indices: i0=2 k=4 l=1" in out
    assert "omitted: x3 y1" in out


def test_check(files):
    code, out, err = call("check", files["gdis"])
    assert code == 2
    assert err.strip() == "error: not hamiltonian"
    assert "hamiltonian: false" in out
    code, out, err = call("check", files["g8m"], "--json")
    assert code == 0 and json.loads(out)["member"] is True


def test_check_not_regular(files):
    code, _, err = call("check", files["ges"])
    assert code == 2 and "regular" in err and err.count("\n") == 1


def test_pancyclic(files):
    code, out, _ = call("pancyclic", files["g6"])
    assert code == 0 and "is_bipancyclic: true" in out
    code, out, _ = call("pancyclic", files["ges"], "--json")
    doc = json.loads(out)
    assert code == 1 and doc["es_prediction"] == "not-applicable" and doc["es_reason"] == "not-hamiltonian"
    code, out, _ = call("pancyclic", files["gdis"], "--length", 12)
    assert code == 1 and "absent" in out
    code, out, _ = call("pancyclic", files["g6"], "--length", 4, "--json")
    assert code == 0 and json.loads(out)["present"] is True


def test_second_assertion(files):
    code, out, _ = call("second-assertion", files["g8m"])
    assert code == 0 and "outcome: bipancyclic-confirmed" in out
    code, out, _ = call("second-assertion", files["g8m"], "--json")
    doc = json.loads(out)
    assert doc["subgraph_size"] == 25 and doc["bipancyclic_confirmed"] is True
    code, _, err = call("second-assertion", files["gdis"])
    assert code == 2


def test_census(tmp_path):
    code, out, _ = call("census", "--n", 6, "--out", tmp_path / "members")
    assert code == 0 and "members: 80" in out
    assert len(list((tmp_path / "members").iterdir())) == 80
    code, _, err = call("census", "--n", 5)
    assert code == 2 and err.startswith("error:")
    code, _, _ = call("census", "--n", 10)
    assert code == 2


def test_matrix_census():
    code, out, _ = call("matrix-census", "--n", 6)
    assert code == 0 and "candidates: 0" in out
    code, out, _ = call("matrix-census", "--n", 8, "--json")
    doc = json.loads(out)
    assert code == 0 and len(doc["candidates"]) == 4 and doc["theorem_violations"] == 0


def test_gen(tmp_path):
    code, out, _ = call("gen", "--n", 8, "--seed", 42)
    assert code == 0
    g = parse_edge_list(out)
    assert g.is_half_regular()
    target = tmp_path / "g.txt"
    code, out, _ = call("gen", "--n", 8, "--seed", 42, "-o", target)
    assert code == 0 and out == "" and parse_edge_list(target.read_text()) == g
    code, _, _ = call("gen", "--n", 7, "--seed", 1)
    assert code == 2


def test_verify():
    code, out, _ = call("verify", "--n", 6)
    assert code == 0 and "failures: 0" in out
    code, out, _ = call("verify", "--n", 6, "--json")
    assert json.loads(out)["failure_count"] == 0


def test_allow_large_warns():
    code, _, err = call("matrix-census", "--n", 14, "--allow-large")
    assert code == 0 and err.startswith("warning:")


def test_invalid_input(tmp_path, files):
    bad = tmp_path / "bad.txt"
    bad.write_text("6\n1 7\n")
    code, out, err = call("extract", bad)
    assert code == 2 and out == "" and err.count("\n") == 1
    code, _, err = call("extract", tmp_path / "missing.txt")
    assert code == 2
    code, _, err = call("extract", files["gdis"], "--bogus")
    assert code == 2 and err.count("\n") == 1
    code, _, _ = call("frobnicate")
    assert code == 2
    code, _, _ = call()
    assert code == 2


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "bipancyclic", "extract", str(files["g6b"])],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "method: condition1b" in proc.stdout
