from __future__ import annotations

import json

import pytest

from mixthin import io
from mixthin.cli import BAD_INPUT, FAILED, OK, main

from sweep import c5_instance


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def out_json(text: str):
    return json.loads(text)


@pytest.fixture
def c5_files(tmp_path):
    inst = c5_instance()
    g, w = tmp_path / "g.json", tmp_path / "w.json"
    io.write_json(g, io.graph_to_json(inst.graph))
    io.write_json(w, io.witness_to_json(inst.witness))
    return g, w


def test_verify_c5(capsys, c5_files):
    code, out = run(capsys, "verify", *c5_files)
    assert code == OK and out_json(out)["accepted"] is True


def test_verify_rejects(capsys, tmp_path, c5_files):
    g, w = c5_files
    data = io.read_json(w)
    data["orders"]["1,2"] = [0, 3, 2, 1, 4]
    bad = tmp_path / "bad.json"
    io.write_json(bad, data)
    code, out = run(capsys, "verify", g, bad)
    assert code == FAILED and out_json(out)["violations"]


def test_gen_contract_replay(capsys, tmp_path):
    g, w, t = tmp_path / "g.json", tmp_path / "w.json", tmp_path / "t.json"
    assert run(capsys, "gen", "grid", 4, 5, "--out", g, "--witness", w)[0] == OK
    code, out = run(capsys, "contract", g, w, "--out", t, "--debug-invariants")
    result = out_json(out)
    assert code == OK and result["max_red"] <= result["bound"] == 27
    code, out = run(capsys, "replay", g, t, "--bound", 27)
    assert code == OK and out_json(out)["complete"]
    code, _ = run(capsys, "replay", g, t, "--bound", 2)
    assert code == FAILED


@pytest.mark.parametrize("family,params", [
    ("comp-matching", [3]), ("tree", [7]), ("multidim", [2, 3]), ("lower-bound", [2, 4]),
    ("paths", ["c3-arcs"]),
])
def test_gen_families_verify(capsys, tmp_path, family, params):
    g, w = tmp_path / "g.json", tmp_path / "w.json"
    assert run(capsys, "gen", family, *params, "--out", g, "--witness", w)[0] == OK
    assert run(capsys, "verify", g, w)[0] == OK


def test_tww_exact(capsys, c5_files):
    code, out = run(capsys, "tww-exact", c5_files[0])
    assert code == OK and out_json(out)["twin_width"] == 2
    code, out = run(capsys, "tww-exact", c5_files[0], "--max-vertices", 3)
    assert code == FAILED and out_json(out)["upper_bound"] is None


@pytest.mark.parametrize("mode", ["fo", "proc"])
def test_poset_round_trip_through_files(capsys, tmp_path, c5_files, mode):
    g, w = c5_files
    p, back = tmp_path / "p.json", tmp_path / "back.json"
    assert run(capsys, "encode-to-poset", g, w, "--out", p, "--render", tmp_path / "p.dot")[0] == OK
    assert run(capsys, "decode-from-poset", p, "--k", 2, "--mode", mode, "--out", back)[0] == OK
    assert back.read_text() == g.read_text()
    assert (tmp_path / "p.dot").read_text().startswith("digraph")


def test_graph_round_trip_through_files(capsys, tmp_path):
    p = tmp_path / "p.json"
    io.write_json(p, {"n": 4, "cover_pairs": [[0, 1], [2, 3], [0, 3]], "marks": {}})
    g, m, w, back = (tmp_path / x for x in ("g.json", "m.json", "w.json", "back.json"))
    assert run(capsys, "encode-to-graph", p, "--out", g, "--marks", m, "--witness", w)[0] == OK
    assert run(capsys, "verify", g, w)[0] == OK
    assert run(capsys, "decode-from-graph", g, m, "--mode", "fo", "--out", back)[0] == OK
    assert io.read_json(back)["cover_pairs"] == [[0, 1], [0, 3], [2, 3]]


def test_formula(capsys):
    code, out = run(capsys, "formula", "same_chain", "--k", 1)
    assert code == OK and out.strip() == "(and (C_1 u) (C_1 v))"
    code, out = run(capsys, "formula", "edge", "--k", 2, "--depth")
    assert out.strip().endswith("quantifier depth 6")


def test_render(capsys, c5_files):
    g, w = c5_files
    code, out = run(capsys, "render", "trisection", g, w, "--pair", 1, 2)
    assert code == OK and "<TABLE" in out
    code, out = run(capsys, "render", "graph", g, w)
    assert code == OK and out.startswith("graph G")


def test_bad_input_exit_codes(capsys, tmp_path, c5_files):
    assert run(capsys, "bogus")[0] == BAD_INPUT
    loop = tmp_path / "loop.json"
    loop.write_text('{"n": 2, "edges": [[1, 1]]}')
    code, out = run(capsys, "verify", loop, c5_files[1])
    assert code == BAD_INPUT and "/edges/0" in out_json(out)["error"]
    assert run(capsys, "verify", tmp_path / "none.json", c5_files[1])[0] == BAD_INPUT
    assert run(capsys, "formula", "edge")[0] == BAD_INPUT
    assert run(capsys, "gen", "grid", 3)[0] == BAD_INPUT
