import json

import pytest

from toposlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sites_json(capsys):
    code, out, _ = run(capsys, "sites", "--format", "json")
    assert code == 0
    rows = json.loads(out)["sites"]
    for r in rows:
        assert set(r) == {"name", "objects", "morphisms", "omega", "corpus", "label"}
        assert isinstance(r["objects"], int) and isinstance(r["corpus"], bool)
    rg = next(r for r in rows if r["name"] == "reflexive_graph")
    assert rg["omega"] == {"E": 5, "V": 2} and rg["morphisms"] == 7
    assert sum(r["corpus"] for r in rows) == 8
    assert run(capsys, "sites", "--format", "json")[1] == out


def test_sites_text(capsys):
    code, out, _ = run(capsys, "sites")
    assert code == 0 and "reflexive_graph" in out and "E:5" in out


def test_check_single_statement(capsys):
    code, out, _ = run(capsys, "check", "reflexive_graph", "--suite", "uiao", "--bound", "2", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert [v["status"] for v in rep["verdicts"]] == ["pass"]
    assert rep["summary"]["uiao"]["pass"] == 1


def test_check_mclarty_witness(capsys):
    code, out, _ = run(capsys, "check", "zmod2", "--suite", "mclarty-corollary", "--bound", "2",
                       "--format", "json")
    assert code == 0
    v = json.loads(out)["verdicts"][0]
    assert v["witness"]["reflects_zero"]["object"]["action"] == {"g": {"0": "1", "1": "0"}}


def test_check_text_output(capsys):
    code, out, _ = run(capsys, "check", "idempotent", "--suite", "tau-negation", "--bound", "2")
    assert code == 0 and "PASS" in out


def test_check_site_file(capsys, tmp_path):
    f = tmp_path / "site.json"
    f.write_text(json.dumps({
        "name": "two", "objects": ["*"],
        "morphisms": [{"name": "1", "src": "*", "tgt": "*"}, {"name": "e", "src": "*", "tgt": "*"}],
        "identities": {"*": "1"},
        "compose": [["1", "1", "1"], ["1", "e", "e"], ["e", "1", "e"], ["e", "e", "e"]]}))
    code, out, err = run(capsys, "check", str(f), "--suite", "decidable-subterminal", "--bound", "2")
    assert code == 0, err
    assert "two" in out and "PASS" in out


def test_site_file_missing_composite(capsys, tmp_path):
    f = tmp_path / "site.json"
    f.write_text(json.dumps({"name": "x", "objects": ["*"], "morphisms": [{"name": "1", "src": "*", "tgt": "*"}],
                             "identities": {"*": "1"}, "compose": []}))
    code, _, err = run(capsys, "check", str(f))
    assert code == 2 and "missing" in err


def test_bad_site_file(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{\n  oops")
    code, _, err = run(capsys, "check", str(f))
    assert code == 2 and str(f) in err and ":2:" in err


def test_unknown_site_and_statement(capsys):
    assert run(capsys, "check", "no_such_site")[0] == 2
    assert run(capsys, "check", "terminal", "--suite", "nope")[0] == 2
    assert run(capsys, "check", "terminal", "--bound", "0")[0] == 2
    assert run(capsys)[0] == 2


def test_inspect_one_edge(capsys):
    obj = json.dumps({"carrier": {"V": ["a", "b"], "E": ["la", "lb", "e"]},
                      "action": {"d0": {"la": "a", "lb": "b", "e": "a"}, "d1": {"la": "a", "lb": "b", "e": "b"},
                                 "sigma": {"a": "la", "b": "lb"}}})
    code, out, err = run(capsys, "inspect", "reflexive_graph", obj, "--format", "json")
    assert code == 0, err
    r = json.loads(out)
    assert r["decidable"] is False and "decidable_witness" in r
    assert r["coreflection"]["sizes"] == {"E": 2, "V": 2}
    # it embeds in the codiscrete graph on {a, b}, so the diagonal is already closed
    assert r["closure"]["separation_witness"] is None
    assert r["sheafification"]["sizes"] == {"E": 4, "V": 2} and r["sheafification"]["unit_monic"]
    code, out, _ = run(capsys, "inspect", "reflexive_graph", obj)
    assert "decidable: no" in out


def test_inspect_extra_loop_not_separated(capsys):
    obj = json.dumps({"carrier": {"V": ["a"], "E": ["la", "x"]},
                      "action": {"d0": {"la": "a", "x": "a"}, "d1": {"la": "a", "x": "a"}, "sigma": {"a": "la"}}})
    code, out, _ = run(capsys, "inspect", "reflexive_graph", obj, "--format", "json")
    r = json.loads(out)
    assert code == 0 and r["closure"]["separation_witness"] is not None
    assert r["coreflection"]["sizes"] == {"E": 1, "V": 1}
    assert r["sheafification"]["sizes"] == {"E": 1, "V": 1}


def test_inspect_empty(capsys):
    code, out, _ = run(capsys, "inspect", "reflexive_graph", '{"carrier": {"V": [], "E": []}, "action": {}}')
    assert code == 0 and "decidable: yes" in out


def test_inspect_not_functorial(capsys):
    obj = json.dumps({"carrier": {"*": ["x", "y"]}, "action": {"g": {"x": "x", "y": "x"}}})
    code, _, err = run(capsys, "inspect", "zmod2", obj)
    assert code == 2 and err.startswith("error:")


def test_env_bound(capsys, monkeypatch):
    monkeypatch.setenv("TOPOSLAB_BOUND", "2")
    code, out, _ = run(capsys, "check", "terminal", "--suite", "uiao", "--format", "json")
    assert code == 0 and json.loads(out)["verdicts"][0]["bound"] == 2
    monkeypatch.setenv("TOPOSLAB_BOUND", "zero")
    assert run(capsys, "sites")[0] == 2


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0
