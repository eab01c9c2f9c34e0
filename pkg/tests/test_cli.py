import io
import json

import pytest

from onematch.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, run
from onematch.generators import fixed_instance


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(p)


def test_bound_prints_the_expression(capsys):
    code, doc, err = call(capsys, "bound", "--n", "30", "--delta", "3", "--k", "9")
    assert code == EXIT_OK
    assert doc["expression"] == "42/7 = 6" and doc["min_matching_size"] == 6
    assert "42/7 = 6" in err


def test_bound_rejects_unsupported(capsys):
    code, doc, _ = call(capsys, "bound", "--n", "30", "--delta", "4", "--k", "3")
    assert code == EXIT_INPUT and doc is None


def test_gen_match_audit_round_trip(capsys, tmp_path):
    code, drawing, _ = call(capsys, "gen", "--n", "24", "--seed", "3", "--crossings", "0.3")
    assert code == EXIT_OK and drawing["meta"]["seed"] == 3
    path = write(tmp_path, "d.json", drawing)
    code, match, _ = call(capsys, "match", path, "--k", "9")
    assert code == EXIT_OK and match["stats"]["n"] == 24
    mpath = write(tmp_path, "m.json", match)
    code, report, _ = call(capsys, "audit", path, "--matching", mpath)
    assert code == EXIT_OK and report["ok"]
    assert report["instance"]["M"] == match["stats"]["size"]


def test_audit_many_files_in_parallel(capsys, tmp_path):
    paths = [write(tmp_path, f"{name}.json", fixed_instance(name).to_json())
             for name in ("K4", "cube", "icosahedron")]
    code, doc, _ = call(capsys, "audit", "--jobs", "2", "--k", "3", *paths)
    assert code == EXIT_OK and len(doc["reports"]) == 3


def test_seed_environment_overrides(capsys, monkeypatch):
    monkeypatch.setenv("ONEMATCH_SEED", "9")
    _, a, _ = call(capsys, "gen", "--n", "12", "--seed", "1")
    monkeypatch.delenv("ONEMATCH_SEED")
    _, b, _ = call(capsys, "gen", "--n", "12", "--seed", "9")
    assert a == b and a["meta"]["seed"] == 9


def test_validate_flags_a_doubly_crossed_edge(capsys, tmp_path):
    doc = fixed_instance("C4_crossed").to_json()
    doc["crossings"].append({"e1": 4, "e2": 1, "orient": 0})
    code, out, err = call(capsys, "validate", write(tmp_path, "bad.json", doc))
    assert code == EXIT_FAIL and not out["valid"]
    assert any("1-planarity" in p for p in out["problems"]) and "1-planarity" in err


def test_validate_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(fixed_instance("cube").to_json())))
    code, out, _ = call(capsys, "validate", "-", "--simple")
    assert code == EXIT_OK and out["valid"] and out["min_degree"] == 3


@pytest.mark.parametrize("content", ["{not json", json.dumps({"vertices": [0, 1]})])
def test_malformed_input_exits_two(capsys, tmp_path, content):
    code, out, err = call(capsys, "audit", write(tmp_path, "x.json", content))
    assert code == EXIT_INPUT and out is None and err


def test_missing_file_exits_two(capsys, tmp_path):
    assert call(capsys, "validate", str(tmp_path / "nope.json"))[0] == EXIT_INPUT


def test_oracle_respects_the_cap(capsys, tmp_path):
    small = write(tmp_path, "k4.json", fixed_instance("K4").to_json())
    code, out, _ = call(capsys, "oracle", small)
    assert code == EXIT_OK and out["stats"]["size"] == 2
    big = write(tmp_path, "medial.json", fixed_instance("medial:0").to_json())
    assert call(capsys, "oracle", big)[0] == EXIT_INPUT


def test_audit_reports_failure_with_exit_one(capsys, tmp_path):
    path = write(tmp_path, "cube.json", fixed_instance("cube").to_json())
    empty = write(tmp_path, "m.json", {"matching": {"edges": []}})
    code, report, err = call(capsys, "audit", path, "--matching", empty)
    assert code == EXIT_FAIL and not report["ok"] and "precondition" in err


def test_unknown_verb_exits_two(capsys):
    assert run(["frobnicate"]) == EXIT_INPUT
    capsys.readouterr()
