import json
import os

import pytest

from onematch.audit import AuditInputError, audit_instance
from onematch.drawing import drawing_from_faces
from onematch.generators import GenConfig, fixed_instance, generate
from onematch.graph import Matching
from onematch.report import FAIL, PASS, VACUOUS


def final(report, prefix):
    return next(r for r in report.records if r.name.startswith(prefix))


@pytest.mark.parametrize("k", [3, 9])
def test_generated_instances_pass(k):
    for seed in range(8):
        d = generate(GenConfig(20 + 5 * seed, seed, 0.4, 0.3), stellated=seed % 2 == 1)
        report = audit_instance(d, None, k)
        assert report.ok, [str(r) for r in report.failed]
        name = "Theorem main:" if k == 9 else "Theorem easy:"
        assert final(report, name).status in (PASS, VACUOUS)


def test_stellated_instance_reaches_the_main_bound():
    d = generate(GenConfig(30, 1, 0.3, 0.0), stellated=True)
    report = audit_instance(d)
    rec = final(report, "Theorem main:")
    assert rec.status == PASS
    assert rec.lhs == 7 * report.instance["M"] and rec.rhs == report.instance["n"] + 12


def test_icosahedron_is_vacuous_not_failed():
    report = audit_instance(fixed_instance("icosahedron"))
    assert report.ok
    assert report.instance["M"] == 6 and report.instance["F"] == 0
    assert final(report, "Theorem highdegree (as stated)").status == VACUOUS
    assert final(report, "Theorem highdegree (from middle4)").status == PASS


def test_medial_graph_runs_the_degree_four_chain():
    report = audit_instance(fixed_instance("medial:2"))
    assert report.ok and report.instance["delta"] == 4
    assert any(r.name.startswith("Lemma middle4") for r in report.records)
    assert final(report, "Theorem highdegree (as stated)").status in (PASS, VACUOUS)


def test_given_matching_with_short_path_is_recorded():
    d = fixed_instance("cube")
    report = audit_instance(d, Matching(), 9)
    pre = report.records[0]
    assert pre.status == FAIL and pre.name.startswith("precondition")
    # nothing downstream is claimed on a failed precondition
    assert not any(r.status == FAIL for r in report.records[1:])


@pytest.mark.parametrize("make, k, why", [
    (lambda: fixed_instance("K4"), 5, "k must be"),
    (lambda: drawing_from_faces([(0, 1, 2), (0, 2, 1)]), 9, "minimum degree"),
])
def test_bad_inputs_raise(make, k, why):
    with pytest.raises(AuditInputError, match=why):
        audit_instance(make(), None, k)


def test_invalid_matching_is_an_input_error():
    with pytest.raises(AuditInputError, match="invalid matching"):
        audit_instance(fixed_instance("K4"), Matching([(0, 1), (1, 2)]))


def test_report_serializes_and_dumps_stages(tmp_path):
    d = generate(GenConfig(30, 0, 0.3, 0.0), stellated=True)
    report = audit_instance(d, dump_dir=str(tmp_path))
    assert report.sets["F_H"]
    doc = json.loads(json.dumps(report.to_json()))
    assert doc["ok"] is True and len(doc["records"]) == len(report.records)
    assert {"H_plus.json", "I.json", "J.json", "J_minus.json"} <= set(os.listdir(tmp_path))
