import math

import pytest

from onematch.audit import audit_instance
from onematch.drawing import delete_edge, delete_vertices, insert_kite_edge, validate_drawing
from onematch.generators import GenConfig, fixed_instance, generate
from onematch.graph import Matching
from onematch.pipeline import (
    Assignment,
    PipelineError,
    assign_T_to_U,
    easy_transform,
    remove_empty_lenses,
    rho_transform,
    run_pipeline,
    tpsi_violations,
    verify_lemma_hard,
)
from onematch.structure import F_H, S, T_H, U

from builders import straight_line_drawing


def rho_configuration():
    """t=0 matched to s=1 and assigned to u=3; both edges crossed by edges from x=2."""
    pos = {0: (0, 0), 1: (-2, -1), 2: (0, 2), 3: (2, -1), 4: (-1.6, -2), 5: (1.6, -2)}
    d = straight_line_drawing(pos, [(0, 1), (0, 2), (0, 3), (2, 4), (2, 5)])
    labels = {0: T_H, 1: S, 2: S, 3: U, 4: F_H, 5: F_H}
    a = Assignment(T_rho={0}, assigned={0: 3}, U={3})
    return d, labels, {0: 1, 1: 0}, a


def star_configuration():
    """u=0 carries six T vertices; the edge of t=1 to u is crossed by an edge from its mate."""
    pos, labels, mate, edges = {0: (0.0, 0.0)}, {0: U}, {}, []
    for i in range(6):
        ang = math.radians(60 * i)
        t, s = 1 + 2 * i, 2 + 2 * i
        pos[t] = (2 * math.cos(ang), 2 * math.sin(ang))
        pos[s] = (4 * math.cos(ang), 4 * math.sin(ang))
        labels[t], labels[s] = T_H, S
        mate[t], mate[s] = s, t
        edges += [(t, 0), (t, s)]
    pos[2], pos[13], labels[13] = (3, 1.5), (1.2, -0.5), F_H
    edges.append((2, 13))
    return straight_line_drawing(pos, edges), labels, mate


def test_configurations_are_valid_drawings():
    assert validate_drawing(rho_configuration()[0]) == []
    d, _, _ = star_configuration()
    assert validate_drawing(d) == [] and len(d.crossings) == 1


def test_tpsi_holds_on_the_rho_configuration():
    d, labels, mate, a = rho_configuration()
    fails, info = tpsi_violations(d, labels, mate, a, 0)
    assert fails == []
    assert (info["x"], info["y"], info["x_prime"], info["f"]) == (2, 4, 2, 5)


def test_rho_moves_the_kite_to_x():
    d, labels, mate, a = rho_configuration()
    records = []
    J, transforms = rho_transform(d, labels, mate, a, {0}, records)
    assert [(t.t, t.kind, t.new_edge) for t in transforms] == [(0, "rho", (2, 3))]
    assert 0 not in J.vertices and J.has_edge(2, 3) and not J.crossings
    assert all(r.status == "pass" for r in records)


def test_rho_refuses_when_t_x_is_missing():
    d, labels, mate, a = rho_configuration()
    d = delete_edge(d, 1)
    assert "c" in tpsi_violations(d, labels, mate, a, 0)[0]
    with pytest.raises(PipelineError) as exc:
        rho_transform(d, labels, mate, a, {0}, [])
    assert exc.value.check == "Tpsi (a)-(e) before each rho"


def test_assignment_classes_on_the_star():
    d, labels, mate = star_configuration()
    records = []
    a = assign_T_to_U(d, labels, mate, records)
    assert a.T_mu == {3, 5, 7, 9, 11} and a.T_rho == {1} and not a.T_sigma
    assert a.U_d() == {6: {0}} and a.small_U() == set()
    assert all(r.status == "pass" for r in records)


def test_easy_transform_uses_kappa_and_pi():
    d, labels, mate = star_configuration()
    records = []
    a = assign_T_to_U(d, labels, mate, records)
    I, removed, leftover, transforms = easy_transform(d, labels, mate, a, records)
    kinds = {t.t: t.kind for t in transforms}
    assert kinds == {1: "kappa", 3: "pi", 5: "pi", 7: "pi", 9: "pi", 11: "pi"}
    assert leftover == set() and sorted(removed) == [1, 3, 5, 7, 9, 11]
    assert I.degree(0) == 6 and not I.crossings
    assert all(r.status == "pass" for r in records), [str(r) for r in records]


def test_small_u_is_deleted_before_transforms():
    d, labels, mate = star_configuration()
    d = delete_vertices(d, [11, 12])       # u keeps five T vertices
    records = []
    a = assign_T_to_U(d, labels, mate, records)
    assert a.small_U() == {0}
    I, removed, _, transforms = easy_transform(d, labels, mate, a, records)
    assert transforms == [] and 0 not in I.vertices


def test_lens_removal_drops_the_higher_copy():
    c4 = fixed_instance("C4_crossed")
    J = insert_kite_edge(c4, (4, 5), 0, 1, allow_multi=True)
    records = []
    out, dropped = remove_empty_lenses(J, Assignment(), records)
    assert dropped == [6] and out == c4
    assert all(r.status == "pass" for r in records)


def test_empty_H_makes_lemma_hard_vacuous():
    state = run_pipeline(None, {}, {})
    recs = verify_lemma_hard(state)
    assert recs and all(r.status == "vacuous" for r in recs)


def test_failed_stage_makes_the_rest_vacuous():
    d, labels, mate = star_configuration()
    state = run_pipeline(d, labels, mate)
    assert state.failed is not None        # the star is not a legal H: its T vertices have degree 2
    assert all(r.status == "vacuous" for r in verify_lemma_hard(state))


def test_trade_on_a_generated_instance():
    d = generate(GenConfig(15, 300035, 1.0, 0.6))
    M = Matching([(0, 6), (1, 2), (3, 5), (4, 9), (7, 8), (10, 14), (11, 12)])
    report = audit_instance(d, M, 9)
    assert report.ok
    pipe = report.sets["pipeline"]
    assert pipe["failed"] is None and pipe["trades"] == [[[8, 7], [12, 11]]]
