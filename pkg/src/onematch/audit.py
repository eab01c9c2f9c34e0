"""Instance-level audit: every inequality of the matching-bound proofs as an integer check.

Chain-dependent records become vacuous once a record they rely on has
failed. The final cardinality records only use |M| and n, so they are
always evaluated.
"""

from __future__ import annotations

from .bounds import (
    check_independent_set_bound,
    theorem_bound,
)
from .drawing import Drawing, extract_subdrawing, validate_drawing
from .graph import Graph, Matching, min_degree, validate_matching
from .matching import eliminate_bounded_augmenting_paths, find_bounded_augmenting_path
from .pipeline import run_pipeline, verify_lemma_hard
from .report import FAIL, AuditReport, CheckRecord, assertion, compare, vacuous
from .structure import (
    StructureError,
    alternating_levels,
    build_H,
    find_cycle_flowers,
    find_stem_blossoms,
    horizontal_violations,
    path_violations,
)

SUPPORTED_K = (3, 9)


class AuditInputError(ValueError):
    """The drawing or matching does not meet the audit's input contract."""


class _Chain:
    """Records with dependency tracking: after a failure, dependents go vacuous."""

    def __init__(self, report: AuditReport) -> None:
        self.report = report
        self.broken: str | None = None

    def add(self, rec: CheckRecord, *, dependent: bool = True) -> CheckRecord:
        if dependent and self.broken is not None and rec.status != "vacuous":
            rec = vacuous(rec.name, f"depends on failed {self.broken}", rec.lhs, rec.rhs,
                          rec.relation)
        self.report.add(rec)
        if rec.status == FAIL and self.broken is None:
            self.broken = rec.name
        return rec

    def extend(self, recs, **kw) -> None:
        for r in recs:
            self.add(r, **kw)


def guarded(name: str, lhs: int, relation: str, rhs: int, *, guard: bool,
            reason: str) -> CheckRecord:
    """Pass if the inequality holds, else fail when the guard held, else vacuous."""
    rec = compare(name, lhs, relation, rhs)
    if rec.status == FAIL and not guard:
        return vacuous(name, reason, lhs, rhs, relation)
    return rec


def _prepare(d: Drawing, M: Matching | None, k: int) -> tuple[Graph, Matching, int]:
    if k not in SUPPORTED_K:
        raise AuditInputError(f"k must be one of {SUPPORTED_K}, got {k}")
    problems = validate_drawing(d, allow_disconnected=True)
    if problems:
        raise AuditInputError("invalid drawing: " + "; ".join(problems[:3]))
    try:
        g = d.to_graph()
    except ValueError as exc:
        raise AuditInputError(str(exc)) from exc
    if g.n == 0:
        raise AuditInputError("empty graph")
    delta = min_degree(g)
    if delta < 3:
        raise AuditInputError(f"minimum degree {delta} < 3")
    if M is None:
        M = eliminate_bounded_augmenting_paths(g, None, k)
    report = validate_matching(g, M)
    if not report:
        raise AuditInputError("invalid matching: " + "; ".join(report.reasons[:3]))
    return g, M, delta


def audit_instance(d: Drawing, M: Matching | None = None, k: int = 9, *,
                   dump_dir: str | None = None) -> AuditReport:
    g, M, delta = _prepare(d, M, k)
    free = [v for v in range(g.n) if not M.covers(v)]
    report = AuditReport(
        instance={"n": g.n, "m": g.m, "delta": delta, "k": k, "M": len(M), "F": len(free),
                  "meta": d.meta},
        matching=sorted(M.edges))
    chain = _Chain(report)
    path = find_bounded_augmenting_path(g, M, k)
    chain.add(assertion(f"precondition: no {k}-augmenting path",
                        [list(path.vertices)] if path else []))
    if path is None:
        if k == 9:
            _audit_k9(chain, d, g, M, delta, dump_dir)
        else:
            _audit_k3(chain, d, g, M)
    _final_records(chain, g, M, delta, k)
    return report


# ----------------------------------------------------------------- k = 9


def _injective(name: str, mapping: dict, allowed: set) -> CheckRecord:
    images = list(mapping.values())
    bad = [v for v, e in sorted(mapping.items()) if e not in allowed]
    if len(set(images)) != len(images):
        bad.append("images repeat")
    rec = assertion(name, bad)
    rec.witness = rec.witness or [[v, list(e)] for v, e in sorted(mapping.items())]
    return rec


def _audit_k9(chain: _Chain, d: Drawing, g: Graph, M: Matching, delta: int,
              dump_dir: str | None) -> None:
    report = chain.report
    try:
        flowers = find_stem_blossoms(g, M, find_cycle_flowers(g, M))
    except StructureError as exc:
        chain.add(CheckRecord(f"claim {exc.check}", FAIL, 1, 0, "==", exc.witness, str(exc)))
        return
    chain.add(_injective("claim FC injective witness", flowers.fc_witness, flowers.M_C))
    chain.add(compare("claim FC", len(flowers.F_C), "<=", len(flowers.M_C)))
    chain.add(_injective("claim TDelta injective witness", flowers.tb_witness, flowers.M_B))
    chain.add(compare("claim TDelta", len(flowers.T_B), "<=", len(flowers.M_B)))

    dec = alternating_levels(g, M, flowers.V_C | flowers.V_B)
    chain.add(assertion("observation horizontal", horizontal_violations(g, M, dec)))
    chain.add(assertion("alternating level witnesses", path_violations(dec)))
    aux = build_H(d, g, M, dec, flowers, strict=False)
    for name, bad in aux.checks.items():
        chain.add(assertion(name, bad))

    nF, nS, nT, nU = len(dec.F_H), len(dec.S), len(dec.T_H), len(dec.U)
    F = {v for v in range(g.n) if not M.covers(v)}
    chain.add(compare("|F| = |F_C| + |F_H|", len(F), "==", len(flowers.F_C) + nF))
    chain.add(compare("|S| = |T_H| + |T_B|", nS, "==", nT + len(flowers.T_B)))
    report.sets = {
        "V_C": flowers.V_C, "F_C": flowers.F_C, "M_C": flowers.M_C,
        "T_B": flowers.T_B, "M_B": flowers.M_B, "V_B": flowers.V_B,
        **dec.to_json(),
    }

    have_FH = nF > 0
    why = "F_H is empty, so the independent-set bound has no non-empty A"
    H = aux.drawing
    if H is not None:
        sub = extract_subdrawing(H, dec.F_H | dec.S, require_connected=False) if have_FH else H
        chain.add(check_independent_set_bound(sub, dec.F_H, name="BW on H[F_H+S], A = F_H"))
        chain.add(check_independent_set_bound(H, dec.F_H | dec.T_H,
                                               name="BW on H, A = F_H+T_H"))
    chain.add(guarded("Lemma middle (i)", nF, "<=", 6 * nS - 12, guard=have_FH, reason=why))
    chain.add(guarded("Lemma middle (ii)", nF + nT, "<=", 6 * nS + 6 * nU - 12,
                      guard=have_FH, reason=why))
    if delta > 3:
        chain.add(guarded("Lemma middle4 (i)", (delta - 2) * nF, "<=", 4 * nS - 8,
                          guard=have_FH, reason=why))
        chain.add(guarded("Lemma middle4 (ii)", (delta - 2) * (nF + nT), "<=",
                          4 * (nS + nU) - 8, guard=have_FH, reason=why))
    m, n = len(M), g.n
    chain.add(guarded("corollary 7|F| <= 36|M| - 84", 7 * len(F), "<=", 36 * m - 84,
                      guard=have_FH, reason=why))
    chain.add(guarded("corollary 50|M| >= 7(n+12)", 50 * m, ">=", 7 * (n + 12),
                      guard=have_FH, reason=why))

    state = run_pipeline(H, aux.labels, M.partner, dump_dir)
    chain.extend(state.records)
    chain.extend(verify_lemma_hard(state))
    report.sets["pipeline"] = state.to_json()

    M_S, M_U, M_C, M_B = dec.M_S, dec.M_U, flowers.M_C, flowers.M_B
    parts = [M_S, M_U, M_C, M_B]
    overlap = [list(e) for i, a in enumerate(parts) for b in parts[i + 1:] for e in a & b]
    overlap += [list(e) for p in parts for e in p if e not in M.edges]
    chain.add(assertion("reassembly: M_S, M_U, M_C, M_B disjoint in M", overlap))
    recomposed = 5 * len(M_S) + 5 * len(M_U) + len(M_C) + len(M_B) - 12
    chain.add(guarded("reassembly: |F| <= 5|M_S|+5|M_U|+|M_C|+|M_B|-12", len(F), "<=",
                      recomposed, guard=have_FH, reason=why))
    chain.add(compare("reassembly: recomposed bound <= 5|M|-12", recomposed, "<=", 5 * m - 12))
    chain.add(guarded("Theorem main proof: |F| <= 5|M|-12", len(F), "<=", 5 * m - 12,
                      guard=have_FH, reason=why))


# ----------------------------------------------------------------- k = 3


def _audit_k3(chain: _Chain, d: Drawing, g: Graph, M: Matching) -> None:
    F = {v for v in range(g.n) if not M.covers(v)}
    fc_map: dict[int, tuple[int, int]] = {}
    M_c: set[tuple[int, int]] = set()
    for e in sorted(M.edges):
        x, y = e
        common = sorted(set(g.neighbors(x)) & set(g.neighbors(y)) & F)
        if common:
            M_c.add(e)
            for f in common:
                fc_map.setdefault(f, e)
    F_c = set(fc_map)
    chain.add(_injective("easy: F_c injective witness", fc_map, M_c))
    chain.add(compare("easy: |F_c| <= |M_c|", len(F_c), "<=", len(M_c)))
    M_o = set(M.edges) - M_c
    F_o = F - F_c
    both, S_easy = [], set()
    for x, y in sorted(M_o):
        ends = [v for v in (x, y) if any(w in F for w in g.neighbors(v))]
        if len(ends) > 1:
            both.append([x, y])
        S_easy.update(ends)
    chain.add(assertion("easy: one end of each M_o edge sees F", both))
    stray = sorted(f for f in F_o for w in g.neighbors(f) if w not in S_easy)
    chain.add(assertion("easy: F_o neighbours lie in S", stray))
    chain.report.sets = {"F_c": F_c, "M_c": M_c, "F_o": F_o, "S": S_easy}
    have = bool(F_o)
    why = "F_o is empty, so the independent-set bound has no non-empty A"
    if have:
        sub = extract_subdrawing(d, F_o | S_easy, require_connected=False)
        chain.add(check_independent_set_bound(sub, F_o, name="BW on G[F_o+S], A = F_o"))
    chain.add(guarded("easy: |F_o| <= 6|S|-12", len(F_o), "<=", 6 * len(S_easy) - 12,
                      guard=have, reason=why))
    chain.add(compare("easy: |S| <= |M_o|", len(S_easy), "<=", len(M_o)))
    chain.add(guarded("easy: |F| <= |M_c| + 6|M_o| - 12", len(F), "<=",
                      len(M_c) + 6 * len(M_o) - 12, guard=have, reason=why))


# --------------------------------------------------------------- final


def _final_records(chain: _Chain, g: Graph, M: Matching, delta: int, k: int) -> None:
    n, m = g.n, len(M)
    F = n - 2 * m
    chain.add(compare("n = 2|M| + |F|", n, "==", 2 * m + F), dependent=False)
    # the chains end in an independent-set bound that needs a non-empty A
    key = "F_o" if k == 3 else "F_H"
    guard = bool(chain.report.sets.get(key))
    why = f"{key} is empty: the non-empty independent set precondition is unmet"
    if k == 3:
        b = theorem_bound(n, 3, 3)
        chain.add(guarded("Theorem easy: 8|M| >= n+12", 8 * m, ">=", n + 12, guard=guard,
                          reason=why), dependent=False)
        chain.report.instance["bound"] = str(b)
        return
    chain.add(guarded("Theorem main: 7|M| >= n+12", 7 * m, ">=", n + 12, guard=guard,
                      reason=why), dependent=False)
    chain.report.instance["bound"] = str(theorem_bound(n, min(delta, 5), 9))
    if delta == 4:
        chain.add(guarded("Theorem highdegree (as stated): 10|M| >= 3(n+12)", 10 * m, ">=",
                          3 * (n + 12), guard=guard, reason=why), dependent=False)
        chain.add(guarded("Theorem highdegree (from middle4): 10|M| >= 3n+12", 10 * m, ">=",
                          3 * n + 12, guard=guard, reason=why),
                  dependent=False)
    elif delta >= 5:
        chain.add(guarded("Theorem highdegree (as stated): 3|M| >= n+12", 3 * m, ">=", n + 12,
                          guard=guard, reason=why), dependent=False)
        chain.add(guarded("Theorem highdegree (from middle4): 3(d-2)|M| >= (d-2)n+8",
                          3 * (delta - 2) * m, ">=", (delta - 2) * n + 8, guard=guard,
                          reason=why), dependent=False)
