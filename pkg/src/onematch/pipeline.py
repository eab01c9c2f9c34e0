"""Drawing transformations behind the bound on |F_H| + |T_H|.

Stages: H -> H+ (kite edges, traded partners) -> assignment of T_H to U
-> I (kappa/pi transformations) -> J (rho transformations) -> J- (empty
lenses removed). Each stage appends its assertions to a record list and
raises :class:`PipelineError` if any of them failed.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field

from .bounds import check_weighted_independent_set_bound, weighted_bw_lhs
from .drawing import (
    CrossingKey,
    Drawing,
    DrawingError,
    crossing_weighted_degree,
    delete_edges,
    delete_vertex,
    delete_vertices,
    find_empty_lenses,
    has_empty_theta,
    insert_kite_edge,
    is_kite_region,
    kite_edge_at,
    multi_edge_groups,
    potential_kite_edges,
    reroute_as_kite,
    smooth_path,
    validate_drawing,
)
from .report import CheckRecord, assertion, compare, vacuous
from .structure import F_H, S, T_H, U

SU = (S, U)
MAX_KITE_STEPS = 100_000


class PipelineError(AssertionError):
    def __init__(self, check: str, witness: object = None) -> None:
        super().__init__(f"{check} failed: {witness}")
        self.check = check
        self.witness = witness


def _raise_failed(records: list[CheckRecord], start: int) -> None:
    for r in records[start:]:
        if r.status == "fail":
            raise PipelineError(r.name, r.witness)


def edge_between(d: Drawing, a: int, b: int) -> int | None:
    es = d.edges_between(a, b)
    return es[0] if es else None


def _crossing_key(c: tuple[int, int, int]) -> CrossingKey:
    return (c[0], c[1])


# ----------------------------------------------------------------------- H+


def _kite_step(d: Drawing, c: CrossingKey, t: int, x: int, mate: dict[int, int]) -> Drawing | None:
    e = edge_between(d, t, x)
    if e is None:
        return insert_kite_edge(d, c, t, x)
    if d.is_crossed(e):
        return reroute_as_kite(d, e, c)
    m_edge = edge_between(d, t, mate[t]) if t in mate else None
    if m_edge is not None and m_edge in c and kite_edge_at(d, c, t, x) != e:
        return reroute_as_kite(d, e, c)
    return None


def _kite_pairs(d: Drawing, c: CrossingKey, labels: dict[int, str]):
    for a, b in potential_kite_edges(d, c):
        for t, x in ((a, b), (b, a)):
            if labels[t] == T_H and labels[x] in SU:
                yield t, x


def _next_kite_change(d: Drawing, labels, mate) -> Drawing | None:
    for c in sorted(d.crossings):
        key = _crossing_key(c)
        for t, x in _kite_pairs(d, key, labels):
            out = _kite_step(d, key, t, x, mate)
            if out is not None:
                return out
    return None


def build_H_plus(H: Drawing, labels: dict[int, str], mate: dict[int, int],
                 records: list[CheckRecord]) -> tuple[Drawing, dict[int, int], list]:
    """Return H+, the traded partner map, and the list of trades."""
    start = len(records)
    d = delete_edges(H, [e for e, (a, b) in H.edges.items()
                         if labels[a] in SU and labels[b] in SU])
    for _ in range(MAX_KITE_STEPS):
        nxt = _next_kite_change(d, labels, mate)
        if nxt is None:
            break
        d = nxt
    else:
        raise PipelineError("H+ kite fixpoint", "no convergence")

    traded = dict(mate)
    trades = []
    for e1, e2, _ in sorted(d.crossings):
        (a1, b1), (a2, b2) = d.edges[e1], d.edges[e2]
        if traded.get(a1) != b1 or traded.get(a2) != b2:
            continue
        s1, t1 = (a1, b1) if labels[a1] == S else (b1, a1)
        s2, t2 = (a2, b2) if labels[a2] == S else (b2, a2)
        traded[s1], traded[t2] = t2, s1
        traded[s2], traded[t1] = t1, s2
        trades.append(((s1, t1), (s2, t2)))

    records.extend(hplus_checks(d, labels, traded))
    _raise_failed(records, start)
    return d, traded, trades


def hplus_checks(d: Drawing, labels: dict[int, str], mate: dict[int, int]) -> list[CheckRecord]:
    one_end = [d.edges[e] for e in sorted(d.edges)
               if (labels[d.edges[e][0]] in SU) + (labels[d.edges[e][1]] in SU) != 1]
    degree_bad = []
    for v in sorted(d.vertices):
        if labels[v] == F_H:
            allowed = (S,)
        elif labels[v] == T_H:
            allowed = SU
        else:
            continue
        if d.degree(v) < 3 or any(labels[w] not in allowed for w in d.neighbors(v)):
            degree_bad.append(v)
    kite_bad = []
    for c in sorted(d.crossings):
        key = _crossing_key(c)
        for t, x in _kite_pairs(d, key, labels):
            e = edge_between(d, t, x)
            if e is None or d.is_crossed(e):
                kite_bad.append({"crossing": list(key), "pair": [t, x], "issue": "missing"})
                continue
            m_edge = edge_between(d, t, mate[t]) if t in mate else None
            if m_edge in key and kite_edge_at(d, key, t, x) != e:
                kite_bad.append({"crossing": list(key), "pair": [t, x], "issue": "not at c"})
    crossing_matched = [list(c[:2]) for c in sorted(d.crossings)
                        if all(mate.get(d.edges[e][0]) == d.edges[e][1] for e in c[:2])]
    simple = [] if d.is_simple() else ["parallel edges"]
    return [
        assertion("Hplus simple", simple),
        assertion("Hplus (a) one endpoint in S or U", one_end),
        assertion("Hplus (b) degrees and neighbourhoods", degree_bad),
        assertion("Hplus (c) kite edges present", kite_bad),
        assertion("Hplus (d) no crossing matching edges", crossing_matched),
    ]


# --------------------------------------------------------------- assignment


@dataclass
class Assignment:
    T_mu: set[int] = field(default_factory=set)
    T_sigma: set[int] = field(default_factory=set)
    T_rho: set[int] = field(default_factory=set)
    assigned: dict[int, int] = field(default_factory=dict)     # t -> u
    U: set[int] = field(default_factory=set)
    reassignments: list[tuple[int, int, int]] = field(default_factory=list)

    def load(self) -> Counter[int]:
        c: Counter[int] = Counter({u: 0 for u in self.U})
        c.update(self.assigned.values())
        return c

    def U_d(self) -> dict[int, set[int]]:
        out: dict[int, set[int]] = {}
        for u, k in self.load().items():
            out.setdefault(k, set()).add(u)
        return out

    def T_d(self) -> dict[int, set[int]]:
        load = self.load()
        out: dict[int, set[int]] = {}
        for t, u in self.assigned.items():
            out.setdefault(load[u], set()).add(t)
        return out

    def small_U(self) -> set[int]:
        return {u for u, k in self.load().items() if k <= 5}

    def small_T(self) -> set[int]:
        small = self.small_U()
        return {t for t, u in self.assigned.items() if u in small}

    def to_json(self) -> dict:
        return {
            "T_mu": sorted(self.T_mu), "T_sigma": sorted(self.T_sigma),
            "T_rho": sorted(self.T_rho),
            "assigned": [[t, u] for t, u in sorted(self.assigned.items())],
            "U_d": {str(k): sorted(v) for k, v in sorted(self.U_d().items())},
            "reassignments": [list(r) for r in self.reassignments],
        }


def assign_T_to_U(Hp: Drawing, labels: dict[int, str], mate: dict[int, int],
                  records: list[CheckRecord]) -> Assignment:
    start = len(records)
    a = Assignment(U={v for v in Hp.vertices if labels[v] == U})
    classification_bad = []
    for t in sorted(v for v in Hp.vertices if labels[v] == T_H):
        u_edges = [e for e in Hp.incident_edges(t) if labels[Hp.other_end(e, t)] == U]
        uncrossed = sorted(Hp.other_end(e, t) for e in u_edges if not Hp.is_crossed(e))
        s_nbrs = {w for w in Hp.neighbors(t) if labels[w] == S}
        if uncrossed:
            a.T_mu.add(t)
            a.assigned[t] = _preferred_u(Hp, labels, t, mate) or uncrossed[0]
        elif len(s_nbrs) >= 3:
            a.T_sigma.add(t)
        else:
            a.T_rho.add(t)
            u_nbrs = sorted(Hp.other_end(e, t) for e in u_edges)
            if not u_nbrs:
                classification_bad.append(t)
                continue
            a.assigned[t] = u_nbrs[0]
    records.append(assertion("assignment classification", classification_bad))
    _raise_failed(records, start)

    while True:
        load = a.load()
        move = None
        for t in sorted(a.assigned):
            if load[a.assigned[t]] <= 5:
                continue
            light = sorted(w for w in Hp.neighbors(t) if labels[w] == U and load[w] <= 4)
            if light:
                move = (t, a.assigned[t], light[0])
                break
        if move is None:
            break
        a.assigned[move[0]] = move[2]
        a.reassignments.append(move)

    records.extend(tsmall_checks(Hp, labels, a))
    _raise_failed(records, start)
    return a


def _preferred_u(Hp: Drawing, labels, t: int, mate: dict[int, int]) -> int | None:
    """The U-end of the edge crossing t's matching edge, if there is one."""
    m_edge = edge_between(Hp, t, mate[t])
    other = Hp.partner_edge(m_edge) if m_edge is not None else None
    if other is None:
        return None
    for w in Hp.edges[other]:
        if labels[w] == U:
            e = edge_between(Hp, t, w)
            if e is not None and not Hp.is_crossed(e):
                return w
    return None


def tsmall_checks(Hp: Drawing, labels, a: Assignment) -> list[CheckRecord]:
    U_d, T_d = a.U_d(), a.T_d()
    load = a.load()
    small_T = sum(len(T_d.get(k, ())) for k in range(1, 6))
    small_U = sum(len(U_d.get(k, ())) for k in range(0, 6))
    partition = [t for t in sorted(v for v in Hp.vertices if labels[v] == T_H)
                 if (t in a.T_mu) + (t in a.T_sigma) + (t in a.T_rho) != 1]
    one_edge = [t for t in sorted(a.T_mu | a.T_rho) if t not in a.assigned]
    counts = [k for k in sorted(set(U_d) | set(T_d))
              if len(T_d.get(k, ())) != k * len(U_d.get(k, ()))]
    ii, iii = [], []
    for t, u in sorted(a.assigned.items()):
        if load[u] < 6:
            continue
        for e in Hp.incident_edges(t):
            w = Hp.other_end(e, t)
            if labels[w] != U:
                continue
            if not Hp.is_crossed(e) and t not in a.T_mu:
                ii.append(t)
            if load[w] <= 4:
                iii.append((t, w))
    return [
        assertion("Tsmall partition of T_H", partition + one_edge),
        assertion("Tsmall |T^0| = 0", sorted(T_d.get(0, ()))),
        assertion("Tsmall |T^d| = d|U^d|", counts),
        compare("Tsmall (i)", small_T, "<=", 5 * small_U),
        assertion("Tsmall (ii)", ii),
        assertion("Tsmall (iii)", iii),
    ]


# ------------------------------------------------------------------------ I


@dataclass
class Transform:
    t: int
    kind: str                        # "kappa", "pi" or "rho"
    new_edge: tuple[int, int]
    crossing: list[int] | None = None

    def to_json(self) -> dict:
        return {"t": self.t, "kind": self.kind, "new_edge": list(self.new_edge),
                "crossing": self.crossing}


def easy_transform(Hp: Drawing, labels: dict[int, str], mate: dict[int, int], a: Assignment,
                   records: list[CheckRecord]) -> tuple[Drawing, list[int], set[int], list[Transform]]:
    """Return I, the removed vertices T_mu', the leftovers T_rho' and the transforms."""
    start = len(records)
    d = delete_vertices(Hp, a.small_U() | a.small_T())
    drop = []
    for t in sorted(v for v in d.vertices if labels[v] == T_H):
        for e in d.incident_edges(t):
            w = d.other_end(e, t)
            if labels[w] == U and a.assigned.get(t) != w:
                drop.append(e)
    d = delete_edges(d, drop)
    active = {v for v in d.vertices if labels[v] == T_H and v not in a.T_sigma}
    removed: list[int] = []
    transforms: list[Transform] = []
    broken: list = []
    while True:
        pick = None
        for t in sorted(active):
            es, eu = edge_between(d, t, mate[t]), edge_between(d, t, a.assigned[t])
            if es is None or eu is None:
                broken.append({"t": t, "issue": "missing matching or assignment edge"})
                continue
            if not d.is_crossed(es) or not d.is_crossed(eu):
                pick = (t, es, eu)
                break
        if pick is None or broken:
            break
        t, es, eu = pick
        s, u = mate[t], a.assigned[t]
        crossed = [e for e in (es, eu) if d.is_crossed(e)]
        kind, key = "pi", None
        if crossed:
            c = d.crossing_of(crossed[0])
            key = [c[0], c[1]]
            if set(d.edges[d.partner_edge(crossed[0])]) & {s, u}:
                kind = "kappa"
        try:
            if kind == "kappa":
                d = delete_vertex(insert_kite_edge(d, (key[0], key[1]), s, u), t)
            else:
                d = smooth_path(d, t, es, eu)
        except DrawingError as exc:
            broken.append({"t": t, "kind": kind, "issue": str(exc)})
            break
        active.discard(t)
        removed.append(t)
        transforms.append(Transform(t, kind, (s, u), key))
    records.append(assertion("I transformations applicable", broken))
    _raise_failed(records, start)
    records.extend(i_checks(d, labels, mate, a, active, removed))
    _raise_failed(records, start)
    return d, removed, active, transforms


def i_checks(d: Drawing, labels, mate, a: Assignment, leftover: set[int],
             removed: list[int]) -> list[CheckRecord]:
    load = a.load()
    degree_bad = [(u, d.degree(u), load[u]) for u in sorted(a.U - a.small_U())
                  if d.degree(u) != load[u]]
    stuck = []
    for t in sorted(leftover):
        for e in (edge_between(d, t, mate[t]), edge_between(d, t, a.assigned[t])):
            if e is None or not d.is_crossed(e):
                stuck.append(t)
    mu_left = sorted((a.T_mu - a.small_T()) - set(removed))
    return [
        assertion("I simple and good", validate_drawing(d, simple=True, allow_disconnected=True)),
        assertion("I degree of U^d is d", degree_bad),
        assertion("I loop postcondition", stuck),
        assertion("I removes every T_mu vertex", mu_left),
        assertion("claim kite_region", kite_region_violations(d, labels)),
    ]


def kite_region_violations(d: Drawing, labels: dict[int, str]) -> list[int]:
    fs, which = d.face_index()
    bad = []
    for e in sorted(d.edges):
        u, v = d.edges[e]
        if d.is_crossed(e) or {labels[u], labels[v]} != {S, U}:
            continue
        sides = {which[("v", e, 0)], which[("v", e, 1)]}
        if sum(is_kite_region(d, fs[i]) for i in sides) > 1:
            bad.append(e)
    return bad


# ------------------------------------------------------------------------ J


def tpsi_violations(d: Drawing, labels, mate, a: Assignment, t: int) -> tuple[list[str], dict]:
    """Letters of (a)-(e) that fail at ``t``, plus the local configuration."""
    s, u = mate[t], a.assigned[t]
    es, eu = edge_between(d, t, s), edge_between(d, t, u)
    info: dict = {"t": t, "s": s, "u": u}
    fails = []
    x = y = x2 = f = None
    other_s = d.partner_edge(es) if es is not None else None
    other_u = d.partner_edge(eu) if eu is not None else None
    if other_s is not None and any(labels[w] == S for w in d.edges[other_s]):
        x = next(w for w in d.edges[other_s] if labels[w] == S)
        y = d.other_end(other_s, x)
    else:
        fails.append("a")
    if other_u is not None and any(labels[w] == S for w in d.edges[other_u]):
        x2 = next(w for w in d.edges[other_u] if labels[w] == S)
        f = d.other_end(other_u, x2)
    else:
        fails.append("b")
    info.update(x=x, y=y, x_prime=x2, f=f)
    if x is None or x != x2:
        fails.append("c")
    else:
        e = edge_between(d, t, x)
        if e is None or d.is_crossed(e):
            fails.append("c")
    if y is None or not (labels[y] == F_H or y in a.T_sigma):
        fails.append("d")
    if f is None or labels[f] != F_H:
        fails.append("e")
    return fails, info


def rho_transform(I: Drawing, labels, mate, a: Assignment, leftover: set[int],
                  records: list[CheckRecord]) -> tuple[Drawing, list[Transform]]:
    start = len(records)
    d = I
    transforms: list[Transform] = []
    bad: list = []
    for t in sorted(leftover):
        fails, info = tpsi_violations(d, labels, mate, a, t)
        if fails:
            bad.append({"failed": fails, **info})
            break
        u, x = info["u"], info["x"]
        c = d.crossing_of(edge_between(d, t, u))
        d = delete_vertex(insert_kite_edge(d, (c[0], c[1]), x, u, allow_multi=True), t)
        transforms.append(Transform(t, "rho", (x, u), [c[0], c[1]]))
    records.append(assertion("Tpsi (a)-(e) before each rho", bad))
    _raise_failed(records, start)
    crossed_copies = [sorted(g) for g in multi_edge_groups(d).values()
                      if sum(d.is_crossed(e) for e in g) > 1]
    records.extend([
        assertion("J valid", validate_drawing(d, allow_disconnected=True)),
        assertion("J no empty theta", ["empty theta"] if has_empty_theta(d) else []),
        assertion("J at most one crossed copy", crossed_copies),
    ])
    _raise_failed(records, start)
    return d, transforms


def remove_empty_lenses(J: Drawing, a: Assignment,
                        records: list[CheckRecord]) -> tuple[Drawing, list[int]]:
    start = len(records)
    drop = sorted({max(p) for p in find_empty_lenses(J)})
    d = delete_edges(J, drop)
    load = a.load()
    bad = []
    for u in sorted(a.U - a.small_U()):
        deg, cw = d.degree(u), crossing_weighted_degree(d, u)
        if deg < 3 or cw < load[u]:
            bad.append({"u": u, "d": load[u], "degree": deg, "weighted": cw})
    records.extend([
        assertion("J- valid", validate_drawing(d, allow_disconnected=True)),
        assertion("J- no empty lens", find_empty_lenses(d)),
        assertion("degreeU", bad),
    ])
    _raise_failed(records, start)
    return d, drop


# ------------------------------------------------------------------- driver


STAGES = ("H_plus", "I", "J", "J_minus")


@dataclass
class PipelineState:
    H: Drawing | None
    labels: dict[int, str]
    H_plus: Drawing | None = None
    I: Drawing | None = None
    J: Drawing | None = None
    J_minus: Drawing | None = None
    matching: dict[int, int] = field(default_factory=dict)
    trades: list = field(default_factory=list)
    assignment: Assignment | None = None
    T_mu_prime: list[int] = field(default_factory=list)
    T_rho_prime: set[int] = field(default_factory=set)
    transforms: list[Transform] = field(default_factory=list)
    lens_edges_deleted: list[int] = field(default_factory=list)
    records: list[CheckRecord] = field(default_factory=list)
    failed: str | None = None

    def W(self) -> dict[int, set[int]]:
        """Crossing-weighted degree classes of the independent set on J-."""
        out: dict[int, set[int]] = {}
        if self.J_minus is None or self.assignment is None:
            return out
        for v in sorted(independent_set_for_J(self)):
            out.setdefault(crossing_weighted_degree(self.J_minus, v), set()).add(v)
        return out

    def to_json(self) -> dict:
        out = {
            "failed": self.failed,
            "trades": [[list(p), list(q)] for p, q in self.trades],
            "T_mu_prime": list(self.T_mu_prime),
            "T_rho_prime": sorted(self.T_rho_prime),
            "transforms": [t.to_json() for t in self.transforms],
            "lens_edges_deleted": self.lens_edges_deleted,
            "W": {str(k): sorted(v) for k, v in sorted(self.W().items())},
        }
        if self.assignment is not None:
            out["assignment"] = self.assignment.to_json()
        return out


def independent_set_for_J(state: PipelineState) -> set[int]:
    a = state.assignment
    F = {v for v, lab in state.labels.items() if lab == F_H}
    return F | set(a.T_sigma) | (a.U - a.small_U())


def run_pipeline(H: Drawing | None, labels: dict[int, str], mate: dict[int, int],
                 dump_dir: str | None = None) -> PipelineState:
    """Run every stage on the labelled drawing H; stops at the first failed stage."""
    state = PipelineState(H, labels)
    if H is not None:
        try:
            _run_stages(state, {v: w for v, w in mate.items() if v in labels and w in labels})
        except PipelineError as exc:
            state.failed = exc.check
    if dump_dir is not None:
        dump_stages(state, dump_dir)
    return state


def _run_stages(state: PipelineState, mate: dict[int, int]) -> None:
    labels, rec = state.labels, state.records
    state.H_plus, state.matching, state.trades = build_H_plus(state.H, labels, mate, rec)
    state.assignment = assign_T_to_U(state.H_plus, labels, state.matching, rec)
    state.I, state.T_mu_prime, state.T_rho_prime, easy = easy_transform(
        state.H_plus, labels, state.matching, state.assignment, rec)
    state.transforms.extend(easy)
    state.J, rho = rho_transform(state.I, labels, state.matching, state.assignment,
                                 state.T_rho_prime, rec)
    state.transforms.extend(rho)
    state.J_minus, state.lens_edges_deleted = remove_empty_lenses(
        state.J, state.assignment, rec)


def dump_stages(state: PipelineState, directory: str) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    written = []
    for name in STAGES:
        d = getattr(state, name)
        if d is None:
            continue
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w") as fh:
            json.dump(d.to_json(), fh)
        written.append(path)
    return written


def verify_lemma_hard(state: PipelineState) -> list[CheckRecord]:
    """The chain of integer inequalities ending in |F_H|+|T_H| <= 6|S|+5|U|-12."""
    count = Counter(state.labels.values())
    nF, nS, nT, nU = count[F_H], count[S], count[T_H], count[U]
    names = ["Lemma hard: V(J-) minus A equals S", "Lemma hard: BWstronger on J-",
             "Lemma hard: weighted degrees dominate", "Lemma hard: 3d-12 >= 2d-10",
             "Lemma hard: Tsmall addition", "ledger conservation", "Lemma hard"]
    final_rhs = 6 * nS + 5 * nU - 12
    if state.H is None or nF == 0:
        return [vacuous(n, "H is empty (no free vertex in G - V_C - V_B)") for n in names[:-1]] + [
            _policy("Lemma hard", nF + nT, final_rhs, guard=False, reason="H is empty")]
    if state.failed is not None:
        why = f"depends on failed {state.failed}"
        return [vacuous(n, why) for n in names[:-1]] + [
            vacuous("Lemma hard", why, nF + nT, final_rhs)]
    a = state.assignment
    U_d, T_d = a.U_d(), a.T_d()
    big = {k: len(v) for k, v in U_d.items() if k >= 6}
    small_U = sum(len(v) for k, v in U_d.items() if k <= 5)
    small_T = sum(len(v) for k, v in T_d.items() if k <= 5)
    A = independent_set_for_J(state)
    J = state.J_minus
    rest = set(J.vertices) - A
    S_set = {v for v, lab in state.labels.items() if lab == S}
    out = [assertion(names[0], sorted(rest ^ S_set))]
    bw = check_weighted_independent_set_bound(J, A, name=names[1])
    out.append(bw)
    lhs_w = weighted_bw_lhs(crossing_weighted_degree(J, v) for v in A)
    out.append(compare(names[2], lhs_w, ">=",
                       2 * nF + 2 * len(a.T_sigma) + sum((3 * k - 12) * c for k, c in big.items())))
    out.append(compare(names[3], sum((3 * k - 12) * c for k, c in big.items()), ">=",
                       sum((2 * k - 10) * c for k, c in big.items())))
    out.append(compare(names[4], 10 * small_U, ">=", 2 * small_T))
    out.append(compare(names[5], len(state.T_mu_prime) + len(state.T_rho_prime)
                       + len(a.T_sigma) + small_T, "==", nT))
    out.append(_policy("Lemma hard", nF + nT, final_rhs, guard=True))
    return out


def _policy(name: str, lhs: int, rhs: int, *, guard: bool, reason: str | None = None) -> CheckRecord:
    """Pass when the inequality holds; otherwise fail only if its guard held."""
    rec = compare(name, lhs, "<=", rhs)
    if rec.status == "fail" and not guard:
        return vacuous(name, reason or "guard unmet", lhs, rhs)
    return rec
