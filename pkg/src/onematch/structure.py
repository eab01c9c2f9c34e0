"""Short flowers, alternating levels and the auxiliary graph H.

Removal order is fixed: cycle-flowers on G, stem-blossoms on G - V_C, then
alternating levels on G - V_C - V_B. All "arbitrary" choices take the lowest
vertex index (or the lexicographically first structure).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .drawing import Drawing, extract_subdrawing
from .graph import Graph, Matching, canonical
from .matching import find_bounded_augmenting_path

F_H, S, T_H, U = "F_H", "S", "T_H", "U"
LEVEL_NAMES = (F_H, S, T_H, U)


class StructureError(AssertionError):
    """A structural claim failed; ``witness`` carries the contradiction."""

    def __init__(self, check: str, message: str, witness: object = None) -> None:
        super().__init__(f"{check}: {message}")
        self.check = check
        self.witness = witness


@dataclass
class FlowerReport:
    V_C: set[int] = field(default_factory=set)
    F_C: set[int] = field(default_factory=set)
    M_C: set[tuple[int, int]] = field(default_factory=set)
    T_B: set[int] = field(default_factory=set)
    M_B: set[tuple[int, int]] = field(default_factory=set)
    V_B: set[int] = field(default_factory=set)
    cycle_flowers: dict[int, tuple[int, ...]] = field(default_factory=dict)
    fc_witness: dict[int, tuple[int, int]] = field(default_factory=dict)
    stem_blossoms: dict[int, tuple[int, int, int, int, int]] = field(default_factory=dict)
    tb_witness: dict[int, tuple[int, int]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "V_C": sorted(self.V_C), "F_C": sorted(self.F_C),
            "M_C": sorted(map(list, self.M_C)),
            "T_B": sorted(self.T_B), "M_B": sorted(map(list, self.M_B)),
            "V_B": sorted(self.V_B),
            "fc_witness": [[f, list(e)] for f, e in sorted(self.fc_witness.items())],
            "tb_witness": [[t, list(e)] for t, e in sorted(self.tb_witness.items())],
        }


@dataclass
class Decomposition:
    levels: list[set[int]]            # D_0 .. D_3
    beyond: set[int]
    vertices: set[int]                # vertex set of G - V_C - V_B
    M_S: set[tuple[int, int]]
    M_U: set[tuple[int, int]]
    witness_paths: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def F_H(self) -> set[int]:
        return self.levels[0]

    @property
    def S(self) -> set[int]:
        return self.levels[1]

    @property
    def T_H(self) -> set[int]:
        return self.levels[2]

    @property
    def U(self) -> set[int]:
        return self.levels[3]

    @property
    def H_vertices(self) -> set[int]:
        return set().union(*self.levels)

    def label(self, v: int) -> str | None:
        for name, level in zip(LEVEL_NAMES, self.levels):
            if v in level:
                return name
        return None

    def to_json(self) -> dict:
        out = {name: sorted(level) for name, level in zip(LEVEL_NAMES, self.levels)}
        out["beyond"] = sorted(self.beyond)
        out["M_S"] = sorted(map(list, self.M_S))
        out["M_U"] = sorted(map(list, self.M_U))
        return out


# ------------------------------------------------------------------ helpers


def _require_no_short_path(g: Graph, m: Matching, k: int) -> None:
    p = find_bounded_augmenting_path(g, m, k)
    if p is not None:
        raise StructureError("precondition", f"a {len(p)}-augmenting path exists", p.vertices)


def _alive(g: Graph, removed: set[int]):
    adj = g.adjacency
    return lambda v: [w for w in adj[v] if w not in removed]


# ----------------------------------------------------------- cycle-flowers


def _cycle_flowers_at(g: Graph, m: Matching, f: int) -> list[tuple[int, ...]]:
    """All cycle-flowers f-v1-..-vk-f with k in {2,4,6}, lexicographic."""
    out: list[tuple[int, ...]] = []
    path = [f]

    def walk(x: int) -> None:
        for w in g.adjacency[x]:
            if w in path or m.mate(x) == w:
                continue
            p = m.mate(w)
            if p is None or p in path:
                continue
            path.extend((w, p))
            if g.has_edge(p, f):
                out.append(tuple(path))
            if len(path) < 7:
                walk(p)
            path.pop()
            path.pop()

    walk(f)
    return out


def find_cycle_flowers(g: Graph, m: Matching, *, k: int = 9) -> FlowerReport:
    _require_no_short_path(g, m, k)
    report = FlowerReport()
    owner: dict[tuple[int, int], int] = {}
    for f in range(g.n):
        if m.covers(f):
            continue
        flowers = _cycle_flowers_at(g, m, f)
        if not flowers:
            continue
        report.F_C.add(f)
        first = flowers[0]
        report.cycle_flowers[f] = first
        for fl in flowers:
            report.V_C.update(fl)
        edge = canonical(first[1], first[2])
        if edge in owner:
            raise StructureError("claim_FC", f"free vertices {owner[edge]} and {f} share "
                                 f"matching edge {edge}",
                                 _fc_collision(g, report.cycle_flowers[owner[edge]], f))
        owner[edge] = f
        report.fc_witness[f] = edge
    report.M_C = {e for e in m.edges if e[0] in report.V_C}
    return report


def _fc_collision(g: Graph, flower: tuple[int, ...], f2: int) -> tuple[int, ...]:
    f, v1, v2 = flower[0], flower[1], flower[2]
    if g.has_edge(f2, v2):
        return (f2, v2, v1, f)
    return (f2,) + flower[1:] + (f,)


# ------------------------------------------------------------ stem-blossoms


def find_stem_blossoms(g: Graph, m: Matching, flowers: FlowerReport) -> FlowerReport:
    """Complete ``flowers`` with T_B, M_B, V_B found in G - V_C."""
    gone = flowers.V_C
    nbrs = _alive(g, gone)
    owner: dict[tuple[int, int], tuple[int, ...]] = {}
    for f in range(g.n):
        if m.covers(f) or f in gone:
            continue
        for s in nbrs(f):
            t = m.mate(s)
            if t is None or t in gone:
                continue
            for x0 in nbrs(t):
                x1 = m.mate(x0)
                if x0 in (s, f) or x1 is None or x1 in gone or x1 in (s, f, t):
                    continue
                if not g.has_edge(x1, t):
                    continue
                edge = canonical(x0, x1)
                flowers.T_B.add(t)
                flowers.M_B.add(edge)
                flowers.stem_blossoms.setdefault(t, (f, s, t, edge[0], edge[1]))
    for t in sorted(flowers.T_B):
        f, s, _, x0, x1 = flowers.stem_blossoms[t]
        edge = (x0, x1)
        if edge in owner:
            other = owner[edge]
            raise StructureError("claim_TDelta", f"T_B vertices {other[2]} and {t} share "
                                 f"blossom edge {edge}",
                                 _tb_collision(g, flowers.stem_blossoms[t], other))
        owner[edge] = flowers.stem_blossoms[t]
        flowers.tb_witness[t] = edge
    flowers.V_B = set(flowers.T_B)
    for e in flowers.M_B:
        flowers.V_B.update(e)
    return flowers


def _tb_collision(g: Graph, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    f, s, t, x0, x1 = a
    f2, s2, t2 = b[:3]
    if not g.has_edge(t, x0) or not g.has_edge(x1, t2):
        x0, x1 = x1, x0
    return (f, s, t, x0, x1, t2, s2, f2)


# ----------------------------------------------------------------- levels


def alternating_levels(g: Graph, m: Matching, removed: set[int]) -> Decomposition:
    """Alternating distance from free vertices in G - ``removed``, levels 0..3."""
    alive = [v for v in range(g.n) if v not in removed]
    nbrs = _alive(g, removed)
    dist: dict[int, int] = {}
    parent: dict[int, int] = {}
    frontier = [v for v in alive if not m.covers(v)]
    for v in frontier:
        dist[v] = 0
    level = 0
    while frontier and level < 3:
        nxt: list[int] = []
        for x in frontier:
            if level % 2 == 0:
                cand = [w for w in nbrs(x) if m.mate(x) != w]
            else:
                p = m.mate(x)
                cand = [p] if p is not None and p not in removed else []
            for w in cand:
                if w not in dist:
                    dist[w] = level + 1
                    parent[w] = x
                    nxt.append(w)
        frontier = sorted(nxt)
        level += 1
    levels = [set() for _ in range(4)]
    for v, k in dist.items():
        levels[k].add(v)
    witness: dict[int, tuple[int, ...]] = {}
    for v in dist:
        chain = [v]
        while chain[-1] in parent:
            chain.append(parent[chain[-1]])
        witness[v] = tuple(reversed(chain))
    M_S = {canonical(s, m.mate(s)) for s in levels[1] if m.mate(s) is not None}
    M_U = {canonical(u, m.mate(u)) for u in levels[3] if m.mate(u) is not None}
    return Decomposition(levels, set(alive) - set(dist), set(alive), M_S, M_U, witness)


def horizontal_violations(g: Graph, m: Matching, dec: Decomposition) -> list[tuple[int, int]]:
    """Edges of G - V_C - V_B inside D_0 or D_2, or matching edges inside D_1 or D_3."""
    bad = []
    for u, v in g.edges:
        if u not in dec.vertices or v not in dec.vertices:
            continue
        for k, level in enumerate(dec.levels):
            if u in level and v in level:
                if k in (0, 2) or m.mate(u) == v:
                    bad.append((u, v))
    return bad


def path_violations(dec: Decomposition) -> list[int]:
    """Level vertices whose BFS witness is not a simple path of the level's length."""
    bad = []
    for v, p in sorted(dec.witness_paths.items()):
        if len(set(p)) != len(p) or len(p) - 1 != LEVEL_NAMES.index(dec.label(v)):
            bad.append(v)
    return bad


# ---------------------------------------------------------------------- H


@dataclass
class AuxiliaryGraph:
    drawing: Drawing | None
    dec: Decomposition
    labels: dict[int, str]
    matching: Matching                # matching edges with both ends in H
    checks: dict[str, list] = field(default_factory=dict)


def hbipartite_violations(g: Graph, m: Matching, dec: Decomposition,
                          flowers: FlowerReport) -> dict[str, list]:
    H = dec.H_vertices
    out: dict[str, list] = {
        "no matching edge within S or U": [],
        "no edge within F_H or T_H": [],
        "partner of S in T_H or T_B": [],
        "partner of U outside H": [],
        "neighbours of F_H in S or outside H": [],
        "neighbours of T_H in S or U or outside H": [],
    }
    for u, v in g.edges:
        if u not in H or v not in H:
            continue
        lu, lv = dec.label(u), dec.label(v)
        if lu == lv and lu in (S, U) and m.mate(u) == v:
            out["no matching edge within S or U"].append((u, v))
        if lu == lv and lu in (F_H, T_H):
            out["no edge within F_H or T_H"].append((u, v))
    for s in sorted(dec.S):
        p = m.mate(s)
        if p is None or (p not in dec.T_H and p not in flowers.T_B):
            out["partner of S in T_H or T_B"].append((s, p))
    for u in sorted(dec.U):
        p = m.mate(u)
        if p is not None and p in H:
            out["partner of U outside H"].append((u, p))
    for f in sorted(dec.F_H):
        for w in g.adjacency[f]:
            if w in H and w not in dec.S:
                out["neighbours of F_H in S or outside H"].append((f, w))
    for t in sorted(dec.T_H):
        for w in g.adjacency[t]:
            if w in H and w not in dec.S and w not in dec.U:
                out["neighbours of T_H in S or U or outside H"].append((t, w))
    return out


def back_edge_violations(g: Graph, dec: Decomposition) -> list[tuple[int, int]]:
    H = dec.H_vertices
    return [(v, w) for v in sorted(dec.F_H | dec.T_H) for w in g.adjacency[v] if w not in H]


def build_H(d: Drawing, g: Graph, m: Matching, dec: Decomposition,
            flowers: FlowerReport, *, strict: bool = True) -> AuxiliaryGraph:
    """Labelled subdrawing induced by D_0 .. D_3, with the structural assertions.

    With ``strict`` the first violated bullet raises :class:`StructureError`;
    otherwise violations are collected in ``checks`` for the audit.
    """
    H = dec.H_vertices
    checks = {f"Hbipartite: {k}": v for k, v in hbipartite_violations(g, m, dec, flowers).items()}
    checks["no_back_edge"] = back_edge_violations(g, dec)
    labels = {v: dec.label(v) for v in H}
    drawing = extract_subdrawing(d, H, require_connected=False) if H else None
    deg_bad = []
    if drawing is not None:
        deg_bad = [v for v in sorted(dec.F_H | dec.T_H) if drawing.degree(v) != g.degree(v)]
    checks["degree preservation"] = deg_bad
    if strict:
        for name, bad in checks.items():
            if bad:
                witness = find_bounded_augmenting_path(g, m, 9)
                raise StructureError(name, f"violated by {bad[0]}",
                                     {"edge": bad[0],
                                      "augmenting_path": witness.vertices if witness else None})
    return AuxiliaryGraph(drawing, dec, labels, m.restrict(H), checks)
