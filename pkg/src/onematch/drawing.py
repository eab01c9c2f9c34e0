"""Combinatorial 1-planar drawings.

A drawing is a rotation system (cyclic order of edge-ends around every
vertex) plus a pairing of crossed edges. Each crossing carries an
orientation bit fixing the cyclic order of its four half-edges:

    orient 0:  e1.end0, e2.end0, e1.end1, e2.end1
    orient 1:  e1.end0, e2.end1, e1.end1, e2.end0

The planarization replaces each crossing by a degree-4 dummy node. Faces are
traced with the rule "after arriving at a node along a dart, leave along the
rotation successor of the reverse dart". With that rule a corner ``(v, p)``,
the angle just before ``rotations[v][p]``, lies on the face that contains
the outgoing dart ``rotations[v][p]``.

Edge identity is by id, so parallel edges are representable. Disconnected
drawings are allowed where callers ask for it; components are then read as
drawn beside each other, never nested inside a bounded face of another, so
every face traced within a component is also a region of the drawing.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, build_graph

EdgeEnd = tuple[int, int]            # (edge id, 0 for the u-end / 1 for the v-end)
CrossingKey = tuple[int, int]        # (e1, e2) as stored
# Darts of the planarization: ("v", e, end) leaves the vertex at ``end``;
# ("c", e, end) leaves the crossing on e toward the vertex at ``end``.
Dart = tuple[str, int, int]
Node = tuple[str, int] | tuple[str, int, int]   # ("v", vertex) or ("x", e1, e2)


class DrawingError(ValueError):
    pass


class FaceMismatchError(DrawingError):
    """Insertion corners are not on a common face."""


class DisconnectedDrawingError(DrawingError):
    pass


@dataclass(frozen=True)
class Corner:
    host: int
    position: int


@dataclass(frozen=True)
class Face:
    darts: tuple[Dart, ...]

    def __len__(self) -> int:
        return len(self.darts)


class Drawing:
    """Immutable value; every surgery function returns a new drawing."""

    __slots__ = ("vertices", "edges", "crossings", "rotations", "meta", "_crossing_of")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: dict[int, tuple[int, int]],
        crossings: Iterable[tuple[int, int, int]],
        rotations: dict[int, list[EdgeEnd]],
        meta: dict | None = None,
    ) -> None:
        self.vertices: tuple[int, ...] = tuple(vertices)
        self.edges: dict[int, tuple[int, int]] = dict(edges)
        self.crossings: tuple[tuple[int, int, int], ...] = tuple(
            (int(a), int(b), int(o)) for a, b, o in crossings)
        self.rotations: dict[int, tuple[EdgeEnd, ...]] = {
            v: tuple((int(e), int(end)) for e, end in rot) for v, rot in rotations.items()}
        self.meta = dict(meta) if meta else None
        crossing_of: dict[int, tuple[int, int, int]] = {}
        for c in self.crossings:
            for e in c[:2]:
                crossing_of.setdefault(e, c)
        self._crossing_of = crossing_of

    # ---------------------------------------------------------------- basics

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Drawing) and self.vertices == other.vertices
                and list(self.edges.items()) == list(other.edges.items())
                and self.crossings == other.crossings
                and self.rotations == other.rotations)

    def __repr__(self) -> str:
        return (f"Drawing(n={len(self.vertices)}, m={len(self.edges)}, "
                f"crossings={len(self.crossings)})")

    def endpoint(self, e: int, end: int) -> int:
        return self.edges[e][end]

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def crossing_of(self, e: int) -> tuple[int, int, int] | None:
        return self._crossing_of.get(e)

    def is_crossed(self, e: int) -> bool:
        return e in self._crossing_of

    def partner_edge(self, e: int) -> int | None:
        c = self._crossing_of.get(e)
        if c is None:
            return None
        return c[1] if c[0] == e else c[0]

    def crossing(self, key: CrossingKey) -> tuple[int, int, int]:
        for c in self.crossings:
            if (c[0], c[1]) == tuple(key) or (c[1], c[0]) == tuple(key):
                return c
        raise DrawingError(f"unknown crossing {key}")

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def incident_edges(self, v: int) -> list[int]:
        return [e for e, _ in self.rotations[v]]

    def neighbors(self, v: int) -> list[int]:
        return [self.other_end(e, v) for e, _ in self.rotations[v]]

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e, end in self.rotations.get(u, ()) if self.edges[e][1 - end] == v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.edges_between(u, v))

    def is_simple(self) -> bool:
        pairs = Counter(frozenset(uv) for uv in self.edges.values())
        return all(c == 1 for c in pairs.values())

    def next_edge_id(self) -> int:
        return max(self.edges, default=-1) + 1

    def to_graph(self) -> Graph:
        """Underlying simple graph; vertices must be exactly ``0..n-1``."""
        if sorted(self.vertices) != list(range(len(self.vertices))):
            raise DrawingError("vertex ids must be 0..n-1 to build a Graph")
        if not self.is_simple():
            raise DrawingError("drawing has parallel edges")
        return build_graph(len(self.vertices), list(self.edges.values()))

    def _replace(self, **changes) -> Drawing:
        fields = {
            "vertices": self.vertices, "edges": self.edges, "crossings": self.crossings,
            "rotations": self.rotations, "meta": self.meta,
        }
        fields.update(changes)
        return Drawing(**fields)

    # -------------------------------------------------------- planarization

    def twin(self, d: Dart) -> Dart:
        kind, e, end = d
        if kind == "c":
            return ("v", e, end)
        if e in self._crossing_of:
            return ("c", e, end)
        return ("v", e, 1 - end)

    def origin(self, d: Dart) -> Node:
        kind, e, end = d
        if kind == "v":
            return ("v", self.edges[e][end])
        c = self._crossing_of[e]
        return ("x", c[0], c[1])

    def head(self, d: Dart) -> Node:
        return self.origin(self.twin(d))

    def node_rotation(self, node: Node) -> list[Dart]:
        if node[0] == "v":
            return [("v", e, end) for e, end in self.rotations[node[1]]]
        c = self.crossing((node[1], node[2]))
        e1, e2, orient = c
        if orient == 0:
            return [("c", e1, 0), ("c", e2, 0), ("c", e1, 1), ("c", e2, 1)]
        return [("c", e1, 0), ("c", e2, 1), ("c", e1, 1), ("c", e2, 0)]

    def crossing_vertices(self, key: CrossingKey) -> list[tuple[int, Dart]]:
        """The four endpoints around crossing ``key`` with the dart leading to each."""
        c = self.crossing(key)
        return [(self.edges[e][end], ("c", e, end))
                for _, e, end in self.node_rotation(("x", c[0], c[1]))]

    def darts(self) -> list[Dart]:
        out: list[Dart] = []
        for v in self.vertices:
            out.extend(("v", e, end) for e, end in self.rotations[v])
        for e1, e2, _ in self.crossings:
            out.extend([("c", e1, 0), ("c", e1, 1), ("c", e2, 0), ("c", e2, 1)])
        return out

    def _successor_table(self) -> dict[Dart, Dart]:
        succ: dict[Dart, Dart] = {}
        rots = [self.node_rotation(("v", v)) for v in self.vertices]
        rots += [self.node_rotation(("x", c[0], c[1])) for c in self.crossings]
        for rot in rots:
            k = len(rot)
            for i, d in enumerate(rot):
                succ[d] = rot[(i + 1) % k]
        return succ

    def next_in_face(self, d: Dart, succ: dict[Dart, Dart] | None = None) -> Dart:
        t = self.twin(d)
        if succ is not None:
            return succ[t]
        rot = self.node_rotation(self.origin(t))
        return rot[(rot.index(t) + 1) % len(rot)]

    def face_index(self) -> tuple[list[Face], dict[Dart, int]]:
        succ = self._successor_table()
        which: dict[Dart, int] = {}
        faces: list[Face] = []
        for start in self.darts():
            if start in which:
                continue
            cycle = []
            d = start
            while d not in which:
                which[d] = len(faces)
                cycle.append(d)
                d = succ[self.twin(d)]
            faces.append(Face(tuple(cycle)))
        return faces, which

    def components(self) -> list[set[int]]:
        """Vertex sets of the connected components of the planarization."""
        parent = {v: v for v in self.vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges.values():
            parent[find(u)] = find(v)
        for e1, e2, _ in self.crossings:
            parent[find(self.edges[e1][0])] = find(self.edges[e2][0])
        groups: dict[int, set[int]] = defaultdict(set)
        for v in self.vertices:
            groups[find(v)].add(v)
        return sorted(groups.values(), key=min)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def dart_face_of_corner(self, corner: Corner) -> Dart:
        rot = self.rotations[corner.host]
        if not rot:
            raise DrawingError(f"vertex {corner.host} is isolated")
        e, end = rot[corner.position % len(rot)]
        return ("v", e, end)

    # ------------------------------------------------------------- JSON

    def to_json(self) -> dict:
        out = {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "u": u, "v": v} for e, (u, v) in self.edges.items()],
            "crossings": [{"e1": a, "e2": b, "orient": o} for a, b, o in self.crossings],
            "rotations": {str(v): [[e, end] for e, end in self.rotations[v]]
                          for v in self.vertices},
        }
        if self.meta is not None:
            out["meta"] = self.meta
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> Drawing:
        try:
            return cls(
                [int(v) for v in data["vertices"]],
                {int(e["id"]): (int(e["u"]), int(e["v"])) for e in data["edges"]},
                [(c["e1"], c["e2"], c.get("orient", 0)) for c in data.get("crossings", [])],
                {int(v): [tuple(x) for x in rot] for v, rot in data["rotations"].items()},
                data.get("meta"),
            )
        except (KeyError, TypeError) as exc:
            raise DrawingError(f"malformed drawing JSON: {exc!r}") from exc


# ===================================================================== checks


def validate_drawing(d: Drawing, *, simple: bool = False,
                     allow_disconnected: bool = False) -> list[str]:
    """All violated invariants; an empty list means the drawing is valid."""
    problems: list[str] = []
    vset = set(d.vertices)
    if len(vset) != len(d.vertices):
        problems.append("duplicate vertex ids")
    for e, (u, v) in d.edges.items():
        if u == v:
            problems.append(f"edge {e} is a loop at {u}")
        if u not in vset or v not in vset:
            problems.append(f"edge {e} has an endpoint outside the vertex set")
    if problems:
        return problems

    if set(d.rotations) != vset:
        problems.append("rotation keys differ from the vertex set")
        return problems
    seen_ends: Counter[EdgeEnd] = Counter()
    for v, rot in d.rotations.items():
        for e, end in rot:
            if e not in d.edges or end not in (0, 1):
                problems.append(f"rotation at {v} references unknown end ({e},{end})")
                continue
            if d.edges[e][end] != v:
                problems.append(f"edge-end ({e},{end}) listed at {v}, belongs to {d.edges[e][end]}")
            seen_ends[(e, end)] += 1
    for e in d.edges:
        for end in (0, 1):
            if seen_ends[(e, end)] != 1:
                problems.append(f"edge-end ({e},{end}) appears {seen_ends[(e, end)]} times in rotations")
    if problems:
        return problems

    count: Counter[int] = Counter()
    for e1, e2, orient in d.crossings:
        if e1 not in d.edges or e2 not in d.edges:
            problems.append(f"crossing ({e1},{e2}) references an unknown edge")
            continue
        if e1 == e2:
            problems.append(f"edge {e1} crosses itself")
        if orient not in (0, 1):
            problems.append(f"crossing ({e1},{e2}) has orientation {orient}")
        count[e1] += 1
        count[e2] += 1
        shared = set(d.edges[e1]) & set(d.edges[e2])
        if shared and e1 != e2:
            problems.append(
                f"good drawing: crossing edges {e1} and {e2} share endpoint {min(shared)}")
    for e, k in sorted(count.items()):
        if k > 1:
            problems.append(f"1-planarity: edge {e} participates in {k} crossings")
    if problems:
        return problems

    if simple and not d.is_simple():
        problems.append("drawing is not simple (parallel edges)")

    comps = d.components()
    if len(comps) > 1 and not allow_disconnected:
        problems.append(f"planarization is disconnected ({len(comps)} components)")
    faces, which = d.face_index()
    comp_of = {v: i for i, comp in enumerate(comps) for v in comp}
    nodes = Counter(comp_of[v] for v in d.vertices)
    segs: Counter[int] = Counter()
    for e, (u, _) in d.edges.items():
        segs[comp_of[u]] += 2 if d.is_crossed(e) else 1
    for e1, _, _ in d.crossings:
        nodes[comp_of[d.edges[e1][0]]] += 1
    nfaces: Counter[int] = Counter()
    for f in faces:
        anchor = f.darts[0]
        kind, e, end = anchor
        nfaces[comp_of[d.edges[e][end]]] += 1
    for i, comp in enumerate(comps):
        nf = nfaces[i] if nfaces[i] else 1    # isolated vertex: one face
        if nodes[i] - segs[i] + nf != 2:
            problems.append(
                f"planarity: component containing {min(comp)} has V'-E'+F = "
                f"{nodes[i]}-{segs[i]}+{nf} != 2")
    return problems


def faces(d: Drawing) -> list[Face]:
    problems = validate_drawing(d, allow_disconnected=True)
    if problems:
        raise DrawingError("; ".join(problems))
    return d.face_index()[0]


def euler_characteristic(d: Drawing) -> int:
    """V' - E' + F of the planarization (2 per component when valid)."""
    nodes = len(d.vertices) + len(d.crossings)
    segs = len(d.edges) + len(d.crossings) * 2
    fs = d.face_index()[0]
    isolated = sum(1 for v in d.vertices if not d.rotations[v])
    return nodes - segs + len(fs) + isolated


# ================================================================ kite edges


def potential_kite_edges(d: Drawing, c: CrossingKey) -> list[tuple[int, int]]:
    around = [v for v, _ in d.crossing_vertices(c)]
    return [(around[i], around[(i + 1) % 4]) for i in range(4)]


def kite_corners(d: Drawing, c: CrossingKey, a: int, b: int) -> tuple[Corner, Corner]:
    """Corners at ``a`` and ``b`` for drawing ``(a, b)`` alongside crossing ``c``.

    The returned corners both lie on the face passing ``v_i -> c -> v_(i+1)``.
    """
    around = d.crossing_vertices(c)
    for i in range(4):
        vi, di = around[i]
        vj, dj = around[(i + 1) % 4]
        if {vi, vj} != {a, b}:
            continue
        out_i = d.twin(di)          # v_i -> c
        out_j = d.twin(dj)          # v_j -> c
        pi = d.rotations[vi].index((out_i[1], out_i[2]))
        pj = d.rotations[vj].index((out_j[1], out_j[2])) + 1
        ci, cj = Corner(vi, pi), Corner(vj, pj)
        return (ci, cj) if vi == a else (cj, ci)
    raise DrawingError(f"({a},{b}) is not a potential kite-edge of crossing {tuple(c)}")


def kite_edge_at(d: Drawing, c: CrossingKey, a: int, b: int) -> int | None:
    """Id of an uncrossed (a,b) edge bounding a kite-region at ``c``, if any."""
    around = d.crossing_vertices(c)
    for i in range(4):
        vi, di = around[i]
        vj, dj = around[(i + 1) % 4]
        if {vi, vj} != {a, b}:
            continue
        nxt = d.next_in_face(dj)                 # leaving v_j along the face
        kind, e, end = nxt
        if kind == "v" and not d.is_crossed(e) and d.edges[e][1 - end] == vi:
            if d.next_in_face(nxt) == d.twin(di):
                return e
        return None
    raise DrawingError(f"({a},{b}) is not a potential kite-edge of crossing {tuple(c)}")


def is_kite_region(d: Drawing, f: Face) -> bool:
    """Face bounded by two half-edges at one crossing plus one uncrossed edge."""
    if len(f) != 3:
        return False
    kinds = sorted(
        "c" if k == "c" else ("h" if d.is_crossed(e) else "u") for k, e, _ in f.darts)
    return kinds == ["c", "h", "u"]


# ================================================================== surgery


def insert_uncrossed_edge(d: Drawing, u: int, v: int, cu: Corner, cv: Corner, *,
                          allow_multi: bool = False, edge_id: int | None = None) -> Drawing:
    if u == v:
        raise DrawingError(f"loop at {u}")
    if cu.host != u or cv.host != v:
        raise DrawingError("corner hosts do not match the edge endpoints")
    for x in (u, v):
        if x not in d.rotations:
            raise DrawingError(f"unknown vertex {x}")
    if not allow_multi and d.has_edge(u, v):
        raise DrawingError(f"edge ({u},{v}) already exists")
    _, which = d.face_index()
    if which[d.dart_face_of_corner(cu)] != which[d.dart_face_of_corner(cv)]:
        raise FaceMismatchError(f"corners {cu} and {cv} are not on a common face")
    eid = d.next_edge_id() if edge_id is None else edge_id
    if eid in d.edges:
        raise DrawingError(f"edge id {eid} already in use")
    rotations = {x: list(r) for x, r in d.rotations.items()}
    # a corner at index p sits between rot[p-1] and rot[p]; u != v, so the
    # two insertions never shift each other
    rotations[u].insert(_insertion_index(cu.position, len(rotations[u])), (eid, 0))
    rotations[v].insert(_insertion_index(cv.position, len(rotations[v])), (eid, 1))
    edges = dict(d.edges)
    edges[eid] = (u, v)
    return d._replace(edges=edges, rotations=rotations)


def _insertion_index(position: int, length: int) -> int:
    return position % length if length else 0


def insert_kite_edge(d: Drawing, c: CrossingKey, a: int, b: int, *,
                     allow_multi: bool = False, edge_id: int | None = None) -> Drawing:
    ca, cb = kite_corners(d, c, a, b)
    return insert_uncrossed_edge(d, a, b, ca, cb, allow_multi=allow_multi, edge_id=edge_id)


def delete_edge(d: Drawing, e: int) -> Drawing:
    if e not in d.edges:
        raise DrawingError(f"unknown edge {e}")
    u, v = d.edges[e]
    edges = {k: uv for k, uv in d.edges.items() if k != e}
    crossings = [c for c in d.crossings if e not in c[:2]]
    rotations = {x: list(r) for x, r in d.rotations.items()}
    rotations[u] = [x for x in rotations[u] if x[0] != e]
    rotations[v] = [x for x in rotations[v] if x[0] != e]
    return d._replace(edges=edges, crossings=crossings, rotations=rotations)


def delete_edges(d: Drawing, es: Iterable[int]) -> Drawing:
    drop = set(es)
    unknown = drop - set(d.edges)
    if unknown:
        raise DrawingError(f"unknown edges {sorted(unknown)}")
    if not drop:
        return d
    edges = {k: uv for k, uv in d.edges.items() if k not in drop}
    crossings = [c for c in d.crossings if c[0] not in drop and c[1] not in drop]
    rotations = {x: [y for y in r if y[0] not in drop] for x, r in d.rotations.items()}
    return d._replace(edges=edges, crossings=crossings, rotations=rotations)


def delete_vertex(d: Drawing, v: int) -> Drawing:
    return delete_vertices(d, [v])


def delete_vertices(d: Drawing, vs: Iterable[int]) -> Drawing:
    drop = set(vs)
    unknown = drop - set(d.vertices)
    if unknown:
        raise DrawingError(f"unknown vertices {sorted(unknown)}")
    incident = {e for e, (a, b) in d.edges.items() if a in drop or b in drop}
    out = delete_edges(d, incident)
    return out._replace(
        vertices=[x for x in out.vertices if x not in drop],
        rotations={x: r for x, r in out.rotations.items() if x not in drop})


def reroute_as_kite(d: Drawing, e: int, c: CrossingKey) -> Drawing:
    """Move edge ``e`` to the uncrossed kite position at crossing ``c``."""
    if e not in d.edges:
        raise DrawingError(f"unknown edge {e}")
    cross = d.crossing(c)
    if e in cross[:2]:
        raise DrawingError(f"edge {e} is an edge of crossing {tuple(c)}, not a kite of it")
    a, b = d.edges[e]
    pairs = {frozenset(p) for p in potential_kite_edges(d, c)}
    if frozenset((a, b)) not in pairs:
        raise DrawingError(f"edge {e}=({a},{b}) is not a potential kite-edge of {tuple(c)}")
    if kite_edge_at(d, c, a, b) == e:
        return d
    out = delete_edge(d, e)
    return insert_kite_edge(out, c, a, b, allow_multi=True, edge_id=e)


def smooth_path(d: Drawing, t: int, e1: int, e2: int, *, edge_id: int | None = None) -> Drawing:
    """Delete ``t`` and draw one edge along the path ``e1 - t - e2``.

    The new edge takes over the rotation slots of ``e1`` and ``e2`` at the far
    endpoints and inherits the single crossing of the path, if there is one.
    """
    if t not in d.rotations:
        raise DrawingError(f"unknown vertex {t}")
    if t not in d.edges.get(e1, ()) or t not in d.edges.get(e2, ()) or e1 == e2:
        raise DrawingError("path edges must be two distinct edges at t")
    crossed = [x for x in (e1, e2) if d.is_crossed(x)]
    if len(crossed) > 1:
        raise DrawingError("path s-t-u has two crossings")
    s, u = d.other_end(e1, t), d.other_end(e2, t)
    if s == u:
        raise DrawingError("path closes a loop")
    others = [x for x in d.incident_edges(t) if x not in (e1, e2)]
    out = delete_edges(d, others)
    eid = out.next_edge_id() if edge_id is None else edge_id
    # orient the new edge so that the inherited half keeps its end index
    if crossed and crossed[0] == e2:
        new_uv = (u, s) if out.edges[e2][0] == u else (s, u)
    else:
        new_uv = (s, u) if out.edges[e1][0] == s else (u, s)
    end_at = {new_uv[0]: 0, new_uv[1]: 1}
    rotations = {x: list(r) for x, r in out.rotations.items() if x != t}
    for far, old in ((s, e1), (u, e2)):
        rotations[far] = [(eid, end_at[far]) if x[0] == old else x for x in rotations[far]]
    crossings = []
    for c in out.crossings:
        if crossed and crossed[0] in c[:2]:
            old = crossed[0]
            # the inherited half toward the kept endpoint keeps its end index
            a, b, o = c
            if a == old:
                a = eid
            else:
                b = eid
            crossings.append((a, b, o))
        else:
            crossings.append(c)
    edges = {k: uv for k, uv in out.edges.items() if k not in (e1, e2)}
    edges[eid] = new_uv
    return out._replace(
        vertices=[x for x in out.vertices if x != t], edges=edges,
        crossings=crossings, rotations=rotations)


def extract_subdrawing(d: Drawing, keep: Iterable[int], *,
                       require_connected: bool = True) -> Drawing:
    keep = set(keep)
    if not keep:
        raise DrawingError("empty drawing: nothing to keep")
    missing = keep - set(d.vertices)
    if missing:
        raise DrawingError(f"unknown vertices {sorted(missing)}")
    out = delete_vertices(d, [v for v in d.vertices if v not in keep])
    if require_connected and not out.is_connected():
        raise DisconnectedDrawingError("extracted subdrawing is disconnected")
    return out


# ============================================================ measurements


def crossing_weighted_degree(d: Drawing, v: int) -> int:
    if v not in d.rotations:
        raise DrawingError(f"unknown vertex {v}")
    return sum(1 if d.is_crossed(e) else 2 for e, _ in d.rotations[v])


def find_empty_lenses(d: Drawing) -> list[tuple[int, int]]:
    """Pairs of uncrossed parallel edges that together bound a face."""
    fs, _ = d.face_index()
    lenses = []
    for f in fs:
        if len(f) != 2:
            continue
        (k1, e1, _), (k2, e2, _) = f.darts
        if k1 != "v" or k2 != "v" or e1 == e2:
            continue
        if d.is_crossed(e1) or d.is_crossed(e2):
            continue
        if frozenset(d.edges[e1]) == frozenset(d.edges[e2]):
            lenses.append((min(e1, e2), max(e1, e2)))
    return sorted(lenses)


def has_empty_theta(d: Drawing) -> bool:
    """Three uncrossed copies of an edge with two empty areas between them.

    That is an edge lying in empty lenses with two different partner copies.
    """
    partners: dict[int, set[int]] = defaultdict(set)
    for a, b in find_empty_lenses(d):
        partners[a].add(b)
        partners[b].add(a)
    return any(len(p) >= 2 for p in partners.values())


def crossing_count(d: Drawing) -> int:
    return len(d.crossings)


def multi_edge_groups(d: Drawing) -> dict[frozenset[int], list[int]]:
    groups: dict[frozenset[int], list[int]] = defaultdict(list)
    for e, uv in d.edges.items():
        groups[frozenset(uv)].append(e)
    return {k: v for k, v in groups.items() if len(v) > 1}


def drawing_from_faces(faces_: Iterable[Iterable[int]], *, meta: dict | None = None) -> Drawing:
    """Planar simple drawing from consistently oriented face cycles."""
    cycles = [list(f) for f in faces_]
    succ: dict[int, dict[int, int]] = defaultdict(dict)
    edge_ids: dict[frozenset[int], int] = {}
    edges: dict[int, tuple[int, int]] = {}
    for cyc in cycles:
        k = len(cyc)
        for i in range(k):
            a, b, c = cyc[i - 1], cyc[i], cyc[(i + 1) % k]
            succ[b][a] = c
            key = frozenset((a, b))
            if key not in edge_ids:
                edge_ids[key] = len(edge_ids)
                edges[edge_ids[key]] = (min(a, b), max(a, b))
    vertices = sorted(succ)
    rotations: dict[int, list[EdgeEnd]] = {}
    for v in vertices:
        start = min(succ[v])
        order = [start]
        while True:
            nxt = succ[v][order[-1]]
            if nxt == start:
                break
            order.append(nxt)
        if len(order) != len(succ[v]):
            raise DrawingError(f"faces are not consistently oriented around {v}")
        rot = []
        for w in order:
            e = edge_ids[frozenset((v, w))]
            rot.append((e, 0 if edges[e][0] == v else 1))
        rotations[v] = rot
    return Drawing(vertices, edges, [], rotations, meta)
