"""Simple undirected graphs and matchings on dense integer vertices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised when an edge list does not describe a simple graph."""


class LoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class InvalidMatchingError(ValueError):
    pass


def canonical(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0 .. vertex_count-1``.

    ``edges`` keeps the caller's order, each pair stored smaller index first.
    ``adjacency[v]`` is sorted ascending so every traversal is deterministic.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)
    _edge_set: frozenset[Edge] = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return canonical(u, v) in self._edge_set

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def induced(self, keep: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled densely; also returns new->old ids."""
        old = sorted(set(keep))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return build_graph(len(old), edges), old

    def to_json(self) -> dict:
        return {"n": self.vertex_count, "edges": [list(e) for e in self.edges]}


def build_graph(vertex_count: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    if vertex_count < 0:
        raise VertexRangeError(f"negative vertex count {vertex_count}")
    edges: list[Edge] = []
    seen: set[Edge] = set()
    adjacency: list[list[int]] = [[] for _ in range(vertex_count)]
    for raw in edge_list:
        u, v = int(raw[0]), int(raw[1])
        for x in (u, v):
            if not 0 <= x < vertex_count:
                raise VertexRangeError(
                    f"endpoint {x} of edge ({u},{v}) out of range 0..{vertex_count - 1}")
        if u == v:
            raise LoopError(f"loop at vertex {u}")
        e = canonical(u, v)
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge {e}")
        seen.add(e)
        edges.append(e)
        adjacency[u].append(v)
        adjacency[v].append(u)
    return Graph(vertex_count, tuple(edges),
                 tuple(tuple(sorted(a)) for a in adjacency), frozenset(seen))


def min_degree(g: Graph) -> int:
    if g.vertex_count < 1:
        raise GraphError("minimum degree of the empty graph is undefined")
    return min(len(a) for a in g.adjacency)


def is_connected(g: Graph) -> bool:
    if g.vertex_count == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.vertex_count


class Matching:
    """Set of edges, intended to be vertex-disjoint.

    Construction never rejects input so that invalid candidates can be
    handed to :func:`validate_matching`; algorithms call :meth:`mate`, which
    is only meaningful for vertex-disjoint edge sets.
    """

    __slots__ = ("edges", "_partner", "_disjoint")

    def __init__(self, edges: Iterable[tuple[int, int]] = ()) -> None:
        self.edges: frozenset[Edge] = frozenset(canonical(int(u), int(v)) for u, v in edges)
        partner: dict[int, int] = {}
        disjoint = True
        for u, v in self.edges:
            if u in partner or v in partner or u == v:
                disjoint = False
            partner[u] = v
            partner[v] = u
        self._partner = partner
        self._disjoint = disjoint

    @classmethod
    def from_partner(cls, partner: dict[int, int]) -> Matching:
        return cls((u, v) for u, v in partner.items() if u < v)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.edges))

    def __contains__(self, e: object) -> bool:
        if not isinstance(e, tuple) or len(e) != 2:
            return False
        return canonical(*e) in self.edges

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matching) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"Matching({sorted(self.edges)})"

    @property
    def is_vertex_disjoint(self) -> bool:
        return self._disjoint

    @property
    def partner(self) -> dict[int, int]:
        return dict(self._partner)

    def mate(self, v: int) -> int | None:
        return self._partner.get(v)

    def covers(self, v: int) -> bool:
        return v in self._partner

    def vertices(self) -> set[int]:
        return set(self._partner)

    def restrict(self, keep: set[int]) -> Matching:
        return Matching(e for e in self.edges if e[0] in keep and e[1] in keep)

    def to_json(self) -> dict:
        return {"edges": [list(e) for e in sorted(self.edges)]}


@dataclass
class MatchingReport:
    """Truthy iff the matching is valid; ``reasons`` lists every violation."""

    ok: bool
    reasons: list[str]

    def __bool__(self) -> bool:
        return self.ok


def validate_matching(g: Graph, m: Matching) -> MatchingReport:
    reasons: list[str] = []
    used: dict[int, Edge] = {}
    for e in sorted(m.edges):
        u, v = e
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            reasons.append(f"{e} is not an edge of the graph")
        for x in (u, v):
            if x in used:
                reasons.append(f"{e} and {used[x]} share vertex {x}")
            else:
                used[x] = e
    return MatchingReport(not reasons, reasons)


def free_vertices(g: Graph, m: Matching) -> set[int]:
    report = validate_matching(g, m)
    if not report:
        raise InvalidMatchingError("; ".join(report.reasons))
    return {v for v in range(g.n) if not m.covers(v)}


def graph_from_json(data: dict) -> Graph:
    return build_graph(int(data["n"]), [tuple(e) for e in data["edges"]])


def matching_from_json(data: dict) -> Matching:
    return Matching(tuple(e) for e in data["edges"])


