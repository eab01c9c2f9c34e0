"""Matchings without augmenting paths of bounded length.

The elimination loop works in phases of increasing odd length ``L``: it
augments along a shortest path (lowest free start vertex, then the
lexicographically smallest vertex sequence) until no path of length ``<= L``
remains, then moves to ``L + 2``. Augmenting along a shortest augmenting path
never creates a shorter one, so each phase only searches at its own bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, InvalidMatchingError, Matching, canonical, validate_matching

BRUTE_FORCE_LIMIT = 16


class NotAugmentingError(ValueError):
    pass


class GraphTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class AlternatingPath:
    vertices: tuple[int, ...]
    matched: tuple[bool, ...]     # flag per edge, edge i joins vertices[i], vertices[i+1]

    def __len__(self) -> int:
        return len(self.vertices) - 1

    @property
    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [canonical(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]

    @classmethod
    def from_vertices(cls, vertices, m: Matching) -> AlternatingPath:
        vs = tuple(vertices)
        flags = tuple(m.mate(vs[i]) == vs[i + 1] for i in range(len(vs) - 1))
        return cls(vs, flags)


def _odd_bound(k: int) -> int:
    return k if k % 2 else k - 1


def _check(g: Graph, m: Matching) -> None:
    report = validate_matching(g, m)
    if not report:
        raise InvalidMatchingError("; ".join(report.reasons))


def _search_from(g: Graph, mate: dict[int, int], f: int, bound: int) -> list[int] | None:
    """DFS over alternating simple paths from free ``f`` of length <= ``bound``."""
    adj = g.adjacency
    path = [f]
    on_path = {f}

    def extend(x: int, used: int) -> bool:
        for w in adj[x]:
            if w in on_path or mate.get(x) == w:
                continue
            p = mate.get(w)
            if p is None:
                path.append(w)
                return True
            if used + 3 > bound:
                continue
            path.extend((w, p))
            on_path.update((w, p))
            if extend(p, used + 2):
                return True
            path.pop()
            path.pop()
            on_path.discard(w)
            on_path.discard(p)
        return False

    if bound >= 1 and extend(f, 0):
        return path
    return None


def _first_path(g: Graph, mate: dict[int, int], lo: int, hi: int) -> list[int] | None:
    free = [v for v in range(g.n) if v not in mate]
    for bound in range(lo, hi + 1, 2):
        for f in free:
            path = _search_from(g, mate, f, bound)
            if path is not None:
                return path
    return None


def find_bounded_augmenting_path(g: Graph, m: Matching, k: int) -> AlternatingPath | None:
    """A shortest augmenting path with at most ``k`` edges, or ``None``."""
    _check(g, m)
    path = _first_path(g, m.partner, 1, _odd_bound(k))
    return None if path is None else AlternatingPath.from_vertices(path, m)


def augment(m: Matching, p: AlternatingPath) -> Matching:
    vs = p.vertices
    n_edges = len(vs) - 1
    if n_edges < 1 or n_edges % 2 == 0:
        raise NotAugmentingError("augmenting paths have odd length")
    if len(set(vs)) != len(vs):
        raise NotAugmentingError("path repeats a vertex")
    if m.covers(vs[0]) or m.covers(vs[-1]):
        raise NotAugmentingError("path endpoints must be free")
    edges = set(m.edges)
    for i, e in enumerate(p.edges):
        should_match = i % 2 == 1
        if (e in edges) != should_match or p.matched[i] != should_match:
            raise NotAugmentingError(f"edge {e} breaks the alternation")
    for i, e in enumerate(p.edges):
        if i % 2:
            edges.discard(e)
        else:
            edges.add(e)
    return Matching(edges)


def eliminate_bounded_augmenting_paths(g: Graph, m0: Matching | None = None,
                                       k: int = 9) -> Matching:
    """Augment until no augmenting path of length <= ``k`` is left."""
    m0 = m0 if m0 is not None else Matching()
    _check(g, m0)
    mate = m0.partner
    top = _odd_bound(k)
    for bound in range(1, top + 1, 2):
        while True:
            path = _first_path(g, mate, bound, bound)
            if path is None:
                break
            for i in range(0, len(path) - 1, 2):
                a, b = path[i], path[i + 1]
                mate[a] = b
                mate[b] = a
    return Matching.from_partner(mate)


def greedy_maximal_matching(g: Graph) -> Matching:
    mate: dict[int, int] = {}
    for u, v in g.edges:
        if u not in mate and v not in mate:
            mate[u] = v
            mate[v] = u
    return Matching.from_partner(mate)


def brute_force_maximum_matching(g: Graph, limit: int = BRUTE_FORCE_LIMIT) -> Matching:
    """Maximum matching by memoised search over vertex subsets."""
    if g.n > limit:
        raise GraphTooLargeError(f"n={g.n} exceeds the brute-force cap {limit}")
    adj_mask = [0] * g.n
    for u, v in g.edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u

    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[int, tuple[tuple[int, int], ...]]:
        if mask == 0:
            return 0, ()
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        result = best(rest)
        options = adj_mask[v] & rest
        while options:
            w = (options & -options).bit_length() - 1
            options &= options - 1
            size, chosen = best(rest & ~(1 << w))
            if size + 1 > result[0]:
                result = (size + 1, ((v, w),) + chosen)
        return result

    return Matching(best((1 << g.n) - 1)[1])
