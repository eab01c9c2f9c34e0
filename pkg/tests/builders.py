"""Build drawings from straight-line coordinates for hand-made test configurations."""

from __future__ import annotations

import math
from itertools import combinations

from onematch.drawing import Drawing

Point = tuple[float, float]


def _segment_hit(p: Point, q: Point, r: Point, s: Point) -> Point | None:
    """Interior intersection point of segments pq and rs, if they properly cross."""
    d = (q[0] - p[0]) * (s[1] - r[1]) - (q[1] - p[1]) * (s[0] - r[0])
    if abs(d) < 1e-12:
        return None
    lam = ((r[0] - p[0]) * (s[1] - r[1]) - (r[1] - p[1]) * (s[0] - r[0])) / d
    mu = ((r[0] - p[0]) * (q[1] - p[1]) - (r[1] - p[1]) * (q[0] - p[0])) / d
    if 1e-9 < lam < 1 - 1e-9 and 1e-9 < mu < 1 - 1e-9:
        return (p[0] + lam * (q[0] - p[0]), p[1] + lam * (q[1] - p[1]))
    return None


def _angle(origin: Point, target: Point) -> float:
    return math.atan2(target[1] - origin[1], target[0] - origin[0])


def straight_line_drawing(pos: dict[int, Point], edges: list[tuple[int, int]]) -> Drawing:
    """Edge ``i`` of the result is ``edges[i]``; rotations run counter-clockwise."""
    eds = {i: (u, v) for i, (u, v) in enumerate(edges)}
    rotations = {}
    for v in sorted(pos):
        ends = [(e, end) for e, uv in eds.items() for end in (0, 1) if uv[end] == v]
        ends.sort(key=lambda ee: _angle(pos[v], pos[eds[ee[0]][1 - ee[1]]]))
        rotations[v] = ends
    crossings = []
    for e1, e2 in combinations(sorted(eds), 2):
        (a, b), (c, d) = eds[e1], eds[e2]
        hit = _segment_hit(pos[a], pos[b], pos[c], pos[d])
        if hit is None:
            continue
        ring = sorted([(a, "a"), (b, "b"), (c, "c"), (d, "d")], key=lambda p: _angle(hit, pos[p[0]]))
        tags = [t for _, t in ring]
        i = tags.index("a")
        crossings.append((e1, e2, 0 if tags[(i + 1) % 4] == "c" else 1))
    return Drawing(sorted(pos), eds, crossings, rotations)
