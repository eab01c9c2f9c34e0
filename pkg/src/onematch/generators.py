"""Seeded 1-planar drawings with minimum degree at least 3.

Every generator records its name, parameters and seed in the drawing's
``meta`` block. Randomness comes from ``numpy.random.default_rng`` so a seed
fixes the output bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .drawing import Drawing, DrawingError, delete_edge, drawing_from_faces, validate_drawing
from .graph import is_connected

FIXED_NAMES = ("K4", "cube", "icosahedron", "C4_crossed")


@dataclass(frozen=True)
class GenConfig:
    n: int
    seed: int = 0
    crossing_fraction: float = 0.0
    deletion_fraction: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 4:
            raise ValueError(f"n must be at least 4, got {self.n}")
        for name in ("crossing_fraction", "deletion_fraction"):
            x = getattr(self, name)
            if not 0.0 <= x <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {x}")


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) % 2**64)


def _with_meta(d: Drawing, meta: dict) -> Drawing:
    return d._replace(meta=meta)


# ------------------------------------------------------------ triangulations


def stacked_faces(n: int, seed: int) -> list[tuple[int, int, int]]:
    """Oriented faces of a stacked triangulation on ``n`` vertices."""
    if n < 4:
        raise ValueError(f"n must be at least 4, got {n}")
    rng = _rng(seed)
    faces = [(0, 1, 2), (0, 2, 1)]
    for v in range(3, n):
        i = int(rng.integers(len(faces)))
        a, b, c = faces[i]
        faces[i] = (a, b, v)
        faces.extend([(b, c, v), (c, a, v)])
    return faces


def random_planar_triangulation(n: int, seed: int = 0) -> Drawing:
    d = drawing_from_faces(stacked_faces(n, seed))
    return _with_meta(d, {"generator": "triangulation", "n": n, "seed": int(seed)})


def _face_vertices(d: Drawing, face) -> list[int]:
    return [d.edges[e][end] for _, e, end in face.darts]


def add_random_crossings(d: Drawing, p: float, seed: int = 0) -> Drawing:
    """Add the second diagonal across a ``p``-fraction of edges between two triangles.

    Each triangle serves at most one crossing, so the inserted diagonals cross
    only the edge they were created for and the drawing stays 1-planar.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"crossing fraction must lie in [0, 1], got {p}")
    rng = _rng(seed)
    fs, which = d.face_index()
    used: set[int] = set()
    pairs = {frozenset(uv) for uv in d.edges.values()}
    edges = dict(d.edges)
    rotations = {v: list(r) for v, r in d.rotations.items()}
    crossings = list(d.crossings)
    next_id = d.next_edge_id()
    for e in sorted(d.edges):
        coin = rng.random()
        if d.is_crossed(e):
            continue
        i1, i2 = which[("v", e, 0)], which[("v", e, 1)]
        if i1 == i2 or i1 in used or i2 in used:
            continue
        f1, f2 = fs[i1], fs[i2]
        if len(f1) != 3 or len(f2) != 3 or any(k != "v" for k, _, _ in f1.darts + f2.darts):
            continue
        ends = set(d.edges[e])
        a = next(x for x in _face_vertices(d, f1) if x not in ends)
        c = next(x for x in _face_vertices(d, f2) if x not in ends)
        if a == c or frozenset((a, c)) in pairs or coin >= p:
            continue
        da = next(x for x in f1.darts if d.edges[x[1]][x[2]] == a)
        dc = next(x for x in f2.darts if d.edges[x[1]][x[2]] == c)
        rotations[a].insert(rotations[a].index((da[1], da[2])), (next_id, 0))
        rotations[c].insert(rotations[c].index((dc[1], dc[2])), (next_id, 1))
        edges[next_id] = (a, c)
        crossings.append((e, next_id, 0))
        pairs.add(frozenset((a, c)))
        used.update((i1, i2))
        next_id += 1
    meta = dict(d.meta or {})
    meta["crossing_fraction"] = p
    meta["crossing_seed"] = int(seed)
    return Drawing(d.vertices, edges, crossings, rotations, meta)


def sparsify(d: Drawing, q: float, seed: int = 0) -> Drawing:
    """Delete a ``q``-fraction of uncrossed edges, keeping degree >= 3 and connectivity."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"deletion fraction must lie in [0, 1], got {q}")
    rng = _rng(seed)
    out = d
    for e in sorted(d.edges):
        coin = rng.random()
        if coin >= q or d.is_crossed(e):
            continue
        u, v = out.edges[e]
        if out.degree(u) <= 3 or out.degree(v) <= 3:
            continue
        trial = delete_edge(out, e)
        if _drawing_connected(trial):
            out = trial
    meta = dict(d.meta or {})
    meta["deletion_fraction"] = q
    meta["deletion_seed"] = int(seed)
    return out._replace(meta=meta)


def _drawing_connected(d: Drawing) -> bool:
    try:
        return is_connected(d.to_graph())
    except DrawingError:
        return d.is_connected()


def stellate(d: Drawing) -> Drawing:
    """Place a new degree-3 vertex inside every triangular face of a planar drawing.

    The new vertices form a large independent set, so maximum matchings leave
    many of them free; this populates the flower and level classes.
    """
    fs, _ = d.face_index()
    new_faces = []
    nxt = max(d.vertices) + 1
    for f in fs:
        a, b, c = _face_vertices(d, f)
        new_faces.extend([(a, b, nxt), (b, c, nxt), (c, a, nxt)])
        nxt += 1
    out = drawing_from_faces(new_faces)
    meta = dict(d.meta or {})
    meta["stellated"] = True
    return out._replace(meta=meta)


def generate(config: GenConfig, *, stellated: bool = False) -> Drawing:
    """Triangulation, optionally stellated, then crossings, then sparsification."""
    seed = config.seed
    d = random_planar_triangulation(config.n, seed)
    if stellated:
        d = stellate(d)
    if config.crossing_fraction > 0:
        d = add_random_crossings(d, config.crossing_fraction, seed + 1)
    if config.deletion_fraction > 0:
        d = sparsify(d, config.deletion_fraction, seed + 2)
    meta = {"generator": "stellated" if stellated else "triangulation",
            "n": config.n, "seed": int(seed),
            "crossing_fraction": config.crossing_fraction,
            "deletion_fraction": config.deletion_fraction}
    return d._replace(meta=meta)


# ------------------------------------------------------------- medial graphs


def medial(seed: int, n: int = 12) -> Drawing:
    """Medial graph of a seeded stacked triangulation: 4-regular and planar."""
    tri = random_planar_triangulation(n, seed)
    index = {frozenset(uv): i for i, uv in enumerate(sorted(tri.edges.values()))}
    fs, _ = tri.face_index()
    face_cycles = []
    for f in fs:
        a, b, c = _face_vertices(tri, f)
        face_cycles.append([index[frozenset(p)] for p in ((a, b), (b, c), (c, a))])
    vertex_cycles = []
    for v in tri.vertices:
        around = tri.neighbors(v)
        vertex_cycles.append([index[frozenset((v, w))] for w in around])
    for flip in (False, True):
        cycles = face_cycles + [list(reversed(c)) if flip else c for c in vertex_cycles]
        try:
            d = drawing_from_faces(cycles)
        except (DrawingError, KeyError):
            continue
        if not validate_drawing(d):
            return _with_meta(d, {"generator": "medial", "n": n, "seed": int(seed)})
    raise DrawingError("could not orient the medial graph")


# ------------------------------------------------------------ fixed drawings


def _icosahedron_faces() -> list[tuple[int, int, int]]:
    top, bottom = 0, 11
    upper = [1, 2, 3, 4, 5]
    lower = [6, 7, 8, 9, 10]
    faces = []
    for i in range(5):
        a, b = upper[i], upper[(i + 1) % 5]
        c, e = lower[i], lower[(i + 1) % 5]
        faces.append((top, a, b))
        faces.append((a, c, b))
        faces.append((b, c, e))
        faces.append((bottom, e, c))
    return faces


def _c4_crossed() -> Drawing:
    # square 0-1-2-3 with crossing diagonals 4=(0,2) and 5=(1,3)
    edges = {0: (0, 1), 1: (1, 2), 2: (2, 3), 3: (0, 3), 4: (0, 2), 5: (1, 3)}
    rotations = {
        0: [(0, 0), (4, 0), (3, 0)],
        1: [(1, 0), (5, 0), (0, 1)],
        2: [(2, 0), (4, 1), (1, 1)],
        3: [(3, 1), (5, 1), (2, 1)],
    }
    return Drawing(range(4), edges, [(4, 5, 0)], rotations)


def fixed_instance(name: str) -> Drawing:
    """Named drawing; ``medial:SEED`` selects a medial graph."""
    if name == "K4":
        d = drawing_from_faces([(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])
    elif name == "cube":
        d = drawing_from_faces([(0, 1, 2, 3), (4, 7, 6, 5), (0, 4, 5, 1),
                                (1, 5, 6, 2), (2, 6, 7, 3), (3, 7, 4, 0)])
    elif name == "icosahedron":
        d = drawing_from_faces(_icosahedron_faces())
    elif name == "C4_crossed":
        d = _c4_crossed()
    elif name.startswith("medial"):
        tail = name[len("medial"):].strip("():")
        try:
            seed = int(tail) if tail else 0
        except ValueError:
            raise ValueError(f"unknown instance {name!r}") from None
        return medial(seed)
    else:
        raise ValueError(f"unknown instance {name!r}")
    return _with_meta(d, {"generator": "fixed", "name": name})
