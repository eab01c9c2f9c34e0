"""Independent-set bounds for 1-planar drawings and the matching-size targets.

All arithmetic is on integers or :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .drawing import Drawing, crossing_weighted_degree, find_empty_lenses, multi_edge_groups
from .report import CheckRecord, compare, vacuous


def _guard_reason(d: Drawing, A: set[int]) -> str | None:
    if not A:
        return "A must be non-empty"
    missing = A - set(d.vertices)
    if missing:
        return f"A contains non-vertices {sorted(missing)[:5]}"
    for e, (u, v) in d.edges.items():
        if u in A and v in A:
            return f"A is not independent: edge {e}=({u},{v})"
    low = [v for v in sorted(A) if d.degree(v) < 3]
    if low:
        return f"A-vertex {low[0]} has degree {d.degree(low[0])} < 3"
    return None


def bw_lhs(degrees: Iterable[int]) -> int:
    return sum(2 if k == 3 else 3 * k - 6 for k in degrees)


def weighted_bw_lhs(weighted_degrees: Iterable[int]) -> int:
    return sum(2 if k in (3, 4) else 3 * k - 12 for k in weighted_degrees)


def check_independent_set_bound(d: Drawing, A: Iterable[int], *, name: str = "BW") -> CheckRecord:
    """2|A_3| + sum_{d>3} (3d-6)|A_d| <= 12|V \\ A| - 24 on a simple drawing."""
    A = set(A)
    rhs = 12 * (len(d.vertices) - len(A)) - 24
    reason = _guard_reason(d, A)
    if reason is None and not d.is_simple():
        reason = "drawing must be simple"
    if reason is not None:
        return vacuous(name, reason, 0, rhs)
    return compare(name, bw_lhs(d.degree(v) for v in A), "<=", rhs,
                   witness={"A": sorted(A)})


def weighted_guard_violations(d: Drawing) -> list:
    """Empty lenses, and multi-edges with more than one crossed copy."""
    bad: list = [("empty lens", list(p)) for p in find_empty_lenses(d)]
    for group in multi_edge_groups(d).values():
        if sum(d.is_crossed(e) for e in group) > 1:
            bad.append(("multi-edge with two crossed copies", sorted(group)))
    return bad


def check_weighted_independent_set_bound(d: Drawing, A: Iterable[int], *,
                                         name: str = "BWstronger") -> CheckRecord:
    """2|W_3| + 2|W_4| + sum_{d>=5} (3d-12)|W_d| <= 12|V \\ A| - 24."""
    A = set(A)
    rhs = 12 * (len(d.vertices) - len(A)) - 24
    reason = _guard_reason(d, A)
    if reason is None and not d.is_simple():
        bad = weighted_guard_violations(d)
        if bad:
            reason = f"multi-edge condition violated: {bad[0]}"
    if reason is not None:
        return vacuous(name, reason, 0, rhs)
    lhs = weighted_bw_lhs(crossing_weighted_degree(d, v) for v in A)
    return compare(name, lhs, "<=", rhs, witness={"A": sorted(A)})


def theorem_bound(n: int, delta: int, k: int) -> Fraction:
    """Lower bound on |M| guaranteed for minimum degree ``delta`` and no k-augmenting path."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if k == 9 and delta == 3:
        return Fraction(n + 12, 7)
    if k == 3 and delta == 3:
        return Fraction(n + 12, 8)
    if k == 9 and delta == 4:
        return Fraction(3 * (n + 12), 10)
    if k == 9 and delta >= 5:
        return Fraction(n + 12, 3)
    raise ValueError(f"unsupported combination delta={delta}, k={k}")


def rigorous_high_degree_bound(n: int, delta: int) -> Fraction:
    """Bound that follows from |F_H| <= c(|S| - 2), c = 4/(delta-2), for delta >= 4."""
    if delta == 4:
        return Fraction(3 * n + 12, 10)
    if delta >= 5:
        c = Fraction(4, delta - 2)
        return (n + 2 * c) / 3
    raise ValueError("the high-degree chain needs delta >= 4")
