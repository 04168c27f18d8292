"""2-D polygon primitives shared by the simulator and the localizer.

Polygons are sequences of ``(x, y)`` vertices in meters, listed in order
(either winding) and implicitly closed.
"""

from __future__ import annotations

import math
from typing import Sequence

Point = tuple[float, float]

_EPS = 1e-12


def polygon_area(polygon: Sequence[Point]) -> float:
    """Unsigned shoelace area."""
    acc = 0.0
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        acc += x1 * y2 - x2 * y1
    return abs(acc) / 2.0


def polygon_centroid(polygon: Sequence[Point]) -> Point:
    """Area centroid; falls back to vertex mean for degenerate polygons."""
    acc_x = acc_y = acc_a = 0.0
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        cross = x1 * y2 - x2 * y1
        acc_x += (x1 + x2) * cross
        acc_y += (y1 + y2) * cross
        acc_a += cross
    if abs(acc_a) < _EPS:
        return (
            sum(p[0] for p in polygon) / n,
            sum(p[1] for p in polygon) / n,
        )
    return acc_x / (3.0 * acc_a), acc_y / (3.0 * acc_a)


def polygon_bounds(polygon: Sequence[Point]) -> tuple[float, float, float, float]:
    xs = [p[0] for p in polygon]
    ys = [p[1] for p in polygon]
    return min(xs), min(ys), max(xs), max(ys)


def _on_segment(p: Point, a: Point, b: Point, tol: float = 1e-9) -> bool:
    ax, ay = a
    bx, by = b
    px, py = p
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    seg_len = math.hypot(bx - ax, by - ay)
    if seg_len < _EPS:
        return math.hypot(px - ax, py - ay) <= tol
    if abs(cross) / seg_len > tol:
        return False
    dot = (px - ax) * (bx - ax) + (py - ay) * (by - ay)
    return -tol * seg_len <= dot <= seg_len * seg_len + tol * seg_len


def point_on_boundary(point: Point, polygon: Sequence[Point], tol: float = 1e-9) -> bool:
    n = len(polygon)
    return any(_on_segment(point, polygon[i], polygon[(i + 1) % n], tol) for i in range(n))


def point_in_polygon(point: Point, polygon: Sequence[Point]) -> bool:
    """Ray-casting containment test; boundary points count as inside."""
    if point_on_boundary(point, polygon):
        return True
    x, y = point
    inside = False
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        # Half-open vertex rule keeps vertices from being counted twice.
        if (y1 > y) != (y2 > y):
            x_cross = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x_cross > x:
                inside = not inside
    return inside


def _segments_properly_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    def orient(p: Point, q: Point, r: Point) -> float:
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if ((o1 > _EPS and o2 < -_EPS) or (o1 < -_EPS and o2 > _EPS)) and (
        (o3 > _EPS and o4 < -_EPS) or (o3 < -_EPS and o4 > _EPS)
    ):
        return True
    # Collinear overlap or endpoint touching a non-adjacent edge also breaks
    # simplicity.
    for p, seg in ((c, (a, b)), (d, (a, b)), (a, (c, d)), (b, (c, d))):
        if _on_segment(p, *seg, tol=1e-12):
            return True
    return False


def polygon_is_simple(polygon: Sequence[Point]) -> bool:
    """True when no two non-adjacent edges intersect and no edge degenerates."""
    n = len(polygon)
    if n < 3:
        return False
    edges = [(polygon[i], polygon[(i + 1) % n]) for i in range(n)]
    for a, b in edges:
        if math.hypot(b[0] - a[0], b[1] - a[1]) < _EPS:
            return False
    for i in range(n):
        for j in range(i + 1, n):
            if j == i or (j - i) % n == 1 or (i - j) % n == 1:
                continue  # adjacent edges share a vertex by construction
            if _segments_properly_intersect(*edges[i], *edges[j]):
                return False
    return True
