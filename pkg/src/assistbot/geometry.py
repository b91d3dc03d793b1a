"""Planar geometry helpers shared by the world model and sensor simulators.

Everything works on plain floats / tuples; obstacles are axis-aligned
rectangles (x0, y0, x1, y1) with x0 < x1 and y0 < y1.
"""

from __future__ import annotations

import math

Rect = tuple[float, float, float, float]
Vec2 = tuple[float, float]

TAU = math.tau


def normalize_angle(a: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    r = math.remainder(a, TAU)
    if r <= -math.pi:
        r += TAU
    return r


def clamp(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


def point_rect_distance(px: float, py: float, rect: Rect) -> float:
    """Distance from a point to a rectangle (0 inside)."""
    x0, y0, x1, y1 = rect
    dx = max(x0 - px, 0.0, px - x1)
    dy = max(y0 - py, 0.0, py - y1)
    return math.hypot(dx, dy)


def point_in_rect(px: float, py: float, rect: Rect) -> bool:
    x0, y0, x1, y1 = rect
    return x0 <= px <= x1 and y0 <= py <= y1


def disc_overlaps_rect(cx: float, cy: float, radius: float, rect: Rect,
                       eps: float = 1e-9) -> bool:
    """True iff the open disc overlaps the rectangle interior.

    Boundary contact (distance exactly == radius) does not count.
    """
    return point_rect_distance(cx, cy, rect) < radius - eps


def ray_rect_intersection(ox: float, oy: float, dx: float, dy: float,
                          rect: Rect) -> float | None:
    """First hit parameter t >= 0 along ray origin + t*dir, or None.

    Slab method; direction need not be normalized (t is in direction units).
    """
    x0, y0, x1, y1 = rect
    tmin, tmax = 0.0, math.inf
    for o, d, lo, hi in ((ox, dx, x0, x1), (oy, dy, y0, y1)):
        if d == 0.0:
            if o < lo or o > hi:
                return None
        else:
            t1 = (lo - o) / d
            t2 = (hi - o) / d
            if t1 > t2:
                t1, t2 = t2, t1
            tmin = max(tmin, t1)
            tmax = min(tmax, t2)
            if tmin > tmax:
                return None
    return tmin


def ray_circle_intersection(ox: float, oy: float, dx: float, dy: float,
                            cx: float, cy: float, radius: float) -> float | None:
    """First hit parameter t >= 0 along a unit-ish ray against a circle."""
    fx, fy = ox - cx, oy - cy
    a = dx * dx + dy * dy
    b = 2.0 * (fx * dx + fy * dy)
    c = fx * fx + fy * fy - radius * radius
    disc = b * b - 4.0 * a * c
    if disc < 0.0 or a == 0.0:
        return None
    s = math.sqrt(disc)
    t1 = (-b - s) / (2.0 * a)
    t2 = (-b + s) / (2.0 * a)
    if t1 >= 0.0:
        return t1
    if t2 >= 0.0:
        return t2
    return None


def segment_intersects_rect(ax: float, ay: float, bx: float, by: float,
                            rect: Rect) -> bool:
    dx, dy = bx - ax, by - ay
    t = ray_rect_intersection(ax, ay, dx, dy, rect)
    return t is not None and t <= 1.0


def _seg_seg_distance(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> float:
    """Minimum distance between two 2D segments."""

    def cross(ox, oy, ax, ay, bx, by):
        return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)

    d1 = cross(q1[0], q1[1], q2[0], q2[1], p1[0], p1[1])
    d2 = cross(q1[0], q1[1], q2[0], q2[1], p2[0], p2[1])
    d3 = cross(p1[0], p1[1], p2[0], p2[1], q1[0], q1[1])
    d4 = cross(p1[0], p1[1], p2[0], p2[1], q2[0], q2[1])
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
        return 0.0
    return min(
        point_segment_distance(p1[0], p1[1], q1, q2),
        point_segment_distance(p2[0], p2[1], q1, q2),
        point_segment_distance(q1[0], q1[1], p1, p2),
        point_segment_distance(q2[0], q2[1], p1, p2),
    )


def point_segment_distance(px: float, py: float, a: Vec2, b: Vec2) -> float:
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    seg2 = dx * dx + dy * dy
    if seg2 == 0.0:
        return math.hypot(px - ax, py - ay)
    t = clamp(((px - ax) * dx + (py - ay) * dy) / seg2, 0.0, 1.0)
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def segment_rect_distance(ax: float, ay: float, bx: float, by: float,
                          rect: Rect) -> float:
    """Minimum distance between a segment and a rectangle (0 on overlap)."""
    if point_in_rect(ax, ay, rect) or point_in_rect(bx, by, rect):
        return 0.0
    if segment_intersects_rect(ax, ay, bx, by, rect):
        return 0.0
    x0, y0, x1, y1 = rect
    edges = (
        ((x0, y0), (x1, y0)),
        ((x1, y0), (x1, y1)),
        ((x1, y1), (x0, y1)),
        ((x0, y1), (x0, y0)),
    )
    return min(_seg_seg_distance((ax, ay), (bx, by), e0, e1) for e0, e1 in edges)
