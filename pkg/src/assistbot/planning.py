"""Grid-based path planning: A* on a 0.1 m occupancy grid + shortcut smoothing."""

from __future__ import annotations

import heapq
import math

from .geometry import Rect, point_rect_distance, segment_rect_distance
from .world import ROBOT_RADIUS, WorldState

CELL = 0.1

# Cells are blocked when their centre is within ROBOT_RADIUS + CELL_MARGIN of
# an obstacle. The margin covers the worst-case excursion of a segment
# between two adjacent (incl. diagonal) cell centres, so every grid edge is
# guaranteed to keep full robot clearance.
CELL_MARGIN = 0.75 * CELL

_SQRT2 = math.sqrt(2.0)
_NEIGHBOURS = (
    (1, 0, 1.0), (-1, 0, 1.0), (0, 1, 1.0), (0, -1, 1.0),
    (1, 1, _SQRT2), (1, -1, _SQRT2), (-1, 1, _SQRT2), (-1, -1, _SQRT2),
)


class OccupancyGrid:
    """Boolean occupancy over the world bounds; True = blocked."""

    def __init__(self, bounds: Rect, obstacles: list[Rect], cell: float = CELL,
                 inflation: float = ROBOT_RADIUS + CELL_MARGIN):
        self.bounds = bounds
        self.cell = cell
        x0, y0, x1, y1 = bounds
        self.nx = max(1, int(round((x1 - x0) / cell)))
        self.ny = max(1, int(round((y1 - y0) / cell)))
        self.blocked = [[False] * self.ny for _ in range(self.nx)]
        for i in range(self.nx):
            cx = x0 + (i + 0.5) * cell
            for j in range(self.ny):
                cy = y0 + (j + 0.5) * cell
                for rect in obstacles:
                    if point_rect_distance(cx, cy, rect) < inflation:
                        self.blocked[i][j] = True
                        break

    def cell_of(self, x: float, y: float) -> tuple[int, int]:
        i = int((x - self.bounds[0]) / self.cell)
        j = int((y - self.bounds[1]) / self.cell)
        return (min(max(i, 0), self.nx - 1), min(max(j, 0), self.ny - 1))

    def centre_of(self, i: int, j: int) -> tuple[float, float]:
        return (self.bounds[0] + (i + 0.5) * self.cell,
                self.bounds[1] + (j + 0.5) * self.cell)

    def in_grid(self, i: int, j: int) -> bool:
        return 0 <= i < self.nx and 0 <= j < self.ny

    def free(self, i: int, j: int) -> bool:
        return self.in_grid(i, j) and not self.blocked[i][j]


def _octile(a: tuple[int, int], b: tuple[int, int]) -> float:
    dx, dy = abs(a[0] - b[0]), abs(a[1] - b[1])
    return (dx + dy) + (_SQRT2 - 2.0) * min(dx, dy)


def astar(grid: OccupancyGrid, start: tuple[int, int],
          goal: tuple[int, int]) -> list[tuple[int, int]] | None:
    """A* over 8-connected cells; returns cell path or None if unreachable."""
    if not grid.free(*start) or not grid.free(*goal):
        return None
    open_heap = [(0.0, start)]
    g = {start: 0.0}
    came: dict[tuple[int, int], tuple[int, int]] = {}
    closed: set[tuple[int, int]] = set()
    while open_heap:
        _, cur = heapq.heappop(open_heap)
        if cur in closed:
            continue
        if cur == goal:
            path = [cur]
            while cur in came:
                cur = came[cur]
                path.append(cur)
            path.reverse()
            return path
        closed.add(cur)
        ci, cj = cur
        for di, dj, cost in _NEIGHBOURS:
            nb = (ci + di, cj + dj)
            if not grid.free(*nb):
                continue
            # no cutting corners past blocked cells on diagonal moves
            if di and dj and not (grid.free(ci + di, cj) and grid.free(ci, cj + dj)):
                continue
            ng = g[cur] + cost
            if ng < g.get(nb, math.inf):
                g[nb] = ng
                came[nb] = cur
                heapq.heappush(open_heap, (ng + _octile(nb, goal), nb))
    return None


def segment_clear(ax: float, ay: float, bx: float, by: float,
                  obstacles: list[Rect], clearance: float = ROBOT_RADIUS) -> bool:
    return all(segment_rect_distance(ax, ay, bx, by, r) >= clearance
               for r in obstacles)


def shortcut(points: list[tuple[float, float]], obstacles: list[Rect],
             clearance: float = ROBOT_RADIUS) -> list[tuple[float, float]]:
    """Greedy shortcut smoothing: jump to the furthest visible waypoint."""
    if len(points) <= 2:
        return points
    out = [points[0]]
    i = 0
    while i < len(points) - 1:
        j = len(points) - 1
        while j > i + 1:
            if segment_clear(points[i][0], points[i][1],
                             points[j][0], points[j][1], obstacles, clearance):
                break
            j -= 1
        out.append(points[j])
        i = j
    return out


def _attach_cell(grid: OccupancyGrid, x: float, y: float,
                 obstacles: list[Rect]) -> tuple[int, int] | None:
    """Free cell near (x, y) reachable by a clearance-respecting segment."""
    ci, cj = grid.cell_of(x, y)
    best: tuple[float, tuple[int, int]] | None = None
    for di in range(-2, 3):
        for dj in range(-2, 3):
            cand = (ci + di, cj + dj)
            if not grid.free(*cand):
                continue
            cx, cy = grid.centre_of(*cand)
            if not segment_clear(x, y, cx, cy, obstacles):
                continue
            d = math.hypot(cx - x, cy - y)
            if best is None or d < best[0]:
                best = (d, cand)
    return None if best is None else best[1]


def plan_path(world: WorldState, goal: tuple[float, float],
              cell: float = CELL) -> list[tuple[float, float]] | None:
    """Waypoints from the robot to goal, or None when unreachable.

    The returned polyline, inflated by the robot radius, avoids all
    obstacles: every segment is either verified directly or runs between
    adjacent cells of the inflated occupancy grid.
    """
    sx, sy = world.robot.x, world.robot.y
    gx, gy = float(goal[0]), float(goal[1])
    obstacles = world.obstacles
    if math.hypot(gx - sx, gy - sy) <= 0.05:
        return [(sx, sy)]
    if any(point_rect_distance(gx, gy, r) < ROBOT_RADIUS for r in obstacles):
        return None
    if segment_clear(sx, sy, gx, gy, obstacles):
        return [(sx, sy), (gx, gy)]
    grid = OccupancyGrid(world.bounds, obstacles, cell)
    start_cell = _attach_cell(grid, sx, sy, obstacles)
    goal_cell = _attach_cell(grid, gx, gy, obstacles)
    if start_cell is None or goal_cell is None:
        return None
    cells = astar(grid, start_cell, goal_cell)
    if cells is None:
        return None
    pts = [(sx, sy)] + [grid.centre_of(i, j) for i, j in cells] + [(gx, gy)]
    return shortcut(pts, obstacles)


def path_length(points: list[tuple[float, float]]) -> float:
    return sum(math.hypot(b[0] - a[0], b[1] - a[1])
               for a, b in zip(points, points[1:]))
