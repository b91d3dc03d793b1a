"""Simulated sensor models and their analysis pipelines.

Thermal camera with hot-spot detection, tactile pressure table with object
analysis and payload verification, dual-microphone intelligibility model,
and a planar lidar. All functions are pure over a WorldState snapshot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    normalize_angle,
    point_rect_distance,
    ray_circle_intersection,
    ray_rect_intersection,
)
from .world import GRAVITY, Person, WorldState

THERMAL_COLS = 32
THERMAL_ROWS = 24
THERMAL_HFOV = 0.995  # ~57 degrees
THERMAL_RANGE = 5.0

TACTILE_ROWS = 15
TACTILE_COLS = 14
TILE_PITCH = 0.02
PRESENCE_FORCE = 0.05  # newtons
ACTIVE_FORCE = 0.01

LIDAR_RAYS = 360
LIDAR_RANGE = 10.0

OMNI_MAX_DISTANCE = 4.0
DIR_MAX_DISTANCE = 8.0

# nominal object radius assumed when estimating range from angular width
NOMINAL_HOTSPOT_RADIUS = 0.04

CLASS_IOU_THRESHOLD = 0.6


class SensorError(ValueError):
    pass


@dataclass
class ThermalFrame:
    pixels: np.ndarray  # (THERMAL_ROWS, THERMAL_COLS) degrees C
    hfov: float = THERMAL_HFOV
    max_range: float = THERMAL_RANGE
    timestamp: float = 0.0
    head_pan: float = 0.0


@dataclass
class HotspotDetection:
    pixel_centroid: tuple[float, float]  # (col, row), fractional
    peak_temperature: float
    bearing: float  # robot frame, radians
    estimated_range: float


@dataclass
class PressureGrid:
    forces: np.ndarray  # (TACTILE_ROWS, TACTILE_COLS) newtons
    tile_pitch: float = TILE_PITCH
    timestamp: float = 0.0


@dataclass
class TableReading:
    present: bool = False
    centroid_tiles: tuple[float, float] = (0.0, 0.0)  # (row, col)
    centroid_meters: tuple[float, float] = (0.0, 0.0)
    weight: float = 0.0
    object_class: str = "unknown"
    edge_flag: bool = False
    total_force: float = 0.0


@dataclass
class VerificationResult:
    ok: bool
    violations: frozenset[str] = frozenset()


@dataclass
class MicSample:
    omni_score: float
    dir_score: float
    speaker_bearing: float  # robot frame
    transcript: str


@dataclass
class LidarScan:
    ranges: list[float] = field(default_factory=list)
    max_range: float = LIDAR_RANGE


def _column_angle(col: float, hfov: float = THERMAL_HFOV,
                  cols: int = THERMAL_COLS) -> float:
    """Bearing offset of a (fractional) pixel column; col 0 is leftmost."""
    return (0.5 - (col + 0.5) / cols) * hfov


def _row_angle(row: float, hfov: float = THERMAL_HFOV) -> float:
    vfov = hfov * THERMAL_ROWS / THERMAL_COLS
    return (0.5 - (row + 0.5) / THERMAL_ROWS) * vfov


def render_thermal(world: WorldState) -> ThermalFrame:
    """Render the head thermal camera against world-frame object discs.

    Each pixel shows the temperature of the nearest object whose disc the
    pixel's ray hits (columns horizontally; rows against the vertical
    angular extent of the disc treated as a sphere at camera height),
    unless an obstacle rectangle occludes it or it lies beyond max_range.
    """
    px = np.full((THERMAL_ROWS, THERMAL_COLS), world.ambient_temperature)
    ox, oy = world.robot.x, world.robot.y
    heading = world.robot.theta + world.head.pan
    tilt = world.head.tilt
    targets = [o for o in world.objects.values() if o.frame == "world"]
    for c in range(THERMAL_COLS):
        ang = heading + _column_angle(c)
        dx, dy = math.cos(ang), math.sin(ang)
        hits = []
        for obj in targets:
            t = ray_circle_intersection(ox, oy, dx, dy,
                                        obj.position[0], obj.position[1],
                                        obj.footprint_radius)
            if t is None or t > THERMAL_RANGE:
                continue
            occluded = any(
                (tr := ray_rect_intersection(ox, oy, dx, dy, rect)) is not None
                and tr < t
                for rect in world.obstacles)
            if not occluded:
                hits.append((t, obj))
        hits.sort(key=lambda h: h[0])
        if not hits:
            continue
        for r in range(THERMAL_ROWS):
            elev = tilt + _row_angle(r)
            for t, obj in hits:
                if abs(elev) <= math.atan2(obj.footprint_radius, t):
                    px[r, c] = obj.surface_temperature
                    break
    return ThermalFrame(pixels=px, timestamp=world.clock,
                        head_pan=world.head.pan)


def detect_hotspots(frame: ThermalFrame, threshold: float) -> list[HotspotDetection]:
    """Group above-threshold pixels into 4-connected components.

    One detection per component: mean-pixel centroid, component peak
    temperature, bearing from the centroid column and the head pan, and a
    range estimate from the component's angular width assuming a nominal
    object radius.
    """
    mask = frame.pixels >= threshold
    rows, cols = mask.shape
    seen = np.zeros_like(mask, dtype=bool)
    out: list[HotspotDetection] = []
    for r0 in range(rows):
        for c0 in range(cols):
            if not mask[r0, c0] or seen[r0, c0]:
                continue
            stack = [(r0, c0)]
            seen[r0, c0] = True
            comp = []
            while stack:
                r, c = stack.pop()
                comp.append((r, c))
                for nr, nc in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                    if 0 <= nr < rows and 0 <= nc < cols \
                            and mask[nr, nc] and not seen[nr, nc]:
                        seen[nr, nc] = True
                        stack.append((nr, nc))
            rs = [p[0] for p in comp]
            cs = [p[1] for p in comp]
            centroid_col = sum(cs) / len(cs)
            centroid_row = sum(rs) / len(rs)
            peak = max(frame.pixels[r, c] for r, c in comp)
            bearing = frame.head_pan + _column_angle(centroid_col, frame.hfov)
            span = (max(cs) - min(cs) + 1) * frame.hfov / THERMAL_COLS
            est = min(frame.max_range,
                      NOMINAL_HOTSPOT_RADIUS / math.tan(0.5 * span))
            out.append(HotspotDetection(
                pixel_centroid=(centroid_col, centroid_row),
                peak_temperature=float(peak),
                bearing=normalize_angle(bearing),
                estimated_range=est,
            ))
    return out


def _tile_centres() -> np.ndarray:
    rows = (np.arange(TACTILE_ROWS) + 0.5) * TILE_PITCH
    cols = (np.arange(TACTILE_COLS) + 0.5) * TILE_PITCH
    return rows, cols


def read_tactile(world: WorldState) -> PressureGrid:
    """Tile forces from objects resting on the table.

    Each object's weight (mass * g) is split uniformly over the tiles
    whose centre lies within its footprint disc; contributions sum.
    """
    forces = np.zeros((TACTILE_ROWS, TACTILE_COLS))
    row_m, col_m = _tile_centres()
    for obj in world.objects.values():
        if obj.frame != "table" or obj.mass <= 0:
            continue
        dr = row_m - obj.position[0]
        dc = col_m - obj.position[1]
        covered = (dr[:, None] ** 2 + dc[None, :] ** 2) < obj.footprint_radius ** 2
        n = int(covered.sum())
        if n == 0:
            continue
        forces[covered] += obj.mass * GRAVITY / n
    return PressureGrid(forces=forces, timestamp=world.clock)


def _disc_template(diameter_tiles: float) -> np.ndarray:
    n = int(math.ceil(diameter_tiles))
    if n % 2 == 0:
        n += 1
    c = (n - 1) / 2
    rr, cc = np.mgrid[0:n, 0:n]
    return ((rr - c) ** 2 + (cc - c) ** 2) <= (diameter_tiles / 2) ** 2


CLASS_TEMPLATES: dict[str, list[np.ndarray]] = {
    "mug": [_disc_template(3.0)],
    "plate": [_disc_template(7.0)],
    "box": [np.ones((4, 6), dtype=bool), np.ones((6, 4), dtype=bool)],
}


def _best_template_iou(mask: np.ndarray) -> tuple[str, float]:
    """Max IoU of the active-tile mask against each class template,
    sliding the template over every placement (clipped at the borders)."""
    active = int(mask.sum())
    best_class, best_iou = "unknown", 0.0
    for cls, templates in CLASS_TEMPLATES.items():
        for tpl in templates:
            th, tw = tpl.shape
            tpl_n = int(tpl.sum())
            for r in range(-th + 1, TACTILE_ROWS):
                for c in range(-tw + 1, TACTILE_COLS):
                    r0, r1 = max(r, 0), min(r + th, TACTILE_ROWS)
                    c0, c1 = max(c, 0), min(c + tw, TACTILE_COLS)
                    if r0 >= r1 or c0 >= c1:
                        continue
                    sub = tpl[r0 - r:r1 - r, c0 - c:c1 - c]
                    inter = int((mask[r0:r1, c0:c1] & sub).sum())
                    union = active + tpl_n - inter
                    if union and inter / union > best_iou:
                        best_iou = inter / union
                        best_class = cls
    return best_class, best_iou


def analyze_table(grid: PressureGrid) -> TableReading:
    """Presence, force-weighted centroid, weight and class for the grid."""
    forces = grid.forces
    total = float(forces.sum())
    if total <= PRESENCE_FORCE:
        return TableReading()
    rr, cc = np.mgrid[0:TACTILE_ROWS, 0:TACTILE_COLS]
    crow = float((forces * rr).sum() / total)
    ccol = float((forces * cc).sum() / total)
    active = forces > ACTIVE_FORCE
    edge = bool(active[0, :].any() or active[-1, :].any()
                or active[:, 0].any() or active[:, -1].any())
    cls, iou = _best_template_iou(active)
    if iou < CLASS_IOU_THRESHOLD:
        cls = "unknown"
    return TableReading(
        present=True,
        centroid_tiles=(crow, ccol),
        centroid_meters=((crow + 0.5) * grid.tile_pitch,
                         (ccol + 0.5) * grid.tile_pitch),
        weight=total / GRAVITY,
        object_class=cls,
        edge_flag=edge,
        total_force=total,
    )


def verify_payload(reading: TableReading, expected: dict) -> VerificationResult:
    """Check a table reading against an expected payload profile.

    ``expected``: {"class": str, "weight_kg": float, "tolerance_kg": float}.
    """
    tol = float(expected["tolerance_kg"])
    if tol <= 0:
        raise SensorError("tolerance_kg must be > 0")
    if not reading.present:
        return VerificationResult(False, frozenset({"absent"}))
    violations = set()
    if reading.object_class != expected["class"]:
        violations.add("class_mismatch")
    if abs(reading.weight - float(expected["weight_kg"])) > tol:
        violations.add("weight_mismatch")
    if reading.edge_flag:
        violations.add("edge_violation")
    if violations:
        return VerificationResult(False, frozenset(violations))
    return VerificationResult(True)


def capture_speech(world: WorldState, speaker: Person, text: str) -> MicSample:
    """Intelligibility scores for an utterance from ``speaker``.

    Omni mic decays linearly with distance (useless past 4 m); the
    directional mic has twice the reach but a cardioid gain about the
    head's optical axis. The transcript passes through unmodified.
    """
    dx = speaker.position[0] - world.robot.x
    dy = speaker.position[1] - world.robot.y
    d = math.hypot(dx, dy)
    bearing = normalize_angle(math.atan2(dy, dx) - world.robot.theta) if d > 0 else 0.0
    off_axis = abs(normalize_angle(bearing - world.head.pan))
    omni = min(max(1.0 - d / OMNI_MAX_DISTANCE, 0.0), 1.0)
    direc = min(max(1.0 - d / DIR_MAX_DISTANCE, 0.0), 1.0) \
        * (1.0 + math.cos(off_axis)) / 2.0
    return MicSample(omni_score=omni, dir_score=direc,
                     speaker_bearing=bearing, transcript=text)


def lidar_scan(world: WorldState) -> LidarScan:
    """360 one-per-degree ranges in the robot frame.

    Rays hit obstacle rectangles and world-frame object discs; misses
    report max_range.
    """
    ox, oy = world.robot.x, world.robot.y
    if any(point_rect_distance(ox, oy, r) == 0.0 for r in world.obstacles):
        raise SensorError("robot is inside an obstacle")
    discs = [o for o in world.objects.values() if o.frame == "world"]
    ranges = []
    for deg in range(LIDAR_RAYS):
        ang = world.robot.theta + math.radians(deg)
        dx, dy = math.cos(ang), math.sin(ang)
        best = LIDAR_RANGE
        for rect in world.obstacles:
            t = ray_rect_intersection(ox, oy, dx, dy, rect)
            if t is not None and t < best:
                best = t
        for obj in discs:
            t = ray_circle_intersection(ox, oy, dx, dy, obj.position[0],
                                        obj.position[1], obj.footprint_radius)
            if t is not None and t < best:
                best = t
        ranges.append(best)
    return LidarScan(ranges=ranges)


# --- plain-text grid serialization (corpus format) ---

def pressure_grid_to_text(grid: PressureGrid) -> str:
    header = f"{TACTILE_ROWS} {TACTILE_COLS} {grid.tile_pitch!r} N {grid.timestamp!r}"
    rows = [" ".join(repr(float(v)) for v in row) for row in grid.forces]
    return "\n".join([header] + rows) + "\n"


def pressure_grid_from_text(text: str) -> PressureGrid:
    lines = text.strip().splitlines()
    nr, nc, pitch, _unit, ts = lines[0].split()
    forces = np.array([[float(v) for v in line.split()] for line in lines[1:]])
    if forces.shape != (int(nr), int(nc)):
        raise SensorError("grid dimensions do not match header")
    return PressureGrid(forces=forces, tile_pitch=float(pitch), timestamp=float(ts))


def thermal_frame_to_text(frame: ThermalFrame) -> str:
    header = (f"{THERMAL_ROWS} {THERMAL_COLS} {frame.hfov!r} C "
              f"{frame.timestamp!r} {frame.head_pan!r}")
    rows = [" ".join(repr(float(v)) for v in row) for row in frame.pixels]
    return "\n".join([header] + rows) + "\n"


def thermal_frame_from_text(text: str) -> ThermalFrame:
    lines = text.strip().splitlines()
    nr, nc, hfov, _unit, ts, pan = lines[0].split()
    px = np.array([[float(v) for v in line.split()] for line in lines[1:]])
    if px.shape != (int(nr), int(nc)):
        raise SensorError("frame dimensions do not match header")
    return ThermalFrame(pixels=px, hfov=float(hfov), timestamp=float(ts),
                        head_pan=float(pan))
