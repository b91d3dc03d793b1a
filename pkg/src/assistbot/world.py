"""Deterministic 2D world: robot base, head, objects, persons, obstacles.

The robot is a disc driving under unicycle kinematics; obstacles are
axis-aligned rectangles. All mutation goes through the functions in this
module so the single-writer rule is easy to honour: mutate only on the
stepping context, share read-only snapshots everywhere else.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field

from .geometry import Rect, clamp, disc_overlaps_rect, normalize_angle

ROBOT_RADIUS = 0.27

V_MAX = 1.0
W_MAX = 1.5

PAN_LIMIT = 1.3
TILT_MIN = -0.98
TILT_MAX = 0.72

MAX_STEP_DT = 0.1

GRAVITY = 9.80665


class WorldError(ValueError):
    """Rejected world operation; the state is left unchanged."""


@dataclass
class Pose:
    x: float = 0.0
    y: float = 0.0
    theta: float = 0.0


@dataclass
class HeadPose:
    pan: float = 0.0
    tilt: float = 0.0


@dataclass
class SimObject:
    id: str
    kind: str = "generic"  # mug | plate | box | generic
    position: tuple[float, float] = (0.0, 0.0)
    surface_temperature: float = 22.0
    mass: float = 0.0
    footprint_radius: float = 0.05
    frame: str = "world"  # "world" or "table" (position in table metres)

    def __post_init__(self):
        if self.mass < 0:
            raise WorldError(f"object {self.id}: mass must be >= 0")
        if self.surface_temperature < -40:
            raise WorldError(f"object {self.id}: temperature below -40 C")


@dataclass
class Person:
    id: str
    position: tuple[float, float] = (0.0, 0.0)
    fallen: bool = False
    responsive: bool = True


@dataclass
class Utterance:
    person_id: str
    text: str
    at: float


@dataclass
class WorldState:
    clock: float = 0.0
    robot: Pose = field(default_factory=Pose)
    head: HeadPose = field(default_factory=HeadPose)
    base_cmd: tuple[float, float] = (0.0, 0.0)
    objects: dict[str, SimObject] = field(default_factory=dict)
    persons: dict[str, Person] = field(default_factory=dict)
    obstacles: list[Rect] = field(default_factory=list)
    bounds: Rect = (-10.0, -10.0, 10.0, 10.0)
    base_station: Pose = field(default_factory=Pose)
    table_frame: tuple[float, float] = (-0.15, -0.14)  # table origin in robot frame
    rng_seed: int = 0
    collided: bool = False
    ambient_temperature: float = 22.0
    utterances: list[Utterance] = field(default_factory=list)

    def snapshot(self) -> "WorldState":
        return copy.deepcopy(self)


def _require_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise WorldError(f"non-finite value {v!r}")


def _pose_free(world: WorldState, x: float, y: float) -> bool:
    return not any(disc_overlaps_rect(x, y, ROBOT_RADIUS, r)
                   for r in world.obstacles)


def step(world: WorldState, dt: float) -> WorldState:
    """Advance the simulation by dt seconds (unicycle, explicit Euler).

    Motion into an obstacle is clamped at the last contact-free point
    along the translation and flags ``collided`` instead of failing,
    so teleoperation stays responsive when grazing walls.
    """
    _require_finite(dt)
    if not 0.0 < dt <= MAX_STEP_DT:
        raise WorldError(f"dt must be in (0, {MAX_STEP_DT}], got {dt}")
    v, w = world.base_cmd
    _require_finite(v, w)

    p = world.robot
    dx = v * math.cos(p.theta) * dt
    dy = v * math.sin(p.theta) * dt
    new_theta = normalize_angle(p.theta + w * dt)

    nx, ny = p.x + dx, p.y + dy
    if (dx or dy) and not _pose_free(world, nx, ny):
        # binary search the largest collision-free fraction of the motion
        lo, hi = 0.0, 1.0
        for _ in range(48):
            mid = 0.5 * (lo + hi)
            if _pose_free(world, p.x + mid * dx, p.y + mid * dy):
                lo = mid
            else:
                hi = mid
        nx, ny = p.x + lo * dx, p.y + lo * dy
        world.collided = True
    p.x, p.y, p.theta = nx, ny, new_theta
    world.clock += dt
    return world


def command_base(world: WorldState, v: float, w: float) -> WorldState:
    _require_finite(v, w)
    world.base_cmd = (clamp(v, -V_MAX, V_MAX), clamp(w, -W_MAX, W_MAX))
    return world


def command_head(world: WorldState, pan: float, tilt: float) -> WorldState:
    _require_finite(pan, tilt)
    world.head.pan = clamp(pan, -PAN_LIMIT, PAN_LIMIT)
    world.head.tilt = clamp(tilt, TILT_MIN, TILT_MAX)
    return world


def tile_to_table_metres(row: float, col: float,
                         tile_pitch: float = 0.02) -> tuple[float, float]:
    """Centre of tactile tile (row, col) in table-frame metres."""
    return ((row + 0.5) * tile_pitch, (col + 0.5) * tile_pitch)


def inject_event(world: WorldState, event: dict) -> WorldState:
    """Apply an external scripted event to the world at the current clock.

    Supported kinds: person_fall, person_respond, place_object,
    remove_object, speak.
    """
    kind = event.get("kind")
    if kind == "person_fall":
        person = world.persons.get(event.get("person_id"))
        if person is None:
            raise WorldError(f"unknown person {event.get('person_id')!r}")
        person.fallen = True
    elif kind == "person_respond":
        person = world.persons.get(event.get("person_id"))
        if person is None:
            raise WorldError(f"unknown person {event.get('person_id')!r}")
        person.responsive = bool(event.get("responsive", True))
    elif kind == "place_object":
        spec = event.get("object")
        if not isinstance(spec, dict) or "id" not in spec:
            raise WorldError("place_object needs an object with an id")
        if spec["id"] in world.objects:
            raise WorldError(f"duplicate object id {spec['id']!r}")
        obj = SimObject(
            id=spec["id"],
            kind=spec.get("kind", "generic"),
            surface_temperature=spec.get("surface_temperature", 22.0),
            mass=spec.get("mass", 0.0),
            footprint_radius=spec.get("footprint_radius", 0.05),
        )
        if event.get("where") == "on_table":
            row, col = event.get("tile", (7.0, 7.0))
            obj.position = tile_to_table_metres(float(row), float(col))
            obj.frame = "table"
        else:
            pos = event.get("position")
            if pos is None:
                raise WorldError("place_object at_position needs a position")
            obj.position = (float(pos[0]), float(pos[1]))
            obj.frame = "world"
        world.objects[obj.id] = obj
    elif kind == "remove_object":
        oid = event.get("object_id")
        if oid not in world.objects:
            raise WorldError(f"unknown object {oid!r}")
        del world.objects[oid]
    elif kind == "speak":
        person = world.persons.get(event.get("person_id"))
        if person is None:
            raise WorldError(f"unknown person {event.get('person_id')!r}")
        world.utterances.append(
            Utterance(person.id, str(event.get("text", "")), world.clock))
    else:
        raise WorldError(f"unknown event kind {kind!r}")
    return world
