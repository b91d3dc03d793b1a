"""World/scenario configuration loading (YAML, schema in docs/world_config.md)."""

from __future__ import annotations

import yaml

from .world import Person, Pose, SimObject, WorldState


class ConfigError(ValueError):
    pass


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            doc = yaml.safe_load(f)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}" if mark else ""
        raise ConfigError(f"cannot parse {path}{where}: {exc}")
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return doc


def _pose(node, what: str) -> Pose:
    try:
        return Pose(float(node.get("x", 0.0)), float(node.get("y", 0.0)),
                    float(node.get("theta", 0.0)))
    except (TypeError, AttributeError):
        raise ConfigError(f"{what}: expected a mapping with x/y/theta")


def build_world(config: dict) -> WorldState:
    node = config.get("world", {})
    if not isinstance(node, dict):
        raise ConfigError("world: expected a mapping")
    w = WorldState()
    if "bounds" in node:
        b = node["bounds"]
        if not (isinstance(b, (list, tuple)) and len(b) == 4):
            raise ConfigError("world.bounds: expected [x0, y0, x1, y1]")
        w.bounds = tuple(float(v) for v in b)
    w.ambient_temperature = float(node.get("ambient_temperature", 22.0))
    w.rng_seed = int(node.get("seed", 0))
    if "robot" in node:
        w.robot = _pose(node["robot"], "world.robot")
    if "base_station" in node:
        w.base_station = _pose(node["base_station"], "world.base_station")
    for i, rect in enumerate(node.get("obstacles", []) or []):
        if not (isinstance(rect, (list, tuple)) and len(rect) == 4):
            raise ConfigError(f"world.obstacles[{i}]: expected [x0, y0, x1, y1]")
        x0, y0, x1, y1 = (float(v) for v in rect)
        if x1 <= x0 or y1 <= y0:
            raise ConfigError(f"world.obstacles[{i}]: degenerate rectangle")
        w.obstacles.append((x0, y0, x1, y1))
    for i, spec in enumerate(node.get("objects", []) or []):
        if "id" not in spec:
            raise ConfigError(f"world.objects[{i}]: missing id")
        obj = SimObject(
            id=str(spec["id"]),
            kind=spec.get("kind", "generic"),
            position=tuple(float(v) for v in spec.get("position", (0.0, 0.0))),
            surface_temperature=float(spec.get("surface_temperature", 22.0)),
            mass=float(spec.get("mass", 0.0)),
            footprint_radius=float(spec.get("footprint_radius", 0.05)),
            frame=spec.get("frame", "world"),
        )
        w.objects[obj.id] = obj
    for i, spec in enumerate(node.get("persons", []) or []):
        if "id" not in spec:
            raise ConfigError(f"world.persons[{i}]: missing id")
        person = Person(
            id=str(spec["id"]),
            position=tuple(float(v) for v in spec.get("position", (0.0, 0.0))),
            fallen=bool(spec.get("fallen", False)),
            responsive=bool(spec.get("responsive", True)),
        )
        w.persons[person.id] = person
    return w
