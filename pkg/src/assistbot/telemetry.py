"""Telemetry frames and command validation for the teleoperation gateway.

The wire format is JSON text messages over a websocket; schema/messages.json
in the repository root is the compatibility contract with the UI.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

from . import sensors

EVENT_RING = 32

COMMAND_TYPES = ("cmd_vel", "head", "estop", "speak", "inject")


@dataclass
class TelemetryFrame:
    type: str = "telemetry"
    timestamp: float = 0.0
    pose: dict = field(default_factory=dict)          # x, y, theta
    head: dict = field(default_factory=dict)          # pan, tilt
    base_cmd: list = field(default_factory=list)      # [v, w]
    collided: bool = False
    estop: bool = False
    active_task: dict | None = None                   # id, name, state, priority
    tasks: list = field(default_factory=list)         # every task, same shape
    lidar: list = field(default_factory=list)         # 360 ranges
    thermal: list = field(default_factory=list)       # 24 rows of 32 floats
    tactile: list = field(default_factory=list)       # 15 rows of 14 floats
    events: list = field(default_factory=list)        # last <=32 event records


def build_telemetry(engine) -> TelemetryFrame:
    w = engine.world
    running = engine.scheduler.executing()
    active = None
    if running is not None:
        active = {"id": running.id, "name": running.name,
                  "state": running.state.value, "priority": running.priority}
    scan = sensors.lidar_scan(w)
    frame = sensors.render_thermal(w)
    grid = sensors.read_tactile(w)
    return TelemetryFrame(
        timestamp=w.clock,
        pose={"x": w.robot.x, "y": w.robot.y, "theta": w.robot.theta},
        head={"pan": w.head.pan, "tilt": w.head.tilt},
        base_cmd=list(w.base_cmd),
        collided=w.collided,
        estop=engine.estop,
        active_task=active,
        tasks=[{"id": t.id, "name": t.name, "state": t.state.value,
                "priority": t.priority}
               for t in sorted(engine.scheduler.tasks(), key=lambda t: t.id)],
        lidar=[float(r) for r in scan.ranges],
        thermal=[[float(v) for v in row] for row in frame.pixels],
        tactile=[[float(v) for v in row] for row in grid.forces],
        events=[{"t": e.timestamp, "kind": e.kind, "payload": e.payload}
                for e in engine.events[-EVENT_RING:]],
    )


def encode_telemetry(frame: TelemetryFrame) -> str:
    return json.dumps(asdict(frame), sort_keys=True)


def decode_telemetry(text: str) -> TelemetryFrame:
    doc = json.loads(text)
    if doc.get("type") != "telemetry":
        raise ValueError("not a telemetry message")
    return TelemetryFrame(**doc)


def _finite_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) \
        and math.isfinite(value)


def validate_command(raw) -> tuple[dict | None, str | None]:
    """Total command validation: (command, None) or (None, reason).

    Never raises, whatever the input bytes are.
    """
    try:
        if isinstance(raw, (bytes, bytearray)):
            raw = raw.decode("utf-8")
        doc = json.loads(raw)
    except Exception:
        return None, "not valid JSON"
    if not isinstance(doc, dict):
        return None, "message must be a JSON object"
    kind = doc.get("type")
    if kind not in COMMAND_TYPES:
        return None, f"unknown message type {kind!r}"
    if kind == "cmd_vel":
        if not (_finite_number(doc.get("v")) and _finite_number(doc.get("w"))):
            return None, "cmd_vel needs finite numeric v and w"
    elif kind == "head":
        if not (_finite_number(doc.get("pan")) and _finite_number(doc.get("tilt"))):
            return None, "head needs finite numeric pan and tilt"
    elif kind == "estop":
        if "engaged" in doc and not isinstance(doc["engaged"], bool):
            return None, "estop.engaged must be a boolean"
    elif kind == "speak":
        if not isinstance(doc.get("person_id"), str) \
                or not isinstance(doc.get("text"), str):
            return None, "speak needs string person_id and text"
    elif kind == "inject":
        event = doc.get("event")
        if not isinstance(event, dict) or not isinstance(event.get("kind"), str):
            return None, "inject needs an event object with a kind"
    return doc, None
