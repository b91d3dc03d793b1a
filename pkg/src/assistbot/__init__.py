"""Deterministic assistive-robot behaviour stack: 2D world simulation,
sensor models, priority task harmonisation, voice-command understanding,
end-to-end scenarios, and a teleoperation gateway."""

from . import (  # noqa: F401
    config,
    dialogue,
    gateway,
    geometry,
    planning,
    scenarios,
    sensors,
    tasker,
    telemetry,
    world,
)

__version__ = "0.1.0"
