"""Patrol demo: the robot loops a corridor, spots a hot mug with its
thermal camera, drives to the base station and reports the hazard.

Run:  python demos/patrol_hazard_demo.py
"""

from pathlib import Path

from assistbot.cli import _run_headless, _setup_scenario, collect_metrics
from assistbot.config import build_world, load_config
from assistbot.scenarios import Engine

CONFIG = Path(__file__).resolve().parent.parent / "configs" / "patrol_hazard.yaml"


def main() -> None:
    config = load_config(str(CONFIG))
    engine = Engine(build_world(config), config, seed=42)
    _setup_scenario(engine, "patrol")
    _run_headless(engine, 300.0)

    print("event log:")
    for event in engine.events:
        print(f"  t={event.timestamp:7.1f}s  {event.kind:<18} {event.payload}")

    report = engine.events_of("hazard_report")[0]
    print(f"\nhazard detected at t={report.payload['detected_at']:.1f}s "
          f"({report.payload['peak_temperature']:.0f} degrees), reported at "
          f"the base at t={report.timestamp:.1f}s")
    print("metrics:", collect_metrics(engine, "patrol", 42))


if __name__ == "__main__":
    main()
