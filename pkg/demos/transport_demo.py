"""Transport demo: fetch a mug of tea and verify the payload by touch.

Three variants of the same errand show the verification outcomes:
a centred, correctly weighted mug is delivered; a mug too close to the
table edge and a mug that is too light are both flagged as anomalies.

Run:  python demos/transport_demo.py
"""

from pathlib import Path

from assistbot.cli import _run_headless, _setup_scenario, collect_metrics
from assistbot.config import build_world, load_config
from assistbot.scenarios import Engine

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

FIXTURES = [
    ("transport_ok.yaml", "mug placed at the table centre, 0.45 kg"),
    ("transport_edge.yaml", "mug placed right at the table edge"),
    ("transport_light.yaml", "mug weighs only 0.30 kg (expected 0.45)"),
]


def main() -> None:
    for name, blurb in FIXTURES:
        config = load_config(str(CONFIGS / name))
        engine = Engine(build_world(config), config, seed=42)
        _setup_scenario(engine, "transport")
        _run_headless(engine, 120.0)
        metrics = collect_metrics(engine, "transport", 42)
        print(f"{name}: {blurb}")
        print(f"  outcome: {metrics['task_outcomes']['transport:tea']}"
              + (f", violations: {metrics['anomalies']}"
                 if metrics["anomalies"] else ""))
        for event in engine.events_of("delivered"):
            print(f"  delivered {event.payload['item']} to "
                  f"{event.payload['to']} at t={event.timestamp:.1f}s")
        print()


if __name__ == "__main__":
    main()
