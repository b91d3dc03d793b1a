"""Fall-response demo: a person falls mid-patrol; the high-priority fall
task preempts the patrol, checks on the person, and the patrol resumes
where it left off.

Run:  python demos/fall_preemption_demo.py
"""

from pathlib import Path

from assistbot.cli import _setup_scenario
from assistbot.config import build_world, load_config
from assistbot.scenarios import Engine

CONFIG = Path(__file__).resolve().parent.parent / "configs" / "patrol_quiet.yaml"


def main() -> None:
    config = load_config(str(CONFIG))
    engine = Engine(build_world(config), config, seed=42)
    _setup_scenario(engine, "patrol")

    engine.run(5.0)
    print("t=5.0s: resident falls")
    engine.inject({"kind": "person_fall", "person_id": "resident"})

    engine.run_until(
        lambda e: any(ev.payload.get("text") == "are you OK?"
                      for ev in e.events_of("speech_out")),
        timeout=60.0)
    print(f"t={engine.world.clock:.1f}s: robot reached the resident and asked")
    engine.inject({"kind": "person_respond", "person_id": "resident"})
    engine.run(400.0)

    print("\nscheduler trace (tick  op  task  before -> after):")
    for rec in engine.scheduler.trace:
        print(f"  {rec.tick:7.1f}  {rec.op:<9} #{rec.task_id}  "
              f"{rec.before} -> {rec.after}")

    print("\noutcomes:")
    for tid, outcome in sorted(engine.outcomes.items()):
        print(f"  {engine.scheduler.task(tid).name}: {outcome.status}")


if __name__ == "__main__":
    main()
