"""Headless scenario runner and service entry point.

Exit status: 0 when every scenario task ended in success or anomaly (an
anomaly is a correct detection, not a failure), 2 on aborted tasks, 1 on
bad usage or configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import gateway
from .config import ConfigError, build_world, load_config
from .dialogue import Intent, IntentKind
from .scenarios import (
    DT,
    Engine,
    ListeningBody,
    PatrolBody,
    TransportBody,
    comprehension_benchmark,
)


def _setup_scenario(engine: Engine, scenario: str) -> None:
    scen = engine.config.get("scenario", {})
    if scenario == "patrol":
        body = PatrolBody(
            scen.get("waypoint_a", (-2.0, 0.0)),
            scen.get("waypoint_b", (2.0, 0.0)),
            scen.get("hotspot_threshold", 45.0),
            scen.get("lap_cap"))
        engine.submit_body("patrol", engine.priorities["patrol"], body)
    elif scenario == "transport":
        item = scen.get("item", "tea")
        profile = engine.config.get("payload_profiles", {}).get(
            item, {"class": "mug", "weight_kg": 0.45, "tolerance_kg": 0.05})
        intent = Intent(kind=IntentKind.FETCH, item=item)
        body = TransportBody(
            intent,
            scen.get("requester", next(iter(engine.world.persons), "")),
            scen.get("pickup", (engine.world.robot.x, engine.world.robot.y)),
            profile,
            scen.get("placement_timeout", 120.0))
        engine.submit_body(f"transport:{item}",
                           engine.priorities["transport"], body)
    elif scenario in ("listen", "idle"):
        pass  # listening body below is enough
    else:
        raise ConfigError(f"unknown scenario {scenario!r}")
    engine.submit_body("listening", engine.priorities["idle"], ListeningBody())


def _run_headless(engine: Engine, duration: float) -> None:
    scen = engine.config.get("scenario", {})
    schedule = sorted(
        ({"at": float(s["at"]), "event": s.get("event"),
          "command": s.get("command")} for s in scen.get("scripted", [])),
        key=lambda s: s["at"])
    idx = 0
    end = engine.world.clock + duration
    while engine.world.clock < end - 1e-9:
        while idx < len(schedule) and schedule[idx]["at"] <= engine.world.clock:
            entry = schedule[idx]
            idx += 1
            if entry["event"] is not None:
                engine.inject(dict(entry["event"]))
            elif entry["command"] is not None:
                engine.queue_command(dict(entry["command"]))
        engine.tick(DT)


def collect_metrics(engine: Engine, scenario: str, seed: int) -> dict:
    outcomes = {
        engine.scheduler.task(tid).name: out.status
        for tid, out in sorted(engine.outcomes.items())
    }
    statuses = set(outcomes.values())
    if not statuses:
        overall = "none"
    elif "aborted" in statuses:
        overall = "aborted"
    elif "anomaly" in statuses:
        overall = "anomaly"
    else:
        overall = "success"
    return {
        "scenario": scenario,
        "seed": seed,
        "sim_time": engine.world.clock,
        "outcome": overall,
        "task_outcomes": outcomes,
        "hazard_reported": bool(engine.events_of("hazard_report")),
        "anomalies": sorted(
            v for e in engine.events_of("payload_anomaly")
            for v in e.payload.get("violations", [])),
        "event_count": len(engine.events),
    }


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="assistbot",
        description="Assistive-robot behaviour stack simulator")
    parser.add_argument("--config", help="world/scenario YAML file")
    parser.add_argument("--scenario", default="idle",
                        help="patrol | transport | listen | comprehension | idle")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--duration", type=float, default=300.0,
                        help="simulated seconds to run headless")
    parser.add_argument("--metrics", help="write a metrics JSON document here")
    parser.add_argument("--serve", metavar="ADDRESS:PORT",
                        help="serve the teleoperation gateway instead of "
                             "running to completion")
    speed = parser.add_mutually_exclusive_group()
    speed.add_argument("--realtime", action="store_true", default=True)
    speed.add_argument("--fast", dest="realtime", action="store_false")
    args = parser.parse_args(argv)

    started = time.time()
    try:
        if args.scenario == "comprehension":
            config = load_config(args.config) if args.config else {}
            trials = int(config.get("scenario", {}).get("trials", 1000))
            result = comprehension_benchmark(trials=trials, seed=args.seed)
            metrics = {"scenario": "comprehension", "seed": args.seed,
                       "outcome": "success", **result}
            metrics["wall"] = {"elapsed_s": time.time() - started}
            _write_metrics(metrics, args.metrics)
            return 0

        if not args.config:
            print("error: --config is required for this scenario",
                  file=sys.stderr)
            return 1
        config = load_config(args.config)
        world = build_world(config)
        engine = Engine(world, config, seed=args.seed)
        _setup_scenario(engine, args.scenario)

        if args.serve:
            gateway.serve(engine, args.serve, realtime=args.realtime)
            return 0

        _run_headless(engine, args.duration)
        metrics = collect_metrics(engine, args.scenario, args.seed)
        metrics["wall"] = {"elapsed_s": time.time() - started}
        _write_metrics(metrics, args.metrics, engine)
        return 0 if metrics["outcome"] in ("success", "anomaly", "none") else 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _write_metrics(metrics: dict, path: str | None,
                   engine: Engine | None = None) -> None:
    if path:
        if engine is not None:
            events_path = path + ".events"
            with open(events_path, "w", encoding="utf-8") as f:
                f.write(engine.export_event_log())
            metrics["events_path"] = os.path.basename(events_path)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(metrics, f, indent=2, sort_keys=True)
            f.write("\n")
    else:
        json.dump(metrics, sys.stdout, indent=2, sort_keys=True)
        print()


if __name__ == "__main__":
    sys.exit(main())
