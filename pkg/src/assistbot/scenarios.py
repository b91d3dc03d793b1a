"""Scenario engine: resumable task bodies driven by the harmoniser.

Bodies are step functions advanced once per simulation tick while their
task is Executing; they yield control between ticks, which is what makes
postponing and resuming observable. A resumed navigation body replans
from the current pose (the world may have changed while suspended).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from random import Random

from . import dialogue, sensors, world as worldmod
from .dialogue import (
    ClarificationAction,
    Intent,
    IntentKind,
    ParameterMemory,
    clarification_policy,
    external_understand,
    recognize,
)
from .geometry import normalize_angle
from .planning import plan_path
from .tasker import Scheduler, TaskState
from .world import WorldState, command_base, command_head

DT = 0.1

DEFAULT_PRIORITIES = {
    "fall_response": 100,
    "safety_stop": 90,
    "hazard_report": 80,
    "transport": 50,
    "patrol": 20,
    "goto": 30,
    "idle": 0,
}

DEFAULT_HOTSPOT_THRESHOLD = 45.0
PLACEMENT_TIMEOUT = 120.0
FALL_RESPONSE_TIMEOUT = 15.0
APPROACH_DISTANCE = 1.0
BASE_REPORT_RADIUS = 0.5


@dataclass
class HazardReport:
    detected_at: float
    bearing: float
    peak_temperature: float
    reported_at_base: bool = False


@dataclass
class ScenarioOutcome:
    task_id: int
    status: str = "running"  # success | anomaly | aborted
    events: list[dict] = field(default_factory=list)


@dataclass
class EventRecord:
    timestamp: float
    kind: str
    payload: dict

    def line(self) -> str:
        return json.dumps({"t": self.timestamp, "kind": self.kind,
                           "payload": self.payload}, sort_keys=True)


class Navigator:
    """Waypoint follower over a planned path; replans on demand."""

    def __init__(self, goal: tuple[float, float], arrive_tol: float = 0.12):
        self.goal = (float(goal[0]), float(goal[1]))
        self.arrive_tol = arrive_tol
        self.waypoints: list[tuple[float, float]] | None = None
        self.index = 0
        self.failed = False

    def replan(self, w: WorldState) -> bool:
        path = plan_path(w, self.goal)
        if path is None:
            self.failed = True
            self.waypoints = None
            return False
        self.waypoints = path
        self.index = 1 if len(path) > 1 else 0
        self.failed = False
        return True

    def step(self, w: WorldState) -> bool:
        """Issue one base command; True when the goal is reached."""
        if self.waypoints is None:
            if not self.replan(w):
                command_base(w, 0.0, 0.0)
                return False
        gx, gy = self.goal
        if math.hypot(gx - w.robot.x, gy - w.robot.y) <= self.arrive_tol:
            command_base(w, 0.0, 0.0)
            return True
        wx, wy = self.waypoints[self.index]
        dist = math.hypot(wx - w.robot.x, wy - w.robot.y)
        if dist <= self.arrive_tol and self.index < len(self.waypoints) - 1:
            self.index += 1
            wx, wy = self.waypoints[self.index]
            dist = math.hypot(wx - w.robot.x, wy - w.robot.y)
        err = normalize_angle(math.atan2(wy - w.robot.y, wx - w.robot.x)
                              - w.robot.theta)
        wcmd = max(-worldmod.W_MAX, min(worldmod.W_MAX, 3.0 * err))
        vcmd = min(worldmod.V_MAX, 2.0 * dist) if abs(err) < 0.4 else 0.0
        command_base(w, vcmd, wcmd)
        return False


class TaskBody:
    """Base class for resumable scenario bodies."""

    def step(self, engine: "Engine", task_id: int) -> bool:
        raise NotImplementedError

    def on_suspend(self, engine: "Engine", task_id: int) -> None:
        pass

    def on_resume(self, engine: "Engine", task_id: int) -> None:
        pass


class PatrolBody(TaskBody):
    """Loop between two waypoints scanning for hot objects; on the first
    detection head for the base station and report the hazard there."""

    def __init__(self, waypoint_a, waypoint_b, threshold: float = DEFAULT_HOTSPOT_THRESHOLD,
                 lap_cap: int | None = None):
        self.a = tuple(waypoint_a)
        self.b = tuple(waypoint_b)
        self.threshold = threshold
        self.lap_cap = lap_cap
        self.laps = 0
        self.nav = Navigator(self.b)
        self.phase = "patrol"  # patrol | to_base
        self.hazard: HazardReport | None = None

    def on_resume(self, engine, task_id):
        self.nav.waypoints = None  # replan from the current pose

    def step(self, engine, task_id):
        w = engine.world
        if self.phase == "patrol":
            frame = sensors.render_thermal(w)
            spots = sensors.detect_hotspots(frame, self.threshold)
            if spots:
                best = max(spots, key=lambda s: s.peak_temperature)
                self.hazard = HazardReport(
                    detected_at=w.clock, bearing=best.bearing,
                    peak_temperature=best.peak_temperature)
                engine.emit("hotspot_detected", {
                    "task_id": task_id,
                    "peak_temperature": best.peak_temperature,
                    "bearing": best.bearing})
                self.phase = "to_base"
                self.nav = Navigator(
                    (w.base_station.x, w.base_station.y))
                return False
            if self.nav.step(w):
                arrived_at_b = self.nav.goal == self.b
                self.nav = Navigator(self.a if arrived_at_b else self.b)
                if not arrived_at_b:
                    self.laps += 1
                    engine.emit("patrol_lap", {"task_id": task_id,
                                               "laps": self.laps})
                    if self.lap_cap is not None and self.laps >= self.lap_cap:
                        engine.finish(task_id, "success")
                        return True
            if self.nav.failed:
                engine.emit("patrol_abort", {"task_id": task_id,
                                             "reason": "waypoint unreachable"})
                engine.finish(task_id, "aborted")
                return True
            return False
        # phase to_base
        if self.nav.failed:
            engine.emit("patrol_abort", {"task_id": task_id,
                                         "reason": "base unreachable"})
            engine.finish(task_id, "aborted")
            return True
        if self.nav.step(w):
            at_base = math.hypot(w.base_station.x - w.robot.x,
                                 w.base_station.y - w.robot.y) <= BASE_REPORT_RADIUS
            self.hazard.reported_at_base = at_base
            engine.emit("hazard_report", {
                "task_id": task_id,
                "detected_at": self.hazard.detected_at,
                "bearing": self.hazard.bearing,
                "peak_temperature": self.hazard.peak_temperature,
                "reported_at_base": self.hazard.reported_at_base})
            engine.emit("speech_out", {
                "task_id": task_id,
                "text": f"warning: hot object at "
                        f"{self.hazard.peak_temperature:.1f} degrees"})
            engine.finish(task_id, "success")
            return True
        return False


class TransportBody(TaskBody):
    """Fetch an item: go to the pickup point, wait for the payload on the
    table, verify it, and deliver to the requester (or report anomalies)."""

    def __init__(self, intent: Intent, requester_id: str,
                 pickup: tuple[float, float], profile: dict,
                 placement_timeout: float = PLACEMENT_TIMEOUT):
        self.intent = intent
        self.requester_id = requester_id
        self.pickup = tuple(pickup)
        self.profile = profile
        self.placement_timeout = placement_timeout
        self.phase = "to_pickup"
        self.nav = Navigator(self.pickup)
        self.deadline: float | None = None

    def on_resume(self, engine, task_id):
        self.nav.waypoints = None

    def step(self, engine, task_id):
        w = engine.world
        if self.phase == "to_pickup":
            if self.nav.failed:
                engine.emit("transport_abort", {"task_id": task_id,
                                                "reason": "pickup unreachable"})
                engine.finish(task_id, "aborted")
                return True
            if self.nav.step(w):
                self.phase = "await_placement"
                self.deadline = w.clock + self.placement_timeout
                engine.emit("awaiting_placement", {"task_id": task_id,
                                                   "item": self.intent.item})
            return False
        if self.phase == "await_placement":
            reading = sensors.analyze_table(sensors.read_tactile(w))
            if reading.present:
                result = sensors.verify_payload(reading, self.profile)
                if result.ok:
                    engine.emit("payload_verified", {
                        "task_id": task_id, "weight": reading.weight,
                        "object_class": reading.object_class})
                    requester = w.persons[self.requester_id]
                    self.nav = Navigator(requester.position,
                                         arrive_tol=APPROACH_DISTANCE)
                    self.phase = "to_requester"
                else:
                    engine.emit("payload_anomaly", {
                        "task_id": task_id,
                        "violations": sorted(result.violations),
                        "weight": reading.weight,
                        "object_class": reading.object_class,
                        "edge_flag": reading.edge_flag})
                    engine.finish(task_id, "anomaly")
                    return True
            elif w.clock >= self.deadline:
                engine.emit("transport_abort", {"task_id": task_id,
                                                "reason": "placement timeout"})
                engine.finish(task_id, "aborted")
                return True
            return False
        # phase to_requester
        if self.nav.failed:
            engine.emit("transport_abort", {"task_id": task_id,
                                            "reason": "requester unreachable"})
            engine.finish(task_id, "aborted")
            return True
        if self.nav.step(w):
            engine.emit("delivered", {"task_id": task_id,
                                      "item": self.intent.item,
                                      "to": self.requester_id})
            engine.finish(task_id, "success")
            return True
        return False


class FallResponseBody(TaskBody):
    """Approach a fallen person, ask whether they are OK, escalate on
    silence."""

    def __init__(self, person_id: str,
                 response_timeout: float = FALL_RESPONSE_TIMEOUT):
        self.person_id = person_id
        self.response_timeout = response_timeout
        self.phase = "approach"
        self.nav: Navigator | None = None
        self.asked_at: float | None = None

    def on_resume(self, engine, task_id):
        if self.nav is not None:
            self.nav.waypoints = None

    def _make_nav(self, w: WorldState) -> Navigator:
        person = w.persons[self.person_id]
        px, py = person.position
        d = math.hypot(px - w.robot.x, py - w.robot.y)
        if d <= APPROACH_DISTANCE:
            return Navigator((w.robot.x, w.robot.y))
        ux, uy = (w.robot.x - px) / d, (w.robot.y - py) / d
        return Navigator((px + ux * APPROACH_DISTANCE,
                          py + uy * APPROACH_DISTANCE))

    def step(self, engine, task_id):
        w = engine.world
        person = w.persons.get(self.person_id)
        if person is None:
            engine.emit("fall_alert", {"task_id": task_id,
                                       "reason": "person missing"})
            engine.finish(task_id, "aborted")
            return True
        if self.phase == "approach":
            if self.nav is None:
                self.nav = self._make_nav(w)
            if self.nav.failed:
                engine.emit("fall_alert", {
                    "task_id": task_id, "person_id": self.person_id,
                    "reason": "person unreachable"})
                engine.finish(task_id, "anomaly")
                return True
            if self.nav.step(w):
                bearing = math.atan2(person.position[1] - w.robot.y,
                                     person.position[0] - w.robot.x)
                command_head(w, normalize_angle(bearing - w.robot.theta), 0.0)
                engine.emit("speech_out", {"task_id": task_id,
                                           "text": "are you OK?"})
                self.asked_at = w.clock
                self.phase = "await_response"
            return False
        # await_response
        responded = any(
            u.person_id == self.person_id and u.at >= self.asked_at
            for u in w.utterances)
        responded = responded or engine.respond_times.get(
            self.person_id, -math.inf) >= self.asked_at
        if responded:
            engine.emit("fall_check_ok", {"task_id": task_id,
                                          "person_id": self.person_id})
            engine.finish(task_id, "success")
            return True
        if w.clock - self.asked_at >= self.response_timeout:
            engine.emit("fall_alert", {
                "task_id": task_id, "person_id": self.person_id,
                "reason": "no response"})
            engine.finish(task_id, "anomaly")
            return True
        return False


class SafetyStopBody(TaskBody):
    """Holds the robot still while the e-stop latch is engaged."""

    def step(self, engine, task_id):
        command_base(engine.world, 0.0, 0.0)
        return False


class ListeningBody(TaskBody):
    """Idle-priority behaviour: hear an utterance, clarify until accepted,
    then submit the corresponding task."""

    def __init__(self, memory: ParameterMemory | None = None):
        self.memory = memory or ParameterMemory()
        self.phase = "idle"
        self.utterance: worldmod.Utterance | None = None
        self.attempt = 0
        self.best: Intent | None = None
        self.best_transcript = ""
        self.nav: Navigator | None = None

    def on_resume(self, engine, task_id):
        if self.nav is not None:
            self.nav.waypoints = None

    def _reset(self):
        self.phase = "idle"
        self.utterance = None
        self.attempt = 0
        self.best = None
        self.best_transcript = ""
        self.nav = None

    def _capture(self, engine, task_id) -> bool:
        w = engine.world
        speaker = w.persons.get(self.utterance.person_id)
        if speaker is None:
            self._reset()
            return True
        sample = sensors.capture_speech(w, speaker, self.utterance.text)
        rec = recognize(sample, engine.rng)
        intent = dialogue.parse(rec.transcript) if rec.understood else Intent()
        if intent.kind is not IntentKind.UNKNOWN:
            self.best = intent
            self.best_transcript = rec.transcript
        action = clarification_policy(rec.confidence, self.attempt)
        engine.emit("listen_attempt", {
            "task_id": task_id, "attempt": self.attempt,
            "confidence": rec.confidence, "understood": rec.understood,
            "action": action.value})
        if action is ClarificationAction.ACCEPT:
            self._accept(engine, task_id)
        elif action is ClarificationAction.ASK_REPEAT:
            self.attempt += 1
            # face the speaker with the head before listening again
            command_head(w, normalize_angle(sample.speaker_bearing), 0.0)
            engine.emit("speech_out", {"task_id": task_id,
                                       "text": "could you repeat that?"})
            self.phase = "listen"
        else:
            self.attempt += 1
            speaker_pos = speaker.position
            d = math.hypot(speaker_pos[0] - w.robot.x,
                           speaker_pos[1] - w.robot.y)
            if d > APPROACH_DISTANCE:
                ux = (w.robot.x - speaker_pos[0]) / d
                uy = (w.robot.y - speaker_pos[1]) / d
                self.nav = Navigator((speaker_pos[0] + ux * APPROACH_DISTANCE,
                                      speaker_pos[1] + uy * APPROACH_DISTANCE))
            else:
                self.nav = Navigator((w.robot.x, w.robot.y))
            self.phase = "approach"
        return False

    def _accept(self, engine, task_id):
        intent = self.best
        if intent is None or intent.kind is IntentKind.UNKNOWN:
            engine.emit("speech_out", {
                "task_id": task_id,
                "text": "sorry, I did not understand"})
            self._reset()
            return
        refined = external_understand(self.best_transcript)
        if refined.kind is not IntentKind.UNKNOWN:
            intent = refined
        for key in sorted(dialogue.missing_parameters(intent, self.memory)):
            engine.emit("parameter_question", {
                "task_id": task_id, "key": key, "item": intent.item})
            answer = engine.scripted_answers.get(key)
            if answer is None:
                answer = self.memory.values_last_used.get(key)
            if answer is not None:
                intent.parameters[key] = str(answer)
                self.memory.remember_value(key, str(answer))
        engine.emit("intent_accepted", {
            "task_id": task_id, "kind": intent.kind.value,
            "item": intent.item, "parameters": intent.parameters})
        engine.dispatch_intent(intent, self.utterance.person_id)
        self._reset()

    def step(self, engine, task_id):
        w = engine.world
        if self.phase == "idle":
            pending = [u for u in w.utterances if u not in engine.consumed]
            if pending:
                self.utterance = pending[0]
                engine.consumed.append(self.utterance)
                self.attempt = 0
                self.best = None
                self._capture(engine, task_id)
            return False
        if self.phase == "listen":
            self._capture(engine, task_id)
            return False
        if self.phase == "approach":
            if self.nav.failed:
                engine.emit("speech_out", {
                    "task_id": task_id,
                    "text": "sorry, I cannot reach you"})
                self._reset()
                return False
            if self.nav.step(w):
                speaker = w.persons[self.utterance.person_id]
                bearing = math.atan2(speaker.position[1] - w.robot.y,
                                     speaker.position[0] - w.robot.x)
                w.robot.theta = normalize_angle(bearing)
                command_head(w, 0.0, 0.0)
                self._capture(engine, task_id)
            return False
        return False


class Engine:
    """Owns the world, the scheduler and all task bodies; single writer."""

    def __init__(self, world: WorldState, config: dict | None = None,
                 seed: int | None = None):
        self.world = world
        self.config = config or {}
        self.rng = Random(seed if seed is not None else world.rng_seed)
        self.scheduler = Scheduler()
        self.bodies: dict[int, TaskBody] = {}
        self.outcomes: dict[int, ScenarioOutcome] = {}
        self.events: list[EventRecord] = []
        self.respond_times: dict[str, float] = {}
        self.consumed: list[worldmod.Utterance] = []
        self.scripted_answers: dict[str, str] = dict(
            self.config.get("scripted_answers", {}))
        self.priorities = dict(DEFAULT_PRIORITIES)
        self.priorities.update(self.config.get("priorities", {}))
        self.estop = False
        self._estop_task: int | None = None
        self.pending_commands: list[dict] = []

    # -- events & outcomes --

    def emit(self, kind: str, payload: dict) -> None:
        self.events.append(EventRecord(self.world.clock, kind, payload))

    def events_of(self, kind: str) -> list[EventRecord]:
        return [e for e in self.events if e.kind == kind]

    def finish(self, task_id: int, status: str) -> None:
        self.outcomes[task_id] = ScenarioOutcome(
            task_id=task_id, status=status,
            events=[e.payload for e in self.events
                    if e.payload.get("task_id") == task_id])

    def export_event_log(self) -> str:
        return "\n".join(e.line() for e in self.events) + "\n"

    # -- task plumbing --

    def submit_body(self, name: str, priority: int, body: TaskBody) -> int:
        task_id = self.scheduler.submit(name, priority)
        self.bodies[task_id] = body
        return task_id

    def dispatch_intent(self, intent: Intent, requester_id: str) -> int | None:
        scen = self.config.get("scenario", {})
        if intent.kind is IntentKind.FETCH:
            profiles = self.config.get("payload_profiles", {})
            profile = profiles.get(intent.item)
            if profile is None:
                profile = {"class": "mug", "weight_kg": 0.45,
                           "tolerance_kg": 0.05}
            pickup = scen.get("pickup", (self.world.robot.x, self.world.robot.y))
            body = TransportBody(intent, requester_id, pickup, profile,
                                 scen.get("placement_timeout", PLACEMENT_TIMEOUT))
            return self.submit_body(f"transport:{intent.item}",
                                    self.priorities["transport"], body)
        if intent.kind is IntentKind.PATROL:
            body = PatrolBody(scen.get("waypoint_a", (-2.0, 0.0)),
                              scen.get("waypoint_b", (2.0, 0.0)),
                              scen.get("hotspot_threshold",
                                       DEFAULT_HOTSPOT_THRESHOLD),
                              scen.get("lap_cap"))
            return self.submit_body("patrol", self.priorities["patrol"], body)
        if intent.kind is IntentKind.GOTO:
            target = intent.parameters.get("target", "base")
            if target == "base":
                goal = (self.world.base_station.x, self.world.base_station.y)
            else:
                goal = scen.get("named_places", {}).get(target)
            if goal is None:
                self.emit("speech_out", {"text": f"I do not know {target}"})
                return None
            return self.submit_body(f"goto:{target}",
                                    self.priorities["goto"],
                                    GoToBody(goal))
        if intent.kind is IntentKind.STOP:
            command_base(self.world, 0.0, 0.0)
            self.emit("stopped", {})
            return None
        self.emit("speech_out", {"text": "I cannot do that yet"})
        return None

    # -- external inputs --

    def inject(self, event: dict) -> None:
        worldmod.inject_event(self.world, event)
        self.emit("world_event", dict(event))
        if event.get("kind") == "person_fall":
            body = FallResponseBody(
                event["person_id"],
                self.config.get("scenario", {}).get(
                    "fall_response_timeout", FALL_RESPONSE_TIMEOUT))
            self.submit_body(f"fall_response:{event['person_id']}",
                             self.priorities["fall_response"], body)
        elif event.get("kind") == "person_respond":
            self.respond_times[event["person_id"]] = self.world.clock

    def set_estop(self, engaged: bool) -> None:
        if engaged and not self.estop:
            self.estop = True
            command_base(self.world, 0.0, 0.0)
            self._estop_task = self.submit_body(
                "safety_stop", self.priorities["safety_stop"], SafetyStopBody())
            self.emit("estop", {"engaged": True})
        elif not engaged and self.estop:
            self.estop = False
            if self._estop_task is not None:
                self.scheduler.terminate(self._estop_task)
                self._estop_task = None
            self.emit("estop", {"engaged": False})

    def queue_command(self, cmd: dict) -> None:
        self.pending_commands.append(cmd)

    def _apply_command(self, cmd: dict) -> None:
        kind = cmd.get("type")
        if kind == "estop":
            self.set_estop(bool(cmd.get("engaged", True)))
            return
        if self.estop and kind in ("cmd_vel", "head"):
            return
        try:
            if kind == "cmd_vel":
                command_base(self.world, float(cmd["v"]), float(cmd["w"]))
            elif kind == "head":
                command_head(self.world, float(cmd["pan"]), float(cmd["tilt"]))
            elif kind == "speak":
                self.inject({"kind": "speak",
                             "person_id": cmd["person_id"],
                             "text": cmd["text"]})
            elif kind == "inject":
                self.inject(dict(cmd["event"]))
        except worldmod.WorldError as exc:
            self.emit("command_rejected", {"command_type": kind,
                                           "reason": str(exc)})

    # -- main loop --

    def tick(self, dt: float = DT) -> None:
        if not self.estop:
            command_base(self.world, 0.0, 0.0)
        self.scheduler.clock = self.world.clock
        decision = self.scheduler.harmonise()
        for op, tid in decision.actions:
            body = self.bodies.get(tid)
            if body is None:
                continue
            if op == "suspend":
                body.on_suspend(self, tid)
            elif op == "resume":
                body.on_resume(self, tid)
        running = self.scheduler.executing()
        if running is not None:
            body = self.bodies.get(running.id)
            if body is not None and body.step(self, running.id):
                self.scheduler.complete(running.id)
        pending, self.pending_commands = self.pending_commands, []
        for cmd in pending:
            self._apply_command(cmd)
        if self.estop:
            command_base(self.world, 0.0, 0.0)
        worldmod.step(self.world, dt)

    def run(self, duration: float, dt: float = DT) -> None:
        end = self.world.clock + duration
        while self.world.clock < end - 1e-9:
            self.tick(dt)

    def run_until(self, predicate, timeout: float, dt: float = DT) -> bool:
        end = self.world.clock + timeout
        while self.world.clock < end - 1e-9:
            self.tick(dt)
            if predicate(self):
                return True
        return False


def comprehension_trial(rng: Random, room: float = 6.0,
                        command: str = "bring me tea") -> bool:
    """One seeded comprehension trial of the clarification loop.

    The speaker stands at a uniform position in a room centred on the
    robot, which faces a random direction. The loop retries at most twice
    (ask-repeat turns toward the speaker; approach closes to 1 m). The
    trial succeeds when the finally accepted intent is the correct one,
    i.e. at least one attempt before acceptance was understood.
    """
    w = WorldState(bounds=(-room / 2, -room / 2, room / 2, room / 2))
    w.robot.theta = rng.uniform(-math.pi, math.pi)
    half = room / 2
    person = worldmod.Person(
        id="speaker",
        position=(rng.uniform(-half, half), rng.uniform(-half, half)))
    w.persons[person.id] = person
    expected = dialogue.parse(command)
    got_correct = False
    for attempt in range(3):
        sample = sensors.capture_speech(w, person, command)
        rec = recognize(sample, rng)
        if rec.understood and dialogue.parse(rec.transcript).kind is expected.kind:
            got_correct = True
        action = clarification_policy(rec.confidence, attempt)
        if action is ClarificationAction.ACCEPT:
            return got_correct
        if action is ClarificationAction.ASK_REPEAT:
            # turn toward the speaker before listening again
            bearing = math.atan2(person.position[1] - w.robot.y,
                                 person.position[0] - w.robot.x)
            w.robot.theta = normalize_angle(bearing)
        else:  # approach to 1 m, facing the speaker
            px, py = person.position
            d = math.hypot(px - w.robot.x, py - w.robot.y)
            if d > APPROACH_DISTANCE:
                ux, uy = (w.robot.x - px) / d, (w.robot.y - py) / d
                w.robot.x = px + ux * APPROACH_DISTANCE
                w.robot.y = py + uy * APPROACH_DISTANCE
            w.robot.theta = normalize_angle(
                math.atan2(py - w.robot.y, px - w.robot.x))
    return got_correct


def comprehension_benchmark(trials: int = 1000, seed: int = 0,
                            room: float = 6.0) -> dict:
    rng = Random(seed)
    successes = sum(comprehension_trial(rng, room) for _ in range(trials))
    return {"trials": trials, "seed": seed,
            "successes": successes,
            "success_rate": successes / trials}


class GoToBody(TaskBody):
    def __init__(self, goal: tuple[float, float]):
        self.nav = Navigator(goal)

    def on_resume(self, engine, task_id):
        self.nav.waypoints = None

    def step(self, engine, task_id):
        if self.nav.failed:
            engine.finish(task_id, "aborted")
            return True
        if self.nav.step(engine.world):
            engine.finish(task_id, "success")
            return True
        return False
