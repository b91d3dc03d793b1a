import math
from pathlib import Path

import pytest

from assistbot.cli import _run_headless, _setup_scenario, collect_metrics
from assistbot.config import build_world, load_config
from assistbot.scenarios import Engine
from assistbot.tasker import TaskState
from assistbot.world import Person, Utterance

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def make_engine(config_name, scenario, seed=42):
    config = load_config(str(CONFIGS / config_name))
    engine = Engine(build_world(config), config, seed=seed)
    _setup_scenario(engine, scenario)
    return engine


class TestPatrol:
    def test_quiet_room_completes_laps(self):
        engine = make_engine("patrol_quiet.yaml", "patrol")
        _run_headless(engine, 300.0)
        metrics = collect_metrics(engine, "patrol", 42)
        assert metrics["task_outcomes"]["patrol"] == "success"
        assert not metrics["hazard_reported"]
        laps = engine.events_of("patrol_lap")
        assert laps[-1].payload["laps"] == 3

    def test_hot_object_reported_at_base_exactly_once(self):
        engine = make_engine("patrol_hazard.yaml", "patrol")
        _run_headless(engine, 300.0)
        reports = engine.events_of("hazard_report")
        assert len(reports) == 1
        report = reports[0]
        assert report.payload["reported_at_base"] is True
        assert report.payload["peak_temperature"] == 70.0
        # robot physically within the reporting radius of the base
        w = engine.world
        assert math.hypot(w.base_station.x - w.robot.x,
                          w.base_station.y - w.robot.y) <= 0.5
        assert collect_metrics(engine, "patrol", 42)["outcome"] == "success"

    def test_hazard_run_is_deterministic(self):
        logs = []
        for _ in range(2):
            engine = make_engine("patrol_hazard.yaml", "patrol")
            _run_headless(engine, 300.0)
            logs.append(engine.export_event_log())
        assert logs[0] == logs[1]


class TestTransport:
    @pytest.mark.parametrize("config,status,violations", [
        ("transport_ok.yaml", "success", []),
        ("transport_edge.yaml", "anomaly", ["edge_violation"]),
        ("transport_light.yaml", "anomaly", ["weight_mismatch"]),
    ])
    def test_trio(self, config, status, violations):
        engine = make_engine(config, "transport")
        _run_headless(engine, 120.0)
        metrics = collect_metrics(engine, "transport", 42)
        assert metrics["task_outcomes"]["transport:tea"] == status
        assert metrics["anomalies"] == violations
        if status == "success":
            delivered = engine.events_of("delivered")
            assert len(delivered) == 1
            assert delivered[0].payload["item"] == "tea"
            requester = engine.world.persons["requester"]
            d = math.hypot(requester.position[0] - engine.world.robot.x,
                           requester.position[1] - engine.world.robot.y)
            assert d <= 1.0 + 0.12

    def test_no_placement_times_out_aborted(self):
        config = load_config(str(CONFIGS / "transport_ok.yaml"))
        config["scenario"]["scripted"] = []
        config["scenario"]["placement_timeout"] = 20.0
        engine = Engine(build_world(config), config, seed=1)
        _setup_scenario(engine, "transport")
        _run_headless(engine, 60.0)
        metrics = collect_metrics(engine, "transport", 1)
        assert metrics["task_outcomes"]["transport:tea"] == "aborted"
        assert metrics["outcome"] == "aborted"


class TestFallPreemption:
    def run_fall(self, respond_at=None):
        engine = make_engine("patrol_hazard.yaml", "patrol")
        # strip the hot mug so patrol keeps looping
        engine.world.objects.clear()
        engine.run(5.0)
        engine.inject({"kind": "person_fall", "person_id": "resident"})
        if respond_at is not None:
            ran = engine.run_until(
                lambda e: any(ev.kind == "speech_out" and
                              ev.payload.get("text") == "are you OK?"
                              for ev in e.events),
                timeout=60.0)
            assert ran
            engine.inject({"kind": "person_respond", "person_id": "resident"})
        engine.run_until(
            lambda e: any(t.name.startswith("fall_response") and
                          t.state in (TaskState.FINISHED,)
                          for t in e.scheduler.tasks()),
            timeout=120.0)
        return engine

    def test_patrol_suspends_then_resumes(self):
        engine = self.run_fall(respond_at="after_ask")
        fall = next(t for t in engine.scheduler.tasks()
                    if t.name.startswith("fall_response"))
        patrol = next(t for t in engine.scheduler.tasks()
                      if t.name == "patrol")
        assert fall.state is TaskState.FINISHED
        assert engine.outcomes[fall.id].status == "success"
        assert patrol.state is TaskState.EXECUTING
        # exact transition order for the two tasks involved
        ops = [(r.op, r.task_id) for r in engine.scheduler.trace
               if r.task_id in (fall.id, patrol.id)
               and r.op in ("suspend", "start", "resume", "complete")]
        assert ops[:1] == [("start", patrol.id)]
        assert ops[1:] == [("suspend", patrol.id), ("start", fall.id),
                           ("complete", fall.id), ("resume", patrol.id)]

    def test_preemption_happens_within_one_tick(self):
        engine = make_engine("patrol_hazard.yaml", "patrol")
        engine.world.objects.clear()
        engine.run(5.0)
        engine.inject({"kind": "person_fall", "person_id": "resident"})
        engine.tick()
        fall = next(t for t in engine.scheduler.tasks()
                    if t.name.startswith("fall_response"))
        assert fall.state is TaskState.EXECUTING

    def test_silence_raises_alert_anomaly(self):
        engine = self.run_fall(respond_at=None)
        fall = next(t for t in engine.scheduler.tasks()
                    if t.name.startswith("fall_response"))
        assert engine.outcomes[fall.id].status == "anomaly"
        alerts = engine.events_of("fall_alert")
        assert len(alerts) == 1
        assert alerts[0].payload["reason"] == "no response"

    def test_suspension_does_not_change_patrol_outcome(self):
        baseline = make_engine("patrol_quiet.yaml", "patrol")
        _run_headless(baseline, 300.0)
        interrupted = make_engine("patrol_quiet.yaml", "patrol")
        interrupted.world.persons["visitor"] = Person(id="visitor",
                                                      position=(-1.0, 2.0))
        interrupted.run(5.0)
        interrupted.inject({"kind": "person_fall", "person_id": "visitor"})
        interrupted.run_until(
            lambda e: any(ev.kind == "speech_out" and
                          ev.payload.get("text") == "are you OK?"
                          for ev in e.events), timeout=60.0)
        interrupted.inject({"kind": "person_respond", "person_id": "visitor"})
        interrupted.run(400.0)
        base_metrics = collect_metrics(baseline, "patrol", 42)
        int_metrics = collect_metrics(interrupted, "patrol", 42)
        assert int_metrics["task_outcomes"]["patrol"] == \
            base_metrics["task_outcomes"]["patrol"] == "success"
        base_laps = [e.payload["laps"] for e in baseline.events_of("patrol_lap")]
        int_laps = [e.payload["laps"] for e in interrupted.events_of("patrol_lap")]
        assert base_laps == int_laps == [1, 2, 3]


class TestListening:
    def engine_with_speaker(self, x, y, seed=3):
        config = load_config(str(CONFIGS / "transport_ok.yaml"))
        engine = Engine(build_world(config), config, seed=seed)
        engine.world.persons["speaker"] = Person(id="speaker", position=(x, y))
        _setup_scenario(engine, "listen")
        return engine

    def speak(self, engine, text="bring me tea"):
        engine.world.utterances.append(
            Utterance(person_id="speaker", text=text,
                      at=engine.world.clock))

    def test_close_speaker_accepted_first_attempt(self):
        engine = self.engine_with_speaker(0.5, 0.0)
        self.speak(engine)
        engine.tick()
        attempts = engine.events_of("listen_attempt")
        assert len(attempts) == 1
        assert attempts[0].payload["action"] == "Accept"
        assert attempts[0].payload["confidence"] == pytest.approx(0.9375)
        accepted = engine.events_of("intent_accepted")
        assert len(accepted) == 1
        assert accepted[0].payload["kind"] == "Fetch"
        assert accepted[0].payload["item"] == "tea"
        # a transport task was submitted at higher priority than listening
        names = {t.name: t for t in engine.scheduler.tasks()}
        assert "transport:tea" in names
        engine.tick()
        assert names["transport:tea"].state is TaskState.EXECUTING
        assert names["listening"].state is TaskState.SUSPENDED

    def test_distant_speaker_behind_triggers_approach_then_accept(self):
        engine = self.engine_with_speaker(-3.9, 0.0)
        self.speak(engine)
        engine.tick()
        first = engine.events_of("listen_attempt")[0]
        assert first.payload["confidence"] == pytest.approx(0.025)
        assert first.payload["action"] == "ApproachSpeaker"
        done = engine.run_until(
            lambda e: bool(e.events_of("intent_accepted")), timeout=60.0)
        assert done
        attempts = engine.events_of("listen_attempt")
        # re-listened from about a metre away (within the 0.12 m arrival
        # tolerance), now facing the speaker: well above the accept band
        assert attempts[-1].payload["confidence"] >= 0.7
        assert attempts[-1].payload["action"] == "Accept"
        accepted = engine.events_of("intent_accepted")[0]
        assert accepted.payload["kind"] == "Fetch"

    def test_garbled_capture_is_not_dispatched(self):
        # dead channels: 3.9 m behind keeps dir at zero; force omni to zero
        # by placing the speaker past the omni range on the rear axis
        engine = self.engine_with_speaker(-3.9, 0.0, seed=12345)
        engine.world.persons["speaker"].position = (-4.0 + 0.3, 0.0)
        self.speak(engine, "sing a song")
        done = engine.run_until(
            lambda e: bool(e.events_of("intent_accepted")) or
            any(ev.payload.get("text") == "sorry, I did not understand"
                for ev in e.events_of("speech_out")),
            timeout=60.0)
        assert done
        accepted = engine.events_of("intent_accepted")
        # "sing a song" is out of grammar: it must never become a task
        assert not accepted
        assert not any(t.name.startswith("transport")
                       for t in engine.scheduler.tasks())

    def test_learned_parameter_is_asked_and_filled(self):
        engine = self.engine_with_speaker(0.5, 0.0)
        engine.scripted_answers["sugar"] = "2"
        listening = next(b for b in engine.bodies.values()
                         if hasattr(b, "memory"))
        listening.memory.learn(
            __import__("assistbot.dialogue", fromlist=["IntentKind"]).IntentKind.FETCH,
            "tea", "sugar")
        self.speak(engine)
        engine.tick()
        questions = engine.events_of("parameter_question")
        assert len(questions) == 1 and questions[0].payload["key"] == "sugar"
        accepted = engine.events_of("intent_accepted")[0]
        assert accepted.payload["parameters"] == {"sugar": "2"}
        assert listening.memory.values_last_used["sugar"] == "2"


class TestTermination:
    @pytest.mark.parametrize("config,scenario,budget", [
        ("patrol_quiet.yaml", "patrol", 300.0),
        ("patrol_hazard.yaml", "patrol", 300.0),
        ("transport_ok.yaml", "transport", 120.0),
    ])
    def test_scenario_tasks_terminate_within_budget(self, config, scenario, budget):
        engine = make_engine(config, scenario)
        _run_headless(engine, budget)
        for task in engine.scheduler.tasks():
            if task.name == "listening":
                continue  # background behaviour, runs for the session
            assert task.state in (TaskState.FINISHED, TaskState.TERMINATED), \
                f"{task.name} still {task.state} after {budget}s"
