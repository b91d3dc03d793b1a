from random import Random

import pytest

from assistbot.tasker import Scheduler, TaskerError, TaskState

from .oracles import ReplayScheduler


class TestBasics:
    def test_submit_starts_waiting(self):
        s = Scheduler()
        tid = s.submit("patrol", 20)
        assert s.task(tid).state is TaskState.WAITING
        assert s.executing() is None

    def test_harmonise_starts_best(self):
        s = Scheduler()
        a = s.submit("patrol", 20)
        b = s.submit("transport", 50)
        decision = s.harmonise()
        assert decision.active == b
        assert s.task(a).state is TaskState.WAITING
        assert s.task(b).state is TaskState.EXECUTING

    def test_strictly_higher_priority_preempts(self):
        s = Scheduler()
        a = s.submit("patrol", 20)
        s.harmonise()
        b = s.submit("fall", 100)
        decision = s.harmonise()
        assert decision.actions == [("suspend", a), ("start", b)]
        assert s.task(a).state is TaskState.SUSPENDED

    def test_equal_priority_does_not_preempt(self):
        s = Scheduler()
        a = s.submit("one", 30)
        s.harmonise()
        s.submit("two", 30)
        assert s.harmonise().active == a

    def test_complete_resumes_suspended(self):
        s = Scheduler()
        a = s.submit("patrol", 20)
        s.harmonise()
        b = s.submit("fall", 100)
        s.harmonise()
        decision = s.complete(b)
        assert decision.active == a
        assert decision.actions == [("resume", a)]
        assert s.task(a).state is TaskState.EXECUTING
        assert s.task(b).state is TaskState.FINISHED

    def test_tiebreak_earliest_then_lowest_id(self):
        s = Scheduler()
        a = s.submit("a", 10)
        s.clock = 1.0
        b = s.submit("b", 10)
        assert s.harmonise().active == a
        s.complete(a)
        assert s.executing().id == b

    def test_terminate_waiting_task(self):
        s = Scheduler()
        a = s.submit("a", 10)
        b = s.submit("b", 5)
        s.harmonise()
        decision = s.terminate(b)
        assert decision.active == a
        assert s.task(b).state is TaskState.TERMINATED


class TestIllegalTransitions:
    def test_complete_waiting_rejected(self):
        s = Scheduler()
        a = s.submit("a", 1)
        with pytest.raises(TaskerError):
            s.complete(a)

    def test_double_complete_rejected(self):
        s = Scheduler()
        a = s.submit("a", 1)
        s.harmonise()
        s.complete(a)
        with pytest.raises(TaskerError):
            s.complete(a)

    def test_terminate_finished_rejected(self):
        s = Scheduler()
        a = s.submit("a", 1)
        s.harmonise()
        s.complete(a)
        with pytest.raises(TaskerError):
            s.terminate(a)

    def test_unknown_id_rejected(self):
        s = Scheduler()
        with pytest.raises(TaskerError):
            s.complete(99)
        with pytest.raises(TaskerError):
            s.task(99)

    def test_non_integer_priority_rejected(self):
        s = Scheduler()
        with pytest.raises(TaskerError):
            s.submit("a", 1.5)


class TestContext:
    def test_context_roundtrip(self):
        s = Scheduler()
        a = s.submit("a", 1, initial_context={"lap": 0})
        assert s.load_context(a) == {"lap": 0}
        s.save_context(a, {"lap": 3, "phase": "to_base"})
        assert s.load_context(a) == {"lap": 3, "phase": "to_base"}


def random_run(seed, ops=60):
    """Drive a Scheduler and the replay oracle with the same op stream."""
    rng = Random(seed)
    s = Scheduler()
    oracle = ReplayScheduler()
    live = []  # ids not yet Finished/Terminated
    for step in range(ops):
        s.clock = float(step)
        choice = rng.random()
        harmonised = choice >= 0.4 and live  # all non-submit ops re-harmonise
        if choice < 0.4 or not live:
            tid = s.submit(f"t{step}", rng.randint(0, 100))
            oracle.submit(tid, s.task(tid).priority, s.clock)
            live.append(tid)
        elif choice < 0.7:
            s.harmonise()
            oracle.harmonise()
        elif choice < 0.85:
            running = s.executing()
            if running is None:
                harmonised = False
            else:
                s.complete(running.id)
                oracle.complete(running.id)
                live.remove(running.id)
        else:
            tid = rng.choice(live)
            harmonised = s.task(tid).state is TaskState.EXECUTING
            s.terminate(tid)
            oracle.terminate(tid)
            live.remove(tid)
        # invariants after every op
        executing = [r for r in s.tasks() if r.state is TaskState.EXECUTING]
        assert len(executing) <= 1
        for rec in s.tasks():
            assert rec.state.value == oracle.tasks[rec.id]["state"]
        if executing and harmonised:
            # after a harmonise, no pending task strictly dominates the runner
            run = executing[0]
            for rec in s.tasks():
                if rec.state in (TaskState.WAITING, TaskState.SUSPENDED):
                    assert not (rec.priority > run.priority)
    return s


class TestRandomisedEquivalence:
    def test_thousand_sequences_match_replay_oracle(self):
        for seed in range(1000):
            random_run(seed, ops=30)

    def test_long_runs(self):
        for seed in range(20):
            random_run(10_000 + seed, ops=300)


class TestTrace:
    def test_trace_is_deterministic(self):
        lines_a = random_run(7).export_trace()
        lines_b = random_run(7).export_trace()
        assert lines_a == lines_b

    def test_trace_records_transitions(self):
        s = Scheduler()
        a = s.submit("a", 1)
        s.harmonise()
        s.complete(a)
        ops = [rec.op for rec in s.trace]
        assert ops == ["submit", "start", "complete"]
        text = s.export_trace()
        assert text.count("\n") == 3
        assert "Waiting\tExecuting" in text
