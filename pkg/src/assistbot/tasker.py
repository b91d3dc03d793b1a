"""Priority-based task harmoniser with interrupt, postpone and resume.

Exactly one task may be Executing at a time. ``harmonise`` installs the
best candidate (highest priority, then earliest submission, then lowest
id), suspending a lower-priority running task first. Preemption requires
strictly greater priority, so equal-priority arrivals never thrash.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class TaskState(Enum):
    WAITING = "Waiting"
    EXECUTING = "Executing"
    SUSPENDED = "Suspended"
    FINISHED = "Finished"
    TERMINATED = "Terminated"


_LEGAL = {
    TaskState.WAITING: {TaskState.EXECUTING, TaskState.TERMINATED},
    TaskState.EXECUTING: {TaskState.SUSPENDED, TaskState.FINISHED,
                          TaskState.TERMINATED},
    TaskState.SUSPENDED: {TaskState.EXECUTING, TaskState.TERMINATED},
    TaskState.FINISHED: set(),
    TaskState.TERMINATED: set(),
}


class TaskerError(ValueError):
    pass


@dataclass
class TaskRecord:
    id: int
    name: str
    priority: int
    state: TaskState = TaskState.WAITING
    context: Any = None
    submitted_at: float = 0.0


@dataclass
class ScheduleDecision:
    active: int | None
    actions: list[tuple[str, int]] = field(default_factory=list)  # (op, id)


@dataclass
class TraceRecord:
    tick: float
    op: str
    task_id: int | None
    before: str
    after: str

    def line(self) -> str:
        return f"{self.tick!r}\t{self.op}\t{self.task_id}\t{self.before}\t{self.after}"


class Scheduler:
    def __init__(self):
        self._tasks: dict[int, TaskRecord] = {}
        self._next_id = 1
        self.clock = 0.0
        self.trace: list[TraceRecord] = []

    # -- introspection --

    def task(self, task_id: int) -> TaskRecord:
        rec = self._tasks.get(task_id)
        if rec is None:
            raise TaskerError(f"unknown task id {task_id}")
        return rec

    def tasks(self) -> list[TaskRecord]:
        return list(self._tasks.values())

    def executing(self) -> TaskRecord | None:
        for rec in self._tasks.values():
            if rec.state is TaskState.EXECUTING:
                return rec
        return None

    def _record(self, op: str, task_id: int | None, before: TaskState | None,
                after: TaskState | None) -> None:
        self.trace.append(TraceRecord(
            self.clock, op, task_id,
            before.value if before else "-",
            after.value if after else "-"))

    def _transition(self, rec: TaskRecord, to: TaskState, op: str) -> None:
        if to not in _LEGAL[rec.state]:
            raise TaskerError(
                f"illegal transition {rec.state.value} -> {to.value} "
                f"for task {rec.id}")
        self._record(op, rec.id, rec.state, to)
        rec.state = to

    # -- operations --

    def submit(self, name: str, priority: int, initial_context: Any = None) -> int:
        if not isinstance(priority, int):
            raise TaskerError("priority must be a finite integer")
        task_id = self._next_id
        self._next_id += 1
        rec = TaskRecord(id=task_id, name=name, priority=priority,
                         context=initial_context, submitted_at=self.clock)
        self._tasks[task_id] = rec
        self._record("submit", task_id, None, rec.state)
        return task_id

    def _best_candidate(self) -> TaskRecord | None:
        cands = [r for r in self._tasks.values()
                 if r.state in (TaskState.WAITING, TaskState.SUSPENDED)]
        if not cands:
            return None
        return min(cands, key=lambda r: (-r.priority, r.submitted_at, r.id))

    def harmonise(self) -> ScheduleDecision:
        running = self.executing()
        cand = self._best_candidate()
        if cand is None:
            return ScheduleDecision(active=running.id if running else None)
        actions: list[tuple[str, int]] = []
        if running is not None:
            if cand.priority <= running.priority:
                return ScheduleDecision(active=running.id)
            self._transition(running, TaskState.SUSPENDED, "suspend")
            actions.append(("suspend", running.id))
        verb = "resume" if cand.state is TaskState.SUSPENDED else "start"
        self._transition(cand, TaskState.EXECUTING, verb)
        actions.append((verb, cand.id))
        return ScheduleDecision(active=cand.id, actions=actions)

    def complete(self, task_id: int) -> ScheduleDecision:
        rec = self.task(task_id)
        if rec.state is not TaskState.EXECUTING:
            raise TaskerError(f"task {task_id} is not Executing")
        self._transition(rec, TaskState.FINISHED, "complete")
        return self.harmonise()

    def terminate(self, task_id: int) -> ScheduleDecision:
        rec = self.task(task_id)
        was_executing = rec.state is TaskState.EXECUTING
        self._transition(rec, TaskState.TERMINATED, "terminate")
        if was_executing:
            return self.harmonise()
        return ScheduleDecision(
            active=(e.id if (e := self.executing()) else None))

    def save_context(self, task_id: int, context: Any) -> None:
        self.task(task_id).context = context

    def load_context(self, task_id: int) -> Any:
        return self.task(task_id).context

    def export_trace(self) -> str:
        return "\n".join(rec.line() for rec in self.trace) + "\n"
