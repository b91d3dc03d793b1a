import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from assistbot import world as wm
from assistbot.geometry import disc_overlaps_rect, normalize_angle
from assistbot.world import (
    Person,
    Pose,
    SimObject,
    WorldError,
    WorldState,
    command_base,
    command_head,
    inject_event,
    step,
)

from .oracles import fine_step_unicycle


def make_world(**kw):
    return WorldState(**kw)


class TestStep:
    def test_zero_command_changes_only_clock(self):
        w = make_world(robot=Pose(1.0, 2.0, 0.5))
        before = w.snapshot()
        step(w, 0.1)
        assert (w.robot.x, w.robot.y, w.robot.theta) == (1.0, 2.0, 0.5)
        assert w.clock == pytest.approx(before.clock + 0.1)
        assert not w.collided

    def test_straight_line_integration(self):
        w = make_world()
        command_base(w, 1.0, 0.0)
        for _ in range(5):
            step(w, 0.1)
        assert w.robot.x == pytest.approx(0.5)
        assert w.robot.y == pytest.approx(0.0)

    def test_matches_fine_step_oracle(self):
        w = make_world()
        command_base(w, 0.5, 1.0)
        for _ in range(100):
            step(w, 0.01)
        ox, oy, ot = fine_step_unicycle(0, 0, 0, 0.5, 1.0, 0.01, 100)
        # honest first-order Euler error for this case is ~1.03e-3
        assert w.robot.x == pytest.approx(ox, abs=2e-3)
        assert w.robot.y == pytest.approx(oy, abs=2e-3)
        assert w.robot.theta == pytest.approx(ot, abs=2e-3)

    @pytest.mark.parametrize("dt", [0.0, -0.1, 0.2, math.nan, math.inf])
    def test_bad_dt_rejected_state_unchanged(self, dt):
        w = make_world(robot=Pose(1, 1, 1))
        snap = w.snapshot()
        with pytest.raises(WorldError):
            step(w, dt)
        assert w == snap

    def test_nonfinite_command_rejected(self):
        w = make_world()
        with pytest.raises(WorldError):
            command_base(w, math.nan, 0.0)
        w.base_cmd = (math.inf, 0.0)  # corrupted externally
        with pytest.raises(WorldError):
            step(w, 0.1)

    def test_collision_clamps_and_flags(self):
        w = make_world(obstacles=[(1.0, -1.0, 2.0, 1.0)])
        command_base(w, 1.0, 0.0)
        for _ in range(30):
            step(w, 0.1)
        assert w.collided
        # stopped at the wall face minus the robot radius
        assert w.robot.x == pytest.approx(1.0 - wm.ROBOT_RADIUS, abs=1e-6)
        assert not disc_overlaps_rect(w.robot.x, w.robot.y, wm.ROBOT_RADIUS,
                                      w.obstacles[0])

    @given(v=st.floats(-1, 1), w_=st.floats(-1.5, 1.5),
           theta=st.floats(-3.1, 3.1), steps=st.integers(1, 60))
    @settings(max_examples=60, deadline=None)
    def test_never_inside_obstacle_and_theta_normalized(self, v, w_, theta, steps):
        w = make_world(robot=Pose(0, 0, theta),
                       obstacles=[(0.8, -3.0, 1.4, 3.0)])
        command_base(w, v, w_)
        for _ in range(steps):
            step(w, 0.1)
            assert -math.pi < w.robot.theta <= math.pi
            for rect in w.obstacles:
                assert not disc_overlaps_rect(w.robot.x, w.robot.y,
                                              wm.ROBOT_RADIUS, rect)

    def test_determinism(self):
        def run():
            w = make_world(obstacles=[(1.0, -1.0, 2.0, 1.0)])
            cmds = [(0.5, 0.3), (1.0, -0.7), (0.2, 1.5)]
            for v, om in cmds:
                command_base(w, v, om)
                for _ in range(17):
                    step(w, 0.1)
            return w

        assert run() == run()


class TestCommands:
    def test_base_passthrough_and_clamps(self):
        w = make_world()
        command_base(w, 0.3, 0.0)
        assert w.base_cmd == (0.3, 0.0)
        command_base(w, 99, 0)
        assert w.base_cmd == (1.0, 0)
        command_base(w, -2.0, -9.0)
        assert w.base_cmd == (-1.0, -1.5)

    def test_head_passthrough_and_clamps(self):
        w = make_world()
        command_head(w, 0, 0)
        assert (w.head.pan, w.head.tilt) == (0, 0)
        command_head(w, 5.0, 0)
        assert (w.head.pan, w.head.tilt) == (1.3, 0)
        command_head(w, -5.0, -5.0)
        assert (w.head.pan, w.head.tilt) == (-1.3, -0.98)

    def test_head_nonfinite_rejected(self):
        w = make_world()
        with pytest.raises(WorldError):
            command_head(w, math.nan, 0.0)


class TestInjectEvent:
    def test_person_fall(self):
        w = make_world(persons={"p1": Person("p1")})
        inject_event(w, {"kind": "person_fall", "person_id": "p1"})
        assert w.persons["p1"].fallen

    def test_place_object_on_table_changes_tactile(self):
        from assistbot.sensors import read_tactile

        w = make_world()
        assert float(read_tactile(w).forces.sum()) == 0.0
        inject_event(w, {"kind": "place_object", "where": "on_table",
                         "tile": (7, 7),
                         "object": {"id": "mug", "kind": "mug", "mass": 0.3,
                                    "footprint_radius": 0.04}})
        assert w.objects["mug"].frame == "table"
        total = float(read_tactile(w).forces.sum())
        assert total == pytest.approx(0.3 * wm.GRAVITY, abs=1e-9)

    def test_remove_unknown_object_rejected(self):
        w = make_world()
        snap = w.snapshot()
        with pytest.raises(WorldError):
            inject_event(w, {"kind": "remove_object", "object_id": "nope"})
        assert w == snap

    def test_speak_appends_utterance(self):
        w = make_world(persons={"p1": Person("p1")})
        inject_event(w, {"kind": "speak", "person_id": "p1", "text": "hi"})
        assert w.utterances[0].text == "hi"

    def test_unknown_event_kind(self):
        with pytest.raises(WorldError):
            inject_event(make_world(), {"kind": "teleport"})


class TestTypes:
    def test_negative_mass_rejected(self):
        with pytest.raises(WorldError):
            SimObject(id="x", mass=-1.0)

    @given(st.floats(-50, 50))
    def test_normalize_angle_range(self, a):
        n = normalize_angle(a)
        assert -math.pi < n <= math.pi
        assert math.isclose(math.sin(n), math.sin(a), abs_tol=1e-9)
        assert math.isclose(math.cos(n), math.cos(a), abs_tol=1e-9)
