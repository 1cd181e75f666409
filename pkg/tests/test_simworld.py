import json
import math

import pytest

from navbot.behaviors import DEFAULT_RING_BEARINGS, TrackerConfig
from navbot.core import Pose, RobotConfig
from navbot.maps import cluttered_map, open_map
from navbot.odometry import MotionCommand, OdometryState, WaypointPlan, integrate
from navbot.planner import parse_map
from navbot.simworld import (
    Target,
    WorldState,
    camera_detect,
    raycast,
    rotating_range,
    run_episode,
    sonar_scan,
    step,
)


def open_world(pose=Pose(4500.0, 2350.0, 0.0), seed=0, config=None):
    return WorldState.from_map(open_map(), pose=pose, seed=seed, config=config)


def walled_world(pose, config=None, seed=0):
    # 50 x 50 cells (5 m square) fully walled border
    rows = ["#" * 50]
    for _ in range(48):
        rows.append("#" + "." * 48 + "#")
    rows.append("#" * 50)
    rows[25] = rows[25][:2] + "M" + rows[25][3:]
    rows[25] = rows[25][:46] + "E" + rows[25][47:]
    grid = parse_map("\n".join(rows))
    return WorldState.from_map(grid, pose=pose, config=config, seed=seed)


class TestStep:
    def test_straight_motion(self):
        w = open_world()
        delta, collided = step(w, MotionCommand(100.0, 0.0), 100.0)
        assert not collided
        assert (delta.d_left, delta.d_right) == (10.0, 10.0)
        assert w.robot_pose.x == pytest.approx(4510.0)
        assert w.robot_pose.y == pytest.approx(2350.0)
        assert w.sim_time == 100

    def test_pure_rotation(self):
        cfg = RobotConfig(wheelbase=200.0, max_angular_speed=2.0)
        w = open_world(config=cfg)
        delta, collided = step(w, MotionCommand(0.0, 1.0), 100.0)
        assert not collided
        assert delta.d_left == pytest.approx(-10.0)
        assert delta.d_right == pytest.approx(10.0)
        assert (w.robot_pose.x, w.robot_pose.y) == (4500.0, 2350.0)
        # cross-check the heading change against the wheel-difference relation
        assert w.robot_pose.theta == pytest.approx((10.0 - (-10.0)) / 200.0)

    def test_blocked_by_wall_stops_at_contact(self):
        # east wall cells start at x = 4900; body radius 150 puts contact at
        # x = 4750, so a 30 mm step from 5 mm away must be cut short
        w = walled_world(Pose(4745.0, 2500.0, 0.0))
        delta, collided = step(w, MotionCommand(300.0, 0.0), 100.0)
        assert collided
        assert w.robot_pose.x <= 4750.0 + 1e-6
        assert w.robot_pose.x > 4745.0
        assert delta.d_left < 30.0  # cut short of the commanded travel

    def test_rejects_bad_dt(self):
        with pytest.raises(ValueError):
            step(open_world(), MotionCommand(0.0, 0.0), 0.0)

    def test_speed_clamped_to_config(self):
        w = open_world()
        delta, _ = step(w, MotionCommand(10000.0, 0.0), 100.0)
        assert delta.d_left == pytest.approx(w.robot_config.max_linear_speed * 0.1)

    def test_encoder_noise_only_touches_reported_delta(self):
        w = open_world()
        w.encoder_noise_sigma = 0.05
        delta, _ = step(w, MotionCommand(100.0, 0.0), 100.0)
        assert w.robot_pose.x == pytest.approx(4510.0)  # truth unaffected
        assert delta.d_left != 10.0


class TestOdometryAgainstTruth:
    def test_straight_and_turn_sequence_matches(self):
        w = open_world()
        odom = OdometryState(w.robot_pose)
        script = [MotionCommand(300.0, 0.0)] * 20 + [MotionCommand(0.0, 0.5)] * 10 + \
                 [MotionCommand(300.0, 0.0)] * 20 + [MotionCommand(0.0, -0.8)] * 7
        for cmd in script:
            delta, _ = step(w, cmd, 100.0)
            odom = integrate(odom, delta, w.robot_config.wheelbase)
        assert odom.pose.x == pytest.approx(w.robot_pose.x, abs=0.1)
        assert odom.pose.y == pytest.approx(w.robot_pose.y, abs=0.1)
        assert odom.pose.theta == pytest.approx(w.robot_pose.theta, abs=1e-4)


class TestSonar:
    def test_open_map_all_max_range(self):
        w = open_world()
        assert sonar_scan(w) == [w.robot_config.sonar_max_range] * 8

    def test_wall_dead_ahead(self):
        # east wall cells start at x = 4900 in the walled world
        w = walled_world(Pose(3900.0, 2500.0, 0.0))
        front_idx = [i for i, b in enumerate(DEFAULT_RING_BEARINGS) if abs(b) < math.radians(15)]
        readings = sonar_scan(w)
        for i in front_idx:
            expected = 1000.0 / math.cos(DEFAULT_RING_BEARINGS[i])
            assert readings[i] == pytest.approx(expected, abs=w.grid.resolution / 2)

    def test_wall_on_left_at_300(self):
        # facing +x, left is +y; south wall cells start at y = 4900
        w = walled_world(Pose(2500.0, 4600.0, 0.0))
        left_idx = DEFAULT_RING_BEARINGS.index(math.radians(90))
        assert sonar_scan(w)[left_idx] == pytest.approx(300.0, abs=w.grid.resolution / 2)

    def test_bounds(self):
        w = walled_world(Pose(2500.0, 2500.0, 0.7))
        for reading in sonar_scan(w):
            assert 0.0 <= reading <= w.robot_config.sonar_max_range


class TestRotatingRange:
    def test_servo_90_is_straight_ahead(self):
        w = walled_world(Pose(4400.0, 2500.0, 0.0))
        assert rotating_range(w, 90.0) == pytest.approx(500.0, abs=w.grid.resolution / 2)

    def test_servo_10_points_80_degrees_right(self):
        w = walled_world(Pose(2500.0, 2500.0, 0.0))
        expected = raycast(w.grid, 2500.0, 2500.0, math.radians(-80.0),
                           w.robot_config.sonar_max_range)
        assert rotating_range(w, 10.0) == expected

    def test_open_map_max_range(self):
        assert rotating_range(open_world(), 90.0) == 5000.0

    def test_out_of_range_angle(self):
        with pytest.raises(ValueError):
            rotating_range(open_world(), 181.0)


class TestCameraDetect:
    def test_target_dead_ahead_centered(self):
        w = open_world()
        w.targets.append(Target("person", w.robot_pose.x + 2000.0, w.robot_pose.y, 200.0))
        dets = camera_detect(w)
        assert len(dets) == 1
        x_min, _, x_max, _ = dets[0].bbox
        assert 0.5 * (x_min + x_max) == pytest.approx(320.0)
        assert 0.5 <= dets[0].confidence <= 1.0

    def test_target_behind_not_detected(self):
        w = open_world()
        w.targets.append(Target("person", w.robot_pose.x - 2000.0, w.robot_pose.y, 200.0))
        assert camera_detect(w) == []

    def test_quarter_fov_bearing_projects_to_three_quarter_frame(self):
        w = open_world()
        fov = w.robot_config.camera_fov
        bearing = fov / 4.0
        w.targets.append(Target(
            "person",
            w.robot_pose.x + 2000.0 * math.cos(bearing),
            w.robot_pose.y + 2000.0 * math.sin(bearing),
            150.0,
        ))
        dets = camera_detect(w)
        assert len(dets) == 1
        x_min, _, x_max, _ = dets[0].bbox
        assert 0.5 * (x_min + x_max) == pytest.approx(0.75 * 640, abs=0.5)

    def test_occluded_target_not_detected(self):
        grid = parse_map("M.#.E")
        w = WorldState.from_map(grid)
        w.targets.append(Target("person", 450.0, 50.0, 30.0))
        assert camera_detect(w) == []

    def test_camera_pan_shifts_view(self):
        w = open_world()
        w.targets.append(Target("person", w.robot_pose.x, w.robot_pose.y + 2000.0, 200.0))
        assert camera_detect(w) == []  # 90 degrees off axis
        w.camera_pan = math.pi / 2
        assert len(camera_detect(w)) == 1


class TestRunEpisode:
    def test_straight_corridor_goal(self):
        grid = parse_map("M.........E")
        w = WorldState.from_map(grid)
        plan = WaypointPlan(((1050.0, 50.0),))
        report = run_episode(w, "odometry", max_ticks=500, plan=plan)
        assert report.goal_reached
        assert report.collisions == 0
        assert math.hypot(report.final_pose.x - 1050.0, report.final_pose.y - 50.0) < 50.0
        assert ("goal_reached" in [e for _, e in report.events])

    def test_avoidance_open_map_no_collisions(self):
        report = run_episode(open_world(seed=5), "avoidance", max_ticks=1000)
        assert report.collisions == 0

    def test_tracking_halts_at_person(self):
        w = open_world()
        w.targets.append(Target("person", w.robot_pose.x + 2500.0, w.robot_pose.y + 400.0, 200.0))
        report = run_episode(w, "tracking", max_ticks=2000)
        assert report.goal_reached
        assert ("halted_at_target" in [e for _, e in report.events])
        d = math.hypot(w.targets[0].x - report.final_pose.x, w.targets[0].y - report.final_pose.y)
        assert d < 500.0

    def test_telemetry_one_frame_per_tick(self):
        frames = []
        report = run_episode(open_world(), "idle", max_ticks=10, log_sink=frames.append)
        assert report.ticks_used == 10
        assert len(frames) == 10
        assert [f.timestamp_ms for f in frames] == [100 * i for i in range(1, 11)]
        assert all(len(f.sonar) == 8 for f in frames)

    def test_determinism_identical_logs(self):
        def one_run():
            lines = []
            w = WorldState.from_map(cluttered_map(), seed=42)
            run_episode(w, "avoidance", max_ticks=300,
                        log_sink=lambda f: lines.append(json.dumps(f.__dict__)))
            return lines

        assert one_run() == one_run()

    def test_collision_soundness_frames_never_overlap_walls(self):
        from navbot.simworld import _disk_hits_grid

        poses = []
        w = WorldState.from_map(cluttered_map(), seed=3)
        run_episode(w, "avoidance", max_ticks=1500, log_sink=lambda f: poses.append((f.x, f.y)))
        for x, y in poses:
            assert not _disk_hits_grid(w.grid, x, y, w.robot_config.body_radius)

    def test_speed_bound_per_tick(self):
        frames = []
        w = WorldState.from_map(cluttered_map(), seed=8)
        run_episode(w, "avoidance", max_ticks=800, log_sink=frames.append)
        limit = w.robot_config.max_linear_speed * 0.1 + 1e-6
        pts = [(f.x, f.y) for f in frames]
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            assert math.hypot(x1 - x0, y1 - y0) <= limit

    def test_invalid_mode_rejected(self):
        with pytest.raises(ValueError):
            run_episode(open_world(), "flying", max_ticks=5)
