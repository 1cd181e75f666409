"""Deterministic 2-D kinematic simulator for the navigation stack.

Ground-truth stepping uses exact arc integration (as opposed to the
midpoint approximation used by the odometry estimator), ray-cast range
sensing over the occupancy grid, a geometric stand-in for a neural object
detector, and a fixed-period telemetry loop.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from .core import GridMap, Pose, RobotConfig, cell_to_world, normalize_angle
from .odometry import (
    STOP,
    MotionCommand,
    OdometryState,
    WaypointPlan,
    WheelDelta,
    integrate,
    waypoint_step,
)
from .behaviors import (
    AvoidAction,
    AvoidConfig,
    DEFAULT_RING_BEARINGS,
    Detection,
    TrackerConfig,
    avoid_step_ring,
    detect_stuck,
    ring_halves,
    select_target,
    track_step,
)


@dataclass
class Target:
    """A detectable object in the world: a labeled disk."""

    label: str
    x: float
    y: float
    radius: float


@dataclass
class WorldState:
    """Mutable simulation state: map, ground-truth pose, targets, clock, RNG."""

    grid: GridMap
    robot_pose: Pose
    robot_config: RobotConfig = field(default_factory=RobotConfig)
    targets: List[Target] = field(default_factory=list)
    sim_time: int = 0          # ms
    camera_pan: float = 0.0    # radians
    encoder_noise_sigma: float = 0.0
    rng: random.Random = field(default_factory=lambda: random.Random(0))

    @classmethod
    def from_map(
        cls,
        grid: GridMap,
        config: Optional[RobotConfig] = None,
        seed: int = 0,
        pose: Optional[Pose] = None,
        **kwargs,
    ) -> "WorldState":
        """World with the robot at the map's start cell (heading +x) by default."""
        if pose is None:
            sx, sy = cell_to_world(grid, grid.start)
            pose = Pose(sx, sy, 0.0)
        return cls(
            grid=grid,
            robot_pose=pose,
            robot_config=config or RobotConfig(),
            rng=random.Random(seed),
            **kwargs,
        )


def _disk_hits_grid(grid: GridMap, x: float, y: float, radius: float) -> bool:
    """True if a disk at (x, y) overlaps any occupied cell."""
    res = grid.resolution
    r0 = max(0, int(math.floor((y - radius) / res)))
    r1 = min(grid.height - 1, int(math.floor((y + radius) / res)))
    c0 = max(0, int(math.floor((x - radius) / res)))
    c1 = min(grid.width - 1, int(math.floor((x + radius) / res)))
    for r in range(r0, r1 + 1):
        for c in range(c0, c1 + 1):
            if not grid.occupied[r][c]:
                continue
            # closest point of the cell rectangle to the disk center
            px = min(max(x, c * res), (c + 1) * res)
            py = min(max(y, r * res), (r + 1) * res)
            if (px - x) ** 2 + (py - y) ** 2 < radius * radius:
                return True
    return False


def _arc_pose(pose: Pose, d_left: float, d_right: float, wheelbase: float) -> Pose:
    """Exact constant-curvature advance of the ground-truth pose."""
    d = 0.5 * (d_left + d_right)
    dtheta = (d_right - d_left) / wheelbase
    if abs(dtheta) < 1e-12:
        return Pose(
            pose.x + d * math.cos(pose.theta),
            pose.y + d * math.sin(pose.theta),
            pose.theta,
        )
    radius = d / dtheta
    new_theta = pose.theta + dtheta
    return Pose(
        pose.x + radius * (math.sin(new_theta) - math.sin(pose.theta)),
        pose.y - radius * (math.cos(new_theta) - math.cos(pose.theta)),
        normalize_angle(new_theta),
    )


def step(world: WorldState, cmd: MotionCommand, dt_ms: float) -> Tuple[WheelDelta, bool]:
    """Advance the world by one tick under a motion command.

    Commanded velocities are converted to per-wheel travel, the pose follows
    the exact arc, and if the body disk would enter an occupied cell the
    motion is cut at contact by a short binary search on the step fraction.
    Returns the executed wheel travel (noise-perturbed when configured) and
    whether contact occurred.
    """
    if dt_ms <= 0:
        raise ValueError(f"dt must be positive, got {dt_ms}")
    cfg = world.robot_config
    linear = max(-cfg.max_linear_speed, min(cfg.max_linear_speed, cmd.linear))
    angular = max(-cfg.max_angular_speed, min(cfg.max_angular_speed, cmd.angular))
    dt = dt_ms / 1000.0
    d_left = (linear - angular * cfg.wheelbase / 2.0) * dt
    d_right = (linear + angular * cfg.wheelbase / 2.0) * dt

    target = _arc_pose(world.robot_pose, d_left, d_right, cfg.wheelbase)
    collided = False
    frac = 1.0
    if _disk_hits_grid(world.grid, target.x, target.y, cfg.body_radius):
        collided = True
        lo, hi = 0.0, 1.0  # lo is known collision-free (current pose)
        for _ in range(8):
            mid = 0.5 * (lo + hi)
            p = _arc_pose(world.robot_pose, d_left * mid, d_right * mid, cfg.wheelbase)
            if _disk_hits_grid(world.grid, p.x, p.y, cfg.body_radius):
                hi = mid
            else:
                lo = mid
        frac = lo
        target = _arc_pose(world.robot_pose, d_left * frac, d_right * frac, cfg.wheelbase)

    world.robot_pose = target
    world.sim_time += int(round(dt_ms))
    dl, dr = d_left * frac, d_right * frac
    if world.encoder_noise_sigma > 0.0:
        dl *= 1.0 + world.rng.gauss(0.0, world.encoder_noise_sigma)
        dr *= 1.0 + world.rng.gauss(0.0, world.encoder_noise_sigma)
    return WheelDelta(dl, dr), collided


def raycast(grid: GridMap, x: float, y: float, angle: float, max_range: float) -> float:
    """Distance along a ray to the first occupied cell boundary (DDA traversal).

    Clamped to max_range; cells outside the map count as free space.
    """
    res = grid.resolution
    dx = math.cos(angle)
    dy = math.sin(angle)
    col = int(math.floor(x / res))
    row = int(math.floor(y / res))
    if grid.in_bounds((row, col)) and grid.occupied[row][col]:
        return 0.0

    step_c = 1 if dx > 0 else -1
    step_r = 1 if dy > 0 else -1
    if dx != 0.0:
        next_cx = (col + (1 if dx > 0 else 0)) * res
        t_max_x = (next_cx - x) / dx
        t_delta_x = res / abs(dx)
    else:
        t_max_x = math.inf
        t_delta_x = math.inf
    if dy != 0.0:
        next_cy = (row + (1 if dy > 0 else 0)) * res
        t_max_y = (next_cy - y) / dy
        t_delta_y = res / abs(dy)
    else:
        t_max_y = math.inf
        t_delta_y = math.inf

    t = 0.0
    while t <= max_range:
        if t_max_x < t_max_y:
            t = t_max_x
            t_max_x += t_delta_x
            col += step_c
        else:
            t = t_max_y
            t_max_y += t_delta_y
            row += step_r
        if t > max_range:
            break
        if grid.in_bounds((row, col)) and grid.occupied[row][col]:
            return t
    return max_range


def sonar_scan(
    world: WorldState, bearings: Sequence[float] = DEFAULT_RING_BEARINGS
) -> List[float]:
    """Range readings for every ring sensor, clamped to sonar_max_range."""
    pose = world.robot_pose
    cfg = world.robot_config
    return [
        raycast(world.grid, pose.x, pose.y, pose.theta + b, cfg.sonar_max_range)
        for b in bearings
    ]


def rotating_range(world: WorldState, servo_angle_deg: float) -> float:
    """Single ray at (servo angle - 90) degrees relative to the heading."""
    if not (0.0 <= servo_angle_deg <= 180.0):
        raise ValueError(f"servo angle must be in [0, 180], got {servo_angle_deg}")
    rel = math.radians(servo_angle_deg - 90.0)
    pose = world.robot_pose
    return raycast(
        world.grid, pose.x, pose.y, pose.theta + rel, world.robot_config.sonar_max_range
    )


def _detections_with_ranges(world: WorldState) -> List[Tuple[Detection, float]]:
    """Simulated detector: project visible targets into the camera frame.

    Frame x grows with target bearing (CCW positive). A target is visible
    when its bearing relative to (heading + camera pan) lies inside the
    field of view and no occupied cell blocks the line of sight.
    """
    pose = world.robot_pose
    cfg = world.robot_config
    fov = cfg.camera_fov
    width = float(cfg.camera_frame_width)
    height = float(cfg.camera_frame_height)
    out: List[Tuple[Detection, float]] = []
    for target in world.targets:
        dx = target.x - pose.x
        dy = target.y - pose.y
        rng = math.hypot(dx, dy)
        if rng <= target.radius:
            continue
        bearing = normalize_angle(math.atan2(dy, dx) - (pose.theta + world.camera_pan))
        if abs(bearing) > fov / 2.0:
            continue
        absolute = math.atan2(dy, dx)
        hit = raycast(world.grid, pose.x, pose.y, absolute, rng)
        if hit < rng - target.radius:
            continue  # occluded by a wall
        u = width * (0.5 + bearing / fov)
        half_w = width * math.atan(target.radius / rng) / fov
        x_min = max(0.0, u - half_w)
        x_max = min(width, u + half_w)
        y_min = max(0.0, height / 2.0 - half_w)
        y_max = min(height, height / 2.0 + half_w)
        if x_min >= x_max or y_min >= y_max:
            continue
        conf = min(1.0, max(0.5, 1.0 - rng / (4.0 * cfg.sonar_max_range)))
        out.append((Detection(target.label, conf, (x_min, y_min, x_max, y_max)), rng))
    return out


def camera_detect(world: WorldState) -> List[Detection]:
    """Detections for all visible targets (the detector seam)."""
    return [det for det, _ in _detections_with_ranges(world)]


@dataclass
class TelemetryFrame:
    """One periodic telemetry record, serialized as a single JSON line."""

    timestamp_ms: int
    x: float
    y: float
    theta: float
    v_left: float
    v_right: float
    mode: str
    sonar: List[float]
    zone_or_action: str


@dataclass
class Decision:
    """One controller tick: command, status tag, emitted events, done flag."""

    command: MotionCommand
    tag: str = "idle"
    events: Tuple[str, ...] = ()
    done: bool = False


class IdleController:
    mode = "idle"

    def decide(self, world: WorldState, dt_ms: float) -> Decision:
        return Decision(STOP)

    def observe(self, delta: WheelDelta) -> None:
        pass


class WaypointController:
    """Follows a waypoint plan using the dead-reckoned pose estimate."""

    mode = "odometry"

    def __init__(self, plan: WaypointPlan, start_pose: Pose, config: RobotConfig):
        self.plan = plan
        self.config = config
        self.odom = OdometryState(start_pose)

    def decide(self, world: WorldState, dt_ms: float) -> Decision:
        if self.plan.finished:
            return Decision(STOP, "finished", done=True)
        before = self.plan.current_index
        cmd, self.plan, reached = waypoint_step(self.odom, self.plan, self.config)
        events: Tuple[str, ...] = ()
        if self.plan.current_index > before:
            events = ("waypoint_reached",)
            if reached:
                events = ("waypoint_reached", "goal_reached")
        tag = f"waypoint:{min(self.plan.current_index, len(self.plan.waypoints) - 1)}"
        return Decision(cmd, tag, events, done=reached)

    def observe(self, delta: WheelDelta) -> None:
        self.odom = integrate(self.odom, delta, self.config.wheelbase)


class TrackingController:
    """Camera-driven pursuit: scan, steer by frame segment, halt at range."""

    mode = "tracking"

    def __init__(self, cfg: TrackerConfig):
        self.cfg = cfg

    def decide(self, world: WorldState, dt_ms: float) -> Decision:
        pairs = _detections_with_ranges(world)
        target = select_target([d for d, _ in pairs], self.cfg.target_label)
        rng = None
        for det, r in pairs:
            if det is target:
                rng = r
                break
        decision = track_step(
            target, rng, self.cfg, world.robot_config.camera_frame_width
        )
        if decision.zone == "halted":
            return Decision(STOP, "halted", ("halted_at_target",), done=True)
        return Decision(decision.command, decision.zone)

    def observe(self, delta: WheelDelta) -> None:
        pass


class AvoidanceController:
    """Sonar-ring avoidance with multi-tick escape maneuvers.

    Reactive decisions (proceed / turn) are re-evaluated every tick; an
    escape queues its backup-then-turn ticks and runs them to completion so
    the trigger condition cannot retrigger mid-maneuver.
    """

    mode = "avoidance"

    def __init__(
        self,
        cfg: AvoidConfig,
        rng: random.Random,
        bearings: Sequence[float] = DEFAULT_RING_BEARINGS,
        stuck_window: int = 50,
        stuck_epsilon: float = 30.0,
    ):
        self.cfg = cfg
        self.rng = rng
        self.bearings = tuple(bearings)
        self.stuck_window = stuck_window
        self.stuck_epsilon = stuck_epsilon
        self.queue: List[Tuple[MotionCommand, str]] = []
        self.history: List[Pose] = []

    def _enqueue_escape(self, action: AvoidAction, world: WorldState, dt_ms: float) -> None:
        cfg = world.robot_config
        dt = dt_ms / 1000.0
        # cap the blind backup by the rear clearance so the escape itself
        # cannot push the body into a wall behind the robot
        pose = world.robot_pose
        rear = raycast(
            world.grid, pose.x, pose.y, pose.theta + math.pi, cfg.sonar_max_range
        )
        backup = min(self.cfg.backup_distance, max(0.0, rear - cfg.body_radius - 50.0))
        back_ticks = math.ceil(backup / (cfg.max_linear_speed * dt))
        self.queue.extend([(MotionCommand(-cfg.max_linear_speed, 0.0), "escape")] * back_ticks)
        assert action.magnitude is not None
        turn_ticks = max(1, math.ceil(abs(action.magnitude) / (cfg.max_angular_speed * dt)))
        w = math.copysign(cfg.max_angular_speed, action.magnitude)
        self.queue.extend([(MotionCommand(0.0, w), "escape")] * turn_ticks)

    def decide(self, world: WorldState, dt_ms: float) -> Decision:
        if self.queue:
            cmd, tag = self.queue.pop(0)
            return Decision(cmd, tag)
        self.history.append(world.robot_pose)
        if len(self.history) > self.stuck_window:
            self.history = self.history[-self.stuck_window :]
        stuck = detect_stuck(self.history, self.stuck_window, self.stuck_epsilon)
        sonar = sonar_scan(world, self.bearings)
        action = avoid_step_ring(sonar, self.cfg, stuck, self.rng, self.bearings)
        cfg = world.robot_config
        if action.kind == "proceed":
            return Decision(MotionCommand(cfg.max_linear_speed, 0.0), "proceed")
        if action.kind in ("turn_left", "turn_right"):
            w = math.copysign(cfg.max_angular_speed, action.magnitude or 0.0)
            return Decision(MotionCommand(0.0, w), action.kind)
        # escape: corner trap (both halves blocked) or stuck recovery
        left_i, right_i = ring_halves(self.bearings)
        trapped = (
            min(sonar[i] for i in left_i) < self.cfg.threshold
            and min(sonar[i] for i in right_i) < self.cfg.threshold
        )
        self._enqueue_escape(action, world, dt_ms)
        self.history.clear()
        cmd, tag = self.queue.pop(0)
        return Decision(cmd, tag, ("corner_trap",) if trapped else ())

    def observe(self, delta: WheelDelta) -> None:
        pass


@dataclass
class EpisodeReport:
    ticks_used: int
    collisions: int
    goal_reached: bool
    final_pose: Pose
    events: List[Tuple[int, str]] = field(default_factory=list)
    error: Optional[str] = None


def make_controller(
    world: WorldState,
    mode: str,
    plan: Optional[WaypointPlan] = None,
    tracker_cfg: Optional[TrackerConfig] = None,
    avoid_cfg: Optional[AvoidConfig] = None,
):
    """Controller instance for a behavior mode, using the world's RNG."""
    if mode == "idle":
        return IdleController()
    if mode == "odometry":
        if plan is None:
            raise ValueError("odometry mode requires a waypoint plan")
        return WaypointController(plan, world.robot_pose, world.robot_config)
    if mode == "tracking":
        return TrackingController(tracker_cfg or TrackerConfig())
    if mode == "avoidance":
        return AvoidanceController(avoid_cfg or AvoidConfig(), world.rng)
    raise ValueError(f"unknown behavior mode {mode!r}")


def run_episode(
    world: WorldState,
    mode: str,
    tick_ms: float = 100.0,
    max_ticks: int = 1000,
    log_sink: Optional[Callable[[TelemetryFrame], None]] = None,
    plan: Optional[WaypointPlan] = None,
    tracker_cfg: Optional[TrackerConfig] = None,
    avoid_cfg: Optional[AvoidConfig] = None,
) -> EpisodeReport:
    """Run step/sense/behave under one mode, one telemetry frame per tick."""
    if tick_ms <= 0:
        raise ValueError("tick_ms must be positive")
    controller = make_controller(world, mode, plan, tracker_cfg, avoid_cfg)
    collisions = 0
    events: List[Tuple[int, str]] = []
    goal = False
    ticks = 0
    error: Optional[str] = None
    try:
        for ticks in range(1, max_ticks + 1):
            decision = controller.decide(world, tick_ms)
            delta, collided = step(world, decision.command, tick_ms)
            controller.observe(delta)
            if collided:
                collisions += 1
            for ev in decision.events:
                events.append((world.sim_time, ev))
            if log_sink is not None:
                cfg = world.robot_config
                log_sink(
                    TelemetryFrame(
                        timestamp_ms=world.sim_time,
                        x=world.robot_pose.x,
                        y=world.robot_pose.y,
                        theta=world.robot_pose.theta,
                        v_left=decision.command.linear
                        - decision.command.angular * cfg.wheelbase / 2.0,
                        v_right=decision.command.linear
                        + decision.command.angular * cfg.wheelbase / 2.0,
                        mode=mode,
                        sonar=sonar_scan(world),
                        zone_or_action=decision.tag,
                    )
                )
            if decision.done:
                goal = True
                break
    except (ValueError, KeyError) as exc:
        error = str(exc)
    return EpisodeReport(
        ticks_used=ticks,
        collisions=collisions,
        goal_reached=goal,
        final_pose=world.robot_pose,
        events=events,
        error=error,
    )
