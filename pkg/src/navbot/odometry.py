"""Dead-reckoning pose integration and the turn-then-drive waypoint follower.

The integrator is the classic differential-drive update from wheel travel:
mean travel gives the distance increment, the travel difference over the
wheelbase gives the heading increment, and displacement is projected along
the midpoint heading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Tuple

from .core import Pose, RobotConfig, WheelDelta, normalize_angle


@dataclass(frozen=True)
class OdometryState:
    """Estimated pose plus total absolute distance accumulated so far."""

    pose: Pose
    accumulated_distance: float = 0.0


@dataclass(frozen=True)
class MotionCommand:
    """Commanded body velocities: linear in mm/s, angular in rad/s."""

    linear: float
    angular: float

    @classmethod
    def stop(cls) -> "MotionCommand":
        return cls(0.0, 0.0)


STOP = MotionCommand(0.0, 0.0)


@dataclass(frozen=True)
class WaypointPlan:
    """A list of world-frame waypoints and the follower's progress through it."""

    waypoints: Tuple[Tuple[float, float], ...]
    current_index: int = 0
    dist_tolerance: float = 50.0    # mm
    angle_tolerance: float = 0.05   # rad

    def __post_init__(self):
        if self.dist_tolerance <= 0 or self.angle_tolerance <= 0:
            raise ValueError("tolerances must be positive")
        if not (0 <= self.current_index <= len(self.waypoints)):
            raise ValueError("current_index out of range")

    @property
    def finished(self) -> bool:
        return self.current_index >= len(self.waypoints)


def integrate(state: OdometryState, delta: WheelDelta, wheelbase: float) -> OdometryState:
    """Advance the pose estimate by one wheel-travel increment."""
    if wheelbase <= 0:
        raise ValueError(f"wheelbase must be positive, got {wheelbase}")
    d = 0.5 * (delta.d_left + delta.d_right)
    dtheta = (delta.d_right - delta.d_left) / wheelbase
    mid = state.pose.theta + 0.5 * dtheta
    new_pose = Pose(
        state.pose.x + d * math.cos(mid),
        state.pose.y + d * math.sin(mid),
        normalize_angle(state.pose.theta + dtheta),
    )
    return OdometryState(new_pose, state.accumulated_distance + abs(d))


def heading_to(pose: Pose, target: Tuple[float, float]) -> float:
    """Signed turn (rad, CCW positive) needed to face a world-frame target."""
    dx = target[0] - pose.x
    dy = target[1] - pose.y
    if dx == 0.0 and dy == 0.0:
        raise ValueError("target coincides with current position")
    return normalize_angle(math.atan2(dy, dx) - pose.theta)


def waypoint_step(
    state: OdometryState, plan: WaypointPlan, config: RobotConfig
) -> Tuple[MotionCommand, WaypointPlan, bool]:
    """One follower decision: rotate in place until aligned, then drive.

    Returns (command, updated plan, reached_goal). The index advances only
    once the robot is within dist_tolerance of the current waypoint, so the
    command is never simultaneously linear and angular.
    """
    if plan.finished:
        raise ValueError("waypoint plan has no remaining waypoints")
    target = plan.waypoints[plan.current_index]
    dist = math.hypot(target[0] - state.pose.x, target[1] - state.pose.y)
    if dist < plan.dist_tolerance:
        new_plan = replace(plan, current_index=plan.current_index + 1)
        return STOP, new_plan, new_plan.finished
    err = heading_to(state.pose, target)
    if abs(err) > plan.angle_tolerance:
        return MotionCommand(0.0, math.copysign(config.max_angular_speed, err)), plan, False
    return MotionCommand(config.max_linear_speed, 0.0), plan, False
