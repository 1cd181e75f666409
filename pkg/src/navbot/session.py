"""Teleop session: the single owner of world and mode state.

The session consumes decoded control messages and produces server messages;
`tick()` advances the simulation one period under the active mode and emits
exactly one telemetry frame plus any behavior events. Manual drive commands
latch until superseded and are cleared by a watchdog when no drive frame
arrives for 500 ms of simulated time.
"""

from __future__ import annotations

import math
from dataclasses import replace
from typing import Any, Dict, List, Optional

from . import protocol
from .behaviors import AvoidConfig, TrackerConfig
from .core import MapFormatError, NoPathError, Pose, cell_to_world
from .odometry import STOP, MotionCommand, WaypointPlan
from .planner import astar, parse_map, to_waypoints
from .simworld import (
    IdleController,
    TelemetryFrame,
    WorldState,
    camera_detect,
    make_controller,
    sonar_scan,
    step,
)

WATCHDOG_MS = 500

_DRIVE_COMMANDS = {
    "forward": lambda c: MotionCommand(c.max_linear_speed, 0.0),
    "backward": lambda c: MotionCommand(-c.max_linear_speed, 0.0),
    "left": lambda c: MotionCommand(0.0, c.max_angular_speed),
    "right": lambda c: MotionCommand(0.0, -c.max_angular_speed),
    "stop": lambda c: STOP,
}


class TeleopSession:
    """Protocol-facing state machine around one simulated world."""

    def __init__(
        self,
        world: WorldState,
        tick_ms: float = 100.0,
        tracker_cfg: Optional[TrackerConfig] = None,
        avoid_cfg: Optional[AvoidConfig] = None,
    ):
        self.world = world
        self.tick_ms = tick_ms
        self.tracker_cfg = tracker_cfg or TrackerConfig()
        self.avoid_cfg = avoid_cfg or AvoidConfig()
        self.mode = "idle"
        self.connected = True
        self.active_plan: Optional[WaypointPlan] = None
        self._controller = IdleController()
        self._manual_cmd = STOP
        self._last_drive_ms: Optional[int] = None

    # -- message handling ---------------------------------------------------

    def handle_message(self, msg: Dict[str, Any]) -> List[Dict[str, Any]]:
        """Apply one validated control message; returns reply messages."""
        if not self.connected:
            return [protocol.error_message("session is disconnected")]
        handler = getattr(self, f"_on_{msg['type']}", None)
        if handler is None:
            return [protocol.error_message(f"unsupported message type {msg['type']!r}")]
        return handler(msg)

    def handle_line(self, line: str) -> List[Dict[str, Any]]:
        """Decode one wire frame and apply it; bad frames yield error replies."""
        try:
            msg = protocol.decode(line)
        except protocol.ProtocolError as exc:
            return [protocol.error_message(str(exc))]
        return self.handle_message(msg)

    def _on_set_mode(self, msg) -> List[Dict[str, Any]]:
        mode = msg["mode"]
        self._manual_cmd = STOP
        self._last_drive_ms = None
        if mode == "odometry" and self.active_plan is None:
            return [protocol.error_message("odometry mode requires a loaded map plan")]
        self.mode = mode
        if mode == "manual":
            self._controller = IdleController()
        else:
            self._controller = make_controller(
                self.world,
                mode,
                plan=self.active_plan,
                tracker_cfg=self.tracker_cfg,
                avoid_cfg=self.avoid_cfg,
            )
        return [protocol.ack_message(msg)]

    def _on_drive(self, msg) -> List[Dict[str, Any]]:
        if self.mode != "manual":
            return [protocol.error_message("manual drive requires manual mode")]
        self._manual_cmd = _DRIVE_COMMANDS[msg["dir"]](self.world.robot_config)
        self._last_drive_ms = self.world.sim_time
        return [protocol.ack_message(msg)]

    def _on_camera(self, msg) -> List[Dict[str, Any]]:
        self.world.camera_pan = math.radians(msg["pan_deg"])
        return [protocol.ack_message(msg)]

    def _on_set_target(self, msg) -> List[Dict[str, Any]]:
        self.tracker_cfg = replace(self.tracker_cfg, target_label=msg["label"])
        if self.mode == "tracking":
            self._controller = make_controller(
                self.world, "tracking", tracker_cfg=self.tracker_cfg
            )
        return [protocol.ack_message(msg)]

    def _on_load_map(self, msg) -> List[Dict[str, Any]]:
        try:
            grid = parse_map(msg["map_text"], self.world.grid.resolution)
        except MapFormatError as exc:
            return [protocol.error_message(f"map rejected: {exc}")]
        self.world.grid = grid
        sx, sy = cell_to_world(grid, grid.start)
        self.world.robot_pose = Pose(sx, sy, 0.0)
        replies = [protocol.ack_message(msg)]
        try:
            path = astar(grid)
        except NoPathError:
            self.active_plan = None
            replies.append(protocol.event_message("no_path"))
            return replies
        waypoints = to_waypoints(path, grid)
        self.active_plan = WaypointPlan(waypoints.nodes)
        if self.mode == "odometry":
            self._controller = make_controller(self.world, "odometry", plan=self.active_plan)
        return replies

    def _on_detect_once(self, msg) -> List[Dict[str, Any]]:
        return [protocol.detections_message(camera_detect(self.world))]

    # -- simulation loop ----------------------------------------------------

    def disconnect(self) -> None:
        """Connection loss: stop motion and refuse further input."""
        self.connected = False
        self._manual_cmd = STOP
        self.mode = "idle"
        self._controller = IdleController()

    def tick(self) -> List[Dict[str, Any]]:
        """Advance one period; exactly one telemetry message plus events."""
        if self.mode == "manual":
            if (
                self._last_drive_ms is not None
                and self.world.sim_time - self._last_drive_ms >= WATCHDOG_MS
            ):
                self._manual_cmd = STOP
            cmd, tag, events, done = self._manual_cmd, "manual", (), False
        else:
            decision = self._controller.decide(self.world, self.tick_ms)
            cmd, tag, events, done = (
                decision.command,
                decision.tag,
                decision.events,
                decision.done,
            )
        delta, _collided = step(self.world, cmd, self.tick_ms)
        self._controller.observe(delta)
        cfg = self.world.robot_config
        frame = TelemetryFrame(
            timestamp_ms=self.world.sim_time,
            x=self.world.robot_pose.x,
            y=self.world.robot_pose.y,
            theta=self.world.robot_pose.theta,
            v_left=cmd.linear - cmd.angular * cfg.wheelbase / 2.0,
            v_right=cmd.linear + cmd.angular * cfg.wheelbase / 2.0,
            mode=self.mode,
            sonar=sonar_scan(self.world),
            zone_or_action=tag,
        )
        out = [protocol.telemetry_message(frame)]
        out.extend(protocol.event_message(kind) for kind in events)
        if done:
            self.mode = "idle"
            self._controller = IdleController()
        return out
