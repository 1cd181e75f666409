"""Differential-drive mobile-robot navigation stack with a built-in simulator."""

from .core import (
    GridMap,
    MapFormatError,
    NoPathError,
    Path,
    Pose,
    RobotConfig,
    cell_to_world,
    normalize_angle,
    world_to_cell,
)
from .odometry import (
    MotionCommand,
    OdometryState,
    WaypointPlan,
    WheelDelta,
    heading_to,
    integrate,
    waypoint_step,
)
from .planner import GridPath, astar, parse_map, render_overlay, simplify, to_waypoints
from .behaviors import (
    AvoidAction,
    AvoidConfig,
    Detection,
    RotatingScanState,
    TrackerConfig,
    avoid_step_ring,
    avoid_step_rotating,
    detect_stuck,
    select_target,
    track_step,
)
from .simworld import (
    EpisodeReport,
    Target,
    TelemetryFrame,
    WorldState,
    camera_detect,
    rotating_range,
    run_episode,
    sonar_scan,
    step,
)
from .session import TeleopSession

__version__ = "0.1.0"
