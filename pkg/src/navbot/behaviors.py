"""Reactive controllers: vision-based target tracking and obstacle avoidance.

Tracking splits the camera frame into an odd number of equal-width segments
and steers by the segment holding the target's bounding-box center, halting
once the measured range drops below the approach distance.

Two avoidance variants are provided: a fixed ring of ultrasonic sensors
compared against a threshold (with a corner-trap escape), and a single
rotating sensor that backs up, scans right and left, and turns toward the
longer reading.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from .core import Pose, normalize_angle
from .odometry import MotionCommand, STOP

# Ring sensor bearings (radians, CCW positive), front-dense like a typical
# eight-sensor sonar ring with some rear coverage. Symmetric left/right.
DEFAULT_RING_BEARINGS = tuple(
    math.radians(d) for d in (-150, -90, -30, -10, 10, 30, 90, 150)
)


@dataclass(frozen=True)
class Detection:
    """One detector output: class label, confidence, image-frame bbox (px)."""

    label: str
    confidence: float
    bbox: Tuple[float, float, float, float]  # x_min, y_min, x_max, y_max

    def __post_init__(self):
        x_min, y_min, x_max, y_max = self.bbox
        if not (x_min < x_max and y_min < y_max):
            raise ValueError(f"degenerate bbox {self.bbox}")
        if not (0.0 <= self.confidence <= 1.0):
            raise ValueError(f"confidence {self.confidence} outside [0, 1]")


@dataclass(frozen=True)
class TrackerConfig:
    target_label: str = "person"
    segment_count: int = 3
    approach_distance: float = 500.0  # mm
    pursuit_speed: float = 250.0      # mm/s
    turn_speed: float = 0.9           # rad/s
    invert_turns: bool = False

    def __post_init__(self):
        if self.segment_count < 3 or self.segment_count % 2 == 0:
            raise ValueError("segment_count must be odd and >= 3")
        if self.approach_distance <= 0:
            raise ValueError("approach_distance must be positive")


@dataclass(frozen=True)
class AvoidConfig:
    threshold: float = 400.0                 # mm
    backup_distance: float = 150.0           # mm
    escape_turn_range: Tuple[float, float] = (math.pi / 4, 3 * math.pi / 4)
    scan_angle_right: float = 10.0           # servo degrees
    scan_angle_left: float = 70.0            # servo degrees

    def __post_init__(self):
        lo, hi = self.escape_turn_range
        if self.threshold <= 0:
            raise ValueError("threshold must be positive")
        if not (0.0 < lo <= hi <= math.pi):
            raise ValueError("escape_turn_range must lie within (0, pi]")


@dataclass(frozen=True)
class AvoidAction:
    """A discrete avoidance decision.

    magnitude is signed radians for turns (CCW positive), mm for backup,
    and None for proceed / halt / scan requests.
    """

    kind: str  # proceed | turn_left | turn_right | escape | scan_right | scan_left | backup | halt
    magnitude: Optional[float] = None


@dataclass(frozen=True)
class TrackDecision:
    command: MotionCommand
    zone: str  # search | pursuit | approach | halted


def select_target(detections: Sequence[Detection], target_label: str) -> Optional[Detection]:
    """The matching detection with the highest confidence.

    Ties are broken by leftmost bbox x_min, then by list order.
    """
    best = None
    for det in detections:
        if det.label != target_label:
            continue
        if best is None or det.confidence > best.confidence or (
            det.confidence == best.confidence and det.bbox[0] < best.bbox[0]
        ):
            best = det
    return best


def track_step(
    target: Optional[Detection],
    range_to_target: Optional[float],
    cfg: TrackerConfig,
    frame_width: int,
) -> TrackDecision:
    """One tracking decision from the latest detection and range."""
    if frame_width <= 0:
        raise ValueError("frame_width must be positive")
    if target is None:
        return TrackDecision(MotionCommand(0.0, cfg.turn_speed), "search")
    x_min, _, x_max, _ = target.bbox
    if not (0.0 <= x_min < x_max <= frame_width):
        raise ValueError(f"bbox {target.bbox} outside frame of width {frame_width}")
    if range_to_target is not None and range_to_target < cfg.approach_distance:
        return TrackDecision(STOP, "halted")
    center = 0.5 * (x_min + x_max)
    seg_width = frame_width / cfg.segment_count
    idx = min(int(center / seg_width), cfg.segment_count - 1)
    mid = cfg.segment_count // 2
    near = range_to_target is not None and range_to_target < 2 * cfg.approach_distance
    if idx == mid:
        return TrackDecision(MotionCommand(cfg.pursuit_speed, 0.0), "approach" if near else "pursuit")
    # Frame x grows with target bearing (CCW positive), so a segment right
    # of center means the target is off to the robot's left: turn CCW.
    offset = (idx - mid) / mid
    if cfg.invert_turns:
        offset = -offset
    return TrackDecision(
        MotionCommand(0.0, cfg.turn_speed * offset), "approach" if near else "pursuit"
    )


def ring_halves(bearings: Sequence[float]) -> Tuple[List[int], List[int]]:
    """Indices of the left-half and right-half sensors of a ring.

    Left is bearing in (0, pi), right is (-pi, 0); a sensor at exactly 0
    belongs to both halves.
    """
    left, right = [], []
    for i, b in enumerate(bearings):
        nb = normalize_angle(b)
        if nb == 0.0:
            left.append(i)
            right.append(i)
        elif 0.0 < nb < math.pi:
            left.append(i)
        elif -math.pi < nb < 0.0:
            right.append(i)
    return left, right


def avoid_step_ring(
    sonar: Sequence[float],
    cfg: AvoidConfig,
    stuck: bool,
    rng: random.Random,
    bearings: Sequence[float] = DEFAULT_RING_BEARINGS,
) -> AvoidAction:
    """Threshold-compare the ring halves and pick the avoidance action.

    Both halves blocked (corner trap) or a stuck robot trigger an escape:
    back up, then turn by a random angle drawn from escape_turn_range,
    directed away from the nearer side. One blocked side yields a turn away
    from it; otherwise proceed.
    """
    if len(sonar) != len(bearings):
        raise ValueError(f"expected {len(bearings)} sonar readings, got {len(sonar)}")
    left_idx, right_idx = ring_halves(bearings)
    left_min = min(sonar[i] for i in left_idx) if left_idx else math.inf
    right_min = min(sonar[i] for i in right_idx) if right_idx else math.inf

    left_blocked = left_min < cfg.threshold
    right_blocked = right_min < cfg.threshold
    if stuck or (left_blocked and right_blocked):
        if left_min < right_min:
            direction = -1.0  # left side nearer: turn clockwise, away from it
        elif right_min < left_min:
            direction = 1.0
        else:
            direction = rng.choice((-1.0, 1.0))
        angle = rng.uniform(*cfg.escape_turn_range)
        return AvoidAction("escape", direction * angle)
    if left_blocked:
        return AvoidAction("turn_right", -math.pi / 8)
    if right_blocked:
        return AvoidAction("turn_left", math.pi / 8)
    return AvoidAction("proceed")


@dataclass(frozen=True)
class RotatingScanState:
    """Progress through the rotating-sensor avoidance cycle.

    stage "cruise" reads the forward range; "scan_right" requests the right
    scan; "scan_left" receives the right reading and requests the left scan;
    "decide" receives the left reading and emits the turn.
    """

    stage: str = "cruise"
    right_range: Optional[float] = None


def avoid_step_rotating(
    range_mm: float, cfg: AvoidConfig, state: RotatingScanState
) -> Tuple[AvoidAction, RotatingScanState]:
    """Advance the halt / back up / scan both sides / turn-to-longer cycle.

    `range_mm` is the most recent measurement: the forward range while
    cruising, or the reading produced by the scan requested on the previous
    step. The turn magnitude is the midpoint of escape_turn_range; ties
    turn right.
    """
    if range_mm < 0:
        raise ValueError(f"range must be nonnegative, got {range_mm}")
    if state.stage == "cruise":
        if range_mm >= cfg.threshold:
            return AvoidAction("proceed"), state
        return AvoidAction("backup", cfg.backup_distance), RotatingScanState("scan_right")
    if state.stage == "scan_right":
        return AvoidAction("scan_right"), RotatingScanState("scan_left")
    if state.stage == "scan_left":
        return AvoidAction("scan_left"), RotatingScanState("decide", right_range=range_mm)
    if state.stage == "decide":
        turn = 0.5 * (cfg.escape_turn_range[0] + cfg.escape_turn_range[1])
        assert state.right_range is not None
        left_range = range_mm
        if left_range > state.right_range:
            return AvoidAction("turn_left", turn), RotatingScanState("cruise")
        return AvoidAction("turn_right", -turn), RotatingScanState("cruise")
    raise ValueError(f"unknown scan stage {state.stage!r}")


def detect_stuck(
    history: Sequence[Pose],
    window: int,
    epsilon: float,
    commanded: Optional[Sequence[bool]] = None,
) -> bool:
    """True when the robot barely moved over the window despite commands.

    The last `window` positions must fit in a bounding box whose diagonal is
    below `epsilon` mm while motion commands were being issued. `commanded`
    (parallel to history, default all-true) marks samples with a nonzero
    command.
    """
    if window < 2:
        raise ValueError("window must be >= 2")
    if len(history) < window:
        return False
    recent = history[-window:]
    if commanded is not None:
        if len(commanded) < window or not all(commanded[-window:]):
            return False
    xs = [p.x for p in recent]
    ys = [p.y for p in recent]
    diag = math.hypot(max(xs) - min(xs), max(ys) - min(ys))
    return diag < epsilon
