"""Shared domain types and geometry helpers for the navigation stack.

Units are millimetres and radians everywhere inside the library; degrees
only appear at interface boundaries (servo angles, camera pan messages).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Set, Tuple

Cell = Tuple[int, int]  # (row, col)


class MapFormatError(ValueError):
    """Raised when an ASCII map file violates the map format."""


class NoPathError(Exception):
    """Raised when no goal cell is reachable from the start cell."""


def normalize_angle(a: float) -> float:
    """Wrap an angle into the half-open interval (-pi, pi]."""
    if not math.isfinite(a):
        raise ValueError(f"angle must be finite, got {a!r}")
    r = math.fmod(a + math.pi, 2.0 * math.pi)
    if r <= 0.0:
        r += 2.0 * math.pi
    return r - math.pi


@dataclass(frozen=True)
class Pose:
    """Robot position (mm) and heading (radians, normalized to (-pi, pi])."""

    x: float
    y: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("pose coordinates must be finite")
        object.__setattr__(self, "theta", normalize_angle(self.theta))


@dataclass(frozen=True)
class WheelDelta:
    """Per-step left/right wheel travel in mm (negative = backward)."""

    d_left: float
    d_right: float

    def __post_init__(self):
        if not (math.isfinite(self.d_left) and math.isfinite(self.d_right)):
            raise ValueError("wheel travel must be finite")


@dataclass(frozen=True)
class RobotConfig:
    """Physical and sensing parameters of the simulated robot."""

    wheelbase: float = 300.0          # mm between drive wheels
    body_radius: float = 150.0        # mm, collision disk
    max_linear_speed: float = 300.0   # mm/s
    max_angular_speed: float = 0.9    # rad/s
    sonar_max_range: float = 5000.0   # mm
    sonar_count: int = 8
    camera_fov: float = math.pi / 3.0  # radians
    camera_frame_width: int = 640      # px
    camera_frame_height: int = 480     # px

    def __post_init__(self):
        if self.wheelbase <= 0 or self.body_radius <= 0:
            raise ValueError("wheelbase and body_radius must be positive")
        if self.max_linear_speed <= 0 or self.max_angular_speed <= 0:
            raise ValueError("speed limits must be positive")
        if self.sonar_count < 1:
            raise ValueError("sonar_count must be >= 1")


@dataclass(frozen=True)
class GridMap:
    """Occupancy grid with one start cell and one or more goal cells.

    The map frame has its origin at the outer corner of the top-left cell,
    +x along columns and +y along rows; one cell is `resolution` mm square.
    `rows` keeps the normalized source text for overlay rendering.
    """

    width: int
    height: int
    resolution: float
    occupied: Tuple[Tuple[bool, ...], ...]  # [row][col]
    start: Cell
    goals: frozenset
    rows: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0 or self.resolution <= 0:
            raise ValueError("map dimensions and resolution must be positive")
        if not self.goals:
            raise MapFormatError("map has no goal cell")
        for cell in list(self.goals) + [self.start]:
            if not self.in_bounds(cell):
                raise MapFormatError(f"cell {cell} out of bounds")
            if self.is_occupied(cell):
                raise MapFormatError(f"start/goal cell {cell} is occupied")

    def in_bounds(self, cell: Cell) -> bool:
        r, c = cell
        return 0 <= r < self.height and 0 <= c < self.width

    def is_occupied(self, cell: Cell) -> bool:
        r, c = cell
        return self.occupied[r][c]


def cell_to_world(grid: GridMap, cell: Cell) -> Tuple[float, float]:
    """Return the world-frame center (x, y) in mm of a grid cell."""
    if not grid.in_bounds(cell):
        raise IndexError(f"cell {cell} outside {grid.height}x{grid.width} map")
    r, c = cell
    return ((c + 0.5) * grid.resolution, (r + 0.5) * grid.resolution)


def world_to_cell(grid: GridMap, x: float, y: float) -> Cell:
    """Inverse of cell_to_world: the cell containing world point (x, y)."""
    return (int(math.floor(y / grid.resolution)), int(math.floor(x / grid.resolution)))


@dataclass(frozen=True)
class Path:
    """Ordered world-frame waypoints (mm) derived from a grid path."""

    nodes: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        for a, b in zip(self.nodes, self.nodes[1:]):
            if a == b:
                raise ValueError("consecutive path nodes must be distinct")
