"""Bundled maps: an open test room and a cluttered room-and-passage layout.

Both are generated as ASCII map text so they round-trip through the same
parser as user-supplied files. The cluttered map is a 8.95 m x 4.65 m
interior (100 mm cells) with an inner room, a doorway, a bed-sized block,
and a narrow passage to a second area.
"""

from __future__ import annotations

from typing import List

from .core import GridMap
from .planner import parse_map


def open_map_text(width_cells: int = 90, height_cells: int = 47) -> str:
    """A fully open map (no walls) with start at mid-left, goal at mid-right."""
    rows = [["."] * width_cells for _ in range(height_cells)]
    mid = height_cells // 2
    rows[mid][1] = "M"
    rows[mid][width_cells - 2] = "E"
    return "\n".join("".join(r) for r in rows)


def _fill(rows: List[List[str]], r0: int, r1: int, c0: int, c1: int, ch: str = "#") -> None:
    for r in range(r0, r1 + 1):
        for c in range(c0, c1 + 1):
            rows[r][c] = ch


def cluttered_map_text() -> str:
    """Room-and-passage layout: 89 x 46 interior cells plus border walls."""
    height, width = 48, 91  # interior 46 x 89 cells of 100 mm
    rows = [["."] * width for _ in range(height)]
    # border walls
    _fill(rows, 0, 0, 0, width - 1)
    _fill(rows, height - 1, height - 1, 0, width - 1)
    _fill(rows, 0, height - 1, 0, 0)
    _fill(rows, 0, height - 1, width - 1, width - 1)
    # inner-room partition with an open doorway (rows 14..21)
    _fill(rows, 1, 13, 30, 31)
    _fill(rows, 22, 33, 30, 31)
    # bed-sized block inside the inner room (2.0 m x 1.6 m)
    _fill(rows, 4, 19, 6, 25)
    # wall forming the narrow passage to the kitchen area
    _fill(rows, 33, 34, 30, 78)
    # chunky freestanding obstacles in the main area
    _fill(rows, 8, 11, 45, 48)
    _fill(rows, 20, 23, 60, 64)
    _fill(rows, 6, 9, 72, 75)
    # alcove near the top-right corner (a natural corner trap)
    _fill(rows, 1, 8, 82, 83)
    rows[28][40] = "M"
    rows[40][85] = "E"
    return "\n".join("".join(r) for r in rows)


def open_map(resolution: float = 100.0) -> GridMap:
    return parse_map(open_map_text(), resolution)


def cluttered_map(resolution: float = 100.0) -> GridMap:
    return parse_map(cluttered_map_text(), resolution)
