"""ASCII map parsing, A* grid search, turn-point simplification, rendering.

Map format: newline-separated rows of '#' (wall), 'M' (start, exactly one),
'E' (goal, one or more), '.' or space (free). Short rows are right-padded
with spaces; CR characters are stripped.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .core import Cell, GridMap, MapFormatError, NoPathError, Path, cell_to_world

# Neighbor expansion order: North, East, South, West (row decreasing = north).
NEIGHBOR_STEPS = ((-1, 0), (0, 1), (1, 0), (0, -1))

DEFAULT_RESOLUTION = 100.0  # mm per cell

FREE_CHARS = {".", " "}


@dataclass(frozen=True)
class GridPath:
    """Ordered 4-adjacent cells from the start cell to a goal cell."""

    cells: Tuple[Cell, ...]

    def __post_init__(self):
        if not self.cells:
            raise ValueError("grid path must contain at least one cell")


def parse_map(text: str, resolution: float = DEFAULT_RESOLUTION) -> GridMap:
    """Parse ASCII map text into a GridMap, validating the format."""
    if not text.strip():
        raise MapFormatError("map text is empty")
    rows = [line.rstrip("\r") for line in text.replace("\r\n", "\n").split("\n")]
    while rows and rows[-1] == "":
        rows.pop()
    width = max(len(r) for r in rows)
    rows = [r.ljust(width) for r in rows]

    occupied: List[Tuple[bool, ...]] = []
    starts: List[Cell] = []
    goals: List[Cell] = []
    for r, row in enumerate(rows):
        occ_row = []
        for c, ch in enumerate(row):
            if ch == "#":
                occ_row.append(True)
            elif ch == "M":
                starts.append((r, c))
                occ_row.append(False)
            elif ch == "E":
                goals.append((r, c))
                occ_row.append(False)
            elif ch in FREE_CHARS:
                occ_row.append(False)
            else:
                raise MapFormatError(f"unknown character {ch!r} at row {r}, col {c}")
        occupied.append(tuple(occ_row))

    if len(starts) == 0:
        raise MapFormatError("map has no 'M' start cell")
    if len(starts) > 1:
        raise MapFormatError(f"map has {len(starts)} 'M' start cells, expected one")
    if not goals:
        raise MapFormatError("map has no 'E' goal cell")

    return GridMap(
        width=width,
        height=len(rows),
        resolution=resolution,
        occupied=tuple(occupied),
        start=starts[0],
        goals=frozenset(goals),
        rows=tuple(rows),
    )


def render_map(grid: GridMap) -> str:
    """The normalized map text (inverse of parse_map up to padding)."""
    return "\n".join(grid.rows)


def _min_manhattan(cell: Cell, goals) -> int:
    r, c = cell
    return min(abs(r - gr) + abs(c - gc) for gr, gc in goals)


def astar(grid: GridMap) -> GridPath:
    """Shortest 4-connected path (unit step cost) from start to the nearest goal.

    Heuristic is the minimum Manhattan distance over all goals, which is
    admissible, so the returned step count is optimal. Ties on f prefer
    lower h, then first-pushed entries in N/E/S/W neighbor order.
    """
    start = grid.start
    goals = grid.goals
    h0 = _min_manhattan(start, goals)
    counter = 0
    frontier = [(h0, h0, counter, start)]
    came_from: Dict[Cell, Cell] = {}
    g_score = {start: 0}

    while frontier:
        _, _, _, current = heapq.heappop(frontier)
        if current in goals:
            cells = [current]
            while current in came_from:
                current = came_from[current]
                cells.append(current)
            return GridPath(tuple(reversed(cells)))
        for dr, dc in NEIGHBOR_STEPS:
            nb = (current[0] + dr, current[1] + dc)
            if not grid.in_bounds(nb) or grid.is_occupied(nb):
                continue
            tentative = g_score[current] + 1
            if nb in g_score and g_score[nb] <= tentative:
                continue  # first-in wins on equal cost
            g_score[nb] = tentative
            came_from[nb] = current
            h = _min_manhattan(nb, goals)
            counter += 1
            heapq.heappush(frontier, (tentative + h, h, counter, nb))

    raise NoPathError("no goal cell is reachable from the start")


def simplify(path: GridPath) -> GridPath:
    """Keep only the first cell, direction-change cells, and the last cell."""
    cells = path.cells
    if len(cells) <= 2:
        return GridPath(cells)
    kept = [cells[0]]
    for prev, cur, nxt in zip(cells, cells[1:], cells[2:]):
        d_in = (cur[0] - prev[0], cur[1] - prev[1])
        d_out = (nxt[0] - cur[0], nxt[1] - cur[1])
        if d_in != d_out:
            kept.append(cur)
    kept.append(cells[-1])
    return GridPath(tuple(kept))


def expand(path: GridPath) -> GridPath:
    """Re-expand a simplified path into unit steps (oracle for simplify)."""
    cells = list(path.cells[:1])
    for a, b in zip(path.cells, path.cells[1:]):
        dr = b[0] - a[0]
        dc = b[1] - a[1]
        steps = max(abs(dr), abs(dc))
        sr = (dr > 0) - (dr < 0)
        sc = (dc > 0) - (dc < 0)
        for i in range(1, steps + 1):
            cells.append((a[0] + sr * i, a[1] + sc * i))
    return GridPath(tuple(cells))


def to_waypoints(path: GridPath, grid: GridMap) -> Path:
    """World-frame waypoints at the centers of the simplified path's cells."""
    simplified = simplify(path)
    return Path(tuple(cell_to_world(grid, cell) for cell in simplified.cells))


def render_overlay(grid: GridMap, path: GridPath) -> str:
    """Map text with '*' at path cells; 'M' and 'E' are preserved."""
    rows = [list(r) for r in grid.rows]
    for r, c in path.cells:
        if rows[r][c] not in ("M", "E"):
            rows[r][c] = "*"
    return "\n".join("".join(r) for r in rows)
