"""Independent oracles used by the unit and acceptance tests.

These deliberately avoid the library's own implementations: breadth-first
search for shortest grid paths, high-precision arithmetic for the odometry
update, and plain trigonometry for ray-wall distances.
"""

from __future__ import annotations

import random
from collections import deque
from typing import List, Optional, Tuple

import mpmath as mp

from navbot.core import GridMap
from navbot.planner import parse_map


def bfs_shortest_steps(grid: GridMap) -> Optional[int]:
    """Step count of the shortest 4-connected path to any goal, or None."""
    frontier = deque([(grid.start, 0)])
    seen = {grid.start}
    while frontier:
        cell, dist = frontier.popleft()
        if cell in grid.goals:
            return dist
        r, c = cell
        for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if nb in seen or not grid.in_bounds(nb) or grid.is_occupied(nb):
                continue
            seen.add(nb)
            frontier.append((nb, dist + 1))
    return None


def random_solvable_map(rng: random.Random, size: int = 20, wall_density: float = 0.25) -> GridMap:
    """A random size x size map with the given wall density, resampled until solvable."""
    while True:
        cells = [["#" if rng.random() < wall_density else "." for _ in range(size)] for _ in range(size)]
        free = [(r, c) for r in range(size) for c in range(size) if cells[r][c] == "."]
        if len(free) < 2:
            continue
        start, goal = rng.sample(free, 2)
        cells[start[0]][start[1]] = "M"
        cells[goal[0]][goal[1]] = "E"
        grid = parse_map("\n".join("".join(row) for row in cells))
        if bfs_shortest_steps(grid) is not None:
            return grid


def precise_integrate(
    pose: Tuple[float, float, float],
    delta: Tuple[float, float],
    wheelbase: float,
) -> Tuple[float, float, float]:
    """50-digit evaluation of the wheel-travel pose update (unnormalized theta)."""
    with mp.workdps(50):
        x, y, theta = (mp.mpf(v) for v in pose)
        d_left, d_right = (mp.mpf(v) for v in delta)
        d = (d_left + d_right) / 2
        dtheta = (d_right - d_left) / mp.mpf(wheelbase)
        mid = theta + dtheta / 2
        return (
            float(x + d * mp.cos(mid)),
            float(y + d * mp.sin(mid)),
            float(theta + dtheta),
        )


def wrap_angle(a: float) -> float:
    """Mod-2pi reduction into (-pi, pi] by repeated shifting (oracle)."""
    with mp.workdps(50):
        v = mp.mpf(a)
        two_pi = 2 * mp.pi
        while v > mp.pi:
            v -= two_pi
        while v <= -mp.pi:
            v += two_pi
        return float(v)
