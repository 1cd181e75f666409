"""A* planning on the ASCII map format.

Parses the bundled room-and-passage map, searches for the shortest route
from 'M' to 'E', prunes it to its turn points, and prints the '*' overlay.
"""

from navbot import astar, simplify, to_waypoints
from navbot.planner import render_overlay
from navbot.maps import cluttered_map

grid = cluttered_map()
path = astar(grid)
turns = simplify(path)
waypoints = to_waypoints(path, grid)

print(render_overlay(grid, path))
print(f"\npath: {len(path.cells)} cells, {len(path.cells) - 1} steps")
print(f"after turn-point pruning: {len(turns.cells)} nodes")
print("world-frame waypoints (mm):")
for x, y in waypoints.nodes:
    print(f"  ({x:7.1f}, {y:7.1f})")
