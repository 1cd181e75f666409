"""Obstacle avoidance, both variants.

First the eight-sensor ring policy on a few hand-picked readings, then the
rotating-sensor cycle, then a long closed-loop run in the cluttered room.
"""

import random

from navbot import AvoidConfig, RotatingScanState, avoid_step_ring, avoid_step_rotating
from navbot.maps import cluttered_map
from navbot.simworld import WorldState, run_episode

cfg = AvoidConfig()
rng = random.Random(1)

print("ring policy (threshold 400 mm):")
for name, sonar in [
    ("open space", [5000.0] * 8),
    ("wall on the left", [5000, 5000, 5000, 5000, 300, 300, 300, 5000]),
    ("corner trap", [5000, 300, 300, 300, 300, 300, 300, 5000]),
]:
    action = avoid_step_ring(sonar, cfg, stuck=False, rng=rng)
    print(f"  {name:18} -> {action.kind}"
          + (f" ({action.magnitude:+.2f} rad)" if action.magnitude else ""))

print("\nrotating-sensor cycle (obstacle at 250 mm, right scan 3000 / left 800):")
state = RotatingScanState()
for reading in (250.0, 0.0, 3000.0, 800.0):
    action, state = avoid_step_rotating(reading, cfg, state)
    print(f"  reading {reading:6.0f} -> {action.kind}")

world = WorldState.from_map(cluttered_map(), seed=3)
report = run_episode(world, "avoidance", max_ticks=10_000)
traps = sum(1 for _, kind in report.events if kind == "corner_trap")
print(f"\nclosed loop: {report.ticks_used} ticks, {report.collisions} collisions, "
      f"{traps} corner-trap escapes")
