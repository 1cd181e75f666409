"""Vision-based target tracking with the simulated detector.

A 'person' target stands ahead and to the side of the robot; the tracker
scans, steers by the frame segment holding the bounding box, and halts at
the approach distance.
"""

import math

from navbot.core import Pose
from navbot.maps import open_map
from navbot.simworld import Target, WorldState, camera_detect, run_episode

world = WorldState.from_map(open_map(), pose=Pose(2000.0, 2350.0, 0.0), seed=0)
world.targets.append(Target("person", 5000.0, 3350.0, 200.0))

for det in camera_detect(world):
    x_min, y_min, x_max, y_max = det.bbox
    print(f"detection: {det.label} conf={det.confidence:.2f} "
          f"bbox=({x_min:.0f}, {y_min:.0f}, {x_max:.0f}, {y_max:.0f})")

zones = []
report = run_episode(world, "tracking", max_ticks=2000,
                     log_sink=lambda f: zones.append(f.zone_or_action))
distance = math.hypot(world.targets[0].x - report.final_pose.x,
                      world.targets[0].y - report.final_pose.y)
print(f"\nhalted={report.goal_reached} after {report.ticks_used} ticks, "
      f"{distance:.0f} mm from the target")
print("zone sequence:", " -> ".join(dict.fromkeys(zones)))
