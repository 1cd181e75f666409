"""Dead-reckoning and waypoint following.

Integrates wheel travel into a pose estimate, then drives the simulated
robot through the five reference waypoints on the open room map while
dead reckoning tracks the ground truth.
"""

import math

from navbot import Pose, WheelDelta, OdometryState, WaypointPlan, integrate
from navbot.maps import open_map
from navbot.simworld import WorldState, run_episode

# --- pose integration from raw wheel travel --------------------------------

state = OdometryState(Pose(0.0, 0.0, 0.0))
for d_left, d_right in [(100, 100), (90, 110), (50, -50), (200, 200)]:
    state = integrate(state, WheelDelta(d_left, d_right), wheelbase=300.0)
    print(f"wheels ({d_left:4}, {d_right:4}) -> x={state.pose.x:7.1f}  "
          f"y={state.pose.y:7.1f}  theta={math.degrees(state.pose.theta):6.1f} deg")

# --- closed-loop waypoint run ----------------------------------------------

waypoints = ((2200.0, 0.0), (2268.0, -2387.0), (4315.0, -2387.0),
             (4315.0, -3649.0), (-1285.0, -3873.0))
world = WorldState.from_map(open_map(), pose=Pose(0.0, 0.0, 0.0), seed=0)
report = run_episode(world, "odometry", max_ticks=5000,
                     plan=WaypointPlan(waypoints))

print(f"\nwaypoint run: goal_reached={report.goal_reached} "
      f"in {report.ticks_used} ticks ({report.ticks_used / 10:.1f} s simulated)")
for t_ms, kind in report.events:
    print(f"  {t_ms / 1000:6.1f} s  {kind}")
print(f"final pose: ({report.final_pose.x:.0f}, {report.final_pose.y:.0f}) mm")
