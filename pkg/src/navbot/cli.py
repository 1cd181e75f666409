"""Command line entry points: serve, plan, run.

Configuration overrides come from an optional config file (JSON, or plain
key=value lines with dotted section names like `robot.wheelbase=250`).
The default service port can also be set through the NAVBOT_PORT
environment variable.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from typing import Any, Dict, Optional

from .behaviors import AvoidConfig, TrackerConfig
from .core import NoPathError, RobotConfig
from .planner import astar, parse_map, render_overlay, to_waypoints
from .odometry import WaypointPlan
from .simworld import TelemetryFrame, WorldState, run_episode

DEFAULT_PORT = int(os.environ.get("NAVBOT_PORT", "8772"))


def _parse_config_file(path: str) -> Dict[str, Dict[str, Any]]:
    """Read {section: {field: value}} from JSON or key=value text."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("config JSON must be an object of sections")
        return data
    out: Dict[str, Dict[str, Any]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line or "." not in line.split("=", 1)[0]:
            raise ValueError(f"config line {lineno}: expected section.field=value")
        key, value = (part.strip() for part in line.split("=", 1))
        section, field = key.split(".", 1)
        try:
            parsed: Any = json.loads(value)
        except json.JSONDecodeError:
            parsed = value
        out.setdefault(section, {})[field] = parsed
    return out


def _build_configs(path: Optional[str]):
    sections = _parse_config_file(path) if path else {}

    def build(cls, name):
        overrides = sections.get(name, {})
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(overrides) - known
        if unknown:
            raise ValueError(f"unknown {name} config fields: {sorted(unknown)}")
        return cls(**overrides)

    return build(RobotConfig, "robot"), build(TrackerConfig, "tracker"), build(AvoidConfig, "avoid")


def _load_map(path: str, resolution: float):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_map(fh.read(), resolution)


def _frame_line(frame: TelemetryFrame) -> str:
    return json.dumps(dataclasses.asdict(frame), separators=(",", ":")) + "\n"


def cmd_plan(args) -> int:
    grid = _load_map(args.map, args.resolution)
    try:
        path = astar(grid)
    except NoPathError as exc:
        print(f"no path: {exc}", file=sys.stderr)
        return 1
    print(render_overlay(grid, path))
    return 0


def cmd_run(args) -> int:
    robot_cfg, tracker_cfg, avoid_cfg = _build_configs(args.config)
    grid = _load_map(args.map, args.resolution)
    world = WorldState.from_map(grid, config=robot_cfg, seed=args.seed)
    plan = None
    if args.mode == "odometry":
        try:
            plan = WaypointPlan(to_waypoints(astar(grid), grid).nodes)
        except NoPathError as exc:
            print(f"no path: {exc}", file=sys.stderr)
            return 1
    sink = None
    log_fh = None
    if args.log:
        log_fh = open(args.log, "w", encoding="utf-8")
        sink = lambda frame: log_fh.write(_frame_line(frame))
    try:
        report = run_episode(
            world,
            args.mode,
            tick_ms=args.tick_ms,
            max_ticks=args.max_ticks,
            log_sink=sink,
            plan=plan,
            tracker_cfg=tracker_cfg,
            avoid_cfg=avoid_cfg,
        )
    finally:
        if log_fh:
            log_fh.close()
    print(
        f"ticks={report.ticks_used} collisions={report.collisions} "
        f"goal_reached={report.goal_reached} "
        f"final=({report.final_pose.x:.1f}, {report.final_pose.y:.1f}, "
        f"{report.final_pose.theta:.3f})"
    )
    for t, kind in report.events:
        print(f"event t={t}ms {kind}")
    if report.error:
        print(f"error: {report.error}", file=sys.stderr)
        return 1
    return 0


def cmd_serve(args) -> int:
    from .server import serve
    from .session import TeleopSession

    robot_cfg, tracker_cfg, avoid_cfg = _build_configs(args.config)
    grid = _load_map(args.map, args.resolution)

    def factory():
        world = WorldState.from_map(grid, config=robot_cfg, seed=args.seed)
        return TeleopSession(
            world, tick_ms=args.tick_ms, tracker_cfg=tracker_cfg, avoid_cfg=avoid_cfg
        )

    print(f"serving on ws://{args.host}:{args.port}/ws (map {args.map})")
    serve(factory, host=args.host, port=args.port, tick_ms=args.tick_ms)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="navbot", description="differential-drive navigation stack")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--map", required=True, help="ASCII map file (#/M/E format)")
        p.add_argument("--resolution", type=float, default=100.0, help="mm per map cell")

    p_plan = sub.add_parser("plan", help="print the A* path as a '*' overlay")
    common(p_plan)
    p_plan.set_defaults(func=cmd_plan)

    p_run = sub.add_parser("run", help="run one simulated episode, optionally logging telemetry")
    common(p_run)
    p_run.add_argument("--mode", choices=("idle", "odometry", "tracking", "avoidance"), required=True)
    p_run.add_argument("--max-ticks", type=int, default=5000)
    p_run.add_argument("--tick-ms", type=float, default=100.0)
    p_run.add_argument("--log", help="write JSONL telemetry to this file")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--config", help="config file with robot/tracker/avoid overrides")
    p_run.set_defaults(func=cmd_run)

    p_serve = sub.add_parser("serve", help="start the teleop WebSocket service")
    common(p_serve)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=DEFAULT_PORT)
    p_serve.add_argument("--tick-ms", type=float, default=100.0)
    p_serve.add_argument("--seed", type=int, default=0)
    p_serve.add_argument("--config", help="config file with robot/tracker/avoid overrides")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
