import { DetectionBox, TelemetryFrame } from './protocol.js';
import { Transform, worldToScreen } from './transform.js';

// How far the heading ray ("turret") pokes out of the robot marker, in mm.
const HEADING_RAY_MM = 400;
const ROBOT_RADIUS_MM = 150;
const SONAR_BEARINGS = [
  -2.6179938779914944, -1.5707963267948966, -0.5235987755982988, -0.17453292519943295,
  0.17453292519943295, 0.5235987755982988, 1.5707963267948966, 2.6179938779914944,
];

/** Screen position of the robot marker for a telemetry frame. */
export function robotMarkerPosition(t: Transform, frame: TelemetryFrame): [number, number] {
  return worldToScreen(t, frame.x, frame.y);
}

export function drawMap(
  ctx: CanvasRenderingContext2D,
  t: Transform,
  mapText: string,
  resolutionMm: number,
): void {
  const rows = mapText.replace(/\r/g, '').split('\n').filter((r) => r.length > 0);
  const cell = resolutionMm * t.scale;
  for (let r = 0; r < rows.length; r++) {
    for (let c = 0; c < rows[r].length; c++) {
      const ch = rows[r][c];
      if (ch === '#') ctx.fillStyle = '#444';
      else if (ch === '*') ctx.fillStyle = '#8fdc8f';
      else if (ch === 'E') ctx.fillStyle = '#f0c040';
      else continue;
      const [sx, sy] = worldToScreen(t, c * resolutionMm, r * resolutionMm);
      ctx.fillRect(sx, sy, cell, cell);
    }
  }
}

/** Planned path polyline with the turn nodes marked in red. */
export function drawPath(
  ctx: CanvasRenderingContext2D,
  t: Transform,
  waypoints: Array<[number, number]>,
): void {
  if (waypoints.length === 0) return;
  ctx.strokeStyle = '#c33';
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  for (let i = 0; i < waypoints.length; i++) {
    const [sx, sy] = worldToScreen(t, waypoints[i][0], waypoints[i][1]);
    if (i === 0) ctx.moveTo(sx, sy);
    else ctx.lineTo(sx, sy);
  }
  ctx.stroke();
  ctx.fillStyle = '#c33';
  for (const [wx, wy] of waypoints) {
    const [sx, sy] = worldToScreen(t, wx, wy);
    ctx.beginPath();
    ctx.arc(sx, sy, 3, 0, 2 * Math.PI);
    ctx.fill();
  }
}

export function drawRobot(ctx: CanvasRenderingContext2D, t: Transform, frame: TelemetryFrame): void {
  const [sx, sy] = robotMarkerPosition(t, frame);

  // Sonar rays, one per ring bearing, scaled by the reading.
  ctx.strokeStyle = 'rgba(60,140,220,0.35)';
  ctx.lineWidth = 1;
  for (let i = 0; i < Math.min(frame.sonar.length, SONAR_BEARINGS.length); i++) {
    const a = frame.theta + SONAR_BEARINGS[i];
    const ex = frame.x + frame.sonar[i] * Math.cos(a);
    const ey = frame.y + frame.sonar[i] * Math.sin(a);
    const [ssx, ssy] = worldToScreen(t, ex, ey);
    ctx.beginPath();
    ctx.moveTo(sx, sy);
    ctx.lineTo(ssx, ssy);
    ctx.stroke();
  }

  // Blue body disk.
  ctx.fillStyle = '#2255cc';
  ctx.beginPath();
  ctx.arc(sx, sy, Math.max(3, ROBOT_RADIUS_MM * t.scale), 0, 2 * Math.PI);
  ctx.fill();

  // Slender red heading ray.
  const hx = frame.x + HEADING_RAY_MM * Math.cos(frame.theta);
  const hy = frame.y + HEADING_RAY_MM * Math.sin(frame.theta);
  const [hsx, hsy] = worldToScreen(t, hx, hy);
  ctx.strokeStyle = '#c33';
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(sx, sy);
  ctx.lineTo(hsx, hsy);
  ctx.stroke();
}

/** Detection pane: labeled boxes in camera-frame pixel coordinates. */
export function drawDetections(
  ctx: CanvasRenderingContext2D,
  detections: DetectionBox[],
  paneWidth: number,
  paneHeight: number,
  frameWidth = 640,
  frameHeight = 480,
): void {
  const sx = paneWidth / frameWidth;
  const sy = paneHeight / frameHeight;
  ctx.strokeStyle = '#2a2';
  ctx.fillStyle = '#2a2';
  ctx.lineWidth = 1.5;
  ctx.font = '12px sans-serif';
  for (const det of detections) {
    const [x0, y0, x1, y1] = det.bbox;
    ctx.strokeRect(x0 * sx, y0 * sy, (x1 - x0) * sx, (y1 - y0) * sy);
    ctx.fillText(`${det.label} ${det.confidence.toFixed(2)}`, x0 * sx + 2, y0 * sy - 3);
  }
}
