import { describe, expect, it } from 'vitest';
import { robotMarkerPosition } from '../src/renderer.js';
import { fitTransform, mapSizeMm, worldToScreen } from '../src/transform.js';

const FRAME = {
  timestamp_ms: 0, theta: 0, v_left: 0, v_right: 0,
  mode: 'idle', sonar: [], zone_or_action: '',
};

describe('fitTransform / worldToScreen', () => {
  it('maps the world corners onto the canvas, preserving aspect', () => {
    const t = fitTransform(9000, 4700, 900, 470);
    expect(worldToScreen(t, 0, 0)).toEqual([0, 0]);
    expect(worldToScreen(t, 9000, 4700)).toEqual([900, 470]);
  });

  it('letterboxes when aspect ratios differ', () => {
    // 1000x1000 mm world on a 200x100 canvas: scale 0.1, centered in x.
    const t = fitTransform(1000, 1000, 200, 100);
    expect(t.scale).toBeCloseTo(0.1, 12);
    expect(worldToScreen(t, 500, 500)).toEqual([100, 50]);
    expect(worldToScreen(t, 0, 0)).toEqual([50, 0]);
  });

  it('robot marker position matches the telemetry (x, y) under the transform', () => {
    const t = fitTransform(9000, 4700, 900, 470);
    const frame = { ...FRAME, x: 2850.0, y: 4050.0 };
    const [sx, sy] = robotMarkerPosition(t, frame);
    const [ex, ey] = worldToScreen(t, 2850.0, 4050.0);
    expect(sx).toBeCloseTo(ex, 12);
    expect(sy).toBeCloseTo(ey, 12);
    // and the transform really is the map scale, not an identity fluke
    expect(sx).toBeCloseTo(285, 12);
    expect(sy).toBeCloseTo(405, 12);
  });
});

describe('mapSizeMm', () => {
  it('measures rows x longest line at the grid resolution', () => {
    expect(mapSizeMm('####\n#ME\n####\n', 100)).toEqual([400, 300]);
  });

  it('ignores carriage returns and a trailing blank line', () => {
    expect(mapSizeMm('##\r\n##\r\n', 100)).toEqual([200, 200]);
  });
});
