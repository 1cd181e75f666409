import { describe, expect, it } from 'vitest';
import { ServerMessage, TelemetryFrame } from '../src/protocol.js';
import { applyServerMessage, driveEnabled, initialState } from '../src/state.js';

function frame(timestamp_ms: number, mode = 'manual'): TelemetryFrame {
  return {
    timestamp_ms, x: 100, y: 200, theta: 0, v_left: 0, v_right: 0,
    mode, sonar: [], zone_or_action: '',
  };
}

describe('applyServerMessage', () => {
  it('tracks the latest telemetry frame and its mode', () => {
    let s = initialState();
    s = applyServerMessage(s, { type: 'telemetry', frame: frame(100, 'avoidance') });
    expect(s.frame?.timestamp_ms).toBe(100);
    expect(s.mode).toBe('avoidance');
  });

  it('drops telemetry older than what is already shown', () => {
    let s = initialState();
    s = applyServerMessage(s, { type: 'telemetry', frame: frame(500) });
    s = applyServerMessage(s, { type: 'telemetry', frame: frame(400) });
    expect(s.frame?.timestamp_ms).toBe(500);
  });

  it('appends events and errors to the log', () => {
    let s = initialState();
    const msgs: ServerMessage[] = [
      { type: 'event', kind: 'goal_reached' },
      { type: 'error', message: 'map rejected: no start' },
    ];
    for (const m of msgs) s = applyServerMessage(s, m);
    expect(s.events).toEqual(['goal_reached', 'error: map rejected: no start']);
  });

  it('replaces detections wholesale', () => {
    let s = initialState();
    const det = { label: 'person', confidence: 0.9, bbox: [10, 10, 50, 90] as [number, number, number, number] };
    s = applyServerMessage(s, { type: 'detections', detections: [det] });
    s = applyServerMessage(s, { type: 'detections', detections: [] });
    expect(s.detections).toEqual([]);
  });
});

describe('driveEnabled', () => {
  it('requires both a live connection and manual mode', () => {
    let s = initialState();
    expect(driveEnabled(s)).toBe(false);
    s = { ...s, connection: 'connected' };
    expect(driveEnabled(s)).toBe(false);
    s = applyServerMessage(s, { type: 'telemetry', frame: frame(0, 'manual') });
    expect(driveEnabled(s)).toBe(true);
    s = applyServerMessage(s, { type: 'telemetry', frame: frame(100, 'idle') });
    expect(driveEnabled(s)).toBe(false);
  });
});
