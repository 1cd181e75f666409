import { describe, expect, it } from 'vitest';
import { DriveInput } from '../src/input.js';

describe('DriveInput', () => {
  it('press emits exactly one drive, release exactly one stop', () => {
    const input = new DriveInput();
    const messages = [];
    let m = input.keydown({ key: 'ArrowUp' }, 'manual');
    if (m) messages.push(m);
    // OS auto-repeat while held: flagged repeats and unflagged duplicates.
    for (let i = 0; i < 5; i++) {
      m = input.keydown({ key: 'ArrowUp', repeat: true }, 'manual');
      if (m) messages.push(m);
      m = input.keydown({ key: 'ArrowUp' }, 'manual');
      if (m) messages.push(m);
    }
    m = input.keyup({ key: 'ArrowUp' }, 'manual');
    if (m) messages.push(m);

    expect(messages).toEqual([
      { type: 'drive', dir: 'forward' },
      { type: 'drive', dir: 'stop' },
    ]);
  });

  it('maps all four arrows and wasd', () => {
    const cases: Array<[string, string]> = [
      ['ArrowUp', 'forward'], ['ArrowDown', 'backward'],
      ['ArrowLeft', 'left'], ['ArrowRight', 'right'],
      ['w', 'forward'], ['s', 'backward'], ['a', 'left'], ['d', 'right'],
    ];
    for (const [key, dir] of cases) {
      const input = new DriveInput();
      expect(input.keydown({ key }, 'manual')).toEqual({ type: 'drive', dir });
      expect(input.keyup({ key }, 'manual')).toEqual({ type: 'drive', dir: 'stop' });
    }
  });

  it('is inert outside manual mode', () => {
    const input = new DriveInput();
    for (const mode of ['idle', 'odometry', 'tracking', 'avoidance'] as const) {
      expect(input.keydown({ key: 'ArrowUp' }, mode)).toBeNull();
      expect(input.keyup({ key: 'ArrowUp' }, mode)).toBeNull();
    }
  });

  it('ignores unmapped keys', () => {
    const input = new DriveInput();
    expect(input.keydown({ key: 'x' }, 'manual')).toBeNull();
    expect(input.keyup({ key: 'Enter' }, 'manual')).toBeNull();
  });

  it('holds off stop until the last drive key is released', () => {
    const input = new DriveInput();
    expect(input.keydown({ key: 'ArrowUp' }, 'manual')).not.toBeNull();
    expect(input.keydown({ key: 'ArrowLeft' }, 'manual')).not.toBeNull();
    expect(input.keyup({ key: 'ArrowLeft' }, 'manual')).toBeNull();
    expect(input.keyup({ key: 'ArrowUp' }, 'manual')).toEqual({ type: 'drive', dir: 'stop' });
  });

  it('does not emit a stray stop after reset', () => {
    const input = new DriveInput();
    input.keydown({ key: 'ArrowUp' }, 'manual');
    input.reset();
    expect(input.keyup({ key: 'ArrowUp' }, 'manual')).toBeNull();
  });
});
