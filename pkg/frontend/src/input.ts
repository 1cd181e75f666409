import { ControlMessage, DriveDir, Mode } from './protocol.js';

/** Structural subset of KeyboardEvent so tests don't need a DOM. */
export interface KeyEventLike {
  key: string;
  repeat?: boolean;
}

function keyToDir(key: string): DriveDir | null {
  switch (key) {
    case 'ArrowUp':
    case 'w':
      return 'forward';
    case 'ArrowDown':
    case 's':
      return 'backward';
    case 'ArrowLeft':
    case 'a':
      return 'left';
    case 'ArrowRight':
    case 'd':
      return 'right';
    default:
      return null;
  }
}

/**
 * Turns raw key events into drive messages.
 *
 * Holding a key emits exactly one drive frame: OS auto-repeat is filtered
 * both by the event's `repeat` flag and by tracking which keys are down
 * (some browsers don't set `repeat` reliably). Releasing the key emits one
 * stop. Outside manual mode nothing is emitted at all, mirroring the
 * service-side mode isolation rule.
 */
export class DriveInput {
  private held = new Set<string>();

  keydown(ev: KeyEventLike, mode: Mode): ControlMessage | null {
    const dir = keyToDir(ev.key);
    if (dir === null || mode !== 'manual') return null;
    if (ev.repeat || this.held.has(ev.key)) return null;
    this.held.add(ev.key);
    return { type: 'drive', dir };
  }

  keyup(ev: KeyEventLike, mode: Mode): ControlMessage | null {
    const dir = keyToDir(ev.key);
    if (dir === null) return null;
    const wasHeld = this.held.delete(ev.key);
    if (mode !== 'manual' || !wasHeld) return null;
    // Only send stop when no other drive key is still held, so e.g.
    // releasing ← while ↑ is down doesn't kill forward motion.
    if (this.held.size > 0) return null;
    return { type: 'drive', dir: 'stop' };
  }

  /** Drop all held state, e.g. on disconnect or mode change. */
  reset(): void {
    this.held.clear();
  }
}
