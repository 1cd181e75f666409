// Wire protocol shared with the teleop service: newline-delimited
// single-line JSON frames, each with a mandatory "type" field.

export type Mode = 'manual' | 'odometry' | 'tracking' | 'avoidance' | 'idle';
export type DriveDir = 'forward' | 'backward' | 'left' | 'right' | 'stop';

export type ControlMessage =
  | { type: 'set_mode'; mode: Mode }
  | { type: 'drive'; dir: DriveDir }
  | { type: 'camera'; pan_deg: number }
  | { type: 'set_target'; label: string }
  | { type: 'load_map'; map_text: string }
  | { type: 'detect_once' };

export interface TelemetryFrame {
  timestamp_ms: number;
  x: number;
  y: number;
  theta: number;
  v_left: number;
  v_right: number;
  mode: string;
  sonar: number[];
  zone_or_action: string;
}

export interface DetectionBox {
  label: string;
  confidence: number;
  bbox: [number, number, number, number];
}

export type ServerMessage =
  | { type: 'telemetry'; frame: TelemetryFrame }
  | { type: 'detections'; detections: DetectionBox[] }
  | { type: 'event'; kind: string }
  | { type: 'error'; message: string }
  | { type: 'ack'; acked: Record<string, unknown> };

const SERVER_TYPES = ['telemetry', 'detections', 'event', 'error', 'ack'];

export function encode(msg: ControlMessage): string {
  return JSON.stringify(msg) + '\n';
}

/** Parse one frame from the service; returns null for frames we don't know. */
export function decodeServer(line: string): ServerMessage | null {
  let obj: unknown;
  try {
    obj = JSON.parse(line);
  } catch {
    return null;
  }
  if (typeof obj !== 'object' || obj === null) return null;
  const msg = obj as { type?: unknown };
  if (typeof msg.type !== 'string' || !SERVER_TYPES.includes(msg.type)) return null;
  return msg as ServerMessage;
}
