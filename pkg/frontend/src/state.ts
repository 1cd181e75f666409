import { DetectionBox, Mode, ServerMessage, TelemetryFrame } from './protocol.js';

export type ConnectionStatus = 'disconnected' | 'connecting' | 'connected';

export interface PanelState {
  connection: ConnectionStatus;
  mode: Mode;
  frame: TelemetryFrame | null;
  detections: DetectionBox[];
  mapText: string | null;
  pathOverlay: string | null;
  events: string[];
}

export function initialState(): PanelState {
  return {
    connection: 'disconnected',
    mode: 'idle',
    frame: null,
    detections: [],
    mapText: null,
    pathOverlay: null,
    events: [],
  };
}

const EVENT_LOG_LIMIT = 50;

/**
 * Fold one server message into the panel state. Stale telemetry (older
 * timestamp than what we already hold) is dropped; the panel only ever
 * shows poses it actually received.
 */
export function applyServerMessage(state: PanelState, msg: ServerMessage): PanelState {
  switch (msg.type) {
    case 'telemetry': {
      if (state.frame !== null && msg.frame.timestamp_ms < state.frame.timestamp_ms) {
        return state;
      }
      return { ...state, frame: msg.frame, mode: msg.frame.mode as Mode };
    }
    case 'detections':
      return { ...state, detections: msg.detections };
    case 'event':
      return { ...state, events: [...state.events, msg.kind].slice(-EVENT_LOG_LIMIT) };
    case 'error':
      return { ...state, events: [...state.events, `error: ${msg.message}`].slice(-EVENT_LOG_LIMIT) };
    case 'ack':
      return state;
  }
}

export function driveEnabled(state: PanelState): boolean {
  return state.connection === 'connected' && state.mode === 'manual';
}
