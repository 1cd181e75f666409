import { ControlMessage, ServerMessage, decodeServer, encode } from './protocol.js';

export interface ClientCallbacks {
  onMessage(msg: ServerMessage): void;
  onStatus(status: 'connecting' | 'connected' | 'disconnected'): void;
}

/**
 * Thin wrapper over the browser WebSocket. One session at a time; the
 * service refuses a second connection, so there is no client-side queueing.
 * Reconnection is a manual affordance (the Connect button), not automatic.
 */
export class TeleopClient {
  private ws: WebSocket | null = null;

  constructor(private callbacks: ClientCallbacks) {}

  connect(url: string): void {
    this.close();
    this.callbacks.onStatus('connecting');
    const ws = new WebSocket(url);
    this.ws = ws;
    ws.onopen = () => this.callbacks.onStatus('connected');
    ws.onclose = () => {
      if (this.ws === ws) {
        this.ws = null;
        this.callbacks.onStatus('disconnected');
      }
    };
    ws.onerror = () => ws.close();
    ws.onmessage = (ev: MessageEvent) => {
      const msg = decodeServer(String(ev.data));
      if (msg !== null) this.callbacks.onMessage(msg);
    };
  }

  send(msg: ControlMessage): boolean {
    if (this.ws === null || this.ws.readyState !== WebSocket.OPEN) return false;
    this.ws.send(encode(msg));
    return true;
  }

  close(): void {
    if (this.ws !== null) {
      const ws = this.ws;
      this.ws = null;
      ws.close();
      this.callbacks.onStatus('disconnected');
    }
  }
}
