import { TeleopClient } from './client.js';
import { DriveInput } from './input.js';
import { ControlMessage, DriveDir, Mode, ServerMessage } from './protocol.js';
import { drawDetections, drawMap, drawRobot } from './renderer.js';
import { PanelState, applyServerMessage, driveEnabled, initialState } from './state.js';
import { Transform, fitTransform, mapSizeMm } from './transform.js';

const RESOLUTION_MM = 100;
const MODES: Mode[] = ['manual', 'odometry', 'tracking', 'avoidance', 'idle'];

let state: PanelState = initialState();
let transform: Transform | null = null;
const driveInput = new DriveInput();

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
};

const canvas = $<HTMLCanvasElement>('world');
const detCanvas = $<HTMLCanvasElement>('detections');
const statusEl = $('status');
const eventsEl = $('events');
const mapBox = $<HTMLTextAreaElement>('map-text');

const client = new TeleopClient({
  onMessage(msg: ServerMessage) {
    state = applyServerMessage(state, msg);
    render();
  },
  onStatus(status) {
    state = { ...state, connection: status };
    if (status !== 'connected') driveInput.reset();
    render();
  },
});

function send(msg: ControlMessage): void {
  client.send(msg);
}

function render(): void {
  statusEl.textContent = `${state.connection} · mode: ${state.mode}`;
  eventsEl.textContent = state.events.slice(-12).join('\n');
  for (const m of MODES) {
    $<HTMLButtonElement>(`mode-${m}`).disabled = state.connection !== 'connected';
  }
  const manual = driveEnabled(state);
  for (const id of ['btn-forward', 'btn-backward', 'btn-left', 'btn-right', 'btn-stop']) {
    $<HTMLButtonElement>(id).disabled = !manual;
  }

  const ctx = canvas.getContext('2d');
  if (ctx === null) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (state.mapText !== null && transform !== null) {
    drawMap(ctx, transform, state.mapText, RESOLUTION_MM);
  }
  if (state.frame !== null && transform !== null) {
    drawRobot(ctx, transform, state.frame);
  }
  const dctx = detCanvas.getContext('2d');
  if (dctx !== null) {
    dctx.clearRect(0, 0, detCanvas.width, detCanvas.height);
    drawDetections(dctx, state.detections, detCanvas.width, detCanvas.height);
  }
}

function loadMap(): void {
  const text = mapBox.value;
  if (text.trim().length === 0) return;
  state = { ...state, mapText: text };
  const [w, h] = mapSizeMm(text, RESOLUTION_MM);
  transform = fitTransform(w, h, canvas.width, canvas.height);
  send({ type: 'load_map', map_text: text });
  render();
}

function wire(): void {
  $('connect').addEventListener('click', () => {
    client.connect($<HTMLInputElement>('url').value);
  });
  $('disconnect').addEventListener('click', () => client.close());

  for (const m of MODES) {
    $(`mode-${m}`).addEventListener('click', () => {
      driveInput.reset();
      send({ type: 'set_mode', mode: m });
    });
  }

  // On-screen drive buttons: one drive on press, one stop on release.
  const driveBtn = (id: string, dir: DriveDir) => {
    const el = $(id);
    el.addEventListener('pointerdown', () => {
      if (driveEnabled(state)) send({ type: 'drive', dir });
    });
    el.addEventListener('pointerup', () => {
      if (driveEnabled(state)) send({ type: 'drive', dir: 'stop' });
    });
  };
  driveBtn('btn-forward', 'forward');
  driveBtn('btn-backward', 'backward');
  driveBtn('btn-left', 'left');
  driveBtn('btn-right', 'right');
  $('btn-stop').addEventListener('click', () => {
    if (driveEnabled(state)) send({ type: 'drive', dir: 'stop' });
  });

  document.addEventListener('keydown', (ev) => {
    const msg = driveInput.keydown(ev, state.mode);
    if (msg !== null && state.connection === 'connected') send(msg);
  });
  document.addEventListener('keyup', (ev) => {
    const msg = driveInput.keyup(ev, state.mode);
    if (msg !== null && state.connection === 'connected') send(msg);
  });

  $<HTMLInputElement>('camera-pan').addEventListener('change', (ev) => {
    const deg = Number((ev.target as HTMLInputElement).value);
    send({ type: 'camera', pan_deg: deg });
  });

  $('set-target').addEventListener('click', () => {
    const label = $<HTMLInputElement>('target-label').value.trim();
    if (label.length > 0) send({ type: 'set_target', label });
  });
  $('detect-once').addEventListener('click', () => send({ type: 'detect_once' }));
  $('load-map').addEventListener('click', loadMap);

  render();
}

wire();
