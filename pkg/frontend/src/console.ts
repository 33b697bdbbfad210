// Browser entry point: wires the WebSocket, the virtual joystick (mouse,
// touch, arrow-key fallback) and the canvas views. Single UI thread:
// network events update the state snapshot, a render loop repaints from it.

import { parseInbound, Mode } from "./protocol.js";
import { CommandSender, axesFromKeys, clampAxis } from "./joystick.js";
import { projectToWindow } from "./trajectory.js";
import { describeAxes } from "./charts.js";
import { ConsoleState } from "./state.js";

const DEFAULT_URL = "ws://127.0.0.1:8700/ws";
const DEFAULT_TETHER_M = 30;
const TARGETS: [number, number][] = [[0.5, 0.6], [0.5, -0.6]];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export function startConsole(): void {
  const params = new URLSearchParams(window.location.search);
  const url = params.get("url") ?? DEFAULT_URL;
  const tether = Number(params.get("tether") ?? DEFAULT_TETHER_M);

  const state = new ConsoleState(tether);
  const sender = new CommandSender(() => performance.now());

  const windowCanvas = el<HTMLCanvasElement>("wind-window");
  const chartCanvas = el<HTMLCanvasElement>("strip-charts");
  const statusLine = el<HTMLDivElement>("status-line");
  const stick = el<HTMLDivElement>("stick");
  const stickKnob = el<HTMLDivElement>("stick-knob");
  const modeButton = el<HTMLButtonElement>("mode-button");

  let ws: WebSocket | null = null;

  function send(text: string | null | undefined, seq?: number): void {
    if (!text || !ws || ws.readyState !== WebSocket.OPEN) return;
    ws.send(text);
    if (seq !== undefined) state.commandSent(seq);
  }

  function connect(): void {
    state.connection = "connecting";
    ws = new WebSocket(url);
    ws.onopen = () => {
      state.connection = "connected";
    };
    ws.onclose = () => {
      state.connection = "disconnected";
      setTimeout(connect, 1000);
    };
    ws.onmessage = (event) => {
      try {
        state.ingest(parseInbound(String(event.data)));
      } catch (err) {
        state.errorCount += 1;
        state.lastError = String(err);
      }
    };
  }

  // ---- joystick input (drag + keyboard) ----------------------------------

  function pushAxes(): void {
    const frame = sender.command(state.joystick.steering,
                                 state.joystick.power);
    if (frame) send(frame.text, frame.seq);
  }

  function setFromPointer(event: PointerEvent): void {
    const rect = stick.getBoundingClientRect();
    const sx = ((event.clientX - rect.left) / rect.width) * 2 - 1;
    const sy = ((event.clientY - rect.top) / rect.height) * 2 - 1;
    // vertical axis down = de-power; upward drag is ignored (power <= 0)
    state.setJoystick(clampAxis(sx), clampAxis(sy) > 0 ? -clampAxis(sy) : 0);
    pushAxes();
  }

  let dragging = false;
  stick.addEventListener("pointerdown", (e) => {
    dragging = true;
    stick.setPointerCapture(e.pointerId);
    setFromPointer(e);
  });
  stick.addEventListener("pointermove", (e) => {
    if (dragging) setFromPointer(e);
  });
  stick.addEventListener("pointerup", () => {
    dragging = false;
    state.setJoystick(0, 0); // spring back to center
    pushAxes();
  });

  const pressed = new Set<string>();
  window.addEventListener("keydown", (e) => {
    pressed.add(e.key);
    const axes = axesFromKeys(pressed);
    state.setJoystick(axes.steering, axes.power);
    pushAxes();
  });
  window.addEventListener("keyup", (e) => {
    pressed.delete(e.key);
    const axes = axesFromKeys(pressed);
    state.setJoystick(axes.steering, axes.power);
    pushAxes();
  });

  modeButton.addEventListener("click", () => {
    const next: Mode = state.mode === "manual" ? "auto" : "manual";
    state.mode = next;
    const frame = sender.mode(next);
    send(frame.text, frame.seq);
    modeButton.textContent = `mode: ${next}`;
  });

  // ---- rendering ----------------------------------------------------------

  function drawWindow(): void {
    const ctx = windowCanvas.getContext("2d");
    if (!ctx) return;
    const { width: w, height: h } = windowCanvas;
    ctx.clearRect(0, 0, w, h);
    if (!state.latest) {
      ctx.fillStyle = "#888";
      ctx.fillText("no data", w / 2 - 20, h / 2);
      return;
    }
    const scale = (h * 0.9) / state.tetherLength;
    const toPx = (p: { x: number; y: number }) => ({
      px: w / 2 + p.x * scale,
      py: h * 0.95 - p.y * scale,
    });
    ctx.strokeStyle = "#2a7";
    ctx.beginPath();
    state.trajectory.trace().forEach((p, i) => {
      const { px, py } = toPx(p);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.stroke();
    ctx.fillStyle = "#c33";
    for (const [theta, phi] of TARGETS) {
      const { px, py } = toPx(projectToWindow(theta, phi, state.tetherLength));
      ctx.fillRect(px - 3, py - 3, 6, 6);
    }
    const current = state.trajectory.latest();
    if (current) {
      const { px, py } = toPx(current);
      ctx.fillStyle = "#06c";
      ctx.beginPath();
      ctx.arc(px, py, 5, 0, 2 * Math.PI);
      ctx.fill();
    }
    ctx.fillStyle = "#333";
    ctx.fillText(`eights: ${state.trajectory.figureEightCount()}`, 8, 14);
  }

  function drawCharts(): void {
    const ctx = chartCanvas.getContext("2d");
    if (!ctx) return;
    const { width: w, height: h } = chartCanvas;
    ctx.clearRect(0, 0, w, h);
    const series = state.charts.series();
    const rows = series.length;
    series.forEach((s, row) => {
      const top = (h / rows) * row;
      const bottom = top + h / rows - 14;
      ctx.strokeStyle = "#999";
      ctx.strokeRect(0.5, top + 0.5, w - 1, bottom - top);
      ctx.fillStyle = "#333";
      ctx.fillText(`${s.label} [${s.unit}]`, 6, top + 12);
      if (s.t.length < 2) {
        ctx.fillStyle = "#888";
        ctx.fillText("no data", w / 2 - 20, (top + bottom) / 2);
        return;
      }
      const t0 = s.t[s.t.length - 1] - state.charts.windowS;
      const lo = Math.min(...s.values);
      const hi = Math.max(...s.values);
      const span = hi - lo || 1;
      ctx.strokeStyle = "#06c";
      ctx.beginPath();
      s.t.forEach((t, i) => {
        const px = ((t - t0) / state.charts.windowS) * w;
        const py = bottom - ((s.values[i] - lo) / span) * (bottom - top - 16);
        if (i === 0) ctx.moveTo(px, py);
        else ctx.lineTo(px, py);
      });
      ctx.stroke();
    });
  }

  function drawStatus(): void {
    const f = state.latest;
    const parts = [
      state.connection,
      f ? `t=${f.sample.t.toFixed(2)} s` : "",
      f ? `status=${f.sample.status}` : "",
      f ? `F=${f.sample.F_total.toFixed(0)} N` : "",
      describeAxes(state.joystick.steering, state.joystick.power),
      state.errorCount ? `errors=${state.errorCount}` : "",
      f && f.dropped ? `dropped=${f.dropped}` : "",
    ];
    statusLine.textContent = parts.filter(Boolean).join("  |  ");
    const knobX = 50 + state.joystick.steering * 40;
    const knobY = 50 - state.joystick.power * 40;
    stickKnob.style.left = `${knobX}%`;
    stickKnob.style.top = `${knobY}%`;
  }

  function render(): void {
    drawWindow();
    drawCharts();
    drawStatus();
    requestAnimationFrame(render);
  }

  connect();
  requestAnimationFrame(render);
}

startConsole();
