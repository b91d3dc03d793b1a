/** Browser entry point: wires the teleop client to the control panels. */

import { TeleopClient } from "./client.js";
import {
  estopCmd,
  injectCmd,
  joystickToCmdVel,
  joystickToHead,
  speakCmd,
  TelemetryFrame,
} from "./protocol.js";
import {
  eventLines,
  forceColor,
  hotspotMarkers,
  lidarPoints,
  statusLine,
  taskRows,
  temperatureColor,
} from "./render.js";

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

let client: TeleopClient | null = null;
let estopLatched = false;

function setStatusBadge(text: string, cls: string): void {
  const badge = $("conn-status");
  badge.textContent = text;
  badge.className = `badge ${cls}`;
}

function drawLidar(frame: TelemetryFrame): void {
  const canvas = $<HTMLCanvasElement>("lidar-canvas");
  const ctx = canvas.getContext("2d")!;
  const size = canvas.width;
  ctx.fillStyle = "#10141c";
  ctx.fillRect(0, 0, size, size);
  ctx.strokeStyle = "#2a3242";
  for (const radius of [0.25, 0.5, 0.75, 1.0]) {
    ctx.beginPath();
    ctx.arc(size / 2, size / 2, (size / 2) * radius, 0, 2 * Math.PI);
    ctx.stroke();
  }
  ctx.fillStyle = "#6fe3a1";
  for (const p of lidarPoints(frame.lidar, size)) {
    ctx.fillRect(p.x - 1, p.y - 1, 2, 2);
  }
  ctx.fillStyle = "#e0e6f0";
  ctx.beginPath();
  ctx.moveTo(size / 2, size / 2 - 6);
  ctx.lineTo(size / 2 - 4, size / 2 + 4);
  ctx.lineTo(size / 2 + 4, size / 2 + 4);
  ctx.fill();
}

function drawGrid(
  canvasId: string,
  grid: number[][],
  color: (v: number) => string,
): void {
  const canvas = $<HTMLCanvasElement>(canvasId);
  const ctx = canvas.getContext("2d")!;
  const rows = grid.length;
  const cols = grid[0].length;
  const cw = canvas.width / cols;
  const ch = canvas.height / rows;
  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) {
      ctx.fillStyle = color(grid[r][c]);
      ctx.fillRect(c * cw, r * ch, Math.ceil(cw), Math.ceil(ch));
    }
  }
}

function drawThermal(frame: TelemetryFrame): void {
  drawGrid("thermal-canvas", frame.thermal, (v) => temperatureColor(v));
  const canvas = $<HTMLCanvasElement>("thermal-canvas");
  const ctx = canvas.getContext("2d")!;
  const cw = canvas.width / frame.thermal[0].length;
  const ch = canvas.height / frame.thermal.length;
  ctx.strokeStyle = "#ffffff";
  ctx.lineWidth = 2;
  for (const marker of hotspotMarkers(frame.thermal)) {
    ctx.beginPath();
    ctx.arc((marker.col + 0.5) * cw, (marker.row + 0.5) * ch, 10, 0, 2 * Math.PI);
    ctx.stroke();
  }
}

function renderTasks(frame: TelemetryFrame): void {
  const tbody = $("task-rows");
  tbody.innerHTML = "";
  for (const row of taskRows(frame)) {
    const tr = document.createElement("tr");
    if (row.active) tr.className = "active-task";
    const badge = `<span class="badge state-${row.state.toLowerCase()}">${row.state}</span>`;
    tr.innerHTML =
      `<td>${row.id}</td><td>${row.name}</td><td>${row.priority}</td><td>${badge}</td>`;
    tbody.appendChild(tr);
  }
}

function renderEvents(frame: TelemetryFrame): void {
  $("event-log").textContent = eventLines(frame.events).join("\n");
}

function onFrame(frame: TelemetryFrame): void {
  $("status-line").textContent = statusLine(frame);
  estopLatched = frame.estop;
  $("estop-btn").textContent = estopLatched ? "release e-stop" : "E-STOP";
  drawLidar(frame);
  drawThermal(frame);
  drawGrid("tactile-canvas", frame.tactile, (v) => forceColor(v));
  renderTasks(frame);
  renderEvents(frame);
}

/** A square pad emitting normalized deflections on pointer/touch drag. */
function bindJoystick(
  padId: string,
  onMove: (x: number, y: number) => void,
  onRelease: () => void,
): void {
  const pad = $(padId);
  const knob = pad.querySelector(".knob") as HTMLElement;
  let tracking = false;

  const update = (clientX: number, clientY: number): void => {
    const rect = pad.getBoundingClientRect();
    const half = rect.width / 2;
    let x = (clientX - rect.left - half) / half;
    let y = -(clientY - rect.top - half) / half;
    const mag = Math.hypot(x, y);
    if (mag > 1) {
      x /= mag;
      y /= mag;
    }
    knob.style.left = `${50 + x * 40}%`;
    knob.style.top = `${50 - y * 40}%`;
    onMove(x, y);
  };

  const release = (): void => {
    if (!tracking) return;
    tracking = false;
    knob.style.left = "50%";
    knob.style.top = "50%";
    onRelease();
  };

  pad.addEventListener("pointerdown", (ev) => {
    tracking = true;
    pad.setPointerCapture(ev.pointerId);
    update(ev.clientX, ev.clientY);
  });
  pad.addEventListener("pointermove", (ev) => {
    if (tracking) update(ev.clientX, ev.clientY);
  });
  pad.addEventListener("pointerup", release);
  pad.addEventListener("pointercancel", release);
}

function connect(): void {
  client?.close();
  const url = $<HTMLInputElement>("ws-url").value;
  client = new TeleopClient(url);
  client.onStatus = (status) => {
    setStatusBadge(
      status,
      status === "connected"
        ? "ok"
        : status === "connecting"
          ? "warn"
          : "err",
    );
  };
  client.onTelemetry = onFrame;
  client.onServerError = (reason) => {
    $("event-log").textContent = `server error: ${reason}\n` +
      $("event-log").textContent;
  };
  client.connect();
}

function main(): void {
  $("connect-btn").addEventListener("click", connect);

  bindJoystick(
    "base-pad",
    (x, y) => client?.send(joystickToCmdVel(x, y)),
    () => client?.send(joystickToCmdVel(0, 0)),
  );
  bindJoystick(
    "head-pad",
    (x, y) => client?.send(joystickToHead(x, y)),
    () => client?.send(joystickToHead(0, 0)),
  );

  $("estop-btn").addEventListener("click", () => {
    client?.send(estopCmd(!estopLatched));
  });

  $("demo-fall").addEventListener("click", () => {
    const personId = $<HTMLInputElement>("person-id").value || "resident";
    client?.send(injectCmd({ kind: "person_fall", person_id: personId }));
  });
  $("demo-respond").addEventListener("click", () => {
    const personId = $<HTMLInputElement>("person-id").value || "resident";
    client?.send(injectCmd({ kind: "person_respond", person_id: personId }));
  });
  $("demo-place").addEventListener("click", () => {
    client?.send(
      injectCmd({
        kind: "place_object",
        where: "on_table",
        tile: [7.0, 6.5],
        object: { id: "demo_mug", kind: "mug", mass: 0.45, footprint_radius: 0.04 },
      }),
    );
  });
  $("demo-speak").addEventListener("click", () => {
    const personId = $<HTMLInputElement>("person-id").value || "resident";
    const text = $<HTMLInputElement>("speak-text").value || "bring me tea";
    client?.send(speakCmd(personId, text));
  });

  connect();
}

document.addEventListener("DOMContentLoaded", main);
