/**
 * Full-stack round trip against the real Python gateway on localhost:
 * joystick commands show up in telemetry within 200 ms, the patrol
 * fixture produces a hotspot marker, and the task queue reflects the
 * Suspended/Executing transitions of the fall-preemption demo.
 *
 * Skipped automatically if the Python package is not importable.
 */

import { spawn, spawnSync } from "node:child_process";
import { fileURLToPath } from "node:url";
import { WebSocket } from "ws";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { TeleopClient, SocketLike } from "../src/client.js";
import { injectCmd, joystickToCmdVel, TelemetryFrame } from "../src/protocol.js";
import { hotspotMarkers, taskRows } from "../src/render.js";

const repoRoot = fileURLToPath(new URL("../..", import.meta.url));
const PORT = 8931;

const havePython =
  spawnSync("python3", ["-c", "import assistbot"], { cwd: repoRoot })
    .status === 0;

const wsFactory = (url: string): SocketLike =>
  new WebSocket(url) as unknown as SocketLike;

function waitForFrame(
  client: TeleopClient,
  predicate: (f: TelemetryFrame) => boolean,
  timeoutMs: number,
): Promise<TelemetryFrame> {
  return new Promise((resolve, reject) => {
    const timer = setTimeout(
      () => reject(new Error(`no matching frame within ${timeoutMs} ms`)),
      timeoutMs,
    );
    const prev = client.onTelemetry;
    client.onTelemetry = (frame) => {
      prev(frame);
      if (predicate(frame)) {
        clearTimeout(timer);
        client.onTelemetry = prev;
        resolve(frame);
      }
    };
  });
}

describe.runIf(havePython)("gateway round trip", () => {
  let server: ReturnType<typeof spawn>;
  let client: TeleopClient;

  beforeAll(async () => {
    server = spawn(
      "python3",
      [
        "-m", "assistbot.cli",
        "--config", "configs/patrol_hazard.yaml",
        "--scenario", "patrol",
        "--seed", "42",
        "--serve", `127.0.0.1:${PORT}`,
      ],
      { cwd: repoRoot, stdio: ["ignore", "ignore", "pipe"] },
    );
    client = new TeleopClient(`ws://127.0.0.1:${PORT}`, {
      socketFactory: wsFactory,
      reconnectDelayMs: 200,
    });
    client.connect();
    await waitForFrame(client, () => true, 15_000);
  }, 20_000);

  afterAll(() => {
    client?.close();
    server?.kill();
  });

  it("reflects a joystick command in telemetry within 200 ms", async () => {
    const started = Date.now();
    client.send(joystickToCmdVel(0, 0.6));
    await waitForFrame(client, (f) => f.base_cmd[0] === 0.6, 1_000);
    expect(Date.now() - started).toBeLessThan(200);
  });

  it("shows a hotspot marker once the patrol fixture heats the view", async () => {
    const frame = await waitForFrame(
      client,
      (f) => hotspotMarkers(f.thermal).length > 0,
      20_000,
    );
    const markers = hotspotMarkers(frame.thermal);
    expect(markers[0].peak).toBe(70);
  }, 25_000);

  it("task queue shows Suspended/Executing during fall preemption", async () => {
    client.send(injectCmd({ kind: "person_fall", person_id: "resident" }));
    const preempted = await waitForFrame(client, (f) => {
      const rows = taskRows(f);
      return (
        rows.some((r) => r.name.startsWith("fall_response") && r.active &&
          r.state === "Executing") &&
        rows.some((r) => r.name === "patrol" && r.state === "Suspended")
      );
    }, 10_000);
    expect(preempted.active_task?.priority).toBe(100);
    client.send(injectCmd({ kind: "person_respond", person_id: "resident" }));
    await waitForFrame(client, (f) =>
      taskRows(f).some(
        (r) => r.name === "patrol" && r.state === "Executing",
      ), 30_000);
  }, 45_000);
});
