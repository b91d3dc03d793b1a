/**
 * Wire types and command builders for the gateway protocol.
 *
 * The authoritative contract is schema/messages.json at the repository
 * root; the limits below mirror it and the test suite checks they stay
 * in sync.
 */

export const LIMITS = {
  v_max: 1.0,
  w_max: 1.5,
  pan_limit: 1.3,
  tilt_min: -0.98,
  tilt_max: 0.72,
  lidar_max_range: 10.0,
} as const;

export const COMMAND_RATE_HZ = 10;

export type TaskState =
  | "Waiting"
  | "Executing"
  | "Suspended"
  | "Finished"
  | "Terminated";

export interface TaskInfo {
  id: number;
  name: string;
  state: TaskState;
  priority: number;
}

export interface EventRecord {
  t: number;
  kind: string;
  payload: Record<string, unknown>;
}

export interface TelemetryFrame {
  type: "telemetry";
  timestamp: number;
  pose: { x: number; y: number; theta: number };
  head: { pan: number; tilt: number };
  base_cmd: [number, number];
  collided: boolean;
  estop: boolean;
  active_task: TaskInfo | null;
  tasks: TaskInfo[];
  lidar: number[];
  thermal: number[][];
  tactile: number[][];
  events: EventRecord[];
}

export interface ErrorMessage {
  type: "error";
  reason: string;
}

export type ServerMessage =
  | { kind: "telemetry"; frame: TelemetryFrame }
  | { kind: "error"; reason: string }
  | { kind: "invalid"; reason: string };

export type Command =
  | { type: "cmd_vel"; v: number; w: number }
  | { type: "head"; pan: number; tilt: number }
  | { type: "estop"; engaged: boolean }
  | { type: "speak"; person_id: string; text: string }
  | { type: "inject"; event: { kind: string } & Record<string, unknown> };

const clamp = (v: number, lo: number, hi: number): number =>
  Math.min(hi, Math.max(lo, v));

const isFinite2 = (v: unknown): v is number =>
  typeof v === "number" && Number.isFinite(v);

function isGrid(value: unknown, rows: number, cols: number): boolean {
  return (
    Array.isArray(value) &&
    value.length === rows &&
    value.every(
      (row) =>
        Array.isArray(row) && row.length === cols && row.every(isFinite2),
    )
  );
}

function isTaskInfo(value: unknown): value is TaskInfo {
  if (typeof value !== "object" || value === null) return false;
  const t = value as Record<string, unknown>;
  return (
    isFinite2(t.id) &&
    typeof t.name === "string" &&
    typeof t.state === "string" &&
    isFinite2(t.priority)
  );
}

/** Total parse of one websocket text frame; never throws. */
export function parseServerMessage(text: string): ServerMessage {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch {
    return { kind: "invalid", reason: "not valid JSON" };
  }
  if (typeof doc !== "object" || doc === null) {
    return { kind: "invalid", reason: "message must be a JSON object" };
  }
  const msg = doc as Record<string, unknown>;
  if (msg.type === "error") {
    return {
      kind: "error",
      reason: typeof msg.reason === "string" ? msg.reason : "unknown error",
    };
  }
  if (msg.type !== "telemetry") {
    return { kind: "invalid", reason: `unknown message type ${msg.type}` };
  }
  const pose = msg.pose as Record<string, unknown> | undefined;
  const head = msg.head as Record<string, unknown> | undefined;
  if (
    !pose || !isFinite2(pose.x) || !isFinite2(pose.y) || !isFinite2(pose.theta)
  ) {
    return { kind: "invalid", reason: "telemetry pose malformed" };
  }
  if (!head || !isFinite2(head.pan) || !isFinite2(head.tilt)) {
    return { kind: "invalid", reason: "telemetry head malformed" };
  }
  if (!isFinite2(msg.timestamp)) {
    return { kind: "invalid", reason: "telemetry timestamp malformed" };
  }
  if (
    !Array.isArray(msg.base_cmd) ||
    msg.base_cmd.length !== 2 ||
    !msg.base_cmd.every(isFinite2)
  ) {
    return { kind: "invalid", reason: "telemetry base_cmd malformed" };
  }
  if (!Array.isArray(msg.lidar) || msg.lidar.length !== 360 ||
      !msg.lidar.every(isFinite2)) {
    return { kind: "invalid", reason: "telemetry lidar malformed" };
  }
  if (!isGrid(msg.thermal, 24, 32)) {
    return { kind: "invalid", reason: "telemetry thermal grid malformed" };
  }
  if (!isGrid(msg.tactile, 15, 14)) {
    return { kind: "invalid", reason: "telemetry tactile grid malformed" };
  }
  if (msg.active_task !== null && !isTaskInfo(msg.active_task)) {
    return { kind: "invalid", reason: "telemetry active_task malformed" };
  }
  if (!Array.isArray(msg.tasks) || !msg.tasks.every(isTaskInfo)) {
    return { kind: "invalid", reason: "telemetry tasks malformed" };
  }
  if (!Array.isArray(msg.events)) {
    return { kind: "invalid", reason: "telemetry events malformed" };
  }
  return { kind: "telemetry", frame: msg as unknown as TelemetryFrame };
}

export function cmdVel(v: number, w: number): Command {
  return {
    type: "cmd_vel",
    v: clamp(v, -LIMITS.v_max, LIMITS.v_max),
    w: clamp(w, -LIMITS.w_max, LIMITS.w_max),
  };
}

export function headCmd(pan: number, tilt: number): Command {
  return {
    type: "head",
    pan: clamp(pan, -LIMITS.pan_limit, LIMITS.pan_limit),
    tilt: clamp(tilt, LIMITS.tilt_min, LIMITS.tilt_max),
  };
}

export function estopCmd(engaged: boolean): Command {
  return { type: "estop", engaged };
}

export function speakCmd(personId: string, text: string): Command {
  return { type: "speak", person_id: personId, text };
}

export function injectCmd(
  event: { kind: string } & Record<string, unknown>,
): Command {
  return { type: "inject", event };
}

/**
 * Map a joystick deflection (x right, y forward, both in [-1, 1]) onto a
 * velocity command: full forward is the configured maximum speed, and
 * pushing left turns left (positive angular velocity).
 */
export function joystickToCmdVel(x: number, y: number): Command {
  return cmdVel(clamp(y, -1, 1) * LIMITS.v_max, -clamp(x, -1, 1) * LIMITS.w_max);
}

/** Map a joystick deflection onto a head pose command. */
export function joystickToHead(x: number, y: number): Command {
  return headCmd(
    -clamp(x, -1, 1) * LIMITS.pan_limit,
    clamp(y, -1, 1) * (y >= 0 ? LIMITS.tilt_max : -LIMITS.tilt_min),
  );
}

export function encodeCommand(cmd: Command): string {
  return JSON.stringify(cmd);
}
