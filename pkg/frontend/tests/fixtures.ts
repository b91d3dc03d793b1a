import { TelemetryFrame } from "../src/protocol.js";

export function sampleFrame(): TelemetryFrame {
  return {
    type: "telemetry",
    timestamp: 1.5,
    pose: { x: 0.1, y: -0.2, theta: 0.3 },
    head: { pan: 0, tilt: 0 },
    base_cmd: [0.5, 0],
    collided: false,
    estop: false,
    active_task: { id: 1, name: "patrol", state: "Executing", priority: 20 },
    tasks: [
      { id: 1, name: "patrol", state: "Executing", priority: 20 },
      { id: 2, name: "listening", state: "Waiting", priority: 0 },
    ],
    lidar: Array(360).fill(10),
    thermal: Array.from({ length: 24 }, () => Array(32).fill(22)),
    tactile: Array.from({ length: 15 }, () => Array(14).fill(0)),
    events: [{ t: 1.0, kind: "patrol_lap", payload: { laps: 1 } }],
  };
}
