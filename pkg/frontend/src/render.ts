/**
 * Pure view-model functions: everything here maps a telemetry frame (and
 * nothing else) to drawable geometry, colours or row data, so the panels
 * are snapshot-testable without a DOM.
 */

import { EventRecord, LIMITS, TaskInfo, TelemetryFrame } from "./protocol.js";

export interface Point {
  x: number;
  y: number;
}

/**
 * Lidar ranges to canvas points for a polar plot: the robot sits at the
 * centre of a square canvas, heading up; ray i is i degrees
 * counter-clockwise from the heading.
 */
export function lidarPoints(ranges: number[], canvasSize: number): Point[] {
  const half = canvasSize / 2;
  const scale = half / LIMITS.lidar_max_range;
  return ranges.map((r, deg) => {
    const angle = (deg * Math.PI) / 180 + Math.PI / 2; // heading up
    return {
      x: half + Math.cos(angle) * r * scale,
      y: half - Math.sin(angle) * r * scale,
    };
  });
}

/** Map a temperature to a blue->red heatmap colour. */
export function temperatureColor(
  celsius: number,
  min = 20,
  max = 90,
): string {
  const t = Math.min(1, Math.max(0, (celsius - min) / (max - min)));
  const r = Math.round(40 + 215 * t);
  const g = Math.round(60 + 40 * (1 - Math.abs(2 * t - 1)));
  const b = Math.round(255 - 215 * t);
  return `rgb(${r},${g},${b})`;
}

/** Map a tile force (newtons) to a grey->green colour. */
export function forceColor(newtons: number, max = 5): string {
  const t = Math.min(1, Math.max(0, newtons / max));
  const g = Math.round(40 + 200 * t);
  return `rgb(30,${g},40)`;
}

export interface HotspotMarker {
  col: number;
  row: number;
  peak: number;
}

/**
 * Hot connected regions of a thermal grid (4-connected, >= threshold),
 * reduced to their pixel centroid and peak temperature, for drawing
 * markers over the heatmap.
 */
export function hotspotMarkers(
  thermal: number[][],
  threshold = 45,
): HotspotMarker[] {
  const rows = thermal.length;
  const cols = rows > 0 ? thermal[0].length : 0;
  const seen: boolean[][] = thermal.map((row) => row.map(() => false));
  const markers: HotspotMarker[] = [];
  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) {
      if (seen[r][c] || thermal[r][c] < threshold) continue;
      let sumR = 0;
      let sumC = 0;
      let count = 0;
      let peak = -Infinity;
      const stack: Array<[number, number]> = [[r, c]];
      seen[r][c] = true;
      while (stack.length > 0) {
        const [cr, cc] = stack.pop()!;
        sumR += cr;
        sumC += cc;
        count += 1;
        peak = Math.max(peak, thermal[cr][cc]);
        for (const [nr, nc] of [
          [cr - 1, cc],
          [cr + 1, cc],
          [cr, cc - 1],
          [cr, cc + 1],
        ] as Array<[number, number]>) {
          if (
            nr >= 0 && nr < rows && nc >= 0 && nc < cols &&
            !seen[nr][nc] && thermal[nr][nc] >= threshold
          ) {
            seen[nr][nc] = true;
            stack.push([nr, nc]);
          }
        }
      }
      markers.push({ col: sumC / count, row: sumR / count, peak });
    }
  }
  return markers;
}

export interface TaskRow {
  id: number;
  name: string;
  state: string;
  priority: number;
  active: boolean;
}

/** Task queue rows, highest priority first, active task flagged. */
export function taskRows(frame: TelemetryFrame): TaskRow[] {
  return [...frame.tasks]
    .sort((a, b) => b.priority - a.priority || a.id - b.id)
    .map((t: TaskInfo) => ({
      ...t,
      active: frame.active_task !== null && frame.active_task.id === t.id,
    }));
}

/** Event log lines, newest first. */
export function eventLines(events: EventRecord[], limit = 32): string[] {
  return events
    .slice(-limit)
    .reverse()
    .map((e) => `t=${e.t.toFixed(1)}s  ${e.kind}  ${JSON.stringify(e.payload)}`);
}

/** One-line pose/status summary for the header bar. */
export function statusLine(frame: TelemetryFrame): string {
  const { x, y, theta } = frame.pose;
  const parts = [
    `t=${frame.timestamp.toFixed(1)}s`,
    `pose (${x.toFixed(2)}, ${y.toFixed(2)}, ${theta.toFixed(2)})`,
    `cmd [${frame.base_cmd[0].toFixed(2)}, ${frame.base_cmd[1].toFixed(2)}]`,
  ];
  if (frame.estop) parts.push("E-STOP");
  if (frame.collided) parts.push("collided");
  return parts.join("  |  ");
}
