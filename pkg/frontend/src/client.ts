/**
 * Reconnecting websocket client with a rate-limited command channel.
 *
 * Commands of the continuous kinds (cmd_vel, head) are throttled to the
 * protocol's 10 Hz: at most one message per 100 ms per kind, always
 * flushing the latest value, so a joystick release (zero command) is
 * never lost. E-stop and discrete commands bypass the throttle.
 */

import {
  Command,
  COMMAND_RATE_HZ,
  encodeCommand,
  parseServerMessage,
  TelemetryFrame,
} from "./protocol.js";

export type ConnectionStatus = "connecting" | "connected" | "disconnected";

/** The subset of the WebSocket API the client needs (injectable for tests). */
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface ClientOptions {
  socketFactory?: SocketFactory;
  reconnectDelayMs?: number;
  commandIntervalMs?: number;
}

const defaultFactory: SocketFactory = (url) =>
  new WebSocket(url) as unknown as SocketLike;

export class TeleopClient {
  readonly url: string;
  status: ConnectionStatus = "disconnected";
  lastFrame: TelemetryFrame | null = null;

  onTelemetry: (frame: TelemetryFrame) => void = () => {};
  onServerError: (reason: string) => void = () => {};
  onStatus: (status: ConnectionStatus) => void = () => {};

  private readonly factory: SocketFactory;
  private readonly reconnectDelayMs: number;
  private readonly commandIntervalMs: number;
  private socket: SocketLike | null = null;
  private closedByUser = false;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private lastSentAt = new Map<string, number>();
  private pending = new Map<string, Command>();
  private flushTimers = new Map<string, ReturnType<typeof setTimeout>>();

  constructor(url: string, options: ClientOptions = {}) {
    this.url = url;
    this.factory = options.socketFactory ?? defaultFactory;
    this.reconnectDelayMs = options.reconnectDelayMs ?? 1000;
    this.commandIntervalMs =
      options.commandIntervalMs ?? 1000 / COMMAND_RATE_HZ;
  }

  connect(): void {
    this.closedByUser = false;
    this.open();
  }

  close(): void {
    this.closedByUser = true;
    if (this.reconnectTimer !== null) clearTimeout(this.reconnectTimer);
    this.reconnectTimer = null;
    for (const timer of this.flushTimers.values()) clearTimeout(timer);
    this.flushTimers.clear();
    this.pending.clear();
    this.socket?.close();
    this.socket = null;
    this.setStatus("disconnected");
  }

  /** Queue a command, applying the per-kind rate limit where required. */
  send(cmd: Command): void {
    if (this.status !== "connected" || this.socket === null) return;
    if (cmd.type !== "cmd_vel" && cmd.type !== "head") {
      this.socket.send(encodeCommand(cmd));
      return;
    }
    const now = Date.now();
    const last = this.lastSentAt.get(cmd.type) ?? -Infinity;
    const wait = last + this.commandIntervalMs - now;
    if (wait <= 0) {
      this.lastSentAt.set(cmd.type, now);
      this.socket.send(encodeCommand(cmd));
      return;
    }
    // too soon: remember only the latest value and flush it once allowed
    this.pending.set(cmd.type, cmd);
    if (!this.flushTimers.has(cmd.type)) {
      this.flushTimers.set(
        cmd.type,
        setTimeout(() => this.flush(cmd.type), wait),
      );
    }
  }

  private flush(kind: string): void {
    this.flushTimers.delete(kind);
    const cmd = this.pending.get(kind);
    this.pending.delete(kind);
    if (cmd && this.status === "connected" && this.socket !== null) {
      this.lastSentAt.set(kind, Date.now());
      this.socket.send(encodeCommand(cmd));
    }
  }

  private open(): void {
    this.setStatus("connecting");
    let socket: SocketLike;
    try {
      socket = this.factory(this.url);
    } catch {
      this.scheduleReconnect();
      return;
    }
    this.socket = socket;
    socket.onopen = () => this.setStatus("connected");
    socket.onmessage = (ev) => {
      if (typeof ev.data !== "string") return;
      const msg = parseServerMessage(ev.data);
      if (msg.kind === "telemetry") {
        this.lastFrame = msg.frame;
        this.onTelemetry(msg.frame);
      } else if (msg.kind === "error") {
        this.onServerError(msg.reason);
      }
    };
    socket.onerror = () => {
      /* onclose follows and handles reconnection */
    };
    socket.onclose = () => {
      if (this.socket !== socket) return; // superseded connection
      this.socket = null;
      this.setStatus("disconnected");
      this.scheduleReconnect();
    };
  }

  private scheduleReconnect(): void {
    if (this.closedByUser || this.reconnectTimer !== null) return;
    this.setStatus("disconnected");
    this.reconnectTimer = setTimeout(() => {
      this.reconnectTimer = null;
      if (!this.closedByUser) this.open();
    }, this.reconnectDelayMs);
  }

  private setStatus(status: ConnectionStatus): void {
    if (this.status !== status) {
      this.status = status;
      this.onStatus(status);
    }
  }
}
