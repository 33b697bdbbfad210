// Wire protocol for the ground-unit WebSocket service. JSON text frames;
// the service echoes applied command sequence numbers in every telemetry
// frame, which is how the console confirms a command took effect.

export const SCHEMA_VERSION = 1;

export type Mode = "manual" | "auto";

export interface CommandFrame {
  type: "cmd";
  seq: number;
  steering: number; // joystick axis in [-1, 1]
  power: number;    // joystick axis in [-1, 0]; positive is ignored upstream
}

export interface ModeFrame {
  type: "mode";
  seq: number;
  mode: Mode;
}

export interface ConfigFrame {
  type: "config";
  seq: number;
  wind_speed_m_s: number;
}

export type OutboundFrame = CommandFrame | ModeFrame | ConfigFrame;

export interface TelemetrySample {
  t: number;
  theta: number;
  phi: number;
  gamma: number;
  v: number;
  F_total: number;
  F_power: number;
  F_left: number;
  F_right: number;
  delta: number;
  z: number;
  steer_cmd: number;
  power_cmd: number;
  mode: string;
  status: string;
  wind: number;
  flags: string;
}

export interface TelemetryFrame {
  type: "telemetry";
  seq: number;
  schema: number;
  sample: TelemetrySample;
  applied_seq: number;
  applied_latency_steps: number;
  dropped: number;
  errors: number;
  stale: number;
}

export interface ErrorFrame {
  type: "error";
  message: string;
}

export type InboundFrame = TelemetryFrame | ErrorFrame;

const NUMERIC_SAMPLE_KEYS: (keyof TelemetrySample)[] = [
  "t", "theta", "phi", "gamma", "v", "F_total", "F_power", "F_left",
  "F_right", "delta", "z", "steer_cmd", "power_cmd", "wind",
];

export function encodeCommand(seq: number, steering: number,
                              power: number): string {
  if (!(steering >= -1 && steering <= 1) || !(power >= -1 && power <= 1)) {
    throw new Error(`axis out of range: steering=${steering} power=${power}`);
  }
  const frame: CommandFrame = { type: "cmd", seq, steering, power };
  return JSON.stringify(frame);
}

export function encodeMode(seq: number, mode: Mode): string {
  const frame: ModeFrame = { type: "mode", seq, mode };
  return JSON.stringify(frame);
}

export function encodeWind(seq: number, windSpeed: number): string {
  if (!Number.isFinite(windSpeed) || windSpeed < 0) {
    throw new Error(`invalid wind speed: ${windSpeed}`);
  }
  const frame: ConfigFrame = { type: "config", seq, wind_speed_m_s: windSpeed };
  return JSON.stringify(frame);
}

// Parse and validate an inbound frame; throws on anything malformed so the
// caller can count the error and keep the connection alive.
export function parseInbound(text: string): InboundFrame {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    throw new Error("inbound frame is not valid JSON");
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new Error("inbound frame must be a JSON object");
  }
  const obj = raw as Record<string, unknown>;
  if (obj.type === "error") {
    if (typeof obj.message !== "string") {
      throw new Error("error frame carries no message");
    }
    return { type: "error", message: obj.message };
  }
  if (obj.type !== "telemetry") {
    throw new Error(`unknown inbound frame type: ${String(obj.type)}`);
  }
  if (obj.schema !== SCHEMA_VERSION) {
    throw new Error(`unsupported telemetry schema: ${String(obj.schema)}`);
  }
  const sample = obj.sample as Record<string, unknown> | undefined;
  if (typeof sample !== "object" || sample === null) {
    throw new Error("telemetry frame carries no sample");
  }
  for (const key of NUMERIC_SAMPLE_KEYS) {
    const value = sample[key];
    if (typeof value !== "number" || !Number.isFinite(value)) {
      throw new Error(`telemetry sample field ${key} is not a finite number`);
    }
  }
  for (const key of ["mode", "status", "flags"]) {
    if (typeof sample[key] !== "string") {
      throw new Error(`telemetry sample field ${key} is not a string`);
    }
  }
  for (const key of ["seq", "applied_seq", "applied_latency_steps",
                     "dropped", "errors", "stale"]) {
    if (typeof obj[key] !== "number") {
      throw new Error(`telemetry frame field ${key} is not a number`);
    }
  }
  return obj as unknown as TelemetryFrame;
}
