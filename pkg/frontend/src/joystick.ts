// Virtual 2-axis joystick to command-frame pipeline. The steering axis maps
// [-1, 1] onto the full carriage stroke and the power axis [-1, 0] onto
// center-line shortening; the service does the scaling, we pass raw axes.
// Frames go out at most at MAX_SEND_HZ and only when an axis moved beyond
// the deadband (or the mode changed), so holding the stick still is silent.

import { encodeCommand, encodeMode, Mode } from "./protocol.js";

export const DEADBAND = 0.01;
export const MAX_SEND_HZ = 30;

// Display conversions: the UI shows steering in carriage meters (line-length
// difference is 4x that) and power in meters of center-line shortening.
export const CARRIAGE_LIMIT_M = 0.35;
export const LINE_MULTIPLIER = 4;
export const POWER_RANGE_M = 0.5;

export function clampAxis(value: number, lo = -1, hi = 1): number {
  return Math.min(hi, Math.max(lo, value));
}

export function steeringToCarriageMeters(axis: number): number {
  return clampAxis(axis) * CARRIAGE_LIMIT_M;
}

export function powerToMeters(axis: number): number {
  return clampAxis(axis, -1, 0) * POWER_RANGE_M;
}

export interface SentFrame {
  text: string;
  seq: number;
}

export class CommandSender {
  private seq = 0;
  private lastSteering: number | null = null;
  private lastPower: number | null = null;
  private lastSendMs = -Infinity;
  private readonly minIntervalMs = 1000 / MAX_SEND_HZ;

  constructor(private readonly now: () => number = () => Date.now()) {}

  get lastSeq(): number {
    return this.seq;
  }

  // Returns the encoded frame to send, or null when suppressed by the
  // deadband or the rate limit.
  command(steering: number, power: number): SentFrame | null {
    const s = clampAxis(steering);
    const p = clampAxis(power, -1, 0);
    const moved =
      this.lastSteering === null ||
      this.lastPower === null ||
      Math.abs(s - this.lastSteering) > DEADBAND ||
      Math.abs(p - this.lastPower) > DEADBAND;
    if (!moved) return null;
    const t = this.now();
    if (t - this.lastSendMs < this.minIntervalMs) return null;
    this.lastSendMs = t;
    this.lastSteering = s;
    this.lastPower = p;
    this.seq += 1;
    return { text: encodeCommand(this.seq, s, p), seq: this.seq };
  }

  // Mode changes always go out (rate limit does not apply to them).
  mode(mode: Mode): SentFrame {
    this.seq += 1;
    return { text: encodeMode(this.seq, mode), seq: this.seq };
  }
}

// Keyboard fallback: arrows steer/power, released keys spring back to zero.
export function axesFromKeys(pressed: Set<string>): {
  steering: number;
  power: number;
} {
  let steering = 0;
  if (pressed.has("ArrowLeft")) steering -= 1;
  if (pressed.has("ArrowRight")) steering += 1;
  // down = de-power (shorten the center line); up releases it
  const power = pressed.has("ArrowDown") ? -1 : 0;
  return { steering, power };
}
