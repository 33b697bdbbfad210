import { readFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { parseTelemetryCsv } from "../src/csv.js";
import { TelemetrySample } from "../src/protocol.js";
import {
  TrajectoryBuffer, countCenterCrossings, projectToWindow,
} from "../src/trajectory.js";

const FIXTURES = join(__dirname, "fixtures");

function sampleAt(theta: number, phi: number): TelemetrySample {
  return {
    t: 0, theta, phi, gamma: 0, v: 10, F_total: 0, F_power: 0, F_left: 0,
    F_right: 0, delta: 0, z: 0, steer_cmd: 0, power_cmd: 0,
    mode: "auto", status: "flying", wind: 3.4, flags: "",
  };
}

describe("wind-window projection", () => {
  it("puts the zenith at top center", () => {
    const p = projectToWindow(Math.PI / 2, 0, 30);
    expect(p.x).toBeCloseTo(0, 12);
    expect(p.y).toBeCloseTo(30, 12);
  });

  it("keeps the downwind meridian on the vertical axis", () => {
    for (const theta of [0.1, 0.4, 0.9, 1.4]) {
      expect(projectToWindow(theta, 0, 30).x).toBe(0);
    }
  });

  it("is mirror symmetric in azimuth", () => {
    const a = projectToWindow(0.5, 0.4, 30);
    const b = projectToWindow(0.5, -0.4, 30);
    expect(a.x).toBeCloseTo(-b.x, 12);
    expect(a.y).toBeCloseTo(b.y, 12);
  });
});

describe("trajectory buffer", () => {
  it("is bounded at its capacity", () => {
    const buffer = new TrajectoryBuffer(100);
    for (let i = 0; i < 500; i++) {
      buffer.push(sampleAt(0.5, Math.sin(i * 0.1)), 30);
    }
    expect(buffer.length).toBe(100);
  });

  it("keeps the most recent point", () => {
    const buffer = new TrajectoryBuffer(3);
    buffer.push(sampleAt(0.2, 0), 30);
    buffer.push(sampleAt(0.9, 0), 30);
    expect(buffer.latest()!.y).toBeCloseTo(30 * Math.sin(0.9), 12);
  });

  it("rejects a zero capacity", () => {
    expect(() => new TrajectoryBuffer(0)).toThrow(/capacity/);
  });
});

describe("figure-eight counting", () => {
  it("counts a clean weave once per crossing", () => {
    expect(countCenterCrossings(
      [0.3, 0.15, 0, -0.15, -0.3, -0.15, 0, 0.15, 0.3])).toBe(2);
  });

  it("does not double count jitter inside the band", () => {
    expect(countCenterCrossings([0.3, 0.05, -0.05, 0.05, -0.05, -0.3]))
      .toBe(1);
    expect(countCenterCrossings([0.05, -0.05, 0.08, -0.08])).toBe(0);
  });

  it("matches the headless summary on a replayed 60 s log", () => {
    const samples = parseTelemetryCsv(
      readFileSync(join(FIXTURES, "run60.csv"), "utf-8"));
    const summary = JSON.parse(
      readFileSync(join(FIXTURES, "run60.summary.json"), "utf-8"));
    const buffer = new TrajectoryBuffer(samples.length);
    for (const s of samples) buffer.push(s, 30);
    expect(buffer.figureEightCount()).toBe(summary.figure_eight_count);
  });
});
