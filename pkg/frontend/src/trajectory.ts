// Wind-window trajectory model: samples projected onto the vertical plane
// perpendicular to the wind (x = lateral, y = height, as seen from the
// ground unit) and kept in a bounded ring buffer.

import { TelemetrySample } from "./protocol.js";

export const DEFAULT_CAPACITY = 2000;

// Re-arm band for counting downwind-meridian crossings; must match the
// headless summary so the two counts are comparable sample-for-sample.
export const CROSSING_HYSTERESIS_RAD = 0.1;

export interface Point {
  x: number;
  y: number;
}

export function projectToWindow(theta: number, phi: number,
                                tetherLength: number): Point {
  return {
    x: tetherLength * Math.cos(theta) * Math.sin(phi),
    y: tetherLength * Math.sin(theta),
  };
}

export class TrajectoryBuffer {
  private readonly points: Point[] = [];
  private readonly azimuths: number[] = [];

  constructor(readonly capacity: number = DEFAULT_CAPACITY) {
    if (capacity < 1) throw new Error("capacity must be >= 1");
  }

  get length(): number {
    return this.points.length;
  }

  push(sample: TelemetrySample, tetherLength: number): void {
    this.points.push(projectToWindow(sample.theta, sample.phi, tetherLength));
    this.azimuths.push(sample.phi);
    if (this.points.length > this.capacity) {
      this.points.shift();
      this.azimuths.shift();
    }
  }

  trace(): readonly Point[] {
    return this.points;
  }

  latest(): Point | null {
    return this.points.length
      ? this.points[this.points.length - 1]
      : null;
  }

  figureEightCount(): number {
    return countCenterCrossings(this.azimuths) >> 1;
  }
}

// Sign flips of the azimuth with a hysteresis re-arm band, same algorithm
// as the headless run summary: a flip counts only after |phi| left the
// band, so jitter around zero is not double counted.
export function countCenterCrossings(
  phi: readonly number[],
  hysteresis: number = CROSSING_HYSTERESIS_RAD,
): number {
  let crossings = 0;
  let armedSign = 0;
  for (const value of phi) {
    if (Math.abs(value) >= hysteresis) {
      const sign = value > 0 ? 1 : -1;
      if (armedSign === 0) {
        armedSign = sign;
      } else if (sign !== armedSign) {
        crossings += 1;
        armedSign = sign;
      }
    }
  }
  return crossings;
}
