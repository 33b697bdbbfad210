// Strip-chart data model: three stacked scrolling traces (total line force,
// steering input in carriage meters, power input) over a sliding window.
// Pure data preparation lives here so it is testable headless; the canvas
// drawing in console.ts consumes these series.

import { TelemetrySample } from "./protocol.js";
import { steeringToCarriageMeters, powerToMeters } from "./joystick.js";

export const WINDOW_S = 30;

export interface Series {
  label: string;
  unit: string;
  t: number[];
  values: number[];
}

export class StripCharts {
  private samples: TelemetrySample[] = [];

  constructor(readonly windowS: number = WINDOW_S) {}

  get length(): number {
    return this.samples.length;
  }

  push(sample: TelemetrySample): void {
    this.samples.push(sample);
    const cutoff = sample.t - this.windowS;
    // samples arrive in time order, so trimming from the front suffices
    let drop = 0;
    while (drop < this.samples.length && this.samples[drop].t < cutoff) {
      drop += 1;
    }
    if (drop > 0) this.samples = this.samples.slice(drop);
  }

  series(): Series[] {
    const t = this.samples.map((s) => s.t);
    return [
      {
        label: "total line force",
        unit: "N",
        t,
        values: this.samples.map((s) => s.F_total),
      },
      {
        // carriage meters; the line-length difference is 4x this value
        label: "steering input",
        unit: "m",
        t,
        values: this.samples.map((s) => s.steer_cmd),
      },
      {
        label: "power input",
        unit: "m",
        t,
        values: this.samples.map((s) => s.power_cmd),
      },
    ];
  }
}

export function peakIndex(values: readonly number[]): number {
  let best = 0;
  for (let i = 1; i < values.length; i++) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

// Joystick echo for the HUD: what the current axes mean in meters.
export function describeAxes(steering: number, power: number): string {
  const carriage = steeringToCarriageMeters(steering);
  const lines = carriage * 4;
  const depower = powerToMeters(power);
  return (
    `carriage ${carriage.toFixed(3)} m (lines ${lines.toFixed(3)} m), ` +
    `de-power ${depower.toFixed(3)} m`
  );
}
