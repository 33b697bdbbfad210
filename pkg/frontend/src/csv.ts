// Reader for the telemetry CSV files written by the ground-unit CLI.
// The schema is fixed: 17 columns, 14 numeric, LF line endings.

import { TelemetrySample } from "./protocol.js";

export const CSV_COLUMNS = [
  "t", "theta", "phi", "gamma", "v", "F_total", "F_power", "F_left",
  "F_right", "delta", "z", "steer_cmd", "power_cmd", "mode", "status",
  "wind", "flags",
] as const;

const STRING_COLUMNS = new Set(["mode", "status", "flags"]);

export function parseTelemetryCsv(text: string): TelemetrySample[] {
  const lines = text.split("\n");
  if (!lines.length || lines[0].trim() === "") {
    throw new Error("telemetry CSV: no header");
  }
  const header = lines[0].split(",");
  if (header.length !== CSV_COLUMNS.length ||
      header.some((name, i) => name !== CSV_COLUMNS[i])) {
    throw new Error(`telemetry CSV: unexpected header: ${lines[0]}`);
  }
  const samples: TelemetrySample[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i];
    if (line === "") continue;
    const parts = line.split(",");
    if (parts.length !== CSV_COLUMNS.length) {
      throw new Error(
        `telemetry CSV line ${i + 1}: expected ${CSV_COLUMNS.length} ` +
        `fields, got ${parts.length}`);
    }
    const record: Record<string, number | string> = {};
    for (let c = 0; c < CSV_COLUMNS.length; c++) {
      const name = CSV_COLUMNS[c];
      if (STRING_COLUMNS.has(name)) {
        record[name] = parts[c];
      } else {
        const value = Number(parts[c]);
        if (parts[c] === "" || !Number.isFinite(value)) {
          throw new Error(
            `telemetry CSV line ${i + 1}: column ${name}: ` +
            `not a number: ${JSON.stringify(parts[c])}`);
        }
        record[name] = value;
      }
    }
    samples.push(record as unknown as TelemetrySample);
  }
  return samples;
}
