// Console state: immutable-ish snapshot updated by network events and read
// by the render loop. Never extrapolates — everything rendered originates
// from a received sample.

import { InboundFrame, TelemetryFrame, Mode } from "./protocol.js";
import { TrajectoryBuffer, DEFAULT_CAPACITY } from "./trajectory.js";
import { StripCharts } from "./charts.js";

export type Connection = "disconnected" | "connecting" | "connected";

export class ConsoleState {
  connection: Connection = "disconnected";
  latest: TelemetryFrame | null = null;
  trajectory: TrajectoryBuffer;
  charts = new StripCharts();
  joystick = { steering: 0, power: 0 };
  mode: Mode = "manual";
  errorCount = 0;
  lastError = "";
  // command echo tracking: frames seen between sending a command and the
  // service reporting it applied
  private pendingSeq: number | null = null;
  private framesSinceSend = 0;
  echoFrames: number | null = null;

  constructor(readonly tetherLength: number,
              trajectoryCapacity: number = DEFAULT_CAPACITY) {
    this.trajectory = new TrajectoryBuffer(trajectoryCapacity);
  }

  setJoystick(steering: number, power: number): void {
    this.joystick = {
      steering: Math.min(1, Math.max(-1, steering)),
      power: Math.min(0, Math.max(-1, power)),
    };
  }

  commandSent(seq: number): void {
    this.pendingSeq = seq;
    this.framesSinceSend = 0;
  }

  ingest(frame: InboundFrame): void {
    if (frame.type === "error") {
      this.errorCount += 1;
      this.lastError = frame.message;
      return;
    }
    this.latest = frame;
    this.trajectory.push(frame.sample, this.tetherLength);
    this.charts.push(frame.sample);
    if (this.pendingSeq !== null) {
      this.framesSinceSend += 1;
      if (frame.applied_seq >= this.pendingSeq) {
        this.echoFrames = this.framesSinceSend;
        this.pendingSeq = null;
      }
    }
  }
}
