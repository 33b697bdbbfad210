"""Closed-loop simulation session: control loop, telemetry, run summary."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.signal import find_peaks

from . import autopilot as ap
from . import sim as simmod
from .config import AppConfig
from .telemetry import TelemetryLog, TelemetrySample

# azimuth must leave this band before another center crossing is counted
CROSSING_HYSTERESIS_RAD = 0.1


class Session:
    """Owns the simulator, the controller and the telemetry log.

    The kinematics advance at the simulation step (100 Hz by default);
    control and telemetry run at the configured control rate (50 Hz).
    Operator inputs arrive as joystick axes plus a mode switch and are
    resolved against the autopilot by the mode arbiter at every control
    step.
    """

    def __init__(self, config: AppConfig, mode: str = ap.AUTO,
                 seed: Optional[int] = None):
        sim_cfg = config.sim
        if seed is not None:
            sim_cfg = simmod.SimConfig(**{**_as_dict(sim_cfg), "seed": seed})
        self.config = config
        self.simulator = simmod.Simulator(
            wing=config.wing, env=config.environment, config=sim_cfg,
            policy=config.partition, limits=config.actuators,
            initial=config.initial)
        self.autopilot = ap.Autopilot(config.autopilot)
        self.mode = mode
        self.steer_axis = 0.0
        self.power_axis = 0.0
        self.log = TelemetryLog(budget_bytes=config.telemetry.budget_bytes)
        steps = 1.0 / (config.serve.control_rate_hz * sim_cfg.dt_s)
        self.steps_per_control = max(1, round(steps))
        self._switch_count = 0

    @property
    def time_s(self) -> float:
        return self.simulator.state.time_s

    @property
    def status(self) -> str:
        return self.simulator.status

    def set_mode(self, mode: str):
        if mode not in (ap.MANUAL, ap.AUTO):
            raise ValueError(f"unknown mode: {mode!r}")
        self.mode = mode

    def set_axes(self, steer: Optional[float] = None,
                 power: Optional[float] = None):
        if steer is not None:
            self.steer_axis = steer
        if power is not None:
            self.power_axis = power

    def control_step(self) -> TelemetrySample:
        """One control-rate iteration: command, advance, sample."""
        sim = self.simulator
        switched = False
        if self.mode == ap.AUTO:
            switched = self.autopilot.maybe_switch(sim.state)
            theta_t, phi_t = self.autopilot.target
            auto_cmd = ap.steering_command(sim.state, self.autopilot.cfg,
                                           theta_t, phi_t)
        else:
            auto_cmd = sim.actuators.steer_pos_m
        if switched:
            self._switch_count += 1
        steer_cmd, power_cmd = ap.mode_arbiter(
            self.mode, self.steer_axis, self.power_axis, auto_cmd,
            sim.actuators.limits)
        sim.actuators.set_commands(steer_cmd, power_cmd)

        forces = sim.forces()
        for _ in range(self.steps_per_control):
            _, forces, _ = sim.step()

        sample = self._sample(forces)
        self.log.record(sample)
        return sample

    def _sample(self, forces: simmod.LineForces) -> TelemetrySample:
        sim = self.simulator
        s = sim.state
        flags = []
        if forces.clamped:
            flags.append("clamp")
        if sim.actuators.overrange:
            flags.append("overrange")
        if self.log.budget_exceeded:
            flags.append("log_budget")
        return TelemetrySample(
            t=s.time_s, theta=s.elevation_rad, phi=s.azimuth_rad,
            gamma=s.heading_rad, v=sim.speed(),
            F_total=forces.total_N, F_power=forces.power_N,
            F_left=forces.left_N, F_right=forces.right_N,
            delta=sim.actuators.delta_m, z=sim.actuators.shortening_m,
            steer_cmd=sim.actuators.steer_cmd_m,
            power_cmd=sim.actuators.power_cmd_m,
            mode=self.mode, status=sim.status,
            wind=sim.wind.sample(s.time_s), flags=";".join(flags))

    def run(self, duration_s: float) -> TelemetryLog:
        """Run the closed loop until the duration elapses or flight ends."""
        end = self.time_s + duration_s
        while self.time_s < end - 1e-12 and self.status == simmod.FLYING:
            self.control_step()
        return self.log


def _as_dict(cfg) -> dict:
    from dataclasses import fields
    return {f.name: getattr(cfg, f.name) for f in fields(cfg)}


# ---------------------------------------------------------------------------
# run summary
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RunSummary:
    duration_s: float
    figure_eight_count: int
    peak_force_N: float
    mean_force_N: float
    min_force_N: float
    force_ratio: float              # max/min over the run (inf if min is 0)
    measured_period_s: Optional[float]
    path_length_m: float
    final_status: str

    def to_dict(self) -> dict:
        from dataclasses import asdict
        return asdict(self)


def count_center_crossings(phi: np.ndarray,
                           hysteresis: float = CROSSING_HYSTERESIS_RAD) -> int:
    """Count crossings of the downwind meridian with a re-arm band.

    A crossing is counted when the azimuth sign flips; the counter re-arms
    only after |phi| exceeded the hysteresis band, so jitter around zero is
    not double counted. A figure-eight crosses the meridian twice.
    """
    crossings = 0
    armed_sign = 0
    for value in phi:
        if abs(value) >= hysteresis:
            sign = 1 if value > 0 else -1
            if armed_sign == 0:
                armed_sign = sign
            elif sign != armed_sign:
                crossings += 1
                armed_sign = sign
    return crossings


def measure_force_period(t: np.ndarray, force: np.ndarray) -> Optional[float]:
    """Dominant oscillation period of the force trace via peak spacing."""
    if len(t) < 3:
        return None
    span = float(force.max() - force.min())
    if span <= 0:
        return None
    peaks, _ = find_peaks(force, prominence=0.1 * span)
    if len(peaks) < 2:
        return None
    return float(np.median(np.diff(t[peaks])))


def summarize(log: TelemetryLog, final_status: str = simmod.FLYING) -> RunSummary:
    """Compute the headless run summary from a telemetry log."""
    if not log.samples:
        return RunSummary(0.0, 0, 0.0, 0.0, 0.0, 0.0, None, 0.0, final_status)
    t = np.array([s.t for s in log.samples])
    force = np.array([s.F_total for s in log.samples])
    phi = np.array([s.phi for s in log.samples])
    v = np.array([s.v for s in log.samples])
    dt = np.diff(t, prepend=t[0])
    path = float(np.sum(v * dt))
    min_force = float(force.min())
    max_force = float(force.max())
    ratio = max_force / min_force if min_force > 0 else math.inf
    return RunSummary(
        duration_s=float(t[-1] - t[0]),
        figure_eight_count=count_center_crossings(phi) // 2,
        peak_force_N=max_force,
        mean_force_N=float(force.mean()),
        min_force_N=min_force,
        force_ratio=ratio,
        measured_period_s=measure_force_period(t, force),
        path_length_m=path,
        final_status=final_status,
    )
