"""Figure-eight crosswind controller and manual/auto mode arbitration.

The controller flies between two target points mirrored about the downwind
meridian: it steers the heading along the (locally flattened) great circle
toward the active target and toggles targets on proximity, producing the
cyclic figure-eight pattern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .sim import ActuatorLimits, KiteState, _clamp, _wrap_pi

MANUAL = "manual"
AUTO = "auto"


@dataclass(frozen=True)
class AutopilotConfig:
    target_azimuth_rad: float = 0.6     # targets at +/- this azimuth
    target_elevation_rad: float = 0.5
    switch_radius_rad: float = 0.15
    steering_gain_m_per_rad: float = 0.25
    command_limit_m: float = 0.35       # carriage saturation
    switch_holdoff_s: float = 0.5

    def __post_init__(self):
        if not 0 < self.target_azimuth_rad < math.pi / 2:
            raise ValueError("target_azimuth_rad must be in (0, pi/2)")
        if not 0 < self.target_elevation_rad < math.pi / 2:
            raise ValueError("target_elevation_rad must be in (0, pi/2)")
        if self.switch_radius_rad <= 0:
            raise ValueError("switch_radius_rad must be positive")
        if self.steering_gain_m_per_rad <= 0 or self.command_limit_m <= 0:
            raise ValueError("gain and command limit must be positive")


def great_circle_distance(theta1: float, phi1: float,
                          theta2: float, phi2: float) -> float:
    """Central angle between two wind-window points (elevation/azimuth)."""
    c = (math.sin(theta1) * math.sin(theta2)
         + math.cos(theta1) * math.cos(theta2) * math.cos(phi1 - phi2))
    return math.acos(_clamp(c, -1.0, 1.0))


def bearing_to(state: KiteState, target_theta: float, target_phi: float) -> float:
    """Heading that points toward the target in the local tangent frame."""
    d_theta = target_theta - state.elevation_rad
    d_phi = (target_phi - state.azimuth_rad) * math.cos(state.elevation_rad)
    return math.atan2(d_phi, d_theta)


def steering_command(state: KiteState, cfg: AutopilotConfig,
                     target_theta: float, target_phi: float) -> float:
    """Proportional heading-error feedback, saturated at the carriage range."""
    error = _wrap_pi(bearing_to(state, target_theta, target_phi)
                     - state.heading_rad)
    return _clamp(cfg.steering_gain_m_per_rad * error,
                  -cfg.command_limit_m, cfg.command_limit_m)


class Autopilot:
    """Two-target switching controller; owns only the active-target state."""

    def __init__(self, cfg: Optional[AutopilotConfig] = None):
        self.cfg = cfg or AutopilotConfig()
        self.active_sign = 1            # +1: positive-azimuth target
        self._last_switch_s: Optional[float] = None

    @property
    def target(self) -> tuple[float, float]:
        return (self.cfg.target_elevation_rad,
                self.active_sign * self.cfg.target_azimuth_rad)

    def maybe_switch(self, state: KiteState) -> bool:
        """Toggle the active target on proximity, with a time holdoff."""
        cfg = self.cfg
        theta_t, phi_t = self.target
        distance = great_circle_distance(state.elevation_rad, state.azimuth_rad,
                                         theta_t, phi_t)
        if distance >= cfg.switch_radius_rad:
            return False
        if (self._last_switch_s is not None
                and state.time_s - self._last_switch_s < cfg.switch_holdoff_s):
            return False
        self.active_sign = -self.active_sign
        self._last_switch_s = state.time_s
        return True

    def update(self, state: KiteState) -> float:
        """One control update: switch target if reached, return carriage command."""
        self.maybe_switch(state)
        theta_t, phi_t = self.target
        return steering_command(state, self.cfg, theta_t, phi_t)


def manual_steering_command(axis: float, limits: ActuatorLimits) -> float:
    """Map a joystick steering axis in [-1, 1] to carriage meters."""
    return _clamp(axis, -1.0, 1.0) * limits.steer_limit_m


def manual_power_command(axis: float, limits: ActuatorLimits) -> float:
    """Map a joystick power axis to center-line shortening; [-1, 0] is active."""
    return _clamp(axis, -1.0, 0.0) * abs(limits.power_min_m)


def mode_arbiter(mode: str, manual_steer_axis: float, manual_power_axis: float,
                 auto_steer_cmd_m: float,
                 limits: ActuatorLimits) -> tuple[float, float]:
    """Resolve operator and autopilot inputs into actuator commands.

    Manual passes both joystick axes through; auto takes steering from the
    controller while the power setting stays with the operator. Continuity
    across mode switches is guaranteed by the actuator rate limits.
    """
    power = manual_power_command(manual_power_axis, limits)
    if mode == MANUAL:
        return manual_steering_command(manual_steer_axis, limits), power
    if mode == AUTO:
        return _clamp(auto_steer_cmd_m, -limits.steer_limit_m,
                      limits.steer_limit_m), power
    raise ValueError(f"unknown mode: {mode!r}")
