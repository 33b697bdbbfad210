"""Fixed-step kinematic simulation of the tethered wing on the wind window.

The wing is a point on the quarter sphere spanned by the lines, described
by elevation theta (0 = ground level, pi/2 = zenith), azimuth phi
(0 = straight downwind) and heading gamma (0 = toward the zenith, positive
toward growing phi). A positive steering delta (right line longer) turns
the heading counter-clockwise as seen from the ground unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

from .sizing import Environment, WingParams, PartitionPolicy, partition_line_loads, \
    crosswind_force_coefficient, steering_force_difference

GRAVITY = 9.81


class SimulationFault(RuntimeError):
    """Raised when the state becomes non-finite; carries a state snapshot."""

    def __init__(self, message: str, snapshot: dict):
        super().__init__(f"{message}: {snapshot}")
        self.snapshot = snapshot


@dataclass(frozen=True)
class KiteState:
    elevation_rad: float
    azimuth_rad: float
    heading_rad: float
    tether_length_m: float = 30.0
    time_s: float = 0.0


@dataclass(frozen=True)
class ActuatorLimits:
    """Hardware travel and rate limits of the two linear motion systems."""

    steer_limit_m: float = 0.35         # carriage stroke, +/-
    steer_rate_m_s: float = 0.4         # 2400 rpm at 0.01 m/rev
    line_multiplier: float = 4.0        # line difference per carriage meter
    power_min_m: float = -0.5           # center-line shortening range
    power_rate_m_s: float = 0.15        # 240 rpm gearmotor through the takeup

    def __post_init__(self):
        if self.steer_limit_m <= 0 or self.steer_rate_m_s <= 0:
            raise ValueError("steering limits must be positive")
        if self.power_min_m >= 0 or self.power_rate_m_s <= 0:
            raise ValueError("power range must be negative, rate positive")


@dataclass
class ActuatorState:
    """Steering carriage position x and center-line shortening z.

    The steering line difference is ``line_multiplier * x``; z is 0 in the
    powered configuration and negative when de-powered.
    """

    limits: ActuatorLimits
    steer_pos_m: float = 0.0
    steer_cmd_m: float = 0.0
    power_pos_m: float = 0.0
    power_cmd_m: float = 0.0
    overrange: bool = False     # last command needed clamping to the stroke

    @property
    def delta_m(self) -> float:
        return self.limits.line_multiplier * self.steer_pos_m

    @property
    def shortening_m(self) -> float:
        return self.power_pos_m

    def set_commands(self, steer_cmd_m: Optional[float] = None,
                     power_cmd_m: Optional[float] = None):
        if steer_cmd_m is not None:
            if not math.isfinite(steer_cmd_m):
                raise ValueError("steer command must be finite")
            self.overrange = abs(steer_cmd_m) > self.limits.steer_limit_m
            self.steer_cmd_m = _clamp(steer_cmd_m, -self.limits.steer_limit_m,
                                      self.limits.steer_limit_m)
        if power_cmd_m is not None:
            if not math.isfinite(power_cmd_m):
                raise ValueError("power command must be finite")
            if not self.limits.power_min_m <= power_cmd_m <= 0:
                self.overrange = True
            self.power_cmd_m = _clamp(power_cmd_m, self.limits.power_min_m, 0.0)


def _clamp(x: float, lo: float, hi: float) -> float:
    return min(max(x, lo), hi)


def _rate_limited(pos: float, cmd: float, rate: float, dt: float) -> float:
    step = rate * dt
    return pos + _clamp(cmd - pos, -step, step)


def actuator_step(act: ActuatorState, dt: float) -> ActuatorState:
    """Move both carriages toward their commands, rate- then stroke-limited."""
    lim = act.limits
    steer = _rate_limited(act.steer_pos_m, act.steer_cmd_m, lim.steer_rate_m_s, dt)
    steer = _clamp(steer, -lim.steer_limit_m, lim.steer_limit_m)
    power = _rate_limited(act.power_pos_m, act.power_cmd_m, lim.power_rate_m_s, dt)
    power = _clamp(power, lim.power_min_m, 0.0)
    act.steer_pos_m = steer
    act.power_pos_m = power
    return act


@dataclass(frozen=True)
class SimConfig:
    dt_s: float = 0.01
    integrator: str = "rk4"            # "rk4" | "euler"
    gravity_drift_enabled: bool = False
    gravity_drift_gain: float = 1.0
    depower_min_multiplier: float = 0.25
    seed: int = 0
    v_stall_m_s: float = 1.0
    theta_land_rad: float = 0.1

    def __post_init__(self):
        if not 0 < self.dt_s <= 0.05:
            raise ValueError("dt_s must be in (0, 0.05]")
        if self.integrator not in ("rk4", "euler"):
            raise ValueError("integrator must be 'rk4' or 'euler'")
        if not 0 < self.depower_min_multiplier <= 1:
            raise ValueError("depower_min_multiplier must be in (0, 1]")


@dataclass(frozen=True)
class LineForces:
    total_N: float
    power_N: float
    left_N: float
    right_N: float
    delta_N: float          # left minus right, post-clamp
    clamped: bool = False


FLYING = "flying"
LANDED = "landed"
OUT_OF_WINDOW = "out_of_window"
STALLED = "stalled"


class WindModel:
    """Steady wind, optionally modulated by a seeded smooth gust process.

    The modulation is a sum of two incommensurate sinusoids with random
    phases, weighted 0.6/0.4 so the sample stays within the configured
    amplitude fraction of the mean for all times.
    """

    _SECOND_TONE = 2.39  # frequency ratio, deliberately irrational-ish

    def __init__(self, env: Environment, seed: int = 0):
        self.env = env
        self.seed = seed
        if env.gust is not None and env.gust.amplitude_fraction > 0:
            import random
            rng = random.Random(seed)
            self._phases = (rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
        else:
            self._phases = None

    def sample(self, t: float) -> float:
        w = self.env.wind_speed_m_s
        if self._phases is None:
            return w
        g = self.env.gust
        base = 2 * math.pi * t / g.period_s
        s = (0.6 * math.sin(base + self._phases[0])
             + 0.4 * math.sin(self._SECOND_TONE * base + self._phases[1]))
        return w * (1.0 + g.amplitude_fraction * s)


def depower_multiplier(z: float, limits: ActuatorLimits, mu_min: float) -> float:
    """Traction multiplier for a center-line shortening z, linear 1 -> mu_min."""
    return 1.0 + (z / abs(limits.power_min_m)) * (1.0 - mu_min)


def apparent_speed(theta: float, phi: float, wind: float, wing: WingParams,
                   mu: float = 1.0) -> float:
    """Crosswind wing speed E*W attenuated by the window cosines and de-power."""
    v = wing.efficiency * wind * math.cos(theta) * math.cos(phi) * mu
    return max(v, 0.0)


def turn_rate(v: float, delta_m: float, wing: WingParams,
              gamma: float = 0.0, gravity_gain: float = 0.0,
              v_floor: float = 1.0) -> float:
    """Heading rate for a steering delta at wing speed v.

    Gain 1/(0.375*ws^2) makes the typical maximum delta (0.15*ws) produce
    exactly the minimum turning radius 2.5*ws. The optional gravity term
    drifts the heading toward straight down and slows with speed.
    """
    rate = v * delta_m / (0.375 * wing.wingspan_m ** 2)
    if gravity_gain:
        rate += gravity_gain * (GRAVITY / max(v, v_floor)) * math.sin(gamma)
    return rate


def _derivatives(theta: float, phi: float, gamma: float, t: float,
                 delta: float, mu: float, wing: WingParams,
                 wind_fn: Callable[[float], float], r: float,
                 cfg: SimConfig) -> tuple[float, float, float]:
    v = apparent_speed(theta, phi, wind_fn(t), wing, mu)
    d_theta = (v / r) * math.cos(gamma)
    d_phi = v * math.sin(gamma) / (r * math.cos(theta))
    gain = cfg.gravity_drift_gain if cfg.gravity_drift_enabled else 0.0
    d_gamma = turn_rate(v, delta, wing, gamma, gain, cfg.v_stall_m_s)
    return d_theta, d_phi, d_gamma


def wind_effective(theta: float, phi: float, wind: float, mu: float) -> float:
    """Wind speed as attenuated by the window position and de-power setting."""
    return wind * math.cos(theta) * math.cos(phi) * mu


def instantaneous_forces(state: KiteState, env: Environment, wing: WingParams,
                         act: ActuatorState, policy: PartitionPolicy,
                         mu_min: float = 0.25,
                         wind: Optional[float] = None) -> LineForces:
    """Line forces at the current state, bounded by the crosswind envelope.

    The envelope formula is evaluated at the effective wind speed
    W_eff = W * cos(theta) * cos(phi) * mu(z), so the total can never
    exceed the sizing-level peak force. ``wind`` overrides the steady
    environment speed (e.g. a gust sample).
    """
    w = env.wind_speed_m_s if wind is None else wind
    mu = depower_multiplier(act.shortening_m, act.limits, mu_min)
    # Past the window edge the cosine factors go negative; the lines can
    # only pull, so the effective crosswind speed floors at zero.
    w_eff = max(0.0, wind_effective(state.elevation_rad, state.azimuth_rad,
                                    w, mu))
    env_eff = Environment(air_density_kg_m3=env.air_density_kg_m3,
                          wind_speed_m_s=w_eff)
    total = (0.5 * env.air_density_kg_m3 * wing.area_m2
             * crosswind_force_coefficient(wing) * w_eff ** 2)
    delta_f = steering_force_difference(wing, env_eff, act.delta_m)
    part = partition_line_loads(total, delta_f, policy)
    return LineForces(total_N=total, power_N=part.power_N,
                      left_N=part.left_N, right_N=part.right_N,
                      delta_N=part.left_N - part.right_N,
                      clamped=part.clamped)


def _wrap_pi(angle: float) -> float:
    return math.atan2(math.sin(angle), math.cos(angle))


class Simulator:
    """Single-owner stepping context for one kite/actuator pair."""

    def __init__(self, wing: WingParams, env: Environment, config: SimConfig,
                 policy: Optional[PartitionPolicy] = None,
                 limits: Optional[ActuatorLimits] = None,
                 initial: Optional[KiteState] = None):
        self.wing = wing
        self.env = env
        self.config = config
        self.policy = policy or PartitionPolicy()
        self.actuators = ActuatorState(limits=limits or ActuatorLimits())
        self.state = initial or KiteState(elevation_rad=0.5, azimuth_rad=0.0,
                                          heading_rad=math.pi / 2)
        self.wind = WindModel(env, config.seed)
        self.status = FLYING

    # -- force model -------------------------------------------------------

    def forces(self, state: Optional[KiteState] = None) -> LineForces:
        """Instantaneous line forces via the crosswind envelope at W_eff."""
        state = state or self.state
        return instantaneous_forces(state, self.env, self.wing,
                                    self.actuators, self.policy,
                                    self.config.depower_min_multiplier,
                                    wind=self.wind.sample(state.time_s))

    def speed(self, state: Optional[KiteState] = None) -> float:
        state = state or self.state
        wind = self.wind.sample(state.time_s)
        mu = depower_multiplier(self.actuators.shortening_m,
                                self.actuators.limits,
                                self.config.depower_min_multiplier)
        return apparent_speed(state.elevation_rad, state.azimuth_rad,
                              wind, self.wing, mu)

    # -- stepping ----------------------------------------------------------

    def step(self) -> tuple[KiteState, LineForces, str]:
        """Advance one fixed step; returns (state, forces, status)."""
        if self.status != FLYING:
            return self.state, self.forces(), self.status

        cfg = self.config
        dt = cfg.dt_s
        actuator_step(self.actuators, dt)
        delta = self.actuators.delta_m
        mu = depower_multiplier(self.actuators.shortening_m,
                                self.actuators.limits,
                                cfg.depower_min_multiplier)
        s = self.state
        y = (s.elevation_rad, s.azimuth_rad, s.heading_rad)
        t = s.time_s
        f = lambda yv, tv: _derivatives(yv[0], yv[1], yv[2], tv, delta, mu,
                                        self.wing, self.wind.sample,
                                        s.tether_length_m, cfg)
        if cfg.integrator == "rk4":
            k1 = f(y, t)
            k2 = f(_axpy(y, k1, dt / 2), t + dt / 2)
            k3 = f(_axpy(y, k2, dt / 2), t + dt / 2)
            k4 = f(_axpy(y, k3, dt), t + dt)
            y_new = tuple(y[i] + dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i])
                          for i in range(3))
        else:
            k1 = f(y, t)
            y_new = _axpy(y, k1, dt)

        theta, phi, gamma = y_new[0], y_new[1], _wrap_pi(y_new[2])
        if not all(math.isfinite(v) for v in (theta, phi, gamma)):
            raise SimulationFault("non-finite state", {
                "time_s": t, "elevation_rad": theta, "azimuth_rad": phi,
                "heading_rad": gamma, "delta_m": delta})

        self.state = replace(s, elevation_rad=theta, azimuth_rad=phi,
                             heading_rad=gamma, time_s=t + dt)

        if theta < cfg.theta_land_rad:
            self.status = LANDED
        elif abs(phi) > math.pi / 2 or theta > math.pi / 2:
            self.status = OUT_OF_WINDOW
        elif self.speed() < cfg.v_stall_m_s:
            self.status = STALLED
        return self.state, self.forces(), self.status


def _axpy(y: tuple, k: tuple, a: float) -> tuple:
    return tuple(y[i] + a * k[i] for i in range(len(y)))
