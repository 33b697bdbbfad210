"""Dimensioning rules for a ground-based three-line kite unit.

All functions are pure and deterministic; quantities are SI unless the
field name says otherwise (forces in N, lengths in m, speeds in m/s,
periods in s, memory in bytes, battery runtime in hours).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence


# ---------------------------------------------------------------------------
# input types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WingParams:
    """Geometric and aerodynamic description of the kite."""

    area_m2: float
    lift_coeff: float
    efficiency: float       # lift-to-drag of wing plus lines
    wingspan_m: float
    height_m: float         # tip-line to leading-edge center distance

    def __post_init__(self):
        if self.area_m2 <= 0:
            raise ValueError("area_m2 must be positive")
        if not 0 < self.lift_coeff <= 2:
            raise ValueError("lift_coeff must be in (0, 2]")
        if not 1 < self.efficiency <= 20:
            raise ValueError("efficiency must be in (1, 20]")
        if self.wingspan_m <= 0:
            raise ValueError("wingspan_m must be positive")
        if not 0 < self.height_m < self.wingspan_m:
            raise ValueError("height_m must be positive and below wingspan_m")


@dataclass(frozen=True)
class GustParams:
    """Smooth bounded wind-speed modulation."""

    amplitude_fraction: float = 0.0
    period_s: float = 10.0

    def __post_init__(self):
        if not 0 <= self.amplitude_fraction <= 0.5:
            raise ValueError("gust amplitude_fraction must be in [0, 0.5]")
        if self.period_s <= 0:
            raise ValueError("gust period_s must be positive")


@dataclass(frozen=True)
class Environment:
    air_density_kg_m3: float = 1.2
    wind_speed_m_s: float = 0.0
    wind_azimuth_rad: float = 0.0
    gust: Optional[GustParams] = None

    def __post_init__(self):
        if self.air_density_kg_m3 <= 0:
            raise ValueError("air_density_kg_m3 must be positive")
        if self.wind_speed_m_s < 0:
            raise ValueError("wind_speed_m_s must be >= 0")


@dataclass(frozen=True)
class LoadGeometry:
    """Line-angle ranges and frame safety factor used for peak-load sizing."""

    lateral_range_rad: float = math.pi / 4
    elevation_range_rad: float = 1.0
    frame_safety_factor: float = 2.0

    def __post_init__(self):
        if not 0 < self.lateral_range_rad <= math.pi / 2:
            raise ValueError("lateral_range_rad must be in (0, pi/2]")
        if not 0 < self.elevation_range_rad <= math.pi / 2:
            raise ValueError("elevation_range_rad must be in (0, pi/2]")
        if self.frame_safety_factor < 1:
            raise ValueError("frame_safety_factor must be >= 1")


@dataclass(frozen=True)
class PartitionPolicy:
    """Share of the total load carried by the power (center) line.

    The usual bridling band is 0.55..0.75; values outside it are accepted
    but flagged via :attr:`out_of_band`.
    """

    power_line_fraction: float = 0.65

    def __post_init__(self):
        if not 0 < self.power_line_fraction < 1:
            raise ValueError("power_line_fraction must be in (0, 1)")

    @property
    def out_of_band(self) -> bool:
        return not 0.55 <= self.power_line_fraction <= 0.75


@dataclass(frozen=True)
class LineSpec:
    diameter_m: float
    min_breaking_load_N: float
    length_m: float = 30.0
    density_kg_m3: float = 970.0
    safety_factor: float = 4.5

    def __post_init__(self):
        if self.diameter_m <= 0:
            raise ValueError("diameter_m must be positive")
        if self.min_breaking_load_N <= 0:
            raise ValueError("min_breaking_load_N must be positive")
        if self.length_m <= 0:
            raise ValueError("length_m must be positive")
        if self.density_kg_m3 <= 0:
            raise ValueError("density_kg_m3 must be positive")
        if self.safety_factor <= 0:
            raise ValueError("safety_factor must be positive")

    @property
    def out_of_band(self) -> bool:
        return not 4 <= self.safety_factor <= 5


@dataclass(frozen=True)
class PowerSupplyParams:
    battery_count: int = 16
    capacity_Ah_at_rated: float = 20.0
    rated_current_A: float = 1.0
    peukert_exponent: float = 1.2
    ac_dc_factor: float = 10.0
    idle_battery_current_A: float = 20.0   # total across the bank

    def __post_init__(self):
        if self.battery_count < 1:
            raise ValueError("battery_count must be >= 1")
        if self.capacity_Ah_at_rated <= 0:
            raise ValueError("capacity_Ah_at_rated must be positive")
        if self.rated_current_A <= 0:
            raise ValueError("rated_current_A must be positive")
        if self.peukert_exponent < 1:
            raise ValueError("peukert_exponent must be >= 1")
        if self.ac_dc_factor <= 0:
            raise ValueError("ac_dc_factor must be positive")
        if self.idle_battery_current_A < 0:
            raise ValueError("idle_battery_current_A must be >= 0")


@dataclass(frozen=True)
class LoggerGroup:
    signal_count: int
    bytes_per_signal: int
    sample_period_s: float

    def __post_init__(self):
        if self.signal_count <= 0:
            raise ValueError("signal_count must be positive")
        if self.bytes_per_signal <= 0:
            raise ValueError("bytes_per_signal must be positive")
        if self.sample_period_s <= 0:
            raise ValueError("sample_period_s must be positive")


@dataclass(frozen=True)
class LoggerPlan:
    duration_s: float
    groups: tuple[LoggerGroup, ...] = ()

    def __post_init__(self):
        if self.duration_s <= 0:
            raise ValueError("duration_s must be positive")
        object.__setattr__(self, "groups", tuple(self.groups))


# ---------------------------------------------------------------------------
# elementary sizing operations
# ---------------------------------------------------------------------------

def crosswind_force_coefficient(wing: WingParams) -> float:
    """C_L * E^2 * (1 + 1/E^2)^(3/2), the wind-independent force factor."""
    e2 = wing.efficiency ** 2
    return wing.lift_coeff * e2 * (1 + 1 / e2) ** 1.5


def peak_traction_force(wing: WingParams, env: Environment) -> float:
    """Peak total line force in crosswind flight at wind speed W."""
    return (0.5 * env.air_density_kg_m3 * wing.area_m2
            * crosswind_force_coefficient(wing) * env.wind_speed_m_s ** 2)


def min_traction_force(peak_N: float) -> float:
    """Lowest total force over a figure-eight: one quarter of the peak."""
    if peak_N < 0:
        raise ValueError("peak_N must be >= 0")
    return peak_N / 4.0


def figure_eight_geometry(wing: WingParams) -> tuple[float, float]:
    """Minimum turning radius and smallest figure-eight path length.

    Returns ``(min_turn_radius_m, path_length_m)`` with the eight
    approximated as two full minimum-radius loops.
    """
    radius = 2.5 * wing.wingspan_m
    length = 2.0 * (2.0 * math.pi * radius)
    return radius, length


def force_oscillation_period(wing: WingParams, env: Environment,
                             path_length_m: Optional[float] = None) -> Optional[float]:
    """Period of the total-force oscillation over a figure-eight.

    The force peaks twice per eight, hence the 1/2 factor on the path
    traversal time. Returns ``None`` for zero wind (no crosswind motion,
    unbounded period).
    """
    if env.wind_speed_m_s == 0:
        return None
    if path_length_m is None:
        _, path_length_m = figure_eight_geometry(wing)
    return 0.5 * path_length_m / (wing.efficiency * env.wind_speed_m_s)


def steering_force_difference(wing: WingParams, env: Environment,
                              delta_m: float) -> float:
    """Left-minus-right line force for a line length difference delta.

    Linear and odd in delta; delta is right line length minus left.
    """
    return ((wing.height_m / wing.wingspan_m ** 2)
            * env.air_density_kg_m3 * wing.area_m2
            * crosswind_force_coefficient(wing)
            * env.wind_speed_m_s ** 2 * delta_m)


def max_steering_delta(wing: WingParams) -> tuple[float, float]:
    """Typical maximum steering delta and the resulting wing roll angle."""
    delta = 0.15 * wing.wingspan_m
    return delta, delta / wing.wingspan_m


@dataclass(frozen=True)
class PartitionResult:
    power_N: float
    left_N: float
    right_N: float
    clamped: bool = False


def partition_line_loads(total_N: float, delta_force_N: float,
                         policy: PartitionPolicy) -> PartitionResult:
    """Split the total load into power, left and right line forces.

    The steering lines share ``(1 - p) * total`` with a left-minus-right
    difference of ``delta_force_N``. If the difference exceeds the steering
    share the unloaded line is clamped to zero and the result is flagged.
    """
    if total_N < 0:
        raise ValueError("total_N must be >= 0")
    power = policy.power_line_fraction * total_N
    steering = total_N - power
    left = 0.5 * (steering + delta_force_N)
    right = 0.5 * (steering - delta_force_N)
    clamped = False
    if right < 0:
        left, right, clamped = steering, 0.0, True
    elif left < 0:
        left, right, clamped = 0.0, steering, True
    return PartitionResult(power, left, right, clamped)


@dataclass(frozen=True)
class LineVerdict:
    required_mbl_N: float
    pulley_min_diameter_m: float
    mass_per_m_kg: float
    passed: bool


def line_requirements(peak_line_force_N: float, spec: LineSpec) -> LineVerdict:
    """Required breaking load, minimum pulley diameter and line mass per meter."""
    if peak_line_force_N < 0:
        raise ValueError("peak_line_force_N must be >= 0")
    required = spec.safety_factor * peak_line_force_N
    pulley = 30.0 * spec.diameter_m
    mass = math.pi * (spec.diameter_m / 2) ** 2 * spec.density_kg_m3
    return LineVerdict(required, pulley, mass, spec.min_breaking_load_N >= required)


@dataclass(frozen=True)
class ActuationRequirements:
    steer_stroke_m: float       # +/- on the line length difference
    steer_speed_m_s: float
    power_stroke_min_m: float   # power range is [power_stroke_min_m, 0]
    power_speed_m_s: float


def actuation_requirements(wing: WingParams) -> ActuationRequirements:
    """Stroke and speed requirements for steering and power actuation."""
    return ActuationRequirements(
        steer_stroke_m=wing.wingspan_m / 2,
        steer_speed_m_s=wing.wingspan_m / 3,
        power_stroke_min_m=-wing.height_m / 4,
        power_speed_m_s=wing.height_m / 4,
    )


@dataclass(frozen=True)
class LmsVerdict:
    available_m: float
    required_m: float
    passed: bool


def check_lms_feasibility(wing: WingParams, carriage_multiplier: float = 4.0,
                          carriage_limit_m: float = 0.35) -> LmsVerdict:
    """Check the carriage-based steering LMS against the required stroke."""
    available = carriage_multiplier * carriage_limit_m
    required = actuation_requirements(wing).steer_stroke_m
    return LmsVerdict(available, required, available >= required)


def translate_drive_current(drive_side_A: float, factor: float = 10.0) -> float:
    """Translate AC drive-side current into DC battery-side current."""
    if drive_side_A < 0:
        raise ValueError("drive_side_A must be >= 0")
    return factor * drive_side_A


def battery_runtime(supply: PowerSupplyParams,
                    total_battery_current_A: float) -> Optional[float]:
    """Hours of operation for a given total battery-side current draw.

    Peukert discharge: t = C_p / I^k per battery, with current shared
    equally across the bank. Returns ``None`` when the draw is non-positive
    (unbounded runtime).
    """
    if total_battery_current_A <= 0:
        return None
    per_battery = total_battery_current_A / supply.battery_count
    rated_hours = supply.capacity_Ah_at_rated / supply.rated_current_A
    # formulated as a ratio so the rated point is float-exact for any exponent
    return rated_hours * (supply.rated_current_A / per_battery) ** supply.peukert_exponent


def logger_memory(plan: LoggerPlan) -> float:
    """Data-logger memory requirement in bytes for the planned test length."""
    return plan.duration_s * sum(
        g.signal_count * g.bytes_per_signal / g.sample_period_s for g in plan.groups
    )


def max_wind_for_wing(wing: WingParams, air_density_kg_m3: float = 1.2,
                      max_loading_N_m2: float = 250.0) -> float:
    """Largest wind speed keeping the crosswind wing loading under the limit.

    Independent of the wing area (both peak force and limit scale with it).
    """
    denom = 0.5 * air_density_kg_m3 * crosswind_force_coefficient(wing)
    return math.sqrt(max_loading_N_m2 / denom)


# ---------------------------------------------------------------------------
# aggregate report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DesignReport:
    """All dimensioning outputs for one wing/environment/hardware combination."""

    peak_force_N: float
    min_force_N: float
    design_force_N: float
    oscillation_period_s: Optional[float]    # None = unbounded (zero wind)
    path_length_m: float
    min_turn_radius_m: float
    max_delta_m: float
    max_delta_force_N: float
    roll_angle_rad: float
    power_line_N: float
    left_line_N: float
    right_line_N: float
    steer_stroke_m: float
    steer_speed_m_s: float
    power_stroke_min_m: float
    power_speed_m_s: float
    lms_available_m: float
    lms_required_m: float
    lms_pass: bool
    line_required_mbl_N: Optional[float]
    line_spec_mbl_N: Optional[float]
    line_pass: Optional[bool]
    pulley_min_diameter_m: Optional[float]
    line_mass_per_m_kg: Optional[float]
    idle_runtime_h: Optional[float]
    logger_memory_bytes: Optional[float]
    max_wind_m_s: float
    warnings: tuple[str, ...] = ()
    failures: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures


def build_design_report(wing: WingParams, env: Environment,
                        geometry: Optional[LoadGeometry] = None,
                        policy: Optional[PartitionPolicy] = None,
                        line_spec: Optional[LineSpec] = None,
                        supply: Optional[PowerSupplyParams] = None,
                        logger_plan: Optional[LoggerPlan] = None) -> DesignReport:
    """Evaluate every dimensioning rule and aggregate the results.

    Pure function: identical inputs yield an identical report. FAIL verdicts
    from sub-checks are collected in ``failures``; out-of-band but accepted
    parameter choices in ``warnings``.
    """
    geometry = geometry or LoadGeometry()
    policy = policy or PartitionPolicy()

    warnings: list[str] = []
    failures: list[str] = []

    peak = peak_traction_force(wing, env)
    radius, length = figure_eight_geometry(wing)
    period = force_oscillation_period(wing, env, length)
    delta_max, roll = max_steering_delta(wing)
    delta_force_max = steering_force_difference(wing, env, delta_max)
    part = partition_line_loads(peak, delta_force_max, policy)
    if part.clamped:
        warnings.append("partition: steering difference exceeds steering share, "
                        "unloaded line clamped to 0 N")
    if policy.out_of_band:
        warnings.append("partition: power_line_fraction outside the usual 0.55-0.75 band")

    act = actuation_requirements(wing)
    lms = check_lms_feasibility(wing)
    if not lms.passed:
        failures.append(
            f"lms: required steering stroke +/-{lms.required_m:.3g} m exceeds "
            f"available +/-{lms.available_m:.3g} m")

    line_required = line_spec_mbl = pulley = mass = None
    line_pass: Optional[bool] = None
    if line_spec is not None:
        worst = max(part.power_N, part.left_N, part.right_N)
        verdict = line_requirements(worst, line_spec)
        line_required = verdict.required_mbl_N
        line_spec_mbl = line_spec.min_breaking_load_N
        pulley = verdict.pulley_min_diameter_m
        mass = verdict.mass_per_m_kg
        line_pass = verdict.passed
        if not verdict.passed:
            failures.append(
                f"line: required MBL {verdict.required_mbl_N:.4g} N exceeds "
                f"spec MBL {line_spec.min_breaking_load_N:.4g} N")
        if line_spec.out_of_band:
            warnings.append("line: safety_factor outside the usual 4-5 band")

    idle_runtime = None
    if supply is not None:
        idle_runtime = battery_runtime(supply, supply.idle_battery_current_A)

    memory = logger_memory(logger_plan) if logger_plan is not None else None

    return DesignReport(
        peak_force_N=peak,
        min_force_N=min_traction_force(peak),
        design_force_N=geometry.frame_safety_factor * peak,
        oscillation_period_s=period,
        path_length_m=length,
        min_turn_radius_m=radius,
        max_delta_m=delta_max,
        max_delta_force_N=delta_force_max,
        roll_angle_rad=roll,
        power_line_N=part.power_N,
        left_line_N=part.left_N,
        right_line_N=part.right_N,
        steer_stroke_m=act.steer_stroke_m,
        steer_speed_m_s=act.steer_speed_m_s,
        power_stroke_min_m=act.power_stroke_min_m,
        power_speed_m_s=act.power_speed_m_s,
        lms_available_m=lms.available_m,
        lms_required_m=lms.required_m,
        lms_pass=lms.passed,
        line_required_mbl_N=line_required,
        line_spec_mbl_N=line_spec_mbl,
        line_pass=line_pass,
        pulley_min_diameter_m=pulley,
        line_mass_per_m_kg=mass,
        idle_runtime_h=idle_runtime,
        logger_memory_bytes=memory,
        max_wind_m_s=max_wind_for_wing(wing, env.air_density_kg_m3),
        warnings=tuple(warnings),
        failures=tuple(failures),
    )
