import math

import pytest
from hypothesis import given, strategies as st

from awekit import sizing
from awekit.sizing import (
    Environment, LineSpec, LoggerGroup, LoggerPlan, PartitionPolicy,
    PowerSupplyParams, WingParams, actuation_requirements, battery_runtime,
    build_design_report, check_lms_feasibility, figure_eight_geometry,
    force_oscillation_period, line_requirements, logger_memory,
    max_steering_delta, max_wind_for_wing, min_traction_force,
    partition_line_loads, peak_traction_force, steering_force_difference,
    translate_drive_current,
)


def wings():
    return st.tuples(st.floats(0.5, 50), st.floats(0.1, 2), st.floats(1.5, 15),
                     st.floats(0.5, 10)).map(
        lambda t: WingParams(t[0], t[1], t[2], t[3], 0.6 * t[3]))


def envs(min_wind=0.0):
    return st.builds(Environment,
                     air_density_kg_m3=st.floats(0.8, 1.5),
                     wind_speed_m_s=st.floats(min_wind, 25))


# ---------------------------------------------------------------------------
# worked examples (frozen oracle values)
# ---------------------------------------------------------------------------

class TestPeakTractionForce:
    def test_worked_example(self, example_wing, example_env):
        force = peak_traction_force(example_wing, example_env)
        assert force == pytest.approx(1641.596144, abs=1e-4)
        assert abs(force - 1600) / 1600 < 0.05

    def test_zero_wind(self, example_wing):
        assert peak_traction_force(example_wing, Environment(wind_speed_m_s=0)) == 0

    def test_derived_case(self):
        wing = WingParams(12, 0.8, 5.0, 3.4, 2.2)
        env = Environment(wind_speed_m_s=4.0)
        assert peak_traction_force(wing, env) == pytest.approx(2443.613320, abs=1e-4)

    @given(wing=wings(), env=envs(min_wind=0.1))
    def test_monotone_in_wind_area_lift(self, wing, env):
        base = peak_traction_force(wing, env)
        env_up = Environment(env.air_density_kg_m3, env.wind_speed_m_s * 1.1)
        assert peak_traction_force(wing, env_up) > base
        bigger = WingParams(wing.area_m2 * 1.1, wing.lift_coeff, wing.efficiency,
                            wing.wingspan_m, wing.height_m)
        assert peak_traction_force(bigger, env) > base
        if wing.lift_coeff * 1.1 <= 2:
            lifty = WingParams(wing.area_m2, wing.lift_coeff * 1.1,
                               wing.efficiency, wing.wingspan_m, wing.height_m)
            assert peak_traction_force(lifty, env) > base

    @given(wing=wings(), env=envs())
    def test_quadratic_wind_scaling(self, wing, env):
        doubled = Environment(env.air_density_kg_m3, 2 * env.wind_speed_m_s)
        f1 = peak_traction_force(wing, env)
        f2 = peak_traction_force(wing, doubled)
        assert f2 == pytest.approx(4 * f1, rel=1e-12)


class TestMinTractionForce:
    def test_quarter_of_peak(self):
        assert min_traction_force(1641.6) == pytest.approx(410.4)
        assert abs(min_traction_force(1641.6) - 400) / 400 < 0.05

    def test_zero(self):
        assert min_traction_force(0) == 0

    def test_derived(self):
        assert min_traction_force(2443.6) == pytest.approx(610.9)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            min_traction_force(-1)


class TestFigureEightGeometry:
    @pytest.mark.parametrize("ws,radius,length", [
        (2.7, 6.75, 84.823002),
        (1.0, 2.5, 31.415927),
        (3.0, 7.5, 94.247780),
    ])
    def test_examples(self, ws, radius, length):
        wing = WingParams(9, 0.8, 5.6, ws, 0.6 * ws)
        r, l = figure_eight_geometry(wing)
        assert r == pytest.approx(radius)
        assert l == pytest.approx(length, abs=1e-5)


class TestForceOscillationPeriod:
    def test_worked_example(self, example_wing, example_env):
        period = force_oscillation_period(example_wing, example_env)
        assert period == pytest.approx(2.227495, abs=1e-5)
        assert abs(period - 2.5) / 2.5 < 0.15  # paper's rounded figure

    def test_inverse_in_wind(self, example_wing):
        t1 = force_oscillation_period(example_wing, Environment(wind_speed_m_s=3.4))
        t2 = force_oscillation_period(example_wing, Environment(wind_speed_m_s=6.8))
        assert t2 == pytest.approx(t1 / 2)
        assert t2 == pytest.approx(1.113747, abs=1e-5)

    def test_explicit_path_length(self):
        wing = WingParams(12, 0.8, 5.0, 3.0, 1.8)
        env = Environment(wind_speed_m_s=4.0)
        t = force_oscillation_period(wing, env, path_length_m=94.24777960769379)
        assert t == pytest.approx(2.356194, abs=1e-5)

    def test_zero_wind_unbounded(self, example_wing):
        assert force_oscillation_period(example_wing,
                                        Environment(wind_speed_m_s=0)) is None


class TestSteeringForceDifference:
    def test_worked_example(self, example_wing, example_env):
        df = steering_force_difference(example_wing, example_env, 0.405)
        assert df == pytest.approx(328.319229, abs=1e-4)
        assert abs(df - 320) / 320 < 0.05

    def test_zero_delta(self, example_wing, example_env):
        assert steering_force_difference(example_wing, example_env, 0) == 0

    def test_odd(self, example_wing, example_env):
        assert steering_force_difference(example_wing, example_env, -0.405) \
            == pytest.approx(-328.319229, abs=1e-4)

    @given(wing=wings(), env=envs(), d1=st.floats(-2, 2), d2=st.floats(-2, 2))
    def test_linear_additive(self, wing, env, d1, d2):
        lhs = steering_force_difference(wing, env, d1 + d2)
        rhs = (steering_force_difference(wing, env, d1)
               + steering_force_difference(wing, env, d2))
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-9)

    @given(wing=wings(), env=envs())
    def test_consistent_with_max_delta_formula(self, wing, env):
        """At the typical max delta the result equals the closed form
        0.15*(h/ws)*rho*A*CL*E^2*(1+1/E^2)^1.5*W^2."""
        delta, _ = max_steering_delta(wing)
        expected = (0.15 * (wing.height_m / wing.wingspan_m)
                    * env.air_density_kg_m3 * wing.area_m2
                    * sizing.crosswind_force_coefficient(wing)
                    * env.wind_speed_m_s ** 2)
        got = steering_force_difference(wing, env, delta)
        assert got == pytest.approx(expected, rel=1e-12, abs=1e-12)


class TestMaxSteeringDelta:
    @pytest.mark.parametrize("ws,delta", [(2.7, 0.405), (1.0, 0.15), (3.4, 0.51)])
    def test_examples(self, ws, delta):
        wing = WingParams(9, 0.8, 5.6, ws, 0.6 * ws)
        d, roll = max_steering_delta(wing)
        assert d == pytest.approx(delta)
        assert roll == pytest.approx(0.15)


class TestPartitionLineLoads:
    def test_symmetric(self):
        part = partition_line_loads(1641.596144, 0, PartitionPolicy(0.65))
        assert part.power_N == pytest.approx(1067.037494, abs=1e-4)
        assert part.left_N == pytest.approx(287.279325, abs=1e-4)
        assert part.right_N == pytest.approx(287.279325, abs=1e-4)
        assert not part.clamped

    def test_zero_total(self):
        part = partition_line_loads(0, 0, PartitionPolicy())
        assert (part.power_N, part.left_N, part.right_N) == (0, 0, 0)

    def test_asymmetric(self):
        part = partition_line_loads(1641.596144, 328.319229, PartitionPolicy(0.55))
        assert part.power_N == pytest.approx(902.877879, abs=1e-4)
        assert part.left_N == pytest.approx(533.518747, abs=1e-4)
        assert part.right_N == pytest.approx(205.199518, abs=1e-4)

    def test_clamping_flags(self):
        part = partition_line_loads(100, 90, PartitionPolicy(0.65))
        assert part.clamped
        assert part.right_N == 0
        assert part.left_N == pytest.approx(35)

    @given(total=st.floats(0, 1e5), frac=st.floats(-0.999, 0.999),
           p=st.floats(0.55, 0.75))
    def test_conservation(self, total, frac, p):
        policy = PartitionPolicy(p)
        # strictly inside the steering share (the exact boundary is
        # sensitive to the rounding of total - p*total)
        delta_f = frac * (total - p * total)
        part = partition_line_loads(total, delta_f, policy)
        assert not part.clamped
        assert part.power_N + part.left_N + part.right_N \
            == pytest.approx(total, rel=1e-12, abs=1e-9)
        assert part.left_N - part.right_N == pytest.approx(delta_f, rel=1e-12,
                                                           abs=1e-9)

    def test_out_of_band_policy_flag(self):
        assert PartitionPolicy(0.5).out_of_band
        assert not PartitionPolicy(0.65).out_of_band
        with pytest.raises(ValueError):
            PartitionPolicy(0.0)


class TestLineRequirements:
    def test_paper_line(self):
        spec = LineSpec(diameter_m=0.003, min_breaking_load_N=1.1e4)
        verdict = line_requirements(533.518747, spec)
        assert verdict.pulley_min_diameter_m == pytest.approx(0.09)
        assert verdict.mass_per_m_kg == pytest.approx(6.856526e-3, abs=1e-8)
        assert verdict.required_mbl_N == pytest.approx(2400.834, abs=1e-2)
        assert verdict.passed

    def test_zero_force(self):
        spec = LineSpec(diameter_m=0.003, min_breaking_load_N=1.1e4)
        verdict = line_requirements(0, spec)
        assert verdict.required_mbl_N == 0
        assert verdict.passed

    def test_fail(self):
        spec = LineSpec(diameter_m=0.003, min_breaking_load_N=1.1e4,
                        safety_factor=4.5)
        verdict = line_requirements(3000, spec)
        assert verdict.required_mbl_N == pytest.approx(13500)
        assert not verdict.passed


class TestActuationRequirements:
    def test_worked_example(self, example_wing):
        act = actuation_requirements(example_wing)
        assert act.steer_stroke_m == pytest.approx(1.35)
        assert act.steer_speed_m_s == pytest.approx(0.9)
        assert act.power_stroke_min_m == pytest.approx(-0.45)
        assert act.power_speed_m_s == pytest.approx(0.45)
        # paper's round figures
        assert abs(act.steer_speed_m_s - 1.0) < 0.15
        assert abs(act.power_speed_m_s - 0.5) < 0.1

    def test_linear_in_span(self, example_wing):
        doubled = WingParams(9, 0.8, 5.6, 5.4, 3.6)
        a1, a2 = actuation_requirements(example_wing), actuation_requirements(doubled)
        assert a2.steer_stroke_m == pytest.approx(2 * a1.steer_stroke_m)
        assert a2.steer_speed_m_s == pytest.approx(2 * a1.steer_speed_m_s)

    def test_derived(self):
        act = actuation_requirements(WingParams(9, 0.8, 5.6, 3.4, 2.2))
        assert act.steer_stroke_m == pytest.approx(1.7)
        assert act.steer_speed_m_s == pytest.approx(1.133333, abs=1e-5)
        assert act.power_stroke_min_m == pytest.approx(-0.55)
        assert act.power_speed_m_s == pytest.approx(0.55)


class TestLmsFeasibility:
    def test_paper_pass(self, example_wing):
        verdict = check_lms_feasibility(example_wing)
        assert verdict.available_m == pytest.approx(1.4)
        assert verdict.required_m == pytest.approx(1.35)
        assert verdict.passed

    def test_boundary(self):
        verdict = check_lms_feasibility(WingParams(9, 0.8, 5.6, 2.8, 1.8))
        assert verdict.passed

    def test_fail(self):
        verdict = check_lms_feasibility(WingParams(9, 0.8, 5.6, 3.0, 1.8))
        assert not verdict.passed


class TestDriveCurrent:
    def test_paper_ratio(self):
        assert translate_drive_current(2) == 20

    def test_zero(self):
        assert translate_drive_current(0) == 0

    def test_linear(self):
        assert translate_drive_current(3.5) == pytest.approx(35)


class TestBatteryRuntime:
    def test_rated_point(self):
        supply = PowerSupplyParams(battery_count=1)
        assert battery_runtime(supply, 1.0) == 20.0

    def test_bank_at_32A(self):
        supply = PowerSupplyParams(battery_count=16)
        assert battery_runtime(supply, 32.0) == pytest.approx(8.705506, abs=1e-5)

    def test_bank_at_idle(self):
        supply = PowerSupplyParams(battery_count=16)
        assert battery_runtime(supply, 20.0) == pytest.approx(15.301640, abs=1e-5)

    def test_unbounded_for_zero_current(self):
        assert battery_runtime(PowerSupplyParams(), 0.0) is None

    @given(k=st.floats(1.0, 2.0), capacity=st.floats(1, 200),
           rated=st.floats(0.1, 10))
    def test_rated_point_exact_for_any_exponent(self, k, capacity, rated):
        supply = PowerSupplyParams(battery_count=1,
                                   capacity_Ah_at_rated=capacity,
                                   rated_current_A=rated, peukert_exponent=k)
        assert battery_runtime(supply, rated) == capacity / rated


class TestLoggerMemory:
    def test_single_group(self):
        plan = LoggerPlan(10, (LoggerGroup(1, 8, 1.0),))
        assert logger_memory(plan) == 80

    def test_paper_rates(self):
        plan = LoggerPlan(3600, (LoggerGroup(50, 8, 0.01),
                                 LoggerGroup(10, 8, 0.02)))
        assert logger_memory(plan) == pytest.approx(158.4e6)

    def test_empty_groups(self):
        assert logger_memory(LoggerPlan(3600)) == 0

    @given(duration=st.floats(1, 1e4),
           groups=st.lists(st.builds(LoggerGroup,
                                     signal_count=st.integers(1, 64),
                                     bytes_per_signal=st.integers(1, 16),
                                     sample_period_s=st.floats(1e-3, 10)),
                           max_size=6))
    def test_additive_and_linear(self, duration, groups):
        total = logger_memory(LoggerPlan(duration, tuple(groups)))
        parts = sum(logger_memory(LoggerPlan(duration, (g,))) for g in groups)
        assert total == pytest.approx(parts, rel=1e-12, abs=1e-9)
        assert logger_memory(LoggerPlan(2 * duration, tuple(groups))) \
            == pytest.approx(2 * total, rel=1e-12, abs=1e-9)


class TestMaxWind:
    def test_example_wing(self, example_wing):
        assert max_wind_for_wing(example_wing) == pytest.approx(3.980494, abs=1e-5)

    def test_independent_of_area(self, example_wing):
        bigger = WingParams(12, 0.8, 5.6, 2.7, 1.8)
        assert max_wind_for_wing(bigger) == max_wind_for_wing(example_wing)

    def test_second_wing(self):
        wing = WingParams(9, 1.0, 5.0, 2.7, 1.8)
        assert max_wind_for_wing(wing) == pytest.approx(3.964144, abs=1e-5)

    @given(wing=wings(), rho=st.floats(0.8, 1.5), loading=st.floats(50, 500))
    def test_round_trip(self, wing, rho, loading):
        wind = max_wind_for_wing(wing, rho, loading)
        env = Environment(air_density_kg_m3=rho, wind_speed_m_s=wind)
        assert peak_traction_force(wing, env) / wing.area_m2 \
            == pytest.approx(loading, rel=1e-9)


class TestDesignReport:
    def test_worked_example(self, example_wing, example_env):
        rpt = build_design_report(example_wing, example_env)
        assert rpt.peak_force_N == pytest.approx(1641.596144, abs=1e-4)
        assert rpt.max_delta_force_N == pytest.approx(328.319229, abs=1e-4)
        assert rpt.oscillation_period_s == pytest.approx(2.227495, abs=1e-5)
        assert rpt.max_delta_m == pytest.approx(0.405)
        assert rpt.design_force_N == pytest.approx(2 * 1641.596144, abs=1e-3)
        assert rpt.min_force_N == rpt.peak_force_N / 4
        assert rpt.roll_angle_rad == pytest.approx(0.15)
        assert rpt.passed

    def test_zero_wind(self, example_wing):
        rpt = build_design_report(example_wing, Environment(wind_speed_m_s=0))
        assert rpt.peak_force_N == 0
        assert rpt.min_force_N == 0
        assert rpt.oscillation_period_s is None

    def test_deterministic_serialization(self, example_wing, example_env):
        from awekit.report import render_json
        a = render_json(build_design_report(example_wing, example_env))
        b = render_json(build_design_report(example_wing, example_env))
        assert a == b

    def test_lms_failure_collected(self, example_env):
        wide = WingParams(9, 0.8, 5.6, 3.0, 1.8)
        rpt = build_design_report(wide, example_env)
        assert not rpt.passed
        assert any("lms" in f for f in rpt.failures)


class TestInvariants:
    """Type invariants reject out-of-domain construction."""

    def test_wing_domain(self):
        with pytest.raises(ValueError):
            WingParams(0, 0.8, 5.6, 2.7, 1.8)
        with pytest.raises(ValueError):
            WingParams(9, 2.5, 5.6, 2.7, 1.8)
        with pytest.raises(ValueError):
            WingParams(9, 0.8, 0.9, 2.7, 1.8)
        with pytest.raises(ValueError):
            WingParams(9, 0.8, 5.6, 2.7, 3.0)  # height above span

    def test_environment_domain(self):
        with pytest.raises(ValueError):
            Environment(air_density_kg_m3=0)
        with pytest.raises(ValueError):
            Environment(wind_speed_m_s=-1)
        with pytest.raises(ValueError):
            sizing.GustParams(amplitude_fraction=0.6)
