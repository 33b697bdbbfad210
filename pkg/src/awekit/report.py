"""DesignReport serialization: stable JSON and an aligned text table."""

from __future__ import annotations

import json
from dataclasses import fields

from .sizing import DesignReport

_LABELS = {
    "peak_force_N": ("Peak traction force", "N"),
    "min_force_N": ("Minimum traction force", "N"),
    "design_force_N": ("Frame design force", "N"),
    "oscillation_period_s": ("Force oscillation period", "s"),
    "path_length_m": ("Figure-eight path length", "m"),
    "min_turn_radius_m": ("Minimum turning radius", "m"),
    "max_delta_m": ("Max steering delta", "m"),
    "max_delta_force_N": ("Max steering force difference", "N"),
    "roll_angle_rad": ("Wing roll angle at max delta", "rad"),
    "power_line_N": ("Power line force (peak)", "N"),
    "left_line_N": ("Left line force (peak)", "N"),
    "right_line_N": ("Right line force (peak)", "N"),
    "steer_stroke_m": ("Steering stroke (+/-)", "m"),
    "steer_speed_m_s": ("Steering speed", "m/s"),
    "power_stroke_min_m": ("Power stroke lower bound", "m"),
    "power_speed_m_s": ("Power speed", "m/s"),
    "lms_available_m": ("LMS available stroke (+/-)", "m"),
    "lms_required_m": ("LMS required stroke (+/-)", "m"),
    "lms_pass": ("LMS feasibility", ""),
    "line_required_mbl_N": ("Required line breaking load", "N"),
    "line_spec_mbl_N": ("Specified line breaking load", "N"),
    "line_pass": ("Line strength check", ""),
    "pulley_min_diameter_m": ("Minimum pulley diameter", "m"),
    "line_mass_per_m_kg": ("Line mass per meter", "kg/m"),
    "idle_runtime_h": ("Battery runtime at idle", "h"),
    "logger_memory_bytes": ("Logger memory", "B"),
    "max_wind_m_s": ("Maximum wind for wing loading", "m/s"),
}


def report_to_dict(report: DesignReport) -> dict:
    out = {}
    for f in fields(report):
        value = getattr(report, f.name)
        if isinstance(value, tuple):
            value = list(value)
        out[f.name] = value
    out["passed"] = report.passed
    return out


def render_json(report: DesignReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True)


def _fmt(value) -> str:
    if value is None:
        return "unbounded"
    if isinstance(value, bool):
        return "PASS" if value else "FAIL"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def render_text(report: DesignReport) -> str:
    rows = []
    for name, (label, unit) in _LABELS.items():
        value = getattr(report, name)
        if value is None and name in ("line_required_mbl_N", "line_spec_mbl_N",
                                      "line_pass", "pulley_min_diameter_m",
                                      "line_mass_per_m_kg", "idle_runtime_h",
                                      "logger_memory_bytes"):
            continue  # section not configured
        rows.append((label, _fmt(value), unit))
    width = max(len(r[0]) for r in rows)
    vwidth = max(len(r[1]) for r in rows)
    lines = [f"{label:<{width}}  {value:>{vwidth}}  {unit}".rstrip()
             for label, value, unit in rows]
    for warning in report.warnings:
        lines.append(f"WARNING: {warning}")
    for failure in report.failures:
        lines.append(f"FAIL: {failure}")
    lines.append(f"Overall: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines)
