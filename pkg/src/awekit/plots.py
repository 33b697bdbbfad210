"""Matplotlib renderings of a telemetry log: wind-window view and strip charts."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .telemetry import TelemetryLog


def _arrays(log: TelemetryLog):
    t = np.array([s.t for s in log.samples])
    theta = np.array([s.theta for s in log.samples])
    phi = np.array([s.phi for s in log.samples])
    return t, theta, phi


def plot_wind_window(log: TelemetryLog, path, tether_length_m: float = 30.0,
                     targets=None):
    """Trajectory projected on the vertical plane facing the ground unit.

    Lateral coordinate r*cos(theta)*sin(phi), vertical r*sin(theta).
    """
    _, theta, phi = _arrays(log)
    x = tether_length_m * np.cos(theta) * np.sin(phi)
    y = tether_length_m * np.sin(theta)
    fig, ax = plt.subplots(figsize=(6, 5))
    if len(x):
        ax.plot(x, y, lw=0.8, color="tab:blue")
        ax.plot(x[-1], y[-1], "o", color="tab:red", label="current")
    if targets:
        for theta_t, phi_t in targets:
            ax.plot(tether_length_m * np.cos(theta_t) * np.sin(phi_t),
                    tether_length_m * np.sin(theta_t),
                    "x", color="tab:green", ms=10)
    ax.set_xlabel("lateral position [m]")
    ax.set_ylabel("height [m]")
    ax.set_title("Wind-window trajectory")
    ax.set_aspect("equal")
    ax.grid(True, alpha=0.3)
    if len(x):
        ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(Path(path), dpi=130)
    plt.close(fig)


def plot_strip_charts(log: TelemetryLog, path):
    """Stacked time courses: total force, steering input, power input."""
    t = np.array([s.t for s in log.samples])
    fig, axes = plt.subplots(3, 1, figsize=(8, 7), sharex=True)
    series = [
        ("total line force [N]", [s.F_total for s in log.samples], "tab:blue"),
        ("steering carriage [m]", [s.steer_cmd for s in log.samples], "tab:orange"),
        ("power input [m]", [s.power_cmd for s in log.samples], "tab:green"),
    ]
    for ax, (label, values, color) in zip(axes, series):
        if len(t):
            ax.plot(t, values, lw=0.9, color=color)
        ax.set_ylabel(label)
        ax.grid(True, alpha=0.3)
    axes[-1].set_xlabel("time [s]")
    axes[0].set_title("Telemetry time courses")
    fig.tight_layout()
    fig.savefig(Path(path), dpi=130)
    plt.close(fig)


def render_run_figures(log: TelemetryLog, out_dir, tether_length_m: float = 30.0,
                       targets=None) -> list[str]:
    """Write both figures next to the CSV output; returns the file paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    window = out / "wind_window.png"
    strips = out / "strip_charts.png"
    plot_wind_window(log, window, tether_length_m, targets)
    plot_strip_charts(log, strips)
    return [str(window), str(strips)]
