"""Command line entry points: size, simulate, serve, replay."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import report as report_mod
from . import sizing
from .config import AppConfig, ConfigError, load_config
from .session import Session, summarize
from .telemetry import flush_csv

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAIL = 2


def _load(config_path: str) -> AppConfig:
    try:
        return load_config(config_path)
    except ConfigError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


@click.group()
def main():
    """Design sizing and flight simulation for a three-line kite ground unit."""


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=False), help="JSON configuration file.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="text", show_default=True)
def size(config_path, fmt):
    """Compute the design report for the configured wing and hardware."""
    cfg = _load(config_path)
    rpt = sizing.build_design_report(cfg.wing, cfg.environment, cfg.geometry,
                                     cfg.partition, cfg.line, cfg.supply,
                                     cfg.logger)
    if fmt == "json":
        click.echo(report_mod.render_json(rpt))
    else:
        click.echo(report_mod.render_text(rpt))
    sys.exit(EXIT_OK if rpt.passed else EXIT_FAIL)


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=False))
@click.option("--duration", "duration_s", type=float, default=60.0,
              show_default=True, help="Simulated duration in seconds.")
@click.option("--out", "out_csv", type=click.Path(), default=None,
              help="Telemetry CSV destination.")
@click.option("--plots", "plots_dir", type=click.Path(), default=None,
              help="Directory for rendered figures (wind window, strip charts).")
@click.option("--seed", type=int, default=None, help="Override the gust seed.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="text", show_default=True, help="Summary format.")
def simulate(config_path, duration_s, out_csv, plots_dir, seed, fmt):
    """Run the autopilot closed loop headless and summarize the flight."""
    cfg = _load(config_path)
    session = Session(cfg, seed=seed)
    log = session.run(duration_s)
    if out_csv:
        flush_csv(log, out_csv)
    if plots_dir:
        from .plots import render_run_figures
        targets = [(cfg.autopilot.target_elevation_rad,
                    s * cfg.autopilot.target_azimuth_rad) for s in (1, -1)]
        for path in render_run_figures(log, plots_dir, cfg.tether_length_m,
                                       targets):
            click.echo(f"wrote {path}", err=True)
    summary = summarize(log, session.status)
    if fmt == "json":
        click.echo(json.dumps(summary.to_dict(), indent=2, sort_keys=True))
    else:
        d = summary.to_dict()
        width = max(len(k) for k in d)
        for key, value in d.items():
            if isinstance(value, float):
                value = f"{value:.6g}"
            click.echo(f"{key:<{width}}  {value}")
    sys.exit(EXIT_OK)


def _split_bind(bind: str) -> tuple[str, int]:
    host, _, port = bind.rpartition(":")
    try:
        return host or "127.0.0.1", int(port)
    except ValueError:
        click.echo(f"error: invalid bind address {bind!r}", err=True)
        sys.exit(EXIT_CONFIG)


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=False))
@click.option("--bind", default="127.0.0.1:8700", show_default=True,
              help="Address:port for the WebSocket endpoint (/ws).")
@click.option("--seed", type=int, default=None)
@click.option("--realtime/--no-realtime", default=None,
              help="Pace the simulation at wall-clock speed.")
def serve(config_path, bind, seed, realtime):
    """Serve a live simulation for one operator console."""
    import uvicorn

    from .server import create_app
    cfg = _load(config_path)
    host, port = _split_bind(bind)
    app = create_app(cfg, seed=seed, realtime=realtime)
    click.echo(f"serving on ws://{host}:{port}/ws", err=True)
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
@click.option("--log", "log_path", required=True, type=click.Path(exists=False),
              help="Telemetry CSV to re-emit.")
@click.option("--bind", default="127.0.0.1:8700", show_default=True)
@click.option("--realtime/--no-realtime", default=True, show_default=True)
def replay(log_path, bind, realtime):
    """Re-emit a recorded telemetry log over the wire protocol."""
    import uvicorn

    from .server import create_replay_app
    from .telemetry import ReplayError
    host, port = _split_bind(bind)
    try:
        app = create_replay_app(log_path, realtime=realtime)
    except (ReplayError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    click.echo(f"replaying {app.state.sample_count} samples on "
               f"ws://{host}:{port}/ws", err=True)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
