"""JSON configuration loading: one document, strict keys, shipped schema."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

import jsonschema

from . import autopilot as ap
from . import sim as simmod
from . import sizing


class ConfigError(ValueError):
    """Unusable configuration; message carries the location of the problem."""


def _schema() -> dict:
    text = resources.files("awekit.data").joinpath("config.schema.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class TelemetrySettings:
    rate_hz: float = 50.0
    budget_bytes: Optional[float] = None


@dataclass(frozen=True)
class ServeSettings:
    control_rate_hz: float = 50.0
    stream_rate_hz: float = 20.0
    realtime: bool = True


@dataclass(frozen=True)
class AppConfig:
    """Everything the CLI entry points need, parsed and validated."""

    wing: sizing.WingParams
    environment: sizing.Environment
    geometry: sizing.LoadGeometry
    partition: sizing.PartitionPolicy
    line: Optional[sizing.LineSpec]
    supply: Optional[sizing.PowerSupplyParams]
    logger: Optional[sizing.LoggerPlan]
    sim: simmod.SimConfig
    tether_length_m: float
    initial: simmod.KiteState
    actuators: simmod.ActuatorLimits
    autopilot: ap.AutopilotConfig
    telemetry: TelemetrySettings
    serve: ServeSettings


def _build(document: dict) -> AppConfig:
    env_raw = dict(document["environment"])
    gust = env_raw.pop("gust", None)
    if gust is not None:
        env_raw["gust"] = sizing.GustParams(**gust)
    environment = sizing.Environment(**env_raw)

    sim_raw = dict(document.get("sim", {}))
    tether = sim_raw.pop("tether_length_m", 30.0)
    initial_raw = sim_raw.pop("initial", {})
    actuators_raw = sim_raw.pop("actuators", {})
    sim_cfg = simmod.SimConfig(**sim_raw)
    initial = simmod.KiteState(
        elevation_rad=initial_raw.get("elevation_rad", 0.5),
        azimuth_rad=initial_raw.get("azimuth_rad", 0.0),
        heading_rad=initial_raw.get("heading_rad", math.pi / 2),
        tether_length_m=tether,
    )

    logger_raw = document.get("logger")
    logger_plan = None
    if logger_raw is not None:
        groups = tuple(sizing.LoggerGroup(**g) for g in logger_raw.get("groups", []))
        logger_plan = sizing.LoggerPlan(duration_s=logger_raw["duration_s"],
                                        groups=groups)

    return AppConfig(
        wing=sizing.WingParams(**document["wing"]),
        environment=environment,
        geometry=sizing.LoadGeometry(**document.get("geometry", {})),
        partition=sizing.PartitionPolicy(**document.get("partition", {})),
        line=(sizing.LineSpec(**document["line"]) if "line" in document else None),
        supply=(sizing.PowerSupplyParams(**document["supply"])
                if "supply" in document else None),
        logger=logger_plan,
        sim=sim_cfg,
        tether_length_m=tether,
        initial=initial,
        actuators=simmod.ActuatorLimits(**actuators_raw),
        autopilot=ap.AutopilotConfig(**document.get("autopilot", {})),
        telemetry=TelemetrySettings(**document.get("telemetry", {})),
        serve=ServeSettings(**document.get("serve", {})),
    )


def parse_config(document: dict) -> AppConfig:
    """Validate an already-parsed JSON document and build the config."""
    try:
        jsonschema.validate(document, _schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "(root)"
        raise ConfigError(f"config invalid at {where}: {exc.message}") from exc
    try:
        return _build(document)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"config invalid: {exc}") from exc


def load_config(path) -> AppConfig:
    """Load and validate a configuration file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}") from exc
    if not isinstance(document, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return parse_config(document)
