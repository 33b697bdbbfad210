"""Fixed-rate telemetry sampling, bounded logging, CSV persistence and replay.

The CSV schema is fixed: header ``t,theta,phi,gamma,v,F_total,F_power,
F_left,F_right,delta,z,steer_cmd,power_cmd,mode,status,wind,flags``, UTF-8,
LF line endings, numbers printed with 9 significant digits so a round-trip
through the file is lossless at that precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterator, Optional

CSV_COLUMNS = ("t", "theta", "phi", "gamma", "v", "F_total", "F_power",
               "F_left", "F_right", "delta", "z", "steer_cmd", "power_cmd",
               "mode", "status", "wind", "flags")

NUMERIC_COLUMNS = ("t", "theta", "phi", "gamma", "v", "F_total", "F_power",
                   "F_left", "F_right", "delta", "z", "steer_cmd",
                   "power_cmd", "wind")

BYTES_PER_NUMERIC = 8


@dataclass(frozen=True)
class TelemetrySample:
    t: float
    theta: float
    phi: float
    gamma: float
    v: float
    F_total: float
    F_power: float
    F_left: float
    F_right: float
    delta: float
    z: float
    steer_cmd: float
    power_cmd: float
    mode: str
    status: str
    wind: float
    flags: str = ""

    def numeric_values(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in NUMERIC_COLUMNS)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


SAMPLE_BYTES = len(NUMERIC_COLUMNS) * BYTES_PER_NUMERIC


class ReplayError(ValueError):
    """Schema violation while reading a telemetry file."""


class TelemetryLog:
    """In-memory telemetry store with a byte budget.

    Capacity is derived from the budget at 8 bytes per numeric field.
    When the budget is exhausted logging stops and ``budget_exceeded`` is
    set; the simulation is never interrupted. Non-finite samples are
    rejected and counted in ``fault_count``.
    """

    def __init__(self, budget_bytes: Optional[float] = None):
        self.samples: list[TelemetrySample] = []
        self.budget_bytes = budget_bytes
        self.capacity = (None if budget_bytes is None
                         else int(budget_bytes // SAMPLE_BYTES))
        self.budget_exceeded = False
        self.fault_count = 0

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def bytes_used(self) -> int:
        return len(self.samples) * SAMPLE_BYTES

    def record(self, sample: TelemetrySample) -> bool:
        """Append a sample; returns False if rejected or budget-stopped."""
        if not all(math.isfinite(v) for v in sample.numeric_values()):
            self.fault_count += 1
            return False
        if self.capacity is not None and len(self.samples) >= self.capacity:
            self.budget_exceeded = True
            return False
        self.samples.append(sample)
        return True


def _format(value: float) -> str:
    return f"{value:.9g}"


def flush_csv(log: TelemetryLog, path) -> int:
    """Write the log to a CSV file; returns the number of data rows."""
    lines = [",".join(CSV_COLUMNS)]
    for s in log.samples:
        row = {name: _format(getattr(s, name)) for name in NUMERIC_COLUMNS}
        row["mode"] = s.mode
        row["status"] = s.status
        row["flags"] = s.flags
        lines.append(",".join(row[c] for c in CSV_COLUMNS))
    data = "\n".join(lines) + "\n"
    Path(path).write_text(data, encoding="utf-8", newline="\n")
    return len(log.samples)


def replay(path) -> Iterator[TelemetrySample]:
    """Yield samples from a telemetry CSV, validating the schema as it goes."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header.strip():
            raise ReplayError(f"{path}: no header")
        columns = tuple(header.strip().split(","))
        if columns != CSV_COLUMNS:
            missing = set(CSV_COLUMNS) - set(columns)
            extra = set(columns) - set(CSV_COLUMNS)
            raise ReplayError(
                f"{path}: header mismatch (missing: {sorted(missing)}, "
                f"unexpected: {sorted(extra)})")
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(CSV_COLUMNS):
                raise ReplayError(f"{path}:{lineno}: expected "
                                  f"{len(CSV_COLUMNS)} fields, got {len(parts)}")
            values = {}
            for name, raw in zip(CSV_COLUMNS, parts):
                if name in NUMERIC_COLUMNS:
                    try:
                        values[name] = float(raw)
                    except ValueError:
                        raise ReplayError(
                            f"{path}:{lineno}: column {name!r}: "
                            f"not a number: {raw!r}") from None
                else:
                    values[name] = raw
            yield TelemetrySample(**values)
