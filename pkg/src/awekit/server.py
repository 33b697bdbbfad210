"""WebSocket operator service: live simulation control and telemetry streaming.

One operator connection drives the simulation; any further connections are
read-only telemetry subscribers. JSON text frames:

  command    {"type": "cmd",  "seq": N, "steering": x, "power": y}
  mode       {"type": "mode", "seq": N, "mode": "manual"|"auto"}
  config     {"type": "config", "seq": N, "wind_speed_m_s": W}
  telemetry  {"type": "telemetry", "seq": N, "schema": 1, "sample": {...},
              "applied_seq": M, "applied_latency_steps": L,
              "dropped": D, "errors": E, "stale": S}
  error      {"type": "error", "message": "..."}

Malformed input never interrupts the simulation; it increments an error
counter and produces an error frame. The simulation pauses with actuators
frozen while no operator is connected.
"""

from __future__ import annotations

import asyncio
import json
import math
import time
from collections import deque
from typing import Optional

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from . import autopilot as ap
from . import sim as simmod
from .config import AppConfig
from .session import Session
from .telemetry import replay as replay_csv

SCHEMA_VERSION = 1
CLIENT_QUEUE_FRAMES = 64


class ProtocolError(ValueError):
    pass


def parse_message(text: str) -> dict:
    """Validate an inbound frame; raises ProtocolError with a reason."""
    try:
        msg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"not valid JSON: {exc.msg}") from exc
    if not isinstance(msg, dict):
        raise ProtocolError("frame must be a JSON object")
    kind = msg.get("type")
    if kind not in ("cmd", "mode", "config"):
        raise ProtocolError(f"unknown message type: {kind!r}")
    seq = msg.get("seq")
    if not isinstance(seq, int) or isinstance(seq, bool) or seq < 0:
        raise ProtocolError("seq must be a non-negative integer")
    if kind == "cmd":
        for axis in ("steering", "power"):
            value = msg.get(axis)
            if not isinstance(value, (int, float)) or isinstance(value, bool) \
                    or not math.isfinite(value):
                raise ProtocolError(f"{axis} must be a finite number")
            if not -1.0 <= value <= 1.0:
                raise ProtocolError(f"{axis} out of range [-1, 1]")
    elif kind == "mode":
        if msg.get("mode") not in (ap.MANUAL, ap.AUTO):
            raise ProtocolError("mode must be 'manual' or 'auto'")
    else:
        wind = msg.get("wind_speed_m_s")
        if wind is None:
            raise ProtocolError("config frame carries no supported key")
        if not isinstance(wind, (int, float)) or isinstance(wind, bool) \
                or not math.isfinite(wind) or wind < 0:
            raise ProtocolError("wind_speed_m_s must be a finite number >= 0")
    return msg


class ServiceState:
    """Shared state between the connection handlers and the stepping loop."""

    def __init__(self, config: AppConfig, seed: Optional[int],
                 realtime: Optional[bool]):
        self.config = config
        self.session = Session(config, mode=ap.MANUAL, seed=seed)
        self.realtime = config.serve.realtime if realtime is None else realtime
        self.control_step_index = 0
        self.last_seq = -1
        self.applied_seq = -1
        self.applied_latency_steps = 0
        self.stale_count = 0
        self.error_count = 0
        self.pending: deque = deque()
        self.subscribers: list[deque] = []
        self.drop_count = 0
        self.frame_seq = 0
        stream = config.serve.stream_rate_hz
        control = config.serve.control_rate_hz
        self.steps_per_frame = max(1, round(control / stream))

    def ingest(self, msg: dict):
        """Accept a validated message; stale sequence numbers are dropped."""
        if msg["seq"] <= self.last_seq:
            self.stale_count += 1
            return
        self.last_seq = msg["seq"]
        self.pending.append((msg, self.control_step_index))

    def apply_pending(self):
        while self.pending:
            msg, receipt_step = self.pending.popleft()
            self.applied_seq = msg["seq"]
            self.applied_latency_steps = self.control_step_index - receipt_step
            if msg["type"] == "cmd":
                self.session.set_axes(steer=float(msg["steering"]),
                                      power=float(msg["power"]))
            elif msg["type"] == "mode":
                self.session.set_mode(msg["mode"])
            else:
                self._set_wind(float(msg["wind_speed_m_s"]))

    def _set_wind(self, wind: float):
        sim = self.session.simulator
        new_env = simmod.Environment(
            air_density_kg_m3=sim.env.air_density_kg_m3,
            wind_speed_m_s=wind,
            wind_azimuth_rad=sim.env.wind_azimuth_rad,
            gust=sim.env.gust)
        sim.env = new_env
        sim.wind = simmod.WindModel(new_env, sim.config.seed)

    def telemetry_frame(self, sample) -> str:
        self.frame_seq += 1
        return json.dumps({
            "type": "telemetry",
            "seq": self.frame_seq,
            "schema": SCHEMA_VERSION,
            "sample": sample.to_dict(),
            "applied_seq": self.applied_seq,
            "applied_latency_steps": self.applied_latency_steps,
            "dropped": self.drop_count,
            "errors": self.error_count,
            "stale": self.stale_count,
        })

    def broadcast(self, frame: str):
        for queue in self.subscribers:
            if len(queue) >= CLIENT_QUEUE_FRAMES:
                queue.popleft()
                self.drop_count += 1
            queue.append(frame)

    def unsubscribe(self, queue: deque):
        # deques compare element-wise, so list.remove() could take another
        # subscriber's (equal) empty queue; match by identity instead
        self.subscribers = [q for q in self.subscribers if q is not queue]


def create_app(config: AppConfig, seed: Optional[int] = None,
               realtime: Optional[bool] = None) -> FastAPI:
    """Build the live-simulation service application."""
    app = FastAPI(title="awekit ground-unit service")
    state = ServiceState(config, seed, realtime)
    app.state.service = state
    operator_lock = asyncio.Lock()

    async def stepping_loop(stop: asyncio.Event):
        session = state.session
        control_dt = session.steps_per_control * session.simulator.config.dt_s
        wall_start = time.monotonic()
        sim_start = session.time_s
        while not stop.is_set():
            if session.status != simmod.FLYING:
                state.broadcast(state.telemetry_frame(
                    session.log.samples[-1]) if session.log.samples
                    else state.telemetry_frame(session.control_step()))
                break
            state.apply_pending()
            sample = session.control_step()
            state.control_step_index += 1
            if state.control_step_index % state.steps_per_frame == 0:
                state.broadcast(state.telemetry_frame(sample))
            if state.realtime:
                target = wall_start + (session.time_s - sim_start)
                delay = target - time.monotonic()
                await asyncio.sleep(max(delay, 0.0))
            else:
                await asyncio.sleep(0)

    async def sender_loop(websocket: WebSocket, queue: deque):
        while True:
            if queue:
                await websocket.send_text(queue.popleft())
            else:
                await asyncio.sleep(0.001 if state.realtime else 0)

    @app.websocket("/ws")
    async def operator_ws(websocket: WebSocket):
        await websocket.accept()
        queue: deque = deque()
        state.subscribers.append(queue)
        if operator_lock.locked():
            # read-only subscriber; commands are refused
            try:
                sender = asyncio.ensure_future(sender_loop(websocket, queue))
                while True:
                    await websocket.receive_text()
                    await websocket.send_text(json.dumps(
                        {"type": "error",
                         "message": "read-only connection: operator slot taken"}))
            except WebSocketDisconnect:
                pass
            finally:
                sender.cancel()
                state.unsubscribe(queue)
            return

        async with operator_lock:
            stop = asyncio.Event()
            stepper = asyncio.ensure_future(stepping_loop(stop))
            sender = asyncio.ensure_future(sender_loop(websocket, queue))
            try:
                while True:
                    text = await websocket.receive_text()
                    try:
                        state.ingest(parse_message(text))
                    except ProtocolError as exc:
                        state.error_count += 1
                        await websocket.send_text(json.dumps(
                            {"type": "error", "message": str(exc)}))
            except WebSocketDisconnect:
                pass
            finally:
                # pause with actuators frozen: commands stop, stepper halts
                stop.set()
                sender.cancel()
                stepper.cancel()
                state.unsubscribe(queue)

    @app.get("/status")
    async def status():
        session = state.session
        return {
            "time_s": session.time_s,
            "status": session.status,
            "mode": session.mode,
            "errors": state.error_count,
            "stale": state.stale_count,
            "dropped": state.drop_count,
        }

    return app


def create_replay_app(csv_path, stream_rate_hz: float = 20.0,
                      realtime: bool = False) -> FastAPI:
    """Re-emit a telemetry log over the same wire protocol."""
    app = FastAPI(title="awekit telemetry replay")
    samples = list(replay_csv(csv_path))
    app.state.sample_count = len(samples)

    @app.websocket("/ws")
    async def replay_ws(websocket: WebSocket):
        await websocket.accept()
        period = 1.0 / stream_rate_hz
        try:
            for seq, sample in enumerate(samples, start=1):
                frame = {
                    "type": "telemetry",
                    "seq": seq,
                    "schema": SCHEMA_VERSION,
                    "sample": sample.to_dict(),
                    "applied_seq": -1,
                    "applied_latency_steps": 0,
                    "dropped": 0,
                    "errors": 0,
                    "stale": 0,
                }
                await websocket.send_text(json.dumps(frame))
                if realtime:
                    await asyncio.sleep(period)
                else:
                    await asyncio.sleep(0)
            await websocket.close()
        except WebSocketDisconnect:
            pass

    return app
