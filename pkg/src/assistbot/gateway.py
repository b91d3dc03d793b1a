"""Websocket gateway: broadcasts telemetry, accepts teleoperation commands.

One asyncio loop owns everything: the engine ticks on it, connections are
served on it, so the single-writer rule holds without locks. Any number
of clients may connect; commands are applied in arrival order
(last-arrival wins on conflicts), telemetry is broadcast to everyone.
"""

from __future__ import annotations

import asyncio
import json
import logging

from websockets.asyncio.server import serve as ws_serve

from .scenarios import DT, Engine
from .telemetry import build_telemetry, encode_telemetry, validate_command

log = logging.getLogger(__name__)


class Gateway:
    def __init__(self, engine: Engine, host: str = "127.0.0.1",
                 port: int = 8765, realtime: bool = True):
        self.engine = engine
        self.host = host
        self.port = port
        self.realtime = realtime
        self.clients: set = set()
        self._stop = asyncio.Event()

    async def _handler(self, ws) -> None:
        self.clients.add(ws)
        try:
            async for raw in ws:
                cmd, err = validate_command(raw)
                if err is not None:
                    try:
                        await ws.send(json.dumps(
                            {"type": "error", "reason": err}))
                    except Exception:
                        break
                else:
                    self.engine.queue_command(cmd)
        except Exception as exc:
            log.debug("connection closed: %s", exc)
        finally:
            self.clients.discard(ws)

    async def _broadcast(self, message: str) -> None:
        for ws in list(self.clients):
            try:
                await ws.send(message)
            except Exception:
                self.clients.discard(ws)

    async def _loop(self) -> None:
        while not self._stop.is_set():
            self.engine.tick(DT)
            await self._broadcast(encode_telemetry(build_telemetry(self.engine)))
            if self.realtime:
                await asyncio.sleep(DT)
            else:
                await asyncio.sleep(0)

    def stop(self) -> None:
        self._stop.set()

    async def run(self) -> None:
        try:
            server = await ws_serve(self._handler, self.host, self.port)
        except OSError as exc:
            raise RuntimeError(
                f"cannot bind {self.host}:{self.port}: {exc}") from exc
        async with server:
            await self._loop()


def serve(engine: Engine, bind: str = "127.0.0.1:8765",
          realtime: bool = True) -> None:
    host, _, port = bind.rpartition(":")
    gw = Gateway(engine, host or "127.0.0.1", int(port), realtime)
    asyncio.run(gw.run())
