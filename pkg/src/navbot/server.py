"""WebSocket front door for the teleop session.

One control session at a time: the first client owns the robot, later
connections are refused with an error frame. Each WebSocket text message is
one newline-terminated JSON frame of the wire protocol; telemetry is pushed
at the configured tick period.
"""

from __future__ import annotations

import asyncio
from typing import Optional

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from . import protocol
from .session import TeleopSession


def create_app(session_factory, tick_ms: float = 100.0, realtime: bool = True) -> FastAPI:
    """App exposing /ws; `session_factory` builds a fresh TeleopSession per client."""
    app = FastAPI(title="navbot teleop service")
    state = {"active": False}

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        if state["active"]:
            await ws.send_text(protocol.encode(protocol.error_message("session busy: one operator at a time")))
            await ws.close()
            return
        state["active"] = True
        session: TeleopSession = session_factory()
        session.tick_ms = tick_ms
        send_lock = asyncio.Lock()

        async def send(msg):
            async with send_lock:
                await ws.send_text(protocol.encode(msg))

        async def pump():
            while session.connected:
                for msg in session.tick():
                    await send(msg)
                if realtime:
                    await asyncio.sleep(tick_ms / 1000.0)
                else:
                    await asyncio.sleep(0)

        pump_task = asyncio.create_task(pump())
        try:
            while True:
                line = await ws.receive_text()
                for reply in session.handle_line(line):
                    await send(reply)
        except WebSocketDisconnect:
            pass
        finally:
            session.disconnect()
            pump_task.cancel()
            state["active"] = False

    return app


def serve(session_factory, host: str = "127.0.0.1", port: int = 8772, tick_ms: float = 100.0):
    """Run the service with uvicorn (blocking)."""
    import uvicorn

    app = create_app(session_factory, tick_ms=tick_ms)
    uvicorn.run(app, host=host, port=port, log_level="warning")
