"""Wire protocol: newline-delimited UTF-8 JSON frames.

Every frame is a single-line JSON object with a mandatory "type" field.
Control messages flow panel -> service; server messages flow back. Unknown
fields are dropped on decode so older clients keep working against newer
servers; unknown types are rejected.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from typing import Any, Dict, List

from .simworld import TelemetryFrame


class ProtocolError(ValueError):
    """Raised for frames that cannot be decoded into a valid message."""

    def __init__(self, message: str, raw: str = ""):
        super().__init__(message)
        self.raw = raw


MODES = ("manual", "odometry", "tracking", "avoidance", "idle")
DRIVE_DIRS = ("forward", "backward", "left", "right", "stop")

# required payload fields per control-message type, with validators
_CONTROL_FIELDS = {
    "set_mode": {"mode": lambda v: v in MODES},
    "drive": {"dir": lambda v: v in DRIVE_DIRS},
    "camera": {"pan_deg": lambda v: isinstance(v, (int, float)) and -90 <= v <= 90},
    "set_target": {"label": lambda v: isinstance(v, str) and bool(v)},
    "load_map": {"map_text": lambda v: isinstance(v, str)},
    "detect_once": {},
}

_SERVER_FIELDS = {
    "telemetry": {"frame": lambda v: isinstance(v, dict)},
    "detections": {"detections": lambda v: isinstance(v, list)},
    "event": {"kind": lambda v: isinstance(v, str) and bool(v)},
    "error": {"message": lambda v: isinstance(v, str)},
    "ack": {"acked": lambda v: isinstance(v, dict)},
}


def _validate(msg: Dict[str, Any], schemas) -> Dict[str, Any]:
    mtype = msg.get("type")
    if mtype not in schemas:
        raise ProtocolError(f"unknown message type {mtype!r}")
    fields = schemas[mtype]
    out = {"type": mtype}
    for name, check in fields.items():
        if name not in msg:
            raise ProtocolError(f"{mtype} message missing field {name!r}")
        if not check(msg[name]):
            raise ProtocolError(f"{mtype} message has invalid {name!r}: {msg[name]!r}")
        out[name] = msg[name]
    return out


def validate_control(msg: Dict[str, Any]) -> Dict[str, Any]:
    """Normalize a control message: keep type + required fields, drop the rest."""
    return _validate(msg, _CONTROL_FIELDS)


def validate_server(msg: Dict[str, Any]) -> Dict[str, Any]:
    return _validate(msg, _SERVER_FIELDS)


def encode(msg: Dict[str, Any]) -> str:
    """Serialize a message to one newline-terminated JSON line."""
    return json.dumps(msg, separators=(",", ":"), sort_keys=True) + "\n"


def decode(line: str, server: bool = False) -> Dict[str, Any]:
    """Parse and validate one frame; unknown fields are dropped."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"invalid JSON frame: {exc}", raw=line) from exc
    if not isinstance(obj, dict):
        raise ProtocolError("frame is not a JSON object", raw=line)
    return _validate(obj, _SERVER_FIELDS if server else _CONTROL_FIELDS)


def telemetry_message(frame: TelemetryFrame) -> Dict[str, Any]:
    return {"type": "telemetry", "frame": asdict(frame)}


def detections_message(detections) -> Dict[str, Any]:
    payload: List[Dict[str, Any]] = [
        {"label": d.label, "confidence": d.confidence, "bbox": list(d.bbox)}
        for d in detections
    ]
    return {"type": "detections", "detections": payload}


def event_message(kind: str) -> Dict[str, Any]:
    return {"type": "event", "kind": kind}


def error_message(text: str) -> Dict[str, Any]:
    return {"type": "error", "message": text}


def ack_message(original: Dict[str, Any]) -> Dict[str, Any]:
    return {"type": "ack", "acked": original}
