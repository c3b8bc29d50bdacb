"""Wire envelopes for the controller/server/responder channel.

Newline-delimited UTF-8 JSON objects: {"seq", "session_id", "sender_role",
"kind", "payload"}. Sequence numbers increase per (session, sender) and
make redelivery harmless.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum


class Role(str, Enum):
    CONTROLLER = "controller"
    RESPONDER = "responder"
    ENGINE = "engine"


class Kind(str, Enum):
    REGISTER = "register"
    UPLOAD_PACKAGE = "upload_package"
    TAP = "tap"
    SWIPE = "swipe"
    GOTO_SLIDE = "goto_slide"
    CLICK = "click"
    STATE_SYNC = "state_sync"
    TRANSCRIPT = "transcript"
    MANUAL_SCROLL = "manual_scroll"
    SNAPSHOT_REQUEST = "snapshot_request"
    SNAPSHOT = "snapshot"
    HEARTBEAT = "heartbeat"


@dataclass(frozen=True)
class SessionMessage:
    seq: int
    session_id: str
    sender_role: Role
    kind: Kind
    payload: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "seq": self.seq,
                "session_id": self.session_id,
                "sender_role": self.sender_role.value,
                "kind": self.kind.value,
                "payload": self.payload,
            },
            ensure_ascii=False,
        )

    @classmethod
    def from_json(cls, line: str) -> "SessionMessage":
        data = json.loads(line)
        return cls(
            seq=int(data["seq"]),
            session_id=data["session_id"],
            sender_role=Role(data["sender_role"]),
            kind=Kind(data["kind"]),
            payload=data.get("payload", {}),
        )
