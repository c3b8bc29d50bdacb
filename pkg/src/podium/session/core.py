"""Pure per-session state machine.

All mutations happen here, in server arrival order, one message at a time.
Per-sender sequence numbers give exactly-once effects: duplicates are
dropped, small gaps are buffered (up to 64 messages) and drained in order.
Transport and liveness concerns live in the server module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import alignment, pacing
from ..errors import EngineError
from ..package import ScriptPackage, package_from_dict, package_to_dict
from .messages import Kind, Role, SessionMessage

REORDER_BUFFER_LIMIT = 64

CONTROL_KINDS = {
    Kind.TAP,
    Kind.SWIPE,
    Kind.GOTO_SLIDE,
    Kind.TRANSCRIPT,
    Kind.MANUAL_SCROLL,
}


class UnknownSession(EngineError):
    pass


class PackageMissing(EngineError):
    pass


class OutOfOrderRejected(EngineError):
    pass


@dataclass
class Outbound:
    target: Role
    message: SessionMessage


@dataclass
class Session:
    session_id: str
    package: ScriptPackage | None = None
    slide_index: int = 0
    align_state: alignment.AlignmentState = field(default_factory=alignment.AlignmentState)
    align_config: alignment.AlignmentConfig = field(default_factory=alignment.AlignmentConfig)
    elapsed_s: float = 0.0
    applied_seqs: dict = field(default_factory=dict)
    click_count: int = 0
    _index: alignment.Bm25Index | None = None
    _sentences: list = field(default_factory=list)
    _pending: dict = field(default_factory=dict)
    _engine_seq: int = 0

    # -- sequencing ---------------------------------------------------

    def _high_water(self, role: Role) -> int:
        return self.applied_seqs.get(role.value, 0)

    def apply(self, msg: SessionMessage) -> list[Outbound]:
        """Apply one message; returns messages to deliver to endpoints."""
        if msg.session_id != self.session_id:
            raise UnknownSession(msg.session_id)
        high = self._high_water(msg.sender_role)
        if msg.seq <= high:
            return []  # duplicate delivery
        pending = self._pending.setdefault(msg.sender_role.value, {})
        if msg.seq > high + 1:
            pending[msg.seq] = msg
            if len(pending) > REORDER_BUFFER_LIMIT:
                raise OutOfOrderRejected(
                    f"sequence gap too large for {msg.sender_role.value}"
                )
            return []

        out = self._effect(msg)
        self.applied_seqs[msg.sender_role.value] = msg.seq
        # drain any directly-following buffered messages
        next_seq = msg.seq + 1
        while next_seq in pending:
            out.extend(self._effect(pending.pop(next_seq)))
            self.applied_seqs[msg.sender_role.value] = next_seq
            next_seq += 1
        return out

    # -- effects ------------------------------------------------------

    def _emit(self, target: Role, kind: Kind, payload: dict | None = None) -> Outbound:
        self._engine_seq += 1
        return Outbound(
            target,
            SessionMessage(
                seq=self._engine_seq,
                session_id=self.session_id,
                sender_role=Role.ENGINE,
                kind=kind,
                payload=payload or {},
            ),
        )

    def _effect(self, msg: SessionMessage) -> list[Outbound]:
        kind = msg.kind
        if kind in (Kind.REGISTER, Kind.HEARTBEAT, Kind.CLICK):
            return []
        if kind == Kind.UPLOAD_PACKAGE:
            self.package = package_from_dict(msg.payload["package"])
            self._sentences = self.package.sentence_tokens()
            self._index = alignment.Bm25Index(
                self._sentences, k1=self.align_config.k1, b=self.align_config.b
            )
            self.slide_index = 0
            self.align_state = alignment.AlignmentState()
            self.elapsed_s = 0.0
            return []
        if kind == Kind.SNAPSHOT_REQUEST:
            return [self._emit(msg.sender_role, Kind.SNAPSHOT, self.snapshot_payload())]
        if self.package is None and kind in CONTROL_KINDS:
            raise PackageMissing(f"{kind.value} before package upload")

        if kind == Kind.TAP:
            self.click_count += 1
            return [self._emit(Role.RESPONDER, Kind.CLICK)]
        if kind == Kind.SWIPE:
            delta = 1 if msg.payload.get("direction") == "next" else -1
            return self._set_slide(self.slide_index + delta)
        if kind == Kind.GOTO_SLIDE:
            return self._set_slide(int(msg.payload["index"]))
        if kind == Kind.MANUAL_SCROLL:
            self.align_state = alignment.manual_scroll(
                self.align_state, int(msg.payload["delta"]), len(self._sentences)
            )
            return self._state_sync()
        if kind == Kind.TRANSCRIPT:
            event = alignment.TranscriptEvent(
                t_ms=int(msg.payload["t_ms"]), text=msg.payload["text"]
            )
            self.align_state = alignment.ingest(
                self.align_state, event, self._sentences, self._index, self.align_config
            )
            self.elapsed_s = max(self.elapsed_s, event.t_ms / 1000.0)
            return self._state_sync()
        return []

    def _set_slide(self, index: int) -> list[Outbound]:
        assert self.package is not None
        self.slide_index = max(0, min(len(self.package.slides) - 1, index))
        payload = {"index": self.slide_index}
        return [
            self._emit(Role.CONTROLLER, Kind.GOTO_SLIDE, payload),
            self._emit(Role.RESPONDER, Kind.GOTO_SLIDE, payload),
        ]

    def _state_sync(self) -> list[Outbound]:
        assert self.package is not None
        pace = pacing.compute_pace(self.align_state, self.elapsed_s, self.package)
        payload = {
            "slide_index": self.slide_index,
            "sentence_index": self.align_state.sentence_index,
            "elapsed_s": self.elapsed_s,
            "pace": pace.to_dict(),
        }
        return [
            self._emit(Role.CONTROLLER, Kind.STATE_SYNC, payload),
            self._emit(Role.RESPONDER, Kind.STATE_SYNC, payload),
        ]

    # -- snapshots ----------------------------------------------------

    def snapshot_payload(self) -> dict:
        return {
            "slide_index": self.slide_index,
            "sentence_index": self.align_state.sentence_index,
            "elapsed_s": self.elapsed_s,
            "applied_seqs": dict(self.applied_seqs),
            "package": package_to_dict(self.package) if self.package else None,
        }

    def snapshot(self) -> SessionMessage:
        return self._emit(Role.CONTROLLER, Kind.SNAPSHOT, self.snapshot_payload()).message
