"""Session server and endpoint clients.

The loopback server routes messages in-process and backs all tests and the
headless simulator. The TCP server speaks the same newline-delimited JSON
envelopes over sockets and adds liveness tracking (heartbeats, reconnect
window). One controller and one responder per session.
"""

from __future__ import annotations

import asyncio
import time
from dataclasses import dataclass, field

from ..errors import EngineError
from ..package import ScriptPackage, package_to_dict
from .core import Outbound, Session, UnknownSession
from .messages import Kind, Role, SessionMessage

DEFAULT_PORT = 7341
HEARTBEAT_INTERVAL_S = 5.0
MAX_MISSED_HEARTBEATS = 3
RECONNECT_WINDOW_S = 60.0
GESTURE_QUEUE_LIMIT = 64


class RegistrationRejected(EngineError):
    pass


class LoopbackServer:
    """In-process server: synchronous routing, deterministic order."""

    OFFLINE_BUFFER_LIMIT = 256

    def __init__(self):
        self.sessions: dict[str, Session] = {}
        self.endpoints: dict[tuple[str, str], "EndpointClient"] = {}
        self.pending: dict[tuple[str, str], list[SessionMessage]] = {}

    def session(self, session_id: str) -> Session:
        try:
            return self.sessions[session_id]
        except KeyError:
            raise UnknownSession(session_id) from None

    def register(self, session_id: str, role: Role, client: "EndpointClient") -> None:
        key = (session_id, role.value)
        existing = self.endpoints.get(key)
        if existing is not None and existing is not client and existing.connected:
            raise RegistrationRejected(f"session already has a {role.value}")
        self.sessions.setdefault(session_id, Session(session_id))
        self.endpoints[key] = client
        # deliver effects that accumulated while the endpoint was offline;
        # the snapshot the endpoint requests next supersedes stale state
        for message in self.pending.pop(key, []):
            client.receive(message)

    def detach(self, session_id: str, role: Role) -> None:
        self.endpoints.pop((session_id, role.value), None)

    def deliver(self, msg: SessionMessage) -> None:
        session = self.session(msg.session_id)
        for out in session.apply(msg):
            self._dispatch(msg.session_id, out)

    def _dispatch(self, session_id: str, out: Outbound) -> None:
        key = (session_id, out.target.value)
        client = self.endpoints.get(key)
        if client is not None and client.connected:
            client.receive(out.message)
            return
        queue = self.pending.setdefault(key, [])
        queue.append(out.message)
        del queue[: -self.OFFLINE_BUFFER_LIMIT]


@dataclass
class EndpointView:
    slide_index: int = 0
    sentence_index: int = 0
    elapsed_s: float = 0.0
    pace: dict | None = None
    package: dict | None = None


class EndpointClient:
    """Shared endpoint behavior: sequencing, views, reconnect catch-up."""

    role = Role.CONTROLLER

    def __init__(self, server: LoopbackServer, session_id: str):
        self.server = server
        self.session_id = session_id
        self.seq = 0
        self.connected = False
        self.view = EndpointView()
        self.queued: list[SessionMessage] = []

    # -- lifecycle ----------------------------------------------------

    def connect(self) -> None:
        self.server.register(self.session_id, self.role, self)
        self.connected = True
        self.send(Kind.REGISTER, {"role": self.role.value})
        self.send(Kind.SNAPSHOT_REQUEST)
        self._flush()

    def disconnect(self) -> None:
        self.connected = False

    def reconnect(self) -> None:
        self.connect()

    # -- sending ------------------------------------------------------

    def send(self, kind: Kind, payload: dict | None = None) -> SessionMessage:
        self.seq += 1
        msg = SessionMessage(
            seq=self.seq,
            session_id=self.session_id,
            sender_role=self.role,
            kind=kind,
            payload=payload or {},
        )
        if self.connected:
            self.server.deliver(msg)
        else:
            if len(self.queued) >= GESTURE_QUEUE_LIMIT:
                raise EngineError("gesture queue overflow while disconnected")
            self.queued.append(msg)
        return msg

    def redeliver(self, msg: SessionMessage) -> None:
        """Simulate a duplicate delivery of an already-sent message."""
        if self.connected:
            self.server.deliver(msg)

    def _flush(self) -> None:
        pending, self.queued = self.queued, []
        for msg in pending:
            self.server.deliver(msg)

    # -- receiving ----------------------------------------------------

    def receive(self, msg: SessionMessage) -> None:
        if msg.kind == Kind.GOTO_SLIDE:
            self.view.slide_index = msg.payload["index"]
        elif msg.kind == Kind.STATE_SYNC:
            self.view.slide_index = msg.payload["slide_index"]
            self.view.sentence_index = msg.payload["sentence_index"]
            self.view.elapsed_s = msg.payload["elapsed_s"]
            self.view.pace = msg.payload["pace"]
        elif msg.kind == Kind.SNAPSHOT:
            self.view.slide_index = msg.payload["slide_index"]
            self.view.sentence_index = msg.payload["sentence_index"]
            self.view.elapsed_s = msg.payload["elapsed_s"]
            if msg.payload.get("package") is not None:
                self.view.package = msg.payload["package"]


class ControllerClient(EndpointClient):
    role = Role.CONTROLLER

    def upload_package(self, pkg: ScriptPackage) -> None:
        self.send(Kind.UPLOAD_PACKAGE, {"package": package_to_dict(pkg)})
        self.view.package = package_to_dict(pkg)

    def tap(self) -> SessionMessage:
        return self.send(Kind.TAP)

    def swipe(self, direction: str) -> SessionMessage:
        return self.send(Kind.SWIPE, {"direction": direction})

    def goto_slide(self, index: int) -> SessionMessage:
        return self.send(Kind.GOTO_SLIDE, {"index": index})

    def transcript(self, t_ms: int, text: str) -> SessionMessage:
        return self.send(Kind.TRANSCRIPT, {"t_ms": t_ms, "text": text})

    def manual_scroll(self, delta: int) -> SessionMessage:
        return self.send(Kind.MANUAL_SCROLL, {"delta": delta})


class ResponderClient(EndpointClient):
    role = Role.RESPONDER

    def __init__(self, server: LoopbackServer, session_id: str):
        super().__init__(server, session_id)
        self.click_log: list[int] = []
        self.goto_log: list[int] = []

    def receive(self, msg: SessionMessage) -> None:
        if msg.kind == Kind.CLICK:
            self.click_log.append(msg.seq)
            return
        if msg.kind == Kind.GOTO_SLIDE:
            self.goto_log.append(msg.payload["index"])
        super().receive(msg)
        if msg.kind == Kind.SNAPSHOT and msg.payload.get("package") is not None:
            # package arrives via snapshot for late-joining responders
            self.view.package = msg.payload["package"]


def converged(server: LoopbackServer, session_id: str, *clients) -> bool:
    """True when server state and every client view agree on position."""
    session = server.session(session_id)
    for client in clients:
        v = client.view
        if v.slide_index != session.slide_index:
            return False
        if v.sentence_index != session.align_state.sentence_index:
            return False
    return True


# ---------------------------------------------------------------------------
# TCP transport


class _TcpEndpoint:
    def __init__(self, writer: asyncio.StreamWriter):
        self.writer = writer
        self.connected = True
        self.last_seen = time.monotonic()

    def receive(self, msg: SessionMessage) -> None:
        try:
            self.writer.write((msg.to_json() + "\n").encode("utf-8"))
        except ConnectionError:
            self.connected = False


async def run_tcp_server(
    host: str = "127.0.0.1",
    port: int = DEFAULT_PORT,
    heartbeat_interval: float = HEARTBEAT_INTERVAL_S,
    ready: asyncio.Event | None = None,
    stop: asyncio.Event | None = None,
):
    """Serve sessions over newline-JSON TCP until `stop` is set."""
    core = LoopbackServer()

    async def handle(reader: asyncio.StreamReader, writer: asyncio.StreamWriter):
        endpoint = _TcpEndpoint(writer)
        key = None
        try:
            while True:
                line = await reader.readline()
                if not line:
                    break
                msg = SessionMessage.from_json(line.decode("utf-8"))
                endpoint.last_seen = time.monotonic()
                if msg.kind == Kind.REGISTER:
                    try:
                        core.register(msg.session_id, msg.sender_role, endpoint)
                    except RegistrationRejected as exc:
                        endpoint.receive(
                            SessionMessage(
                                seq=0,
                                session_id=msg.session_id,
                                sender_role=Role.ENGINE,
                                kind=Kind.REGISTER,
                                payload={"ok": False, "error": str(exc)},
                            )
                        )
                        continue
                    key = (msg.session_id, msg.sender_role.value)
                    endpoint.receive(
                        SessionMessage(
                            seq=0,
                            session_id=msg.session_id,
                            sender_role=Role.ENGINE,
                            kind=Kind.REGISTER,
                            payload={"ok": True},
                        )
                    )
                try:
                    core.deliver(msg)
                except EngineError as exc:
                    endpoint.receive(
                        SessionMessage(
                            seq=0,
                            session_id=msg.session_id,
                            sender_role=Role.ENGINE,
                            kind=Kind.HEARTBEAT,
                            payload={"error": str(exc)},
                        )
                    )
        except (ConnectionError, asyncio.IncompleteReadError, ValueError):
            pass
        finally:
            endpoint.connected = False
            if key is not None and core.endpoints.get(key) is endpoint:
                core.endpoints.pop(key, None)
            writer.close()

    async def reap():
        while True:
            await asyncio.sleep(heartbeat_interval)
            deadline = time.monotonic() - heartbeat_interval * MAX_MISSED_HEARTBEATS
            for key, ep in list(core.endpoints.items()):
                if isinstance(ep, _TcpEndpoint) and ep.last_seen < deadline:
                    ep.connected = False
                    core.endpoints.pop(key, None)

    server = await asyncio.start_server(handle, host, port)
    if ready is not None:
        ready.set()
    reaper = asyncio.create_task(reap())
    try:
        if stop is not None:
            await stop.wait()
        else:
            await server.serve_forever()
    finally:
        reaper.cancel()
        server.close()
        await server.wait_closed()
