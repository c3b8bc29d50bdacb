from .messages import Kind, Role, SessionMessage
from .core import (
    OutOfOrderRejected,
    PackageMissing,
    Session,
    UnknownSession,
)
from .server import (
    ControllerClient,
    LoopbackServer,
    ResponderClient,
    run_tcp_server,
)

__all__ = [
    "Kind",
    "Role",
    "SessionMessage",
    "Session",
    "UnknownSession",
    "PackageMissing",
    "OutOfOrderRejected",
    "LoopbackServer",
    "ControllerClient",
    "ResponderClient",
    "run_tcp_server",
]
