"""Frame transports and transcript recording.

Both transports move the exact same byte frames; a :class:`Transcript`
wraps either one and logs every frame as a JSON line.
"""

from __future__ import annotations

import json
import socket
import time
from collections import deque
from pathlib import Path

from ..errors import ProtocolError, TransportError
from ..field import SeededRng
from .wire import HEADER, MAX_PAYLOAD, MsgType


class InProcessTransport:
    """One endpoint of an in-memory duplex pipe; used by the single-threaded local driver."""

    def __init__(self, inbox: deque, outbox: deque):
        self._inbox = inbox
        self._outbox = outbox

    @classmethod
    def pair(cls):
        a, b = deque(), deque()
        return cls(a, b), cls(b, a)

    def send(self, frame: bytes):
        self._outbox.append(bytes(frame))

    def pending(self) -> bool:
        return bool(self._inbox)

    def recv(self) -> bytes:
        if not self._inbox:
            raise TransportError("no frame waiting")
        return self._inbox.popleft()

    def close(self):
        pass


class SocketTransport:
    def __init__(self, sock: socket.socket, timeout: float = 30.0):
        self.sock = sock
        self.sock.settimeout(timeout)

    @classmethod
    def listen(cls, host: str, port: int, timeout: float = 30.0, on_bound=None):
        srv = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        srv.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            srv.bind((host, port))
            srv.listen(1)
            if on_bound is not None:
                on_bound(srv.getsockname()[1])
            srv.settimeout(timeout)
            conn, _ = srv.accept()
        except OSError as exc:
            raise TransportError(f"listen on {host}:{port} failed: {exc}") from exc
        finally:
            srv.close()
        return cls(conn, timeout)

    @classmethod
    def connect(cls, host: str, port: int, timeout: float = 30.0, retry_for: float = 10.0):
        deadline = time.monotonic() + retry_for
        while True:
            try:
                sock = socket.create_connection((host, port), timeout=timeout)
                return cls(sock, timeout)
            except OSError as exc:
                if time.monotonic() >= deadline:
                    raise TransportError(f"connect to {host}:{port} failed: {exc}") from exc
                time.sleep(0.05)

    def _read_exact(self, size: int) -> bytes:
        buf = bytearray()
        while len(buf) < size:
            try:
                chunk = self.sock.recv(size - len(buf))
            except OSError as exc:
                raise TransportError(f"receive failed: {exc}") from exc
            if not chunk:
                raise TransportError("connection closed mid-frame" if buf else "connection closed")
            buf += chunk
        return bytes(buf)

    def send(self, frame: bytes):
        try:
            self.sock.sendall(frame)
        except OSError as exc:
            raise TransportError(f"send failed: {exc}") from exc

    def recv(self) -> bytes:
        header = self._read_exact(HEADER.size)
        _, length = HEADER.unpack(header)
        if length > MAX_PAYLOAD:
            raise ProtocolError(f"payload of {length} bytes exceeds {MAX_PAYLOAD}")
        return header + self._read_exact(length)

    def close(self):
        try:
            self.sock.close()
        except OSError:
            pass


class Transcript:
    """Transport wrapper that appends one record per frame.

    The first record describes the session (RNG algorithm, OT realization);
    every later record carries role, direction, message type, hex frame and
    a sequence number that increases by one per record.
    """

    def __init__(self, inner, role: str, ot_label: str, transport_label: str):
        self.inner = inner
        self.role = role
        self.records = [
            {
                "seq": 0,
                "role": role,
                "event": "session",
                "rng": SeededRng.ALGORITHM,
                "ot": ot_label,
                "transport": transport_label,
            }
        ]
        self.ot_label = ot_label

    def _log(self, direction: str, frame: bytes):
        rec = {
            "seq": len(self.records),
            "role": self.role,
            "dir": direction,
            "type": MsgType(frame[0]).name if frame[0] in MsgType._value2member_map_ else f"0x{frame[0]:02x}",
            "frame": frame.hex(),
        }
        if frame[0] == MsgType.OT_REQUEST and self.ot_label == "INSECURE-EMULATION":
            rec["note"] = "INSECURE-EMULATION: indices travel in the clear"
        self.records.append(rec)

    def send(self, frame: bytes):
        self._log("send", frame)
        self.inner.send(frame)

    def recv(self) -> bytes:
        frame = self.inner.recv()
        self._log("recv", frame)
        return frame

    def pending(self) -> bool:
        return self.inner.pending()

    def close(self):
        self.inner.close()

    def frames(self) -> list[tuple[str, str]]:
        return [(r["dir"], r["frame"]) for r in self.records if "frame" in r]

    def write(self, path):
        write_transcript(self.records, path)


def write_transcript(records, path):
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def read_transcript(path) -> list[dict]:
    with Path(path).open(encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
