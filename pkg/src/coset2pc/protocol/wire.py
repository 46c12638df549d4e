"""Binary frame format.

Every frame is ``type (1 byte) | payload length (4 bytes, big-endian) | payload``.
All integers inside payloads are 2-byte big-endian.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import IntEnum

from ..code import DIGEST_ALGORITHM_ID, LinearCode
from ..errors import ProtocolError
from ..field import FieldElement, PrimeField

HEADER = struct.Struct(">BI")
MAX_PAYLOAD = 1 << 20


class MsgType(IntEnum):
    HELLO = 0x01
    OT_REQUEST = 0x02
    OT_RESPONSE = 0x03
    RESULT_REVEAL = 0x04
    ABORT = 0x7F


@dataclass(frozen=True)
class Frame:
    type: MsgType
    payload: bytes

    def encode(self) -> bytes:
        return HEADER.pack(int(self.type), len(self.payload)) + self.payload

    @classmethod
    def decode(cls, data: bytes) -> Frame:
        if len(data) < HEADER.size:
            raise ProtocolError(f"frame shorter than header: {len(data)} bytes")
        kind, length = HEADER.unpack_from(data)
        if len(data) != HEADER.size + length:
            raise ProtocolError(f"declared payload {length} bytes, got {len(data) - HEADER.size}")
        try:
            kind = MsgType(kind)
        except ValueError:
            raise ProtocolError(f"unknown message type 0x{kind:02x}") from None
        return cls(kind, data[HEADER.size:])


@dataclass(frozen=True)
class Hello:
    q: int
    r: int
    n: int
    digest_alg: int
    digest: bytes


def hello(code: LinearCode) -> bytes:
    payload = struct.pack(">HHHB", code.q, code.r, code.n, DIGEST_ALGORITHM_ID) + code.digest()
    return Frame(MsgType.HELLO, payload).encode()


def parse_hello(payload: bytes) -> Hello:
    if len(payload) != 7 + 32:
        raise ProtocolError(f"HELLO payload must be 39 bytes, got {len(payload)}")
    q, r, n, alg = struct.unpack_from(">HHHB", payload)
    return Hello(q, r, n, alg, payload[7:])


def ot_request(indices) -> bytes:
    payload = struct.pack(f">H{len(indices)}H", len(indices), *indices)
    return Frame(MsgType.OT_REQUEST, payload).encode()


def parse_ot_request(payload: bytes) -> list[int]:
    if len(payload) < 2:
        raise ProtocolError("OT_REQUEST payload too short")
    (t,) = struct.unpack_from(">H", payload)
    if len(payload) != 2 + 2 * t:
        raise ProtocolError(f"OT_REQUEST declares {t} indices but carries {(len(payload) - 2) // 2}")
    return list(struct.unpack_from(f">{t}H", payload, 2))


def _element(data: bytes, field: PrimeField) -> FieldElement:
    try:
        return FieldElement.from_bytes(data, field)
    except ValueError as exc:
        raise ProtocolError(str(exc)) from None


def ot_response(values) -> bytes:
    return Frame(MsgType.OT_RESPONSE, b"".join(v.to_bytes() for v in values)).encode()


def parse_ot_response(payload: bytes, field: PrimeField) -> list[FieldElement]:
    if len(payload) % 2:
        raise ProtocolError("OT_RESPONSE payload has odd length")
    return [_element(payload[i:i + 2], field) for i in range(0, len(payload), 2)]


def result_reveal(value: FieldElement) -> bytes:
    return Frame(MsgType.RESULT_REVEAL, value.to_bytes()).encode()


def parse_result_reveal(payload: bytes, field: PrimeField) -> FieldElement:
    if len(payload) != 2:
        raise ProtocolError("RESULT_REVEAL payload must be 2 bytes")
    return _element(payload, field)


def abort(reason: str) -> bytes:
    return Frame(MsgType.ABORT, reason.encode("utf-8")).encode()
