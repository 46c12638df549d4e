import struct

import pytest
from hypothesis import given, strategies as st

from conftest import F2, F3
from coset2pc.errors import ProtocolError
from coset2pc.field import PrimeField
from coset2pc.protocol import wire
from coset2pc.protocol.wire import Frame, MsgType


def test_header_layout():
    data = Frame(MsgType.RESULT_REVEAL, b"\x00\x01").encode()
    assert data == b"\x04\x00\x00\x00\x02\x00\x01"


def test_hello_layout(simplex7):
    data = wire.hello(simplex7)
    frame = Frame.decode(data)
    assert frame.type is MsgType.HELLO and len(frame.payload) == 39
    assert frame.payload[:7] == struct.pack(">HHHB", 2, 3, 7, 1)
    assert frame.payload[7:] == simplex7.digest()
    h = wire.parse_hello(frame.payload)
    assert (h.q, h.r, h.n, h.digest_alg) == (2, 3, 7, 1)


def test_ot_request_layout():
    data = wire.ot_request([2, 3, 4, 5])
    assert data.hex() == "020000000a" + "0004" + "0002000300040005"
    assert wire.parse_ot_request(Frame.decode(data).payload) == [2, 3, 4, 5]


def test_ot_response_and_reveal():
    data = wire.ot_response([F2(0), F2(0), F2(0), F2(1)])
    assert data.hex() == "0300000008" + "0000000000000001"
    assert [v.value for v in wire.parse_ot_response(Frame.decode(data).payload, F2)] == [0, 0, 0, 1]
    f = PrimeField(65521)
    data = wire.result_reveal(f(65520))
    assert data.hex() == "0400000002fff0"
    assert wire.parse_result_reveal(Frame.decode(data).payload, f).value == 65520


def test_abort():
    frame = Frame.decode(wire.abort("code mismatch"))
    assert frame.type is MsgType.ABORT and frame.payload == b"code mismatch"
    assert wire.abort("x")[0] == 0x7F


@given(st.sampled_from(list(MsgType)), st.binary(max_size=300))
def test_frame_roundtrip(kind, payload):
    assert Frame.decode(Frame(kind, payload).encode()) == Frame(kind, payload)


@given(st.lists(st.integers(1, 65535), max_size=200))
def test_request_roundtrip(indices):
    assert wire.parse_ot_request(Frame.decode(wire.ot_request(indices)).payload) == indices


@pytest.mark.parametrize(
    "data",
    [
        b"",
        b"\x01\x00\x00",
        b"\x01\x00\x00\x00\x05abc",
        b"\x01\x00\x00\x00\x01abc",
        b"\x09\x00\x00\x00\x00",
    ],
)
def test_malformed_frames(data):
    with pytest.raises(ProtocolError):
        Frame.decode(data)


def test_malformed_payloads():
    with pytest.raises(ProtocolError):
        wire.parse_hello(b"\x00" * 38)
    with pytest.raises(ProtocolError):
        wire.parse_ot_request(b"\x00")
    with pytest.raises(ProtocolError):
        wire.parse_ot_request(b"\x00\x02\x00\x01")
    with pytest.raises(ProtocolError):
        wire.parse_ot_response(b"\x00\x01\x00", F3)
    with pytest.raises(ProtocolError):
        wire.parse_result_reveal(b"\x00", F3)


def test_out_of_field_value_rejected():
    with pytest.raises(ProtocolError):
        wire.parse_ot_response(b"\x00\x05", F3)
    with pytest.raises(ProtocolError):
        wire.parse_result_reveal(b"\x00\x03", F3)
