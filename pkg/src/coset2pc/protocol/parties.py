"""State machines for the two parties.

P1 (sender) holds X, coset-encodes it into Z and feeds Z to the OT
functionality. P2 (receiver) turns its function into a selector V, asks for
the coordinates of Z on supp(V), and outputs V-bar . Z-bar.

Message flow (identical for every transport):

    P1 -> P2   HELLO
    P2 -> P1   HELLO
    P2 -> OT   OT_REQUEST      (once batched, or w_max times sequential)
    OT -> P2   OT_RESPONSE
    P2 -> P1   RESULT_REVEAL   (only with reveal)

The OT functionality is hosted next to P1, but P1's view receives only the
number of transferred items.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from enum import Enum

from ..code import LinearCode, support
from ..coset import decode, encode
from ..errors import DimensionMismatchError, ProtocolAbort, ProtocolError
from ..field import FieldElement, SeededRng
from ..matrix import FieldVector, linear_combination
from . import wire
from .functions import LinearFunctionSpec
from .ot import OtFunctionality
from .wire import Frame, MsgType


def compute_selector(code: LinearCode, spec: LinearFunctionSpec) -> FieldVector:
    """V = sum_i f_i(Y) H_i."""
    if spec.r != code.r:
        raise DimensionMismatchError(f"function has {spec.r} coefficients, code has r={code.r}")
    return linear_combination([code.H.row(i) for i in range(code.r)], list(spec.coeffs))


def build_request(v: FieldVector, w_max: int, rng: SeededRng) -> list[int]:
    """supp(V) padded to w_max entries with repeats drawn from supp(V), then shuffled.

    Padding never adds a fresh position, so the revealed set stays supp(V).
    """
    needed = sorted(support(v))
    t = len(needed)
    if t == 0:
        raise ValueError("zero selector")
    if t > w_max:
        raise ValueError(f"selector weight {t} exceeds w_max={w_max}")
    dummies = [needed[rng.integers(t)] for _ in range(w_max - t)]
    return rng.shuffle(needed + dummies)


@dataclass
class PartyView:
    """What one party saw: its inputs, seed, received messages and output."""

    role: str
    inputs: dict
    randomness_seed: int
    messages: list = dc_field(default_factory=list)
    output: int | None = None

    def record_frame(self, frame: bytes):
        self.messages.append({"frame": frame.hex()})

    def record_ot_count(self, t: int):
        self.messages.append({"ot_count": t})

    def to_json(self) -> str:
        return json.dumps(
            {
                "role": self.role,
                "inputs": self.inputs,
                "randomness_seed": self.randomness_seed,
                "messages": self.messages,
                "output": self.output,
            },
            sort_keys=True,
            separators=(",", ":"),
        )

    def to_bytes(self) -> bytes:
        return self.to_json().encode("utf-8")

    def external_bytes(self) -> bytes:
        """Serialized received messages and output only (own inputs and seed excluded)."""
        return json.dumps({"messages": self.messages, "output": self.output}, sort_keys=True).encode()


class State(Enum):
    START = "start"
    AWAIT_HELLO = "await-hello"
    AWAIT_REQUEST = "await-request"
    AWAIT_RESPONSE = "await-response"
    AWAIT_REVEAL = "await-reveal"
    DONE = "done"


def _check_hello(code: LinearCode, payload: bytes):
    h = wire.parse_hello(payload)
    mine = wire.parse_hello(Frame.decode(wire.hello(code)).payload)
    if h != mine:
        raise ProtocolAbort(
            f"code mismatch: peer has q={h.q} r={h.r} n={h.n} digest {h.digest.hex()[:16]}..., "
            f"we have q={mine.q} r={mine.r} n={mine.n} digest {mine.digest.hex()[:16]}..."
        )


class _Party:
    role = ""

    def __init__(self):
        self.state = State.START
        self.view: PartyView

    @property
    def done(self) -> bool:
        return self.state is State.DONE

    def receive(self, data: bytes) -> list[bytes]:
        frame = Frame.decode(data)
        if frame.type is not MsgType.OT_REQUEST:
            # OT requests go to the functionality; P1's view gets only the count
            self.view.record_frame(data)
        if frame.type is MsgType.ABORT:
            self.state = State.DONE
            raise ProtocolAbort(f"peer aborted: {frame.payload.decode('utf-8', 'replace')}")
        try:
            return self._handle(frame)
        except ProtocolAbort as exc:
            self.state = State.DONE
            exc.frame = wire.abort(str(exc))
            raise

    def _unexpected(self, frame: Frame):
        raise ProtocolError(f"{self.role}: unexpected {frame.type.name} in state {self.state.value}")


class SenderParty(_Party):
    """P1. ``forced_encoding`` replaces the random coset representative (test hook)."""

    role = "p1"

    def __init__(self, code: LinearCode, x: FieldVector, seed: int, ot: OtFunctionality, reveal: bool = False, forced_encoding: FieldVector | None = None):
        super().__init__()
        if len(x) != code.r:
            raise DimensionMismatchError(f"input length {len(x)} != r={code.r}")
        self.code, self.X, self.ot, self.reveal = code, x, ot, reveal
        self.rng = SeededRng(seed)
        if forced_encoding is not None:
            if decode(code, forced_encoding) != x:
                raise ValueError("forced encoding does not decode to X")
            self.Z = forced_encoding
        else:
            self.Z = encode(code, x, self.rng)
        self.transferred = 0
        self.output: FieldElement | None = None
        self.view = PartyView("p1", {"X": x.digits()}, seed)

    def start(self) -> list[bytes]:
        if self.state is not State.START:
            raise ProtocolError("sender already started")
        self.state = State.AWAIT_HELLO
        return [wire.hello(self.code)]

    def _handle(self, frame: Frame) -> list[bytes]:
        if frame.type is MsgType.HELLO and self.state is State.AWAIT_HELLO:
            _check_hello(self.code, frame.payload)
            self.state = State.AWAIT_REQUEST
            return []
        if frame.type is MsgType.OT_REQUEST and self.state is State.AWAIT_REQUEST:
            indices = wire.parse_ot_request(frame.payload)
            result = self.ot.transfer(self.Z, indices)
            self.view.record_ot_count(result.sender_fragment)
            self.transferred += result.sender_fragment
            if self.transferred > self.code.w_max:
                raise ProtocolError(f"receiver asked for {self.transferred} > w_max={self.code.w_max} items")
            if self.transferred == self.code.w_max:
                self.state = State.AWAIT_REVEAL if self.reveal else State.DONE
            return [wire.ot_response(result.delivered)]
        if frame.type is MsgType.RESULT_REVEAL and self.state is State.AWAIT_REVEAL:
            self.output = wire.parse_result_reveal(frame.payload, self.code.field)
            self.view.output = self.output.value
            self.state = State.DONE
            return []
        self._unexpected(frame)


class ReceiverParty(_Party):
    """P2."""

    role = "p2"

    def __init__(self, code: LinearCode, spec: LinearFunctionSpec, seed: int, ot_mode: str = "batched", reveal: bool = False):
        super().__init__()
        self.code, self.spec, self.ot_mode, self.reveal = code, spec, ot_mode, reveal
        self.rng = SeededRng(seed)
        self.V = compute_selector(code, spec)
        self.request_indices = build_request(self.V, code.w_max, self.rng)
        self.received: dict[int, FieldElement] = {}
        self._pending = list(self.request_indices)
        self._in_flight: list[int] = []
        self.raw_output: FieldElement | None = None
        self.output: FieldElement | None = None
        self.view = PartyView(
            "p2",
            {"coeffs": spec.coeffs.digits(), "post_add": spec.post_add.value, "function": spec.label},
            seed,
        )

    def _next_request(self) -> bytes:
        take = len(self._pending) if self.ot_mode == "batched" else 1
        self._in_flight, self._pending = self._pending[:take], self._pending[take:]
        self.state = State.AWAIT_RESPONSE
        return wire.ot_request(self._in_flight)

    @property
    def support_indices(self) -> list[int]:
        return sorted(support(self.V))

    @property
    def v_bar(self) -> FieldVector:
        return FieldVector(self.code.field, [self.V.values[i - 1] for i in self.support_indices])

    @property
    def z_bar(self) -> FieldVector:
        return FieldVector(self.code.field, [self.received[i] for i in self.support_indices])

    def _handle(self, frame: Frame) -> list[bytes]:
        if frame.type is MsgType.HELLO and self.state is State.START:
            _check_hello(self.code, frame.payload)
            return [wire.hello(self.code), self._next_request()]
        if frame.type is MsgType.OT_RESPONSE and self.state is State.AWAIT_RESPONSE:
            values = wire.parse_ot_response(frame.payload, self.code.field)
            if len(values) != len(self._in_flight):
                raise ProtocolError(f"asked for {len(self._in_flight)} items, got {len(values)}")
            for i, v in zip(self._in_flight, values):
                if i in self.received and self.received[i] != v:
                    raise ProtocolError(f"inconsistent values for position {i}")
                self.received[i] = v
            if self._pending:
                return [self._next_request()]
            return self._finish()
        self._unexpected(frame)

    def _finish(self) -> list[bytes]:
        # repeated indices count once
        vb, zb = self.v_bar, self.z_bar
        q = self.code.q
        raw = sum(a * b for a, b in zip(vb.values, zb.values)) % q
        self.raw_output = FieldElement(raw, self.code.field)
        self.output = self.raw_output + self.spec.post_add
        self.view.output = self.output.value
        self.state = State.DONE
        if self.reveal:
            return [wire.result_reveal(self.output)]
        return []
