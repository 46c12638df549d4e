"""Drivers that step the two party state machines over a transport."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..code import LinearCode, MinimalityResult, is_minimal_code
from ..errors import NotMinimalError, ProtocolAbort, ProtocolError
from ..field import FieldElement, derive_seeds
from ..matrix import FieldVector
from .functions import LinearFunctionSpec
from .ot import OtFunctionality, make_ot
from .parties import PartyView, ReceiverParty, SenderParty
from .transport import InProcessTransport, SocketTransport, Transcript

log = logging.getLogger(__name__)

IN_PROCESS_OT = "ideal-in-process"
EMULATED_OT = "INSECURE-EMULATION"


@dataclass
class ProtocolResult:
    p2_output: FieldElement
    p1_output: FieldElement | None
    p1_view: PartyView
    p2_view: PartyView
    sender: SenderParty
    receiver: ReceiverParty
    p1_transcript: Transcript
    p2_transcript: Transcript


def resolve_seeds(seeds) -> tuple[int, int]:
    """An int is a master seed split per party; a pair is used as-is."""
    if isinstance(seeds, int):
        s1, s2 = derive_seeds(seeds, 2)
        return s1, s2
    s1, s2 = seeds
    return int(s1), int(s2)


def require_minimal(code: LinearCode, certificate: MinimalityResult | None = None, unsafe: bool = False):
    if unsafe:
        log.warning("running on a code that was not certified minimal (unsafe mode)")
        return
    cert = certificate if certificate is not None else is_minimal_code(code)
    if not cert:
        raise NotMinimalError(
            f"refusing to run: {code!r} is not a minimal code; selectors may leak more than f(X, Y)",
            cert.witness,
        )


def _pump(party, transport):
    while transport.pending():
        try:
            out = party.receive(transport.recv())
        except ProtocolAbort as exc:
            frame = getattr(exc, "frame", None)
            if frame is not None:
                transport.send(frame)
            raise
        for frame in out:
            transport.send(frame)
        yield


def run_protocol(
    p1_input: FieldVector,
    p2_spec: LinearFunctionSpec,
    code: LinearCode,
    ot: OtFunctionality | None = None,
    seeds=0,
    reveal: bool = False,
    certificate: MinimalityResult | None = None,
    unsafe: bool = False,
    forced_encoding: FieldVector | None = None,
) -> ProtocolResult:
    """Run both parties in-process, stepping them alternately."""
    require_minimal(code, certificate, unsafe)
    ot = ot or make_ot("batched")
    s1, s2 = resolve_seeds(seeds)
    sender = SenderParty(code, p1_input, s1, ot, reveal=reveal, forced_encoding=forced_encoding)
    receiver = ReceiverParty(code, p2_spec, s2, ot_mode=ot.mode, reveal=reveal)
    end1, end2 = InProcessTransport.pair()
    t1 = Transcript(end1, "p1", IN_PROCESS_OT, "in-process")
    t2 = Transcript(end2, "p2", IN_PROCESS_OT, "in-process")
    for frame in sender.start():
        t1.send(frame)
    while not (sender.done and receiver.done):
        progressed = False
        for party, tr in ((receiver, t2), (sender, t1)):
            for _ in _pump(party, tr):
                progressed = True
        if not progressed:
            raise ProtocolError(f"stalled: p1 in {sender.state.value}, p2 in {receiver.state.value}")
    return ProtocolResult(receiver.output, sender.output, sender.view, receiver.view, sender, receiver, t1, t2)


def _drive_socket(party, transcript):
    try:
        if isinstance(party, SenderParty):
            for frame in party.start():
                transcript.send(frame)
        while not party.done:
            try:
                out = party.receive(transcript.recv())
            except ProtocolAbort as exc:
                frame = getattr(exc, "frame", None)
                if frame is not None:
                    transcript.send(frame)
                raise
            for frame in out:
                transcript.send(frame)
    finally:
        transcript.close()


def run_sender_socket(
    x: FieldVector,
    code: LinearCode,
    host: str,
    port: int,
    seed: int,
    ot_mode: str = "batched",
    reveal: bool = False,
    unsafe: bool = False,
    on_bound=None,
    timeout: float = 30.0,
) -> tuple[SenderParty, Transcript]:
    """P1 side over TCP. The emulated OT runs inside this process."""
    require_minimal(code, unsafe=unsafe)
    s1, _ = resolve_seeds(seed)
    sender = SenderParty(code, x, s1, make_ot(ot_mode), reveal=reveal)
    transport = SocketTransport.listen(host, port, timeout=timeout, on_bound=on_bound)
    transcript = Transcript(transport, "p1", EMULATED_OT, "tcp")
    _drive_socket(sender, transcript)
    return sender, transcript


def run_receiver_socket(
    spec: LinearFunctionSpec,
    code: LinearCode,
    host: str,
    port: int,
    seed: int,
    ot_mode: str = "batched",
    reveal: bool = False,
    unsafe: bool = False,
    timeout: float = 30.0,
) -> tuple[ReceiverParty, Transcript]:
    require_minimal(code, unsafe=unsafe)
    _, s2 = resolve_seeds(seed)
    receiver = ReceiverParty(code, spec, s2, ot_mode=ot_mode, reveal=reveal)
    transport = SocketTransport.connect(host, port, timeout=timeout)
    transcript = Transcript(transport, "p2", EMULATED_OT, "tcp")
    _drive_socket(receiver, transcript)
    return receiver, transcript
