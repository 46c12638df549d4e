from .functions import (
    LinearFunctionSpec,
    augment_euclidean_input,
    custom_spec,
    hamming_spec,
    scalar_product_spec,
    squared_euclidean_spec,
)
from .ot import IdealOT, OtFunctionality, OtResult, SequentialIdealOT, ideal_ot, make_ot
from .parties import PartyView, ReceiverParty, SenderParty, build_request, compute_selector
from .runner import ProtocolResult, run_protocol, run_receiver_socket, run_sender_socket
from .transport import InProcessTransport, SocketTransport, Transcript, read_transcript, write_transcript

__all__ = [
    "LinearFunctionSpec",
    "augment_euclidean_input",
    "custom_spec",
    "hamming_spec",
    "scalar_product_spec",
    "squared_euclidean_spec",
    "IdealOT",
    "OtFunctionality",
    "OtResult",
    "SequentialIdealOT",
    "ideal_ot",
    "make_ot",
    "PartyView",
    "ReceiverParty",
    "SenderParty",
    "build_request",
    "compute_selector",
    "ProtocolResult",
    "run_protocol",
    "run_receiver_socket",
    "run_sender_socket",
    "InProcessTransport",
    "SocketTransport",
    "Transcript",
    "read_transcript",
    "write_transcript",
]
