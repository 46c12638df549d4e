"""Ideal t-out-of-n oblivious transfer.

This is an emulated trusted functionality, not a cryptographic protocol: the
receiver's indices are handled in the clear by whichever process hosts it.
Party views are built from :class:`OtResult` fragments only, so the security
accounting is the one an ideal OT would give.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence

from ..errors import ProtocolError
from ..field import FieldElement
from ..matrix import FieldVector


@dataclass(frozen=True)
class OtResult:
    delivered: list  # FieldElements, in request order
    sender_fragment: int  # all the sender learns: how many items moved
    receiver_fragment: list  # (index, value) pairs in request order


class OtFunctionality(Protocol):
    mode: str  # "batched": one OT_t^n call; "sequential": t OT_1^n calls

    def transfer(self, values: FieldVector, indices: Sequence[int]) -> OtResult: ...


def ideal_ot(values: FieldVector, indices: Sequence[int]) -> OtResult:
    n = len(values)
    for i in indices:
        if not 1 <= i <= n:
            raise ProtocolError(f"OT index {i} outside [1, {n}]")
    delivered = [FieldElement(values.values[i - 1], values.field) for i in indices]
    return OtResult(delivered, len(indices), list(zip(indices, delivered)))


class IdealOT:
    mode = "batched"

    def transfer(self, values, indices):
        return ideal_ot(values, indices)


class SequentialIdealOT:
    """t independent 1-out-of-n transfers; each call must carry one index."""

    mode = "sequential"

    def transfer(self, values, indices):
        if len(indices) != 1:
            raise ProtocolError(f"sequential OT moves one item per call, got {len(indices)}")
        return ideal_ot(values, indices)


def make_ot(mode: str) -> OtFunctionality:
    if mode == "batched":
        return IdealOT()
    if mode == "sequential":
        return SequentialIdealOT()
    raise ValueError(f"unknown OT mode {mode!r}")
