"""Prime-field arithmetic and the seeded RNG used throughout the protocol."""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import FieldDivisionByZero, FieldMismatchError

MAX_MODULUS = 65521  # largest prime below 2**16; keeps elements in 2 bytes


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_q for a prime q <= 65521."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, (int, np.integer)) or isinstance(self.q, bool):
            raise TypeError(f"modulus must be an integer, got {self.q!r}")
        object.__setattr__(self, "q", int(self.q))
        if self.q > MAX_MODULUS:
            raise ValueError(f"modulus {self.q} exceeds {MAX_MODULUS}")
        if not is_prime(self.q):
            raise ValueError(f"modulus {self.q} is not prime")

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            _check_same(value.field, self)
            return value
        return FieldElement(int(value) % self.q, self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def elements(self):
        return [FieldElement(v, self) for v in range(self.q)]

    def __repr__(self):
        return f"GF({self.q})"


def _check_same(f1: PrimeField, f2: PrimeField):
    if f1.q != f2.q:
        raise FieldMismatchError(f"operands live in GF({f1.q}) and GF({f2.q})")


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not reduced modulo {self.field.q}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            _check_same(self.field, other.field)
            return other.value
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return int(other) % self.field.q
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement((self.value + v) % self.field.q, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement((self.value - v) % self.field.q, self.field)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement((v - self.value) % self.field.q, self.field)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement((self.value * v) % self.field.q, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement((-self.value) % self.field.q, self.field)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise FieldDivisionByZero(f"0 has no inverse in GF({self.field.q})")
        return FieldElement(pow(self.value, -1, self.field.q), self.field)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * FieldElement(v, self.field).inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.q == other.field.q and self.value == other.value
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return self.value == int(other) % self.field.q
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.q))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.field.q})"

    def to_bytes(self) -> bytes:
        return struct.pack(">H", self.value)

    @classmethod
    def from_bytes(cls, data: bytes, field: PrimeField) -> FieldElement:
        (v,) = struct.unpack(">H", data)
        if v >= field.q:
            raise ValueError(f"encoded value {v} is not below q={field.q}")
        return cls(v, field)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a.field, b.field)
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a.field, b.field)
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a.field, b.field)
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


class SeededRng:
    """Deterministic single-owner generator (numpy PCG64).

    ``ALGORITHM`` is written into transcripts so a trace can be replayed.
    """

    ALGORITHM = "numpy-PCG64"

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def integers(self, high: int, size=None):
        """Uniform integers in [0, high)."""
        if size is None:
            return int(self._gen.integers(0, high))
        return self._gen.integers(0, high, size=size, dtype=np.int64)

    def shuffle(self, items: list) -> list:
        order = self._gen.permutation(len(items))
        return [items[i] for i in order]

    def spawn_seed(self) -> int:
        return int(self._gen.integers(0, 2**63))


def derive_seeds(seed: int, count: int = 2) -> list[int]:
    """Independent per-party seeds from one master seed."""
    children = np.random.SeedSequence(int(seed)).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0] >> 1) for c in children]


def uniform_element(field: PrimeField, rng: SeededRng) -> FieldElement:
    return FieldElement(rng.integers(field.q), field)
