"""Randomized syndrome (coset) encoding and its decoder."""

from .code import LinearCode
from .errors import DimensionMismatchError
from .field import SeededRng
from .matrix import FieldVector, matvec, sample_coset


def encode(code: LinearCode, m: FieldVector, rng: SeededRng) -> FieldVector:
    """Uniform z in F_q^n with H z^T = m."""
    if len(m) != code.r:
        raise DimensionMismatchError(f"message length {len(m)} != r={code.r}")
    return sample_coset(code.H, m, rng)


def decode(code: LinearCode, z: FieldVector) -> FieldVector:
    if len(z) != code.n:
        raise DimensionMismatchError(f"word length {len(z)} != n={code.n}")
    return matvec(code.H, z)
