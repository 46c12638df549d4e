"""Secure two-party computation of linear functions from coset coding and oblivious transfer."""

from ._kernels import BACKEND
from .code import (
    LinearCode,
    WeightProfile,
    expand_binary_to_qary,
    generalized_hamming_distance,
    is_intersecting,
    is_minimal_code,
    is_minimal_codeword,
    load_code,
    paper_code_9_4,
    paper_code_20_4_ternary,
    save_code,
    simplex_code,
    support,
    weight,
    weight_profile,
)
from .coset import decode, encode
from .field import FieldElement, PrimeField, SeededRng
from .matrix import FieldVector, Matrix

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "LinearCode",
    "WeightProfile",
    "expand_binary_to_qary",
    "generalized_hamming_distance",
    "is_intersecting",
    "is_minimal_code",
    "is_minimal_codeword",
    "load_code",
    "paper_code_9_4",
    "paper_code_20_4_ternary",
    "save_code",
    "simplex_code",
    "support",
    "weight",
    "weight_profile",
    "decode",
    "encode",
    "FieldElement",
    "PrimeField",
    "SeededRng",
    "FieldVector",
    "Matrix",
]
