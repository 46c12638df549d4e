"""Linear functions f(X, Y) = sum_i f_i(Y) x_i (+ a correction only P2 knows)."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DimensionMismatchError
from ..field import FieldElement
from ..matrix import FieldVector

LABELS = ("scalar_product", "squared_euclidean", "hamming", "custom")


@dataclass(frozen=True)
class LinearFunctionSpec:
    coeffs: FieldVector
    post_add: FieldElement
    label: str = "custom"

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown function label {self.label!r}")
        if self.coeffs.is_zero():
            raise ValueError("all-zero coefficients give an empty selector")
        if self.post_add.field.q != self.coeffs.field.q:
            raise DimensionMismatchError("post_add lives in a different field")

    @property
    def field(self):
        return self.coeffs.field

    @property
    def r(self) -> int:
        return len(self.coeffs)


def custom_spec(coeffs: FieldVector, post_add=0) -> LinearFunctionSpec:
    return LinearFunctionSpec(coeffs, coeffs.field(post_add), "custom")


def scalar_product_spec(y: FieldVector) -> LinearFunctionSpec:
    if y.is_zero():
        raise ValueError("Y = 0 has an empty selector; nothing to request")
    return LinearFunctionSpec(y, y.field.zero, "scalar_product")


def squared_euclidean_spec(y: FieldVector) -> LinearFunctionSpec:
    """Coefficients (-2y_1, ..., -2y_m, 1) against P1's augmented input.

    P1 must run with :func:`augment_euclidean_input`, so the code has
    dimension m + 1; P2 adds sum y_i^2 afterwards to land on sum (x_i - y_i)^2.
    """
    f = y.field
    coeffs = FieldVector(f, [-2 * v for v in y.values] + [1])
    return LinearFunctionSpec(coeffs, f(sum(v * v for v in y.values)), "squared_euclidean")


def augment_euclidean_input(x: FieldVector) -> FieldVector:
    return FieldVector(x.field, list(x.values) + [sum(v * v for v in x.values)])


def hamming_spec(y: FieldVector, allow_wraparound: bool = False) -> LinearFunctionSpec:
    """Coefficients 1 - 2y_i with correction sum y_i, for binary X and Y.

    The integer distance is only recoverable when q > r; with
    ``allow_wraparound`` the output is the distance reduced mod q.
    """
    f = y.field
    if any(v not in (0, 1) for v in y.values):
        raise ValueError("Hamming distance needs a binary Y")
    if f.q <= len(y) and not allow_wraparound:
        raise ValueError(f"q={f.q} must exceed r={len(y)} to recover the distance")
    coeffs = FieldVector(f, [1 - 2 * v for v in y.values])
    return LinearFunctionSpec(coeffs, f(sum(y.values)), "hamming")
