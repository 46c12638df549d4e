"""Dense vectors and matrices over a prime field.

Entries are stored as plain ints reduced mod q; indexing hands back
:class:`FieldElement` objects so callers keep field-mismatch checking.
Elimination runs in the kernel layer (compiled when available).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import DimensionMismatchError, FieldMismatchError, NoSolutionError
from .field import FieldElement, PrimeField, SeededRng


def _reduce(values, field: PrimeField) -> tuple:
    out = []
    for v in values:
        if isinstance(v, FieldElement):
            if v.field.q != field.q:
                raise FieldMismatchError(f"entry from GF({v.field.q}) in GF({field.q}) object")
            out.append(v.value)
        else:
            out.append(int(v) % field.q)
    return tuple(out)


class FieldVector:
    __slots__ = ("field", "values")

    def __init__(self, field: PrimeField, values: Iterable):
        self.field = field
        self.values = _reduce(values, field)

    @classmethod
    def zeros(cls, field: PrimeField, n: int) -> FieldVector:
        return cls(field, [0] * n)

    @classmethod
    def unit(cls, field: PrimeField, n: int, i: int) -> FieldVector:
        """Unit vector with a 1 at 0-based position i."""
        v = [0] * n
        v[i] = 1
        return cls(field, v)

    @classmethod
    def from_digits(cls, field: PrimeField, text: str) -> FieldVector:
        """Parse '101' (q <= 10) or '1,0,12' notation."""
        text = text.strip()
        parts = text.split(",") if "," in text else list(text)
        return cls(field, [int(p) for p in parts])

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return FieldVector(self.field, self.values[i])
        return FieldElement(self.values[i], self.field)

    def __iter__(self):
        return (FieldElement(v, self.field) for v in self.values)

    def __eq__(self, other):
        if not isinstance(other, FieldVector):
            return NotImplemented
        return self.field.q == other.field.q and self.values == other.values

    def __hash__(self):
        return hash((self.field.q, self.values))

    def _check(self, other: FieldVector):
        if self.field.q != other.field.q:
            raise FieldMismatchError("vectors over different fields")
        if len(self) != len(other):
            raise DimensionMismatchError(f"lengths {len(self)} and {len(other)} differ")

    def __add__(self, other: FieldVector) -> FieldVector:
        self._check(other)
        return FieldVector(self.field, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: FieldVector) -> FieldVector:
        self._check(other)
        return FieldVector(self.field, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return FieldVector(self.field, [-a for a in self.values])

    def scale(self, c) -> FieldVector:
        c = self.field(c).value
        return FieldVector(self.field, [c * a for a in self.values])

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.values)

    def to_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64)

    def to_bytes(self) -> bytes:
        return b"".join(v.to_bytes(2, "big") for v in self.values)

    def digits(self) -> str:
        if self.field.q <= 10:
            return "".join(str(v) for v in self.values)
        return ",".join(str(v) for v in self.values)

    def __repr__(self):
        return f"FieldVector(GF({self.field.q}), ({self.digits()}))"


class Matrix:
    """Immutable r x n matrix over F_q, row-major."""

    __slots__ = ("field", "_rows", "nrows", "ncols")

    def __init__(self, field: PrimeField, rows: Sequence[Sequence], ncols: int | None = None):
        self.field = field
        self._rows = tuple(_reduce(r, field) for r in rows)
        self.nrows = len(self._rows)
        if self.nrows:
            self.ncols = len(self._rows[0])
        else:
            self.ncols = ncols or 0
        if any(len(r) != self.ncols for r in self._rows):
            raise DimensionMismatchError("ragged rows")

    @classmethod
    def from_array(cls, field: PrimeField, arr) -> Matrix:
        arr = np.asarray(arr, dtype=np.int64)
        return cls(field, arr.tolist(), ncols=arr.shape[1])

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> Matrix:
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: PrimeField, r: int, n: int) -> Matrix:
        return cls(field, [[0] * n for _ in range(r)], ncols=n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple:
        """Rows as tuples of ints."""
        return self._rows

    def row(self, i: int) -> FieldVector:
        return FieldVector(self.field, self._rows[i])

    def column(self, j: int) -> FieldVector:
        return FieldVector(self.field, [r[j] for r in self._rows])

    def __getitem__(self, ij):
        i, j = ij
        return FieldElement(self._rows[i][j], self.field)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field.q == other.field.q and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.field.q, self._rows))

    def to_array(self) -> np.ndarray:
        return np.array(self._rows, dtype=np.int64).reshape(self.nrows, self.ncols)

    def columns_subset(self, cols: Sequence[int]) -> Matrix:
        return Matrix(self.field, [[r[j] for j in cols] for r in self._rows], ncols=len(cols))

    def transpose(self) -> Matrix:
        return Matrix.from_array(self.field, self.to_array().T.reshape(self.ncols, self.nrows))

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in r) for r in self._rows)
        return f"Matrix(GF({self.field.q}), {self.nrows}x{self.ncols}, [{body}])"


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and 0-based pivot columns.

    Pivot search takes the first nonzero entry at or below the current row.
    """
    out, pivots = _kernels.rref_mod(m.to_array(), m.field.q)
    return Matrix.from_array(m.field, out), list(pivots)


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[FieldVector]:
    """Basis of {v : M v^T = 0}, one vector per free column."""
    n = m.ncols
    if m.nrows == 0:
        return [FieldVector.unit(m.field, n, j) for j in range(n)]
    red, pivots = rref(m)
    q = m.field.q
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [0] * n
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = (-red.rows[i][f]) % q
        basis.append(FieldVector(m.field, v))
    return basis


def solve_particular(m: Matrix, b: FieldVector) -> FieldVector:
    """Some z with M z^T = b (free variables set to zero)."""
    if len(b) != m.nrows:
        raise DimensionMismatchError(f"rhs length {len(b)} != rows {m.nrows}")
    if b.field.q != m.field.q:
        raise FieldMismatchError("rhs over a different field")
    aug = np.hstack([m.to_array(), b.to_array().reshape(-1, 1)])
    red, pivots = _kernels.rref_mod(aug, m.field.q)
    if m.ncols in pivots:
        raise NoSolutionError("right-hand side is not in the column space")
    z = [0] * m.ncols
    for i, p in enumerate(pivots):
        z[p] = int(red[i, m.ncols])
    return FieldVector(m.field, z)


def sample_coset(m: Matrix, b: FieldVector, rng: SeededRng) -> FieldVector:
    """Uniform element of {z : M z^T = b}.

    Particular solution plus a kernel combination with independent uniform
    coefficients, drawn in kernel-basis order.
    """
    z = solve_particular(m, b)
    q = m.field.q
    acc = list(z.values)
    for vec in kernel_basis(m):
        c = rng.integers(q)
        if c:
            acc = [(a + c * x) % q for a, x in zip(acc, vec.values)]
    return FieldVector(m.field, acc)


def matvec(m: Matrix, v: FieldVector) -> FieldVector:
    """M v^T as a vector of length rows(M)."""
    if len(v) != m.ncols:
        raise DimensionMismatchError(f"vector length {len(v)} != cols {m.ncols}")
    if v.field.q != m.field.q:
        raise FieldMismatchError("vector over a different field")
    q = m.field.q
    return FieldVector(m.field, [sum(a * x for a, x in zip(r, v.values)) % q for r in m.rows])


def dot(u: FieldVector, v: FieldVector) -> FieldElement:
    u._check(v)
    return FieldElement(sum(a * b for a, b in zip(u.values, v.values)) % u.field.q, u.field)


def row(m: Matrix, i: int) -> FieldVector:
    return m.row(i)


def linear_combination(rows: Sequence[FieldVector], coeffs: Sequence) -> FieldVector:
    """sum_i coeffs[i] * rows[i]."""
    if len(rows) != len(coeffs):
        raise DimensionMismatchError(f"{len(rows)} rows but {len(coeffs)} coefficients")
    if not rows:
        raise DimensionMismatchError("empty combination has no length")
    field = rows[0].field
    n = len(rows[0])
    acc = [0] * n
    for vec, c in zip(rows, coeffs):
        if len(vec) != n:
            raise DimensionMismatchError("rows of unequal length")
        if vec.field.q != field.q:
            raise FieldMismatchError("rows over different fields")
        c = field(c).value
        if c:
            acc = [a + c * x for a, x in zip(acc, vec.values)]
    return FieldVector(field, acc)
