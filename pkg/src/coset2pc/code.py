"""Linear codes given by an r x n matrix H.

H is the parity-check matrix of the coset-coding code C (an [n, n-r] code)
and, equivalently, the generator matrix of its dual. Every certification
routine here (minimality, intersection, weights, generalized Hamming
distances) is about the dual code spanned by the rows of H, since that is
the code whose codewords act as selectors in the protocol.

Dual codewords are indexed by their coefficient vector a in F_q^r, read as
little-endian base-q digits: index i <-> a_j = (i // q**j) % q.
"""

from __future__ import annotations

import hashlib
import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from pathlib import Path
from typing import Iterator

import numpy as np

from . import _kernels
from .errors import (
    CodeFormatError,
    DimensionMismatchError,
    EnumerationCapError,
    NoSolutionError,
    NotACodewordError,
    RankDeficientError,
)
from .field import PrimeField
from .matrix import FieldVector, Matrix, rank, solve_particular

ENUMERATION_CAP = 2**20
GHW_MAX_R = 8
SUBSET_LATTICE_MAX_N = 20
SUBSPACE_ENUM_CAP = 2**21
MAX_LENGTH = 65535  # indices travel as 2-byte integers
DIGEST_ALGORITHM_ID = 0x01  # SHA-256 over the canonical code text

_CHUNK = 1 << 14


def support(v: FieldVector) -> frozenset[int]:
    """1-based positions of the nonzero coordinates."""
    return frozenset(i + 1 for i, x in enumerate(v.values) if x)


def weight(v: FieldVector) -> int:
    return sum(1 for x in v.values if x)


@dataclass(frozen=True)
class WeightProfile:
    min_weight: int
    max_weight: int
    weight_multiset: dict

    def __str__(self):
        parts = ", ".join(f"{w}x{c}" for w, c in sorted(self.weight_multiset.items()))
        return "{" + parts + "}"


@dataclass(frozen=True)
class MinimalityResult:
    minimal: bool
    witness: tuple | None = None  # (a, b): supp(b) within supp(a), independent

    def __bool__(self):
        return self.minimal


@dataclass(eq=False)
class LinearCode:
    field: PrimeField
    H: Matrix
    label: str = dc_field(default="custom")

    def __post_init__(self):
        if self.H.field.q != self.field.q:
            raise DimensionMismatchError("matrix field differs from code field")
        r, n = self.H.shape
        if r < 1 or n < r:
            raise DimensionMismatchError(f"need 1 <= r <= n, got r={r}, n={n}")
        if n > MAX_LENGTH:
            raise DimensionMismatchError(f"length {n} exceeds {MAX_LENGTH}")
        if rank(self.H) != r:
            raise RankDeficientError(f"H has rank {rank(self.H)} < r={r}")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def r(self) -> int:
        return self.H.nrows

    @property
    def n(self) -> int:
        return self.H.ncols

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.H == other.H

    def __hash__(self):
        return hash(self.H)

    def __repr__(self):
        return f"LinearCode([{self.n},{self.r}] over GF({self.q}), {self.label!r})"

    def canonical_text(self) -> str:
        lines = [f"{self.q} {self.r} {self.n}"]
        lines += [" ".join(str(v) for v in row) for row in self.H.rows]
        return "\n".join(lines) + "\n"

    def digest(self) -> bytes:
        return hashlib.sha256(self.canonical_text().encode("utf-8")).digest()

    def num_codewords(self) -> int:
        return self.q**self.r

    def _require_enumerable(self, what: str, cap: int = ENUMERATION_CAP):
        if self.num_codewords() > cap:
            raise EnumerationCapError(what, self.num_codewords(), cap)

    @cached_property
    def _projective_masks(self):
        """(indices, packed support masks) for one codeword per 1-dim subspace."""
        self._require_enumerable("projective codeword enumeration")
        idx_all, masks = [], []
        for start in range(1, self.num_codewords(), _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, self.num_codewords()), dtype=np.int64)
            coeffs = coefficient_digits(idx, self.q, self.r)
            first = np.argmax(coeffs != 0, axis=1)
            keep = coeffs[np.arange(len(idx)), first] == 1
            idx = idx[keep]
            words = (coeffs[keep] @ self.H.to_array()) % self.q
            idx_all.append(idx)
            masks.append(pack_masks(words != 0))
        return np.concatenate(idx_all), np.concatenate(masks)

    @cached_property
    def weight_profile(self) -> WeightProfile:
        idx, masks = self._projective_masks
        weights = popcount_rows(masks)
        counts = Counter({int(w): int(c) * (self.q - 1) for w, c in zip(*np.unique(weights, return_counts=True))})
        return WeightProfile(min(counts), max(counts), dict(sorted(counts.items())))

    @property
    def w_max(self) -> int:
        return self.weight_profile.max_weight

    def codeword(self, index: int) -> FieldVector:
        coeffs = coefficient_digits(np.array([index]), self.q, self.r)[0]
        return FieldVector(self.field, (coeffs @ self.H.to_array()) % self.q)

    def coefficients_of(self, c: FieldVector) -> FieldVector:
        """a with a*H = c, or NotACodewordError."""
        try:
            return solve_particular(self.H.transpose(), c)
        except NoSolutionError:
            raise NotACodewordError(f"{c!r} is not in the row space of H") from None


def coefficient_digits(idx: np.ndarray, q: int, r: int) -> np.ndarray:
    """Little-endian base-q digits of each index, shape (len(idx), r)."""
    return (idx[:, None] // (q ** np.arange(r, dtype=np.int64))) % q


def pack_masks(nonzero: np.ndarray) -> np.ndarray:
    """Pack a boolean (P, n) array into (P, ceil(n/64)) uint64 words; bit j of word w is coordinate 64w+j."""
    p, n = nonzero.shape
    words = max(1, -(-n // 64))
    padded = np.zeros((p, words * 64), dtype=np.uint64)
    padded[:, :n] = nonzero
    shifts = np.arange(64, dtype=np.uint64)
    return (padded.reshape(p, words, 64) << shifts).sum(axis=2, dtype=np.uint64)


def popcount_rows(masks: np.ndarray) -> np.ndarray:
    bits = np.unpackbits(masks.view(np.uint8), axis=1)
    return bits.sum(axis=1)


def mask_to_support(mask_row) -> frozenset[int]:
    out = set()
    for w, word in enumerate(mask_row):
        word = int(word)
        while word:
            low = word & -word
            out.add(64 * w + low.bit_length())
            word ^= low
    return frozenset(out)


def enumerate_dual_codewords(code: LinearCode, cap: int = ENUMERATION_CAP) -> Iterator[FieldVector]:
    """All q^r codewords a*H, zero included, in coefficient-index order."""
    code._require_enumerable("dual codeword enumeration", cap)
    h = code.H.to_array()
    for start in range(0, code.num_codewords(), _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, code.num_codewords()), dtype=np.int64)
        for row in (coefficient_digits(idx, code.q, code.r) @ h) % code.q:
            yield FieldVector(code.field, row.tolist())


def leakage_dimension(code: LinearCode, positions) -> int:
    """dim of the subcode of dual codewords supported inside the 1-based ``positions``.

    A codeword a*H vanishes outside J iff a annihilates every column outside
    J, so the dimension is r minus the rank of those columns.
    """
    inside = set(positions)
    outside = [j for j in range(code.n) if j + 1 not in inside]
    if not outside:
        return code.r
    return code.r - rank(code.H.columns_subset(outside))


def is_minimal_codeword(code: LinearCode, c: FieldVector) -> bool:
    if c.is_zero():
        raise NotACodewordError("the zero word is not a candidate minimal codeword")
    code.coefficients_of(c)
    return leakage_dimension(code, support(c)) == 1


def is_minimal_code(code: LinearCode) -> MinimalityResult:
    """Every nonzero dual codeword minimal? Witness (a, b) on failure."""
    idx, masks = code._projective_masks
    hit = _kernels.first_containment(masks)
    if hit is None:
        return MinimalityResult(True)
    i, j = hit
    return MinimalityResult(False, (code.codeword(int(idx[i])), code.codeword(int(idx[j]))))


def intersecting_witness(code: LinearCode):
    idx, masks = code._projective_masks
    hit = _kernels.first_disjoint(masks)
    if hit is None:
        return None
    return code.codeword(int(idx[hit[0]])), code.codeword(int(idx[hit[1]]))


def is_intersecting(code: LinearCode) -> bool:
    return intersecting_witness(code) is None


def weight_profile(code: LinearCode) -> WeightProfile:
    return code.weight_profile


def ghw_hierarchy(code: LinearCode) -> list[int]:
    """[d_1, ..., d_r] of the dual code."""
    if code.r > GHW_MAX_R:
        raise EnumerationCapError("generalized Hamming weights (r)", code.r, GHW_MAX_R)
    code._require_enumerable("generalized Hamming weights")
    if code.n <= SUBSET_LATTICE_MAX_N:
        return _ghw_subset_lattice(code)
    return [_ghw_subspaces(code, i) for i in range(1, code.r + 1)]


def generalized_hamming_distance(code: LinearCode, i: int) -> int:
    if not 1 <= i <= code.r:
        raise ValueError(f"i must lie in [1, {code.r}], got {i}")
    return ghw_hierarchy(code)[i - 1]


def subset_codeword_counts(code: LinearCode) -> np.ndarray:
    """Entry J (bitmask, bit j-1 = position j) counts dual codewords supported within J."""
    if code.n > SUBSET_LATTICE_MAX_N:
        raise EnumerationCapError("subset lattice (n)", code.n, SUBSET_LATTICE_MAX_N)
    idx, masks = code._projective_masks
    # every projective point contributes q-1 codewords with the same support
    lattice = _kernels.subset_counts(masks[:, 0], code.n) * (code.q - 1)
    lattice += 1  # zero codeword
    return lattice


def _ghw_subset_lattice(code: LinearCode) -> list[int]:
    counts = subset_codeword_counts(code)
    lattice = np.arange(1 << code.n, dtype=np.int64)
    sizes = np.zeros_like(lattice)
    for b in range(code.n):
        sizes += (lattice >> b) & 1
    out = []
    for i in range(1, code.r + 1):
        out.append(int(sizes[counts >= code.q**i].min()))
    return out


def _ghw_subspaces(code: LinearCode, i: int) -> int:
    from .analysis import gaussian_binomial

    total = gaussian_binomial(code.r, i, code.q)
    if total > SUBSPACE_ENUM_CAP:
        raise EnumerationCapError(f"{i}-dim subspace enumeration", total, SUBSPACE_ENUM_CAP)
    q, r = code.q, code.r
    h = code.H.to_array()
    best = code.n
    for pivots in itertools.combinations(range(r), i):
        free = [(row, col) for row, p in enumerate(pivots) for col in range(p + 1, r) if col not in pivots]
        for fill in itertools.product(range(q), repeat=len(free)):
            basis = np.zeros((i, r), dtype=np.int64)
            for row, p in enumerate(pivots):
                basis[row, p] = 1
            for (row, col), v in zip(free, fill):
                basis[row, col] = v
            union = np.any((basis @ h) % q != 0, axis=0)
            best = min(best, int(union.sum()))
    return best


def simplex_code(r: int, field: PrimeField) -> LinearCode:
    """Projective simplex code: one column per 1-dim subspace of F_q^r.

    Columns are the canonical representatives (first nonzero entry 1) in
    lexicographic order, so r=3, q=2 gives the familiar binary-counting matrix.
    """
    if r < 2:
        raise ValueError("simplex code needs r >= 2")
    q = field.q
    n = (q**r - 1) // (q - 1)
    if n > MAX_LENGTH:
        raise ValueError(f"simplex length {n} exceeds {MAX_LENGTH}")
    cols = [c for c in itertools.product(range(q), repeat=r) if any(c) and c[next(k for k in range(r) if c[k])] == 1]
    h = np.array(cols, dtype=np.int64).T
    return LinearCode(field, Matrix.from_array(field, h), label=f"simplex r={r} q={q}")


PAPER_9_4 = (
    (1, 0, 1, 0, 0, 0, 1, 0, 1),
    (0, 1, 1, 0, 0, 0, 0, 1, 1),
    (0, 0, 0, 1, 0, 1, 1, 0, 1),
    (0, 0, 0, 0, 1, 1, 0, 1, 1),
)

PAPER_20_4_TERNARY = (
    (1, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1),
    (0, 1, 1, 2, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2),
    (0, 0, 0, 0, 1, 0, 1, 1, 1, 2, 0, 0, 1, 1, 2, 2, 1, 1, 2, 2),
    (0, 0, 0, 0, 0, 1, 1, 2, 0, 0, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2),
)


def paper_code_9_4() -> LinearCode:
    f = PrimeField(2)
    return LinearCode(f, Matrix(f, PAPER_9_4), label="binary [9,4] minimal code")


def paper_code_20_4_ternary() -> LinearCode:
    f = PrimeField(3)
    return LinearCode(f, Matrix(f, PAPER_20_4_TERNARY), label="ternary [20,4] expanded code")


def expand_binary_to_qary(binary: LinearCode, field: PrimeField) -> LinearCode:
    """Replace each binary column of support S by every canonical q-ary column of support exactly S.

    Groups keep the original column order; within a group the columns are
    lexicographic. A column of weight w yields (q-1)^(w-1) columns.
    """
    if binary.q != 2:
        raise ValueError(f"expansion input must be binary, got q={binary.q}")
    q = field.q
    cols = []
    for j in range(binary.n):
        supp = [i for i in range(binary.r) if binary.H.rows[i][j]]
        if not supp:
            cols.append([0] * binary.r)
            continue
        for tail in itertools.product(range(1, q), repeat=len(supp) - 1):
            col = [0] * binary.r
            col[supp[0]] = 1
            for i, v in zip(supp[1:], tail):
                col[i] = v
            cols.append(col)
    h = np.array(cols, dtype=np.int64).T
    return LinearCode(field, Matrix.from_array(field, h), label=f"expansion of {binary.label} to q={q}")


def parse_code(text: str, source: str = "<string>") -> LinearCode:
    rows = []
    header = None
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        tokens = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col) + 1
            try:
                tokens.append(int(tok))
            except ValueError:
                raise CodeFormatError(f"{source}: not an integer: {tok!r}", lineno, col) from None
            col += len(tok) - 1
        if header is None:
            if len(tokens) != 3:
                raise CodeFormatError(f"{source}: header must be 'q r n'", lineno, 1)
            header = tokens
            q, r, n = header
            try:
                field = PrimeField(q)
            except ValueError as exc:
                raise CodeFormatError(f"{source}: {exc}", lineno, 1) from None
            continue
        if len(tokens) != n:
            raise CodeFormatError(f"{source}: expected {n} entries, got {len(tokens)}", lineno, 1)
        for k, v in enumerate(tokens):
            if not 0 <= v < q:
                raise CodeFormatError(f"{source}: entry {v} outside [0, {q})", lineno, k + 1)
        rows.append(tokens)
    if header is None:
        raise CodeFormatError(f"{source}: empty code file")
    if len(rows) != r:
        raise CodeFormatError(f"{source}: expected {r} rows, got {len(rows)}")
    return LinearCode(field, Matrix(field, rows, ncols=n), label=Path(source).name)


def load_code(path) -> LinearCode:
    path = Path(path)
    return parse_code(path.read_text(encoding="utf-8"), str(path))


def save_code(code: LinearCode, path):
    text = f"# {code.label}\n" + code.canonical_text()
    Path(path).write_text(text, encoding="utf-8", newline="\n")
