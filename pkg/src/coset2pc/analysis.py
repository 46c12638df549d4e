"""Leakage accounting for coset-coded words and rate bounds for minimal codes.

Two families of tools live here. The first measures what a party learns
from a subset of codeword coordinates: the dimension of the dual subcode
supported inside the revealed set, and the exact posterior over messages
obtained by enumerating every completion of the hidden coordinates. The
second covers the combinatorics of minimal codes: Gaussian binomials, the
Sperner-type upper bound, the counting lower bound, and a randomized search
that exhibits codes where the counting argument says they exist.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import _kernels
from .code import (
    ENUMERATION_CAP,
    SUBSET_LATTICE_MAX_N,
    LinearCode,
    ghw_hierarchy,
    is_minimal_code,
    leakage_dimension,
    subset_codeword_counts,
)
from .errors import EnumerationCapError
from .field import PrimeField, SeededRng
from .matrix import Matrix, rank

__all__ = [
    "LeakageReport",
    "BoundsRow",
    "SweepRow",
    "SweepTable",
    "leakage_dimension",
    "leakage_report",
    "posterior_messages",
    "posterior_is_uniform",
    "wtc2_sweep",
    "gaussian_binomial",
    "max_bound_check",
    "max_rate",
    "min_bound_rate",
    "existence_margin",
    "bounds_row",
    "random_minimal_search",
]

EXHAUSTIVE_SWEEP_MAX_N = SUBSET_LATTICE_MAX_N
SWEEP_SAMPLES = 10_000


@dataclass(frozen=True)
class LeakageReport:
    revealed_positions: frozenset
    leaked_dimension: int
    posterior_size: int
    posterior_uniform: bool
    posterior: Counter = dc_field(compare=False, repr=False, default=None)


def posterior_messages(code: LinearCode, revealed: dict, cap: int = ENUMERATION_CAP) -> Counter:
    """Multiset {H z'^T : z' agrees with ``revealed``} over every completion z'.

    ``revealed`` maps 1-based positions to field values.
    """
    q = code.q
    for j in revealed:
        if not 1 <= j <= code.n:
            raise ValueError(f"position {j} outside [1, {code.n}]")
    hidden = [j for j in range(code.n) if j + 1 not in revealed]
    completions = q ** len(hidden)
    if completions > cap:
        raise EnumerationCapError("posterior completions", completions, cap)
    h = code.H.to_array()
    base = np.zeros(code.r, dtype=np.int64)
    for j, v in revealed.items():
        base += int(v) * h[:, j - 1]
    free = h[:, hidden] if hidden else np.zeros((code.r, 0), dtype=np.int64)
    hist = _kernels.syndrome_histogram(free, base % q, q)
    out = Counter()
    for idx in np.flatnonzero(hist):
        msg = tuple(int(idx) // q**i % q for i in range(code.r))
        out[msg] = int(hist[idx])
    return out


def posterior_is_uniform(post: Counter) -> bool:
    return len(set(post.values())) == 1


def leakage_report(code: LinearCode, revealed: dict) -> LeakageReport:
    post = posterior_messages(code, revealed)
    d = leakage_dimension(code, revealed.keys())
    return LeakageReport(frozenset(revealed), d, len(post), posterior_is_uniform(post), post)


@dataclass(frozen=True)
class SweepRow:
    size: int
    max_leakage: int
    sets_checked: int
    exhaustive: bool
    bound: int | None  # i-1 for the largest i with size < d_i, when GHW known

    @property
    def ok(self) -> bool:
        return self.bound is None or self.max_leakage <= self.bound


@dataclass
class SweepTable:
    code: LinearCode
    rows: list
    ghw: list | None

    @property
    def violations(self):
        return [row for row in self.rows if not row.ok]

    def format(self) -> str:
        lines = []
        if self.ghw is not None:
            lines.append("GHW of dual: " + " ".join(str(d) for d in self.ghw))
        lines.append(f"{'|J|':>4} {'max leak':>8} {'bound':>5} {'sets':>8}  mode")
        for row in self.rows:
            bound = "-" if row.bound is None else str(row.bound)
            mode = "exhaustive" if row.exhaustive else "sampled"
            lines.append(f"{row.size:>4} {row.max_leakage:>8} {bound:>5} {row.sets_checked:>8}  {mode}")
        return "\n".join(lines)


def _leak_bound(ghw, size):
    if ghw is None:
        return None
    # size < d_i  =>  leakage <= i-1; the tightest such i is the first d_i above size
    for i, d in enumerate(ghw, start=1):
        if size < d:
            return i - 1
    return len(ghw)


def wtc2_sweep(code: LinearCode, up_to_size: int, rng: SeededRng | None = None, samples: int = SWEEP_SAMPLES) -> SweepTable:
    """Maximum leaked dimension over revealed sets J of each size up to ``up_to_size``.

    Exhaustive over all J when n is small enough for the subset lattice;
    otherwise ``samples`` uniform sets per size (labelled sampled).
    """
    if not 0 <= up_to_size <= code.n:
        raise ValueError(f"up_to_size must lie in [0, {code.n}]")
    try:
        ghw = ghw_hierarchy(code)
    except EnumerationCapError:
        ghw = None
    rows = []
    if code.n <= EXHAUSTIVE_SWEEP_MAX_N:
        counts = subset_codeword_counts(code)
        dims = np.rint(np.log(counts) / math.log(code.q)).astype(np.int64)
        lattice = np.arange(1 << code.n, dtype=np.int64)
        sizes = np.zeros_like(lattice)
        for b in range(code.n):
            sizes += (lattice >> b) & 1
        for s in range(up_to_size + 1):
            sel = dims[sizes == s]
            rows.append(SweepRow(s, int(sel.max()), int(sel.size), True, _leak_bound(ghw, s)))
        return SweepTable(code, rows, ghw)
    if rng is None:
        rng = SeededRng(0)
    for s in range(up_to_size + 1):
        total = math.comb(code.n, s)
        if total <= samples:
            sets = itertools.combinations(range(1, code.n + 1), s)
            exhaustive, checked = True, total
        else:
            sets = (
                [int(x) + 1 for x in rng._gen.choice(code.n, size=s, replace=False)]
                for _ in range(samples)
            )
            exhaustive, checked = False, samples
        best = max(leakage_dimension(code, J) for J in sets)
        rows.append(SweepRow(s, best, checked, exhaustive, _leak_bound(ghw, s)))
    return SweepTable(code, rows, ghw)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def max_rate(q: int) -> float:
    return math.log(2) / math.log(q)


def min_bound_rate(q: int) -> float:
    """Rate below which the counting argument guarantees minimal codes exist."""
    return 0.5 * math.log(q * q / (q * q - q + 1), q)


@dataclass(frozen=True)
class MaxBoundCheck:
    holds: bool
    lhs: int  # q^k, the code size
    rhs: int  # 1 + (q-1) * C(n, floor(n/2))
    rate: Fraction
    rate_bound: float

    def __bool__(self):
        return self.holds


def max_bound_check(code: LinearCode) -> MaxBoundCheck:
    """Sperner-family size bound on the dual (minimal) code of dimension r."""
    q, n, k = code.q, code.n, code.r
    lhs = q**k
    rhs = 1 + (q - 1) * math.comb(n, n // 2)
    rate = Fraction(k, n)
    bound = max_rate(q)
    return MaxBoundCheck(lhs <= rhs and float(rate) <= bound + 1e-15, lhs, rhs, rate, bound)


def existence_margin(n: int, k: int, q: int) -> int:
    """[n,k]_q - [n-2,k-2]_q * (q^2-q+1)^n; positive means some [n,k] code is minimal."""
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got n={n}, k={k}")
    return gaussian_binomial(n, k, q) - gaussian_binomial(n - 2, k - 2, q) * (q * q - q + 1) ** n


@dataclass(frozen=True)
class BoundsRow:
    q: int
    n: int
    k: int
    gaussian_nk: int
    bad_pair_bound: int
    existence_margin: int
    max_rate: float
    min_rate: float

    def as_record(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "gaussian_nk": str(self.gaussian_nk),
            "bad_pair_bound": str(self.bad_pair_bound),
            "existence_margin": str(self.existence_margin),
            "margin_positive": self.existence_margin > 0,
            "rate": self.k / self.n,
            "max_rate": self.max_rate,
            "min_rate": self.min_rate,
        }


def bounds_row(q: int, n: int, k: int) -> BoundsRow:
    return BoundsRow(
        q=q,
        n=n,
        k=k,
        gaussian_nk=gaussian_binomial(n, k, q),
        bad_pair_bound=(q * q - q + 1) ** n,
        existence_margin=existence_margin(n, k, q),
        max_rate=max_rate(q),
        min_rate=min_bound_rate(q),
    )


def random_minimal_search(n: int, k: int, q: int, trials: int, rng: SeededRng) -> LinearCode | None:
    """Draw up to ``trials`` uniform full-rank k x n matrices; return the first minimal one.

    Rank-deficient draws are rejected and redrawn without using up a trial.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    field = PrimeField(q)
    for t in range(trials):
        while True:
            m = Matrix.from_array(field, rng.integers(q, size=(k, n)))
            if rank(m) == k:
                break
        code = LinearCode(field, m, label=f"random search [{n},{k}] q={q} trial {t}")
        if is_minimal_code(code):
            return code
    return None
