"""Pure-Python/numpy fallback for the compiled kernels.

Every function here has the same signature and return convention as its
counterpart in ``_ckernels.pyx``; the test suite runs both against each other.
"""

import numpy as np


def rref_mod(a, q):
    arr = np.asarray(a, dtype=np.int64)
    rows, cols = arr.shape
    m = [[int(x) % q for x in row] for row in arr]
    pivots = []
    prow = 0
    for col in range(cols):
        if prow >= rows:
            break
        sel = next((i for i in range(prow, rows) if m[i][col]), None)
        if sel is None:
            continue
        m[prow], m[sel] = m[sel], m[prow]
        iv = pow(m[prow][col], -1, q)
        m[prow] = [(x * iv) % q for x in m[prow]]
        pr = m[prow]
        for i in range(rows):
            f = m[i][col]
            if i != prow and f:
                m[i] = [(x - f * y) % q for x, y in zip(m[i], pr)]
        pivots.append(col)
        prow += 1
    out = np.array(m, dtype=np.int64).reshape(rows, cols)
    return out, pivots


def first_containment(masks):
    mk = np.ascontiguousarray(masks, dtype=np.uint64)
    for i in range(mk.shape[0]):
        # rows j whose support lies inside row i's support
        inside = np.all((mk & ~mk[i]) == 0, axis=1)
        inside[i] = False
        hits = np.flatnonzero(inside)
        if hits.size:
            return (i, int(hits[0]))
    return None


def first_disjoint(masks):
    mk = np.ascontiguousarray(masks, dtype=np.uint64)
    for i in range(mk.shape[0]):
        disjoint = np.all((mk[i + 1:] & mk[i]) == 0, axis=1)
        hits = np.flatnonzero(disjoint)
        if hits.size:
            return (i, i + 1 + int(hits[0]))
    return None


def subset_counts(masks, n):
    mk = np.ascontiguousarray(masks, dtype=np.uint64).astype(np.int64)
    f = np.bincount(mk, minlength=1 << n).astype(np.int64)
    for b in range(n):
        # view as blocks of size 2^(b+1); upper half absorbs lower half
        g = f.reshape(-1, 2, 1 << b)
        g[:, 1, :] += g[:, 0, :]
    return f


def syndrome_histogram(h_free, base, q):
    h = np.asarray(h_free, dtype=np.int64) % q
    s0 = np.asarray(base, dtype=np.int64) % q
    r, u = h.shape
    weights = q ** np.arange(r, dtype=np.int64)
    hist = np.zeros(q**r, dtype=np.int64)
    total = q**u
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // (q ** np.arange(u, dtype=np.int64))) % q
        synd = (digits @ h.T + s0) % q
        hist += np.bincount(synd @ weights, minlength=q**r)
    return hist
