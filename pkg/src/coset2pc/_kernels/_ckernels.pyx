# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures mirror ``_pykernels`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


cdef int64_t _inv_mod(int64_t a, int64_t q):
    cdef int64_t t = 0, newt = 1, r = q, newr = a, quo, tmp
    while newr != 0:
        quo = r // newr
        tmp = t - quo * newt
        t = newt
        newt = tmp
        tmp = r - quo * newr
        r = newr
        newr = tmp
    if t < 0:
        t += q
    return t


def rref_mod(a, int64_t q):
    cdef cnp.ndarray[int64_t, ndim=2] m = np.array(a, dtype=np.int64, copy=True) % q
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t prow = 0, col, i, j, sel
    cdef int64_t f, iv
    pivots = []
    for col in range(cols):
        if prow >= rows:
            break
        sel = -1
        for i in range(prow, rows):
            if m[i, col] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != prow:
            for j in range(cols):
                f = m[sel, j]
                m[sel, j] = m[prow, j]
                m[prow, j] = f
        iv = _inv_mod(m[prow, col], q)
        for j in range(cols):
            m[prow, j] = (m[prow, j] * iv) % q
        for i in range(rows):
            if i != prow and m[i, col] != 0:
                f = m[i, col]
                for j in range(cols):
                    m[i, j] = (m[i, j] - f * m[prow, j]) % q
                    if m[i, j] < 0:
                        m[i, j] += q
        pivots.append(col)
        prow += 1
    return m, pivots


def first_containment(masks):
    cdef cnp.ndarray[uint64_t, ndim=2] mk = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef Py_ssize_t p = mk.shape[0], words = mk.shape[1], i, j, w
    cdef bint inside
    for i in range(p):
        for j in range(p):
            if i == j:
                continue
            inside = True
            for w in range(words):
                if mk[j, w] & ~mk[i, w]:
                    inside = False
                    break
            if inside:
                return (i, j)
    return None


def first_disjoint(masks):
    cdef cnp.ndarray[uint64_t, ndim=2] mk = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef Py_ssize_t p = mk.shape[0], words = mk.shape[1], i, j, w
    cdef bint disjoint
    for i in range(p):
        for j in range(i + 1, p):
            disjoint = True
            for w in range(words):
                if mk[i, w] & mk[j, w]:
                    disjoint = False
                    break
            if disjoint:
                return (i, j)
    return None


def subset_counts(masks, int n):
    cdef cnp.ndarray[uint64_t, ndim=1] mk = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n, s, k
    cdef cnp.ndarray[int64_t, ndim=1] f = np.zeros(size, dtype=np.int64)
    cdef Py_ssize_t bit
    for k in range(mk.shape[0]):
        f[<Py_ssize_t>mk[k]] += 1
    for b in range(n):
        bit = (<Py_ssize_t>1) << b
        for s in range(size):
            if s & bit:
                f[s] += f[s ^ bit]
    return f


def syndrome_histogram(h_free, base, int64_t q):
    cdef cnp.ndarray[int64_t, ndim=2] h = np.ascontiguousarray(h_free, dtype=np.int64) % q
    cdef cnp.ndarray[int64_t, ndim=1] s = np.ascontiguousarray(base, dtype=np.int64) % q
    cdef Py_ssize_t r = h.shape[0], u = h.shape[1], i, j
    cdef Py_ssize_t nbins = 1
    for i in range(r):
        nbins *= q
    cdef cnp.ndarray[int64_t, ndim=1] hist = np.zeros(nbins, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] digits = np.zeros(max(u, 1), dtype=np.int64)
    cdef Py_ssize_t idx, mult
    while True:
        idx = 0
        mult = 1
        for i in range(r):
            idx += s[i] * mult
            mult *= q
        hist[idx] += 1
        # odometer step; each increment of digit j adds column j once
        j = 0
        while j < u:
            for i in range(r):
                s[i] += h[i, j]
                if s[i] >= q:
                    s[i] -= q
            digits[j] += 1
            if digits[j] < q:
                break
            digits[j] = 0
            j += 1
        if j >= u:
            break
    return hist
