# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for PageRank and power iteration on CSR graphs."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def pagerank_csr(const cnp.int64_t[::1] indptr, const cnp.int64_t[::1] indices,
                 const double[::1] v, double alpha, double tol, long long max_iter):
    """Iterate ``r <- (1-alpha) v + alpha r Gbar`` until the l1 change is < tol.

    Returns ``(r, iterations, last_l1_change)``; null rows stay null.
    """
    cdef Py_ssize_t n = v.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] r_arr = np.array(v, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] nxt_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] r = r_arr
    cdef double[::1] nxt = nxt_arr
    cdef double[::1] tmp
    cdef Py_ssize_t i, p
    cdef long long it = 0
    cdef double share, delta = 0.0
    cdef long long d
    while it < max_iter:
        it += 1
        for i in range(n):
            nxt[i] = (1.0 - alpha) * v[i]
        for i in range(n):
            d = indptr[i + 1] - indptr[i]
            if d == 0:
                continue
            share = alpha * r[i] / d
            for p in range(indptr[i], indptr[i + 1]):
                nxt[indices[p]] += share
        delta = 0.0
        for i in range(n):
            delta += fabs(nxt[i] - r[i])
        tmp = r
        r = nxt
        nxt = tmp
        if delta < tol:
            break
    return np.asarray(r).copy(), it, delta


def power_iteration_csr(const cnp.int64_t[::1] indptr, const cnp.int64_t[::1] indices,
                        const double[::1] x0, double shift, double tol, long long max_iter):
    """Dominant eigenvector of ``A + shift*I`` with l2 normalization per step.

    Returns ``(x, iterations, last_l2_change)``.
    """
    cdef Py_ssize_t n = x0.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x_arr = np.array(x0, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] x = x_arr
    cdef double[::1] y = y_arr
    cdef double[::1] tmp
    cdef Py_ssize_t i, p
    cdef long long it = 0
    cdef double norm = 0.0, delta = 0.0, acc
    for i in range(n):
        norm += x[i] * x[i]
    norm = sqrt(norm)
    for i in range(n):
        x[i] /= norm
    while it < max_iter:
        it += 1
        norm = 0.0
        for i in range(n):
            acc = shift * x[i]
            for p in range(indptr[i], indptr[i + 1]):
                acc += x[indices[p]]
            y[i] = acc
            norm += acc * acc
        norm = sqrt(norm)
        delta = 0.0
        for i in range(n):
            y[i] /= norm
            delta += (y[i] - x[i]) * (y[i] - x[i])
        delta = sqrt(delta)
        tmp = x
        x = y
        y = tmp
        if delta < tol:
            break
    return np.asarray(x).copy(), it, delta
