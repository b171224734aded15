"""NumPy implementations of the compiled kernels in ``_kernels.pyx``.

Same signatures and stopping rules; used when the extension is not built.
"""

import numpy as np


def _spread(indptr, indices, x, n):
    # y[j] = sum over arcs i -> j of x[i]
    counts = np.diff(indptr)
    return np.bincount(indices, weights=np.repeat(x, counts), minlength=n)


def pagerank_csr(indptr, indices, v, alpha, tol, max_iter):
    v = np.asarray(v, dtype=np.float64)
    n = v.shape[0]
    deg = np.diff(indptr).astype(np.float64)
    inv = np.divide(1.0, deg, out=np.zeros(n), where=deg > 0)
    base = (1.0 - alpha) * v
    r = v.copy()
    it, delta = 0, 0.0
    while it < max_iter:
        it += 1
        nxt = base + alpha * _spread(indptr, indices, r * inv, n)
        delta = float(np.abs(nxt - r).sum())
        r = nxt
        if delta < tol:
            break
    return r, it, delta


def power_iteration_csr(indptr, indices, x0, shift, tol, max_iter):
    x = np.array(x0, dtype=np.float64)
    n = x.shape[0]
    x /= np.linalg.norm(x)
    it, delta = 0, 0.0
    while it < max_iter:
        it += 1
        y = shift * x + _spread(indptr, indices, x, n)
        y /= np.linalg.norm(y)
        delta = float(np.linalg.norm(y - x))
        x = y
        if delta < tol:
            break
    return x, it, delta
