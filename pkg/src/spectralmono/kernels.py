"""Kernel selection: compiled extension if importable, NumPy otherwise.

Set ``SPECTRALMONO_PURE=1`` to force the NumPy path.
"""

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("SPECTRALMONO_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass


def _csr(indptr, indices):
    return (np.ascontiguousarray(indptr, dtype=np.int64), np.ascontiguousarray(indices, dtype=np.int64))


def pagerank_csr(indptr, indices, v, alpha, tol, max_iter, impl=None):
    indptr, indices = _csr(indptr, indices)
    v = np.ascontiguousarray(v, dtype=np.float64)
    return (impl or _impl).pagerank_csr(indptr, indices, v, float(alpha), float(tol), int(max_iter))


def power_iteration_csr(indptr, indices, x0, shift, tol, max_iter, impl=None):
    indptr, indices = _csr(indptr, indices)
    x0 = np.ascontiguousarray(x0, dtype=np.float64)
    return (impl or _impl).power_iteration_csr(indptr, indices, x0, float(shift), float(tol), int(max_iter))
