import random

import numpy as np
import pytest

from spectralmono import _kernels_py, kernels
from spectralmono.graph import UndirectedGraph

compiled = pytest.importorskip("spectralmono._kernels", reason="compiled extension not built")


def _graph(seed, n=60, p=0.08):
    rng = random.Random(seed)
    return UndirectedGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


@pytest.mark.parametrize("seed", range(5))
def test_pagerank_backends_agree(seed):
    g = _graph(seed)
    indptr, indices = g.csr
    v = np.full(g.vertex_count, 1.0 / g.vertex_count)
    r1, it1, d1 = compiled.pagerank_csr(indptr, indices, v, 0.85, 1e-13, 10_000)
    r2, it2, d2 = _kernels_py.pagerank_csr(indptr, indices, v, 0.85, 1e-13, 10_000)
    assert np.allclose(r1, r2, atol=1e-13)
    assert abs(it1 - it2) <= 1


@pytest.mark.parametrize("seed", range(5))
def test_power_iteration_backends_agree(seed):
    g = _graph(seed, p=0.15)
    indptr, indices = g.csr
    x0 = np.ones(g.vertex_count)
    x1, _, _ = compiled.power_iteration_csr(indptr, indices, x0, 1.0, 1e-12, 100_000)
    x2, _, _ = _kernels_py.power_iteration_csr(indptr, indices, x0, 1.0, 1e-12, 100_000)
    assert np.allclose(x1, x2, atol=1e-10)


def test_wrapper_accepts_any_integer_dtype():
    g = UndirectedGraph.path(4)
    indptr, indices = (a.astype(np.int32) for a in g.csr)
    r, _, _ = kernels.pagerank_csr(indptr, indices, [0.25] * 4, 0.5, 1e-14, 1000)
    assert np.isclose(r.sum(), 1.0)
    for impl in (compiled, _kernels_py):
        r2, _, _ = kernels.pagerank_csr(indptr, indices, [0.25] * 4, 0.5, 1e-14, 1000, impl=impl)
        assert np.allclose(r, r2)


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")
