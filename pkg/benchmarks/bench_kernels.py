"""Compiled vs NumPy kernels on random sparse graphs.

    python3 benchmarks/bench_kernels.py [--sizes 1000 10000 100000] [--degree 10]
"""

import argparse
import time

import numpy as np

from spectralmono import _kernels_py
from spectralmono.graph import UndirectedGraph

try:
    from spectralmono import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def random_sparse(n: int, avg_degree: float, seed: int) -> UndirectedGraph:
    rng = np.random.default_rng(seed)
    m = int(n * avg_degree / 2)
    x = rng.integers(0, n, m)
    y = rng.integers(0, n, m)
    keep = x != y
    return UndirectedGraph.from_edges(n, zip(x[keep].tolist(), y[keep].tolist()))


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 10_000, 100_000])
    ap.add_argument("--degree", type=float, default=10.0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    impls = [("numpy", _kernels_py)] + ([("cython", _compiled)] if _compiled else [])
    print(f"{'n':>8} {'edges':>9} {'kernel':>8} " + " ".join(f"{name:>10}" for name, _ in impls))
    for n in args.sizes:
        g = random_sparse(n, args.degree, seed=n)
        indptr, indices = g.csr
        v = np.full(n, 1.0 / n)
        row = []
        for name, impl in impls:
            row.append(best_of(lambda: impl.pagerank_csr(indptr, indices, v, 0.85, 1e-10, 1000), args.repeat))
        print(f"{n:>8} {g.edge_count:>9} {'pagerank':>8} " + " ".join(f"{t * 1e3:>8.2f}ms" for t in row))
        row = []
        for name, impl in impls:
            row.append(best_of(lambda: impl.power_iteration_csr(indptr, indices, np.ones(n), 1.0, 1e-8, 200),
                               args.repeat))
        print(f"{n:>8} {g.edge_count:>9} {'power':>8} " + " ".join(f"{t * 1e3:>8.2f}ms" for t in row))


if __name__ == "__main__":
    main()
