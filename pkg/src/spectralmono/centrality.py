"""Spectral centralities on undirected graphs.

Floating-point routines run on the CSR kernels; the ``*_exact`` variants
solve the defining linear systems over the rationals.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .algebra import solve_left
from .errors import ConvergenceError, DivergenceError, UndefinedIndexError
from .graph import UndirectedGraph, WeightedGraph, adjacency_matrix

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10**6

L1, L2, PROJECT_ONES = "l1", "l2", "project"
NORMS = (L1, L2, PROJECT_ONES)


@dataclass
class ScoreVector:
    """Scores indexed by vertex plus a tag describing how they were made."""

    values: list
    tag: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    @property
    def exact(self) -> bool:
        return bool(self.values) and isinstance(self.values[0], Fraction)

    def as_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.values])

    def _fmt(self, x) -> str:
        if isinstance(x, Fraction):
            return f"{x.numerator}/{x.denominator}"
        return repr(float(x))

    def to_json(self) -> dict:
        scores = [self._fmt(x) if isinstance(x, Fraction) else float(x) for x in self.values]
        return {"tag": self.tag, "scores": scores}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["vertex", "score"])
        for i, x in enumerate(self.values):
            w.writerow([i, self._fmt(x) if isinstance(x, Fraction) else f"{float(x):.17g}"])
        return buf.getvalue()

    def dumps(self, fmt: str = "json") -> str:
        if fmt == "csv":
            return self.to_csv()
        return json.dumps(self.to_json())


def _require_alpha(alpha) -> None:
    if not 0 <= alpha < 1:
        raise ValueError(f"damping factor must lie in [0, 1), got {alpha}")


def _uniform(n: int, exact: bool):
    return [Fraction(1, n)] * n if exact else np.full(n, 1.0 / n)


# ------------------------------------------------------------------- Seeley


def seeley(g: UndirectedGraph, exact: bool = True) -> ScoreVector:
    """``d(x) / 2m``: the l1-normalized degree."""
    two_m = 2 * g.edge_count
    if two_m == 0:
        raise UndefinedIndexError("Seeley's index is undefined on an edgeless graph")
    if exact:
        vals = [Fraction(d, two_m) for d in g.degrees]
    else:
        vals = [d / two_m for d in g.degrees]
    return ScoreVector(vals, {"centrality": "seeley"})


# -------------------------------------------------------------- eigenvector


def _dominant(g: UndirectedGraph, tol: float, max_iter: int, x0=None) -> tuple[np.ndarray, float, int]:
    if g.edge_count == 0:
        raise UndefinedIndexError("eigenvector centrality is undefined on an edgeless graph")
    n = g.vertex_count
    indptr, indices = g.csr
    start = np.ones(n) if x0 is None else np.asarray(x0, dtype=float)
    # A + I has the same dominant eigenvector and no period-2 oscillation
    w, it, delta = kernels.power_iteration_csr(indptr, indices, start, 1.0, tol, max_iter)
    if not delta < tol:
        raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations", delta)
    w = np.abs(w)  # start vector is positive, so only roundoff-level negatives can occur
    w /= np.linalg.norm(w)
    Aw = _spmv(g, w)
    lam = float(w @ Aw)
    return w, lam, it


def _spmv(g: UndirectedGraph, x: np.ndarray) -> np.ndarray:
    indptr, indices = g.csr
    counts = np.diff(indptr)
    return np.bincount(indices, weights=np.repeat(x, counts), minlength=g.vertex_count)


def _degenerate_dominant(g: UndirectedGraph, w: np.ndarray, lam: float, tol: float) -> bool:
    hits = 0
    for comp in g.components():
        xc = w[comp]
        nrm = float(xc @ xc)
        if nrm <= 0.0:
            continue
        sub = np.zeros_like(w)
        sub[comp] = xc
        rq = float(sub @ _spmv(g, sub)) / nrm
        if abs(rq - lam) <= max(tol, 1e-9) * max(1.0, lam):
            hits += 1
    return hits > 1


def eigenvector_centrality(
    g: UndirectedGraph,
    norm: str = L1,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    x0=None,
) -> ScoreVector:
    """Dominant eigenvector of the adjacency matrix by power iteration.

    ``norm`` selects the scaling: ``"l1"`` (sum 1), ``"l2"`` (unit length)
    or ``"project"`` (orthogonal projection of the all-ones vector onto
    the dominant eigendirection, ``<1, w> w``).
    """
    if norm not in NORMS:
        raise ValueError(f"unknown normalization {norm!r}; expected one of {NORMS}")
    w, lam, it = _dominant(g, tol, max_iter, x0)
    if norm == L1:
        vals = w / w.sum()
    elif norm == L2:
        vals = w
    else:
        vals = w.sum() * w
    tag = {"centrality": "eigenvector", "norm": norm, "eigenvalue": lam, "iterations": it}
    if _degenerate_dominant(g, w, lam, tol):
        tag["degenerate-dominant"] = True
    return ScoreVector(list(vals), tag)


def eigen_residual(g: UndirectedGraph, w: Sequence[float]) -> float:
    """``||A w - lambda w||_inf / lambda`` with the Rayleigh quotient as lambda."""
    w = np.asarray(w, dtype=float)
    Aw = _spmv(g, w)
    lam = float(w @ Aw) / float(w @ w)
    return float(np.max(np.abs(Aw - lam * w))) / lam


# ----------------------------------------------------------------- PageRank


def _preference(g: UndirectedGraph, v, exact: bool):
    n = g.vertex_count
    if v is None:
        return _uniform(n, exact)
    if len(v) != n:
        raise ValueError(f"preference vector of length {len(v)} for {n} vertices")
    if exact:
        v = [Fraction(x) for x in v]
        if any(x < 0 for x in v) or sum(v) != 1:
            raise ValueError("preference vector must be non-negative with unit l1 norm")
        return v
    v = np.asarray(v, dtype=float)
    if (v < 0).any() or abs(v.sum() - 1.0) > 1e-12:
        raise ValueError("preference vector must be non-negative with unit l1 norm")
    return v


def pagerank(
    g: UndirectedGraph,
    alpha: float = 0.85,
    v=None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ScoreVector:
    """PageRank by iterating ``r <- (1-alpha) v + alpha r Gbar``.

    Isolated vertices have null rows in ``Gbar``; when present the limit
    is l1-normalized afterwards.
    """
    _require_alpha(alpha)
    vv = _preference(g, v, exact=False)
    indptr, indices = g.csr
    r, it, delta = kernels.pagerank_csr(indptr, indices, vv, float(alpha), tol, max_iter)
    if not delta < tol:
        raise ConvergenceError(f"PageRank did not converge in {max_iter} iterations", delta)
    if 0 in g.degrees:
        r = r / r.sum()
    tag = {"centrality": "pagerank", "alpha": float(alpha), "preference": "uniform" if v is None else "custom",
           "iterations": it}
    return ScoreVector(list(r), tag)


def pagerank_exact(g: UndirectedGraph, alpha, v=None) -> ScoreVector:
    """Exact PageRank: solve ``r (I - alpha Gbar) = (1 - alpha) v`` over Q."""
    alpha = Fraction(alpha)
    _require_alpha(alpha)
    vv = _preference(g, v, exact=True)
    n = g.vertex_count
    A = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = Fraction(1)
        d = g.degrees[i]
        if d:
            w = alpha / d
            for j in g.neighbors[i]:
                A[i][j] -= w
    r = solve_left([(1 - alpha) * x for x in vv], A)
    if 0 in g.degrees:
        s = sum(r)
        r = [x / s for x in r]
    tag = {"centrality": "pagerank", "alpha": str(alpha), "preference": "uniform" if v is None else "custom",
           "exact": True}
    return ScoreVector(r, tag)


# -------------------------------------------------------- damped spectral


def spectral_radius(M) -> float:
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(M))))


def damped_spectral(gw: WeightedGraph | UndirectedGraph, beta, v: Sequence) -> ScoreVector:
    """``v (I - beta M)^-1`` for the weighted adjacency matrix ``M``.

    Rational ``beta`` with exact weights is solved exactly whenever the
    system is nonsingular; otherwise ``beta`` must sit 1% below
    ``1/rho(M)``.
    """
    M = adjacency_matrix(gw)
    n = len(M)
    if len(v) != n:
        raise ValueError(f"preference vector of length {len(v)} for {n} nodes")
    exact = isinstance(beta, (int, Fraction)) and not any(isinstance(x, float) for row in M for x in row) \
        and all(isinstance(x, (int, Fraction)) for x in v)
    tag = {"centrality": "damped", "beta": str(beta) if exact else float(beta)}
    if exact:
        beta = Fraction(beta)
        A = [[Fraction(int(i == j)) - beta * Fraction(M[i][j]) for j in range(n)] for i in range(n)]
        return ScoreVector(solve_left([Fraction(x) for x in v], A), tag | {"exact": True})
    rho = spectral_radius(M)
    if float(beta) * rho >= 0.99:
        raise DivergenceError(f"beta={float(beta)} is not below 1/rho(M) = {1 / rho if rho else float('inf')} "
                              "with a 1% margin")
    Mf = np.asarray(M, dtype=float)
    x = np.linalg.solve((np.eye(n) - float(beta) * Mf).T, np.asarray(v, dtype=float))
    return ScoreVector(list(x), tag)


def katz(g: UndirectedGraph, beta) -> ScoreVector:
    ones = [Fraction(1)] * g.vertex_count if isinstance(beta, (int, Fraction)) else [1.0] * g.vertex_count
    sv = damped_spectral(g, beta, ones)
    sv.tag["centrality"] = "katz"
    return sv


def compute(g: UndirectedGraph, kind: str, **params) -> ScoreVector:
    """Dispatch by name; used by the CLI and the monotonicity checkers."""
    if kind == "seeley":
        return seeley(g, exact=params.get("exact", True))
    if kind == "eigenvector":
        return eigenvector_centrality(g, params.get("norm", L1), params.get("tol", DEFAULT_TOL),
                                      params.get("max_iter", DEFAULT_MAX_ITER))
    if kind == "pagerank":
        if params.get("exact"):
            return pagerank_exact(g, params.get("alpha", Fraction(17, 20)))
        return pagerank(g, params.get("alpha", 0.85), tol=params.get("tol", DEFAULT_TOL),
                        max_iter=params.get("max_iter", DEFAULT_MAX_ITER))
    if kind == "katz":
        return katz(g, params["beta"])
    raise ValueError(f"unknown centrality {kind!r}")
