"""Graph morphisms, fibrations and the quotient identity for damped rankings.

For an epimorphic fibration ``f: G -> B`` between weighted graphs and any
vector ``u`` on the base,

    lift(u) (I - beta G)^-1 == lift(u (I - beta B)^-1)

so the damped spectral ranking of the (large) total graph can be read off
the (small) base.
"""

from __future__ import annotations

import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .algebra import solve_left
from .errors import MorphismError
from .graph import Graph, WeightedGraph, adjacency_matrix


def _weighted(g) -> WeightedGraph | None:
    return g if isinstance(g, WeightedGraph) else None


def _plain(g) -> Graph:
    return g.graph if isinstance(g, WeightedGraph) else g


@dataclass(frozen=True)
class GraphMorphism:
    """Explicit node and arc maps from ``source`` to ``target``.

    Construction validates that arcs are mapped compatibly with their
    endpoints and, when both graphs are weighted, that weights agree.
    """

    source: Graph | WeightedGraph
    target: Graph | WeightedGraph
    node_map: tuple[int, ...]
    arc_map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "node_map", tuple(int(h) for h in self.node_map))
        object.__setattr__(self, "arc_map", tuple(int(b) for b in self.arc_map))
        G, B = _plain(self.source), _plain(self.target)
        if len(self.node_map) != G.node_count:
            raise MorphismError(f"node map has {len(self.node_map)} entries for {G.node_count} nodes")
        if len(self.arc_map) != len(G.arcs):
            raise MorphismError(f"arc map has {len(self.arc_map)} entries for {len(G.arcs)} arcs")
        for h in self.node_map:
            if not 0 <= h < B.node_count:
                raise MorphismError(f"node mapped to unknown base node {h}")
        for a, b in enumerate(self.arc_map):
            if not 0 <= b < len(B.arcs):
                raise MorphismError(f"arc {a} mapped to unknown base arc {b}")
            s, t = G.arcs[a]
            bs, bt = B.arcs[b]
            if (self.node_map[s], self.node_map[t]) != (bs, bt):
                raise MorphismError(
                    f"arc {a} = ({s}, {t}) mapped to base arc {b} = ({bs}, {bt}), "
                    f"but its endpoints map to ({self.node_map[s]}, {self.node_map[t]})"
                )
        wg, wb = _weighted(self.source), _weighted(self.target)
        if wg is not None and wb is not None:
            for a, b in enumerate(self.arc_map):
                if wg.weights[a] != wb.weights[b]:
                    raise MorphismError(f"arc {a} has weight {wg.weights[a]} but base arc {b} has {wb.weights[b]}")

    @property
    def total(self) -> Graph:
        return _plain(self.source)

    @property
    def base(self) -> Graph:
        return _plain(self.target)

    # ------------------------------------------------------------------ json

    def maps_json(self) -> dict:
        return {"node_map": list(self.node_map), "arc_map": list(self.arc_map)}

    def to_json(self) -> dict:
        return {"total": graph_to_json(self.source), "base": graph_to_json(self.target), **self.maps_json()}

    @classmethod
    def from_json(cls, data: dict | str) -> "GraphMorphism":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(graph_from_json(data["total"]), graph_from_json(data["base"]), data["node_map"], data["arc_map"])


def graph_to_json(g: Graph | WeightedGraph) -> dict:
    G = _plain(g)
    out = {"node_count": G.node_count, "arcs": [list(a) for a in G.arcs]}
    if isinstance(g, WeightedGraph):
        out["weights"] = [f"{Fraction(w).numerator}/{Fraction(w).denominator}" for w in g.weights]
    return out


def graph_from_json(data: dict) -> Graph | WeightedGraph:
    G = Graph(int(data["node_count"]), tuple(tuple(a) for a in data["arcs"]))
    if "weights" in data:
        return WeightedGraph(G, tuple(Fraction(w) for w in data["weights"]))
    return G


def infer_arc_map(source, target, node_map: Sequence[int]) -> GraphMorphism:
    """Build the morphism whose arc map is forced by ``node_map``.

    Each source arc must have exactly one candidate base arc (matching
    endpoints and, for weighted graphs, weight); otherwise the arc map is
    ambiguous or impossible and :class:`MorphismError` is raised.
    """
    G, B = _plain(source), _plain(target)
    wg, wb = _weighted(source), _weighted(target)
    by_ends: dict[tuple[int, int], list[int]] = defaultdict(list)
    for b, ends in enumerate(B.arcs):
        by_ends[ends].append(b)
    arc_map = []
    for a, (s, t) in enumerate(G.arcs):
        cands = by_ends.get((node_map[s], node_map[t]), [])
        if wg is not None and wb is not None:
            cands = [b for b in cands if wb.weights[b] == wg.weights[a]]
        if len(cands) != 1:
            raise MorphismError(f"arc {a} = ({s}, {t}) has {len(cands)} candidate images; arc map not unique")
        arc_map.append(cands[0])
    return GraphMorphism(source, target, tuple(node_map), tuple(arc_map))


class FibrationCheck(NamedTuple):
    ok: bool
    witness: tuple[int, int, int] | None  # (base arc, total node, number of liftings)

    def __bool__(self) -> bool:
        return self.ok


def is_fibration(f: GraphMorphism) -> FibrationCheck:
    """Every base arc ``a`` has exactly one lifting at every node of ``fiber(t(a))``."""
    G, B = f.total, f.base
    liftings: Counter = Counter()
    for a, b in enumerate(f.arc_map):
        liftings[(b, G.arcs[a][1])] += 1
    fibers = fibers_of(f)
    for b, (_, bt) in enumerate(B.arcs):
        for i in fibers[bt]:
            c = liftings[(b, i)]
            if c != 1:
                return FibrationCheck(False, (b, i, c))
    return FibrationCheck(True, None)


def is_epimorphic(f: GraphMorphism) -> bool:
    return len(set(f.node_map)) == f.base.node_count and len(set(f.arc_map)) == len(f.base.arcs)


def fibers_of(f: GraphMorphism) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(f.base.node_count)]
    for i, h in enumerate(f.node_map):
        out[h].append(i)
    return out


def fiber(f: GraphMorphism, h: int) -> set[int]:
    if not 0 <= h < f.base.node_count:
        raise MorphismError(f"unknown base node {h}")
    return {i for i, x in enumerate(f.node_map) if x == h}


def lift_vector(u: Sequence, f: GraphMorphism) -> list:
    if len(u) != f.base.node_count:
        raise ValueError(f"vector of length {len(u)} on a base with {f.base.node_count} nodes")
    return [u[h] for h in f.node_map]


# ------------------------------------------------------------------ rankings


def damped_exact(W: Sequence[Sequence], beta, u: Sequence) -> list[Fraction]:
    """``u (I - beta W)^-1`` by exact rational elimination."""
    n = len(W)
    beta = Fraction(beta)
    A = [[(Fraction(int(i == j)) - beta * Fraction(W[i][j])) for j in range(n)] for i in range(n)]
    return solve_left([Fraction(x) for x in u], A)


def damped_float(W, beta: float, u) -> np.ndarray:
    W = np.asarray(W, dtype=float)
    n = W.shape[0]
    # x (I - beta W) = u  <=>  (I - beta W)^T x^T = u^T
    return np.linalg.solve((np.eye(n) - beta * W).T, np.asarray(u, dtype=float))


class QuotientCheck(NamedTuple):
    equal: bool
    max_deviation: float
    total_side: list
    base_side: list


def verify_quotient_identity(f: GraphMorphism, beta, u: Sequence, mode: str = "exact") -> QuotientCheck:
    """Compare the ranking of the total graph with the lifted base ranking.

    ``mode="exact"`` demands identical rationals; ``mode="float"`` passes
    when the largest deviation is below 1e-9.
    """
    check = is_fibration(f)
    if not check:
        raise MorphismError(f"not a fibration: base arc {check.witness[0]} has "
                            f"{check.witness[2]} liftings at node {check.witness[1]}")
    if not is_epimorphic(f):
        raise MorphismError("fibration is not epimorphic")
    WG = adjacency_matrix(f.source)
    WB = adjacency_matrix(f.target)
    uf = lift_vector(u, f)
    if mode == "exact":
        left = damped_exact(WG, beta, uf)
        right = lift_vector(damped_exact(WB, beta, u), f)
        dev = max((abs(x - y) for x, y in zip(left, right)), default=Fraction(0))
        return QuotientCheck(dev == 0, float(dev), left, right)
    if mode == "float":
        left = damped_float(WG, float(beta), [float(x) for x in uf])
        right = np.asarray(lift_vector(list(damped_float(WB, float(beta), [float(x) for x in u])), f))
        dev = float(np.max(np.abs(left - right))) if len(left) else 0.0
        return QuotientCheck(dev < 1e-9, dev, list(left), list(right))
    raise ValueError(f"unknown mode {mode!r}")


# ------------------------------------------------------------ path liftings


def paths_into(G: Graph, j: int, length: int) -> list[tuple[int, tuple[int, ...]]]:
    """All paths of the given length ending at ``j`` as ``(source, arcs)``."""
    paths = [(j, ())]
    for _ in range(length):
        nxt = []
        for head, arcs in paths:
            for a in G.in_arcs[head]:
                nxt.append((G.arcs[a][0], (a,) + arcs))
        paths = nxt
    return paths


def path_weight(g, arcs: Sequence[int]):
    if isinstance(g, WeightedGraph):
        w = Fraction(1)
        for a in arcs:
            w *= g.weights[a]
        return w
    return Fraction(1)


def check_path_lifting(f: GraphMorphism, length: int) -> tuple[bool, str]:
    """Check that ``f*`` is a bijection onto base paths, for every ``j`` and ``k``.

    Paths of ``G`` ending at ``j`` and starting in ``fiber(k)`` are mapped
    arc-by-arc; the image must hit every base path from ``k`` to ``f(j)``
    exactly once, with the same weight.
    """
    G, B = f.total, f.base
    base_paths: dict[int, Counter] = {}
    for h in range(B.node_count):
        c: Counter = Counter()
        for src, arcs in paths_into(B, h, length):
            c[(src, arcs)] += 1
        base_paths[h] = c
    for j in range(G.node_count):
        image: Counter = Counter()
        for src, arcs in paths_into(G, j, length):
            mapped = tuple(f.arc_map[a] for a in arcs)
            if path_weight(f.source, arcs) != path_weight(f.target, mapped):
                return False, f"weight mismatch on path {arcs} into {j}"
            image[(f.node_map[src], mapped)] += 1
        expected = base_paths[f.node_map[j]]
        if image != expected:
            missing = set(expected) - set(image)
            dup = [p for p, c in image.items() if c > 1]
            return False, f"node {j}: {len(missing)} base paths not lifted, {len(dup)} lifted more than once"
    return True, ""


def matrix_power_identity(f: GraphMorphism, t: int) -> bool:
    """``sum_{i in fiber(k)} (G^t)_{ij} == (B^t)_{k f(j)}`` exactly."""
    WG = adjacency_matrix(f.source)
    WB = adjacency_matrix(f.target)

    def power(M, e):
        n = len(M)
        R = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for _ in range(e):
            R = [[sum((R[i][l] * M[l][j] for l in range(n) if R[i][l]), Fraction(0)) for j in range(n)] for i in range(n)]
        return R

    Gt, Bt = power(WG, t), power(WB, t)
    fibers = fibers_of(f)
    for k, fib in enumerate(fibers):
        for j in range(f.total.node_count):
            if sum((Gt[i][j] for i in fib), Fraction(0)) != Bt[k][f.node_map[j]]:
                return False
    return True


# ------------------------------------------------------------ random corpus


def random_fibration(
    rng: random.Random,
    max_base: int = 5,
    max_fiber: int = 4,
    max_arcs: int = 8,
    weighted: bool = True,
) -> GraphMorphism:
    """Random epimorphic fibration built by lifting every base arc.

    A random base multigraph (loops and parallel arcs allowed) gets fibers
    of random size; each base arc ``s -> t`` is lifted at every node of
    ``fiber(t)`` with a source drawn from ``fiber(s)``.
    """
    nb = rng.randint(1, max_base)
    m = rng.randint(1, max_arcs)
    base_arcs = [(rng.randrange(nb), rng.randrange(nb)) for _ in range(m)]
    if weighted:
        weights = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(m)]
    sizes = [rng.randint(1, max_fiber) for _ in range(nb)]
    fibers, nxt = [], 0
    for s in sizes:
        fibers.append(list(range(nxt, nxt + s)))
        nxt += s
    node_map = [h for h, fib in enumerate(fibers) for _ in fib]
    arcs, arc_map, tw = [], [], []
    for b, (s, t) in enumerate(base_arcs):
        for i in fibers[t]:
            arcs.append((rng.choice(fibers[s]), i))
            arc_map.append(b)
            if weighted:
                tw.append(weights[b])
    G = Graph(nxt, tuple(arcs))
    B = Graph(nb, tuple(base_arcs))
    if weighted:
        return GraphMorphism(WeightedGraph(G, tuple(tw)), WeightedGraph(B, tuple(weights)), tuple(node_map), tuple(arc_map))
    return GraphMorphism(G, B, tuple(node_map), tuple(arc_map))
