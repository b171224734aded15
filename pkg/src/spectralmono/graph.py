"""Directed multigraphs, simple undirected graphs and edge-list I/O.

Nodes are always the dense integers ``0..n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import EdgeListParseError, InvalidEdgeError


@dataclass(frozen=True)
class Graph:
    """Directed multigraph. Arc ``a`` goes from ``arcs[a][0]`` to ``arcs[a][1]``.

    Parallel arcs and loops are allowed; multiplicity is repetition.
    """

    node_count: int
    arcs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple((int(s), int(t)) for s, t in self.arcs))
        if self.node_count < 0:
            raise ValueError("negative node count")
        for s, t in self.arcs:
            if not (0 <= s < self.node_count and 0 <= t < self.node_count):
                raise InvalidEdgeError(f"arc ({s}, {t}) has an endpoint outside 0..{self.node_count - 1}")

    def source(self, a: int) -> int:
        return self.arcs[a][0]

    def target(self, a: int) -> int:
        return self.arcs[a][1]

    def arcs_between(self, i: int, j: int) -> list[int]:
        """Indices of the arcs in G(i, j)."""
        return [a for a, (s, t) in enumerate(self.arcs) if s == i and t == j]

    def multiplicity(self, i: int, j: int) -> int:
        return sum(1 for s, t in self.arcs if s == i and t == j)

    @cached_property
    def in_arcs(self) -> tuple[tuple[int, ...], ...]:
        buckets: list[list[int]] = [[] for _ in range(self.node_count)]
        for a, (_, t) in enumerate(self.arcs):
            buckets[t].append(a)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def out_arcs(self) -> tuple[tuple[int, ...], ...]:
        buckets: list[list[int]] = [[] for _ in range(self.node_count)]
        for a, (s, _) in enumerate(self.arcs):
            buckets[s].append(a)
        return tuple(tuple(b) for b in buckets)

    def outdegree(self, i: int) -> int:
        return len(self.out_arcs[i])

    def indegree(self, i: int) -> int:
        return len(self.in_arcs[i])


@dataclass(frozen=True)
class WeightedGraph:
    """A :class:`Graph` with one weight per arc (Fractions or floats)."""

    graph: Graph
    weights: tuple = ()

    def __post_init__(self):
        if not self.weights:
            object.__setattr__(self, "weights", tuple(Fraction(1) for _ in self.graph.arcs))
        else:
            object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.weights) != len(self.graph.arcs):
            raise ValueError(f"{len(self.weights)} weights for {len(self.graph.arcs)} arcs")

    @property
    def node_count(self) -> int:
        return self.graph.node_count

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return self.graph.arcs

    @classmethod
    def from_matrix(cls, M: Sequence[Sequence]) -> "WeightedGraph":
        """One arc per nonzero entry, carrying the entry as its weight."""
        n = len(M)
        arcs, weights = [], []
        for i in range(n):
            for j in range(n):
                if M[i][j]:
                    arcs.append((i, j))
                    weights.append(M[i][j])
        return cls(Graph(n, tuple(arcs)), tuple(weights))


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple loopless undirected graph; edges are stored as ``(min, max)``."""

    vertex_count: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            x, y = e
            if x == y:
                raise InvalidEdgeError(f"loop at vertex {x}")
            if not (0 <= x < self.vertex_count and 0 <= y < self.vertex_count):
                raise InvalidEdgeError(f"edge ({x}, {y}) has an endpoint outside 0..{self.vertex_count - 1}")
            norm.add((x, y) if x < y else (y, x))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "UndirectedGraph":
        return cls(n, frozenset(edges))

    @classmethod
    def complete(cls, n: int) -> "UndirectedGraph":
        return cls(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))

    @classmethod
    def path(cls, n: int) -> "UndirectedGraph":
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "UndirectedGraph":
        return cls(n, frozenset((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def star(cls, leaves: int, isolated: int = 0) -> "UndirectedGraph":
        """Star with center 0 and leaves 1..leaves, then isolated vertices."""
        return cls(leaves + 1 + isolated, frozenset((0, i) for i in range(1, leaves + 1)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for x, y in self.edges:
            adj[x].append(y)
            adj[y].append(x)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.neighbors)

    def degree(self, x: int) -> int:
        if not 0 <= x < self.vertex_count:
            raise InvalidEdgeError(f"vertex {x} outside 0..{self.vertex_count - 1}")
        return self.degrees[x]

    def has_edge(self, x: int, y: int) -> bool:
        return ((x, y) if x < y else (y, x)) in self.edges

    def add_edge(self, x: int, y: int) -> "UndirectedGraph":
        """New graph with the extra edge ``x -- y``; ``self`` is unchanged."""
        if x == y:
            raise InvalidEdgeError(f"loop at vertex {x}")
        if not (0 <= x < self.vertex_count and 0 <= y < self.vertex_count):
            raise InvalidEdgeError(f"edge ({x}, {y}) has an endpoint outside 0..{self.vertex_count - 1}")
        if self.has_edge(x, y):
            raise InvalidEdgeError(f"duplicate edge {x} -- {y}")
        return UndirectedGraph(self.vertex_count, self.edges | {(min(x, y), max(x, y))})

    def non_edges(self) -> list[tuple[int, int]]:
        n = self.vertex_count
        return [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in self.edges]

    def is_connected(self) -> bool:
        n = self.vertex_count
        if n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.neighbors[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    def components(self) -> list[list[int]]:
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [s], [s]
            while stack:
                v = stack.pop()
                for w in self.neighbors[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def to_graph(self) -> Graph:
        """Directed view: two opposite arcs per edge, arcs sorted."""
        arcs = sorted([(x, y) for x, y in self.edges] + [(y, x) for x, y in self.edges])
        return Graph(self.vertex_count, tuple(arcs))

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` of the symmetric adjacency structure."""
        n = self.vertex_count
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(self.degrees, out=indptr[1:])
        indices = np.fromiter((w for a in self.neighbors for w in a), dtype=np.int64, count=int(indptr[-1]))
        return indptr, indices

    def adjacency_array(self) -> np.ndarray:
        A = np.zeros((self.vertex_count, self.vertex_count))
        for x, y in self.edges:
            A[x, y] = A[y, x] = 1.0
        return A


def degree(g: UndirectedGraph, x: int) -> int:
    return g.degree(x)


def add_edge(g: UndirectedGraph, x: int, y: int) -> UndirectedGraph:
    return g.add_edge(x, y)


def adjacency_matrix(g) -> list[list]:
    """Dense adjacency matrix; entry (i, j) sums the weights of arcs i -> j.

    Accepts a :class:`WeightedGraph`, a :class:`Graph` (weight 1 per arc)
    or an :class:`UndirectedGraph`.
    """
    if isinstance(g, UndirectedGraph):
        g = g.to_graph()
    if isinstance(g, Graph):
        g = WeightedGraph(g)
    n = g.node_count
    M = [[Fraction(0)] * n for _ in range(n)]
    if any(isinstance(w, float) for w in g.weights):
        M = [[0.0] * n for _ in range(n)]
    for (s, t), w in zip(g.arcs, g.weights):
        M[s][t] += w
    return M


def row_normalize(g: UndirectedGraph | Graph) -> WeightedGraph:
    """Weight each arc by ``1/outdegree(source)``; dangling rows stay null."""
    if isinstance(g, UndirectedGraph):
        g = g.to_graph()
    weights = tuple(Fraction(1, g.outdegree(s)) for s, _ in g.arcs)
    return WeightedGraph(g, weights)


# ------------------------------------------------------------------ edge lists


def load_edge_list(stream: TextIO | Iterable[str]) -> UndirectedGraph:
    """Parse ``i j`` lines; ``#`` comments, blank lines and ``%n <count>``.

    Duplicate edges collapse; loops raise :class:`InvalidEdgeError`.
    """
    edges = set()
    declared = 0
    top = -1
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "%n":
            if len(parts) != 2 or not parts[1].isdigit():
                raise EdgeListParseError(lineno, raw.rstrip("\n"), "bad %n directive")
            declared = max(declared, int(parts[1]))
            continue
        if len(parts) != 2 or not (parts[0].isdigit() and parts[1].isdigit()):
            raise EdgeListParseError(lineno, raw.rstrip("\n"))
        x, y = int(parts[0]), int(parts[1])
        if x == y:
            raise InvalidEdgeError(f"line {lineno}: loop at vertex {x}")
        edges.add((min(x, y), max(x, y)))
        top = max(top, x, y)
    return UndirectedGraph(max(declared, top + 1), frozenset(edges))


def save_edge_list(g: UndirectedGraph, stream: TextIO) -> None:
    """Write ``g``; the ``%n`` header keeps trailing isolated vertices."""
    stream.write(f"%n {g.vertex_count}\n")
    for x, y in sorted(g.edges):
        stream.write(f"{x} {y}\n")


def read_edge_list(path: str) -> UndirectedGraph:
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh)


def write_edge_list(g: UndirectedGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        save_edge_list(g, fh)
