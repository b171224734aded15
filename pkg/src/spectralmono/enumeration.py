"""Exhaustive generation of small undirected graphs up to isomorphism.

Canonical forms come from colour refinement plus individualization: the
minimum edge bitmask over all discrete refinements is an isomorphism
invariant, which is plenty for graphs on at most 8 vertices.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .graph import UndirectedGraph

MAX_VERTICES = 8


def _refine(adj: list[list[int]], colors: list[int]) -> list[int]:
    """Coarsest equitable refinement; colours are relabelled canonically."""
    n = len(adj)
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if len(order) == len(set(colors)):
            return new
        colors = new


def _code(n: int, edges: list[tuple[int, int]], perm: list[int]) -> int:
    code = 0
    for x, y in edges:
        a, b = perm[x], perm[y]
        if a > b:
            a, b = b, a
        code |= 1 << (a * n + b)
    return code


def canonical_labeling(n: int, edges) -> tuple[int, list[int]]:
    """``(code, perm)``: minimal edge bitmask and a labelling achieving it."""
    edges = list(edges)
    adj: list[list[int]] = [[] for _ in range(n)]
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)
    best: list = [None, None]

    def search(colors: list[int]) -> None:
        colors = _refine(adj, colors)
        if len(set(colors)) == n:
            c = _code(n, edges, colors)
            if best[0] is None or c < best[0]:
                best[0], best[1] = c, colors
            return
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min((c for c, s in sizes.items() if s > 1), key=lambda c: (sizes[c], c))
        for v in range(n):
            if colors[v] == target:
                # v keeps the lower slot, the rest of its cell moves up
                search([2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(colors)])

    search([0] * n)
    return best[0], best[1]


def canonical_form(g: UndirectedGraph) -> tuple[int, int]:
    return g.vertex_count, canonical_labeling(g.vertex_count, g.edges)[0]


@lru_cache(maxsize=None)
def _graphs(n: int) -> tuple[UndirectedGraph, ...]:
    if n == 0:
        return (UndirectedGraph(0),)
    seen: dict[int, UndirectedGraph] = {}
    for h in _graphs(n - 1):
        for r in range(n):
            for nbrs in combinations(range(n - 1), r):
                edges = set(h.edges) | {(w, n - 1) for w in nbrs}
                code, _ = canonical_labeling(n, edges)
                if code not in seen:
                    seen[code] = UndirectedGraph(n, frozenset(edges))
    return tuple(seen[c] for c in sorted(seen))


def graphs(n: int, connected: bool = False) -> Iterator[UndirectedGraph]:
    """One representative of every isomorphism class on ``n`` vertices."""
    if not 0 <= n <= MAX_VERTICES:
        raise ValueError(f"exhaustive enumeration supports 0..{MAX_VERTICES} vertices, got {n}")
    for g in _graphs(n):
        if not connected or g.is_connected():
            yield g


def all_graphs(max_vertices: int, connected: bool = False, min_vertices: int = 1) -> Iterator[UndirectedGraph]:
    for n in range(min_vertices, max_vertices + 1):
        yield from graphs(n, connected)
