import itertools
import random

import networkx as nx
import pytest

from spectralmono.enumeration import MAX_VERTICES, all_graphs, canonical_form, canonical_labeling, graphs
from spectralmono.graph import UndirectedGraph

from .oracles import CONNECTED_COUNTS, GRAPH_COUNTS


@pytest.mark.parametrize("n", range(8))
def test_class_counts(n):
    assert sum(1 for _ in graphs(n)) == GRAPH_COUNTS[n]
    if n:
        assert sum(1 for _ in graphs(n, connected=True)) == CONNECTED_COUNTS[n]


@pytest.mark.slow
def test_class_counts_eight():
    assert sum(1 for _ in graphs(8, connected=True)) == CONNECTED_COUNTS[8]


def test_atlas_agreement_up_to_six():
    ours = {}
    for g in all_graphs(6, min_vertices=1):
        ours.setdefault(g.vertex_count, []).append(g)
    atlas = [G for G in nx.graph_atlas_g() if 1 <= G.number_of_nodes() <= 6]
    assert sum(len(v) for v in ours.values()) == len(atlas)
    codes = {canonical_form(UndirectedGraph.from_edges(G.number_of_nodes(), G.edges())) for G in atlas}
    assert codes == {canonical_form(g) for v in ours.values() for g in v}


def test_canonical_form_is_relabelling_invariant():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(2, 8)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4]
        perm = list(range(n))
        rng.shuffle(perm)
        g = UndirectedGraph.from_edges(n, edges)
        h = UndirectedGraph.from_edges(n, [(perm[x], perm[y]) for x, y in edges])
        assert canonical_form(g) == canonical_form(h)
        code, lab = canonical_labeling(n, edges)
        assert sorted(lab) == list(range(n))


def test_non_isomorphic_graphs_differ():
    # same degree sequence, different graphs: C6 versus two triangles
    c6 = UndirectedGraph.cycle(6)
    tt = UndirectedGraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert canonical_form(c6) != canonical_form(tt)


def test_bound_enforced():
    with pytest.raises(ValueError):
        list(graphs(MAX_VERTICES + 1))
