import json
import random
from fractions import Fraction as F

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectralmono import centrality as C
from spectralmono.errors import ConvergenceError, DivergenceError, UndefinedIndexError
from spectralmono.graph import Graph, UndirectedGraph, WeightedGraph

from .oracles import P3_SEELEY


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    G.add_edges_from(g.edges)
    return G


def random_graph(rng, n_lo=2, n_hi=12, p_lo=0.1, p_hi=0.7):
    n = rng.randint(n_lo, n_hi)
    p = rng.uniform(p_lo, p_hi)
    return UndirectedGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


@st.composite
def graphs_with_edges(draw):
    n = draw(st.integers(2, 9))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=1))
    return UndirectedGraph.from_edges(n, edges)


# ------------------------------------------------------------------- Seeley


def test_seeley_closed_form():
    assert C.seeley(UndirectedGraph.path(3)).values == P3_SEELEY
    assert C.seeley(UndirectedGraph.path(3), exact=False).values == [0.25, 0.5, 0.25]
    with pytest.raises(UndefinedIndexError):
        C.seeley(UndirectedGraph(3))


# ----------------------------------------------------------------- PageRank


def test_pagerank_symmetric_graphs():
    assert np.allclose(C.pagerank(UndirectedGraph.path(2), 0.85).values, [0.5, 0.5])
    assert C.pagerank_exact(UndirectedGraph.cycle(5), F(17, 20)).values == [F(1, 5)] * 5


def test_pagerank_alpha_zero_is_preference():
    g = UndirectedGraph.star(4)
    assert C.pagerank_exact(g, 0).values == [F(1, 5)] * 5


@settings(max_examples=40, deadline=None)
@given(graphs_with_edges(), st.sampled_from([0.3, 0.5, 0.85, 0.95]))
def test_pagerank_matches_networkx(g, alpha):
    # networkx spreads dangling mass by the preference vector; with no
    # isolated vertices both conventions coincide.
    if 0 in g.degrees:
        return
    ours = C.pagerank(g, alpha, tol=1e-14).as_array()
    ref = nx.pagerank(to_nx(g), alpha=alpha, tol=1e-14, max_iter=10000)
    assert np.allclose(ours, [ref[i] for i in range(g.vertex_count)], atol=1e-10)


def test_pagerank_isolated_vertices_normalized():
    g = UndirectedGraph.star(3, isolated=1)
    a = F(1, 2)
    r = C.pagerank_exact(g, a).values
    assert sum(r) == 1
    assert r[0] == (1 + 3 * a) / ((1 + a) * (5 - a))
    assert np.allclose(C.pagerank(g, 0.5).as_array(), [float(x) for x in r], atol=1e-12)


def test_pagerank_validation():
    g = UndirectedGraph.path(3)
    with pytest.raises(ValueError):
        C.pagerank(g, 1.0)
    with pytest.raises(ValueError):
        C.pagerank(g, 0.5, v=[0.5, 0.5])
    with pytest.raises(ValueError):
        C.pagerank_exact(g, F(1, 2), v=[F(1, 2), F(1, 2), F(1, 2)])
    with pytest.raises(ConvergenceError):
        C.pagerank(UndirectedGraph.path(30), 0.99, tol=1e-15, max_iter=3)


def test_pagerank_custom_preference():
    g = UndirectedGraph.path(3)
    v = [F(1), F(0), F(0)]
    exact = C.pagerank_exact(g, F(1, 2), v=v).values
    assert sum(exact) == 1
    assert np.allclose(C.pagerank(g, 0.5, v=[1.0, 0, 0]).as_array(), [float(x) for x in exact])


# -------------------------------------------------------------- eigenvector


def test_eigenvector_symmetric_cycle():
    assert np.allclose(C.eigenvector_centrality(UndirectedGraph.cycle(4)).values, [0.25] * 4)


@settings(max_examples=40, deadline=None)
@given(graphs_with_edges())
def test_eigenvector_matches_numpy(g):
    if not g.is_connected():
        return
    w, V = np.linalg.eigh(g.adjacency_array())
    ref = np.abs(V[:, -1])
    sv = C.eigenvector_centrality(g, C.L2, tol=1e-13)
    assert np.allclose(sv.as_array(), ref, atol=1e-8)
    assert abs(sv.tag["eigenvalue"] - w[-1]) < 1e-9
    assert C.eigen_residual(g, sv.values) < 1e-9
    l1 = C.eigenvector_centrality(g, C.L1, tol=1e-13).as_array()
    assert np.isclose(l1.sum(), 1.0)
    pr = C.eigenvector_centrality(g, C.PROJECT_ONES, tol=1e-13).as_array()
    assert np.allclose(pr, ref.sum() * ref, atol=1e-8)


def test_eigenvector_flags_degenerate_dominant():
    g = UndirectedGraph.from_edges(4, [(0, 1), (2, 3)])
    assert C.eigenvector_centrality(g).tag.get("degenerate-dominant")
    assert "degenerate-dominant" not in C.eigenvector_centrality(UndirectedGraph.path(4)).tag


def test_eigenvector_errors():
    with pytest.raises(UndefinedIndexError):
        C.eigenvector_centrality(UndirectedGraph(3))
    with pytest.raises(ValueError):
        C.eigenvector_centrality(UndirectedGraph.path(3), "l3")


# ------------------------------------------------------- damped spectral


def test_pagerank_is_a_damped_spectral_ranking():
    g = UndirectedGraph.path(4)
    a = F(2, 3)
    n = g.vertex_count
    M = [[F(int(g.has_edge(i, j)), g.degree(i)) for j in range(n)] for i in range(n)]
    d = C.damped_spectral(WeightedGraph.from_matrix(M), a, [(1 - a) / n] * n).values
    assert d == C.pagerank_exact(g, a).values


def test_katz_and_divergence():
    g = UndirectedGraph.path(3)
    k = C.katz(g, F(1, 4)).values
    A = g.adjacency_array()
    ref = np.linalg.solve((np.eye(3) - 0.25 * A).T, np.ones(3))
    assert np.allclose([float(x) for x in k], ref)
    assert np.allclose(C.katz(g, 0.25).values, ref)
    with pytest.raises(DivergenceError):
        C.katz(g, 0.71)  # rho(P3) = sqrt 2


def test_damped_spectral_multigraph():
    w = WeightedGraph(Graph(2, ((0, 1), (0, 1), (1, 0))))
    x = C.damped_spectral(w, F(1, 4), [F(1), F(1)]).values
    # x (I - M/4) = 1 with M = [[0, 2], [1, 0]]
    assert x == [F(10, 7), F(12, 7)]


# ------------------------------------------------------------- reporting


def test_score_vector_formats():
    sv = C.seeley(UndirectedGraph.path(3))
    assert sv.to_csv() == "vertex,score\n0,1/4\n1,1/2\n2,1/4\n"
    assert json.loads(sv.dumps())["scores"] == ["1/4", "1/2", "1/4"]
    fl = C.seeley(UndirectedGraph.path(3), exact=False)
    assert fl.to_csv().splitlines()[1] == "0,0.25"


def test_compute_dispatch():
    g = UndirectedGraph.cycle(4)
    assert C.compute(g, "pagerank", exact=True, alpha=F(1, 2)).values == [F(1, 4)] * 4
    with pytest.raises(ValueError):
        C.compute(g, "hits")


def test_numeric_matches_exact_on_random_graphs():
    rng = random.Random(7)
    for _ in range(30):
        g = random_graph(rng)
        r = C.pagerank(g, 0.85).as_array()
        e = np.array([float(x) for x in C.pagerank_exact(g, F(17, 20)).values])
        assert np.max(np.abs(r - e)) < 1e-8
