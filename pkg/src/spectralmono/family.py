"""The parametric PageRank counterexample family ``G_k`` and its base ``B_k``.

``G_k`` (2k+4 vertices) consists of

* clique A: ``k-1`` anonymous vertices plus the distinguished ``u1``;
* the paths ``u1 - p2 - p3 - q6`` and ``u1 - p4 - p5``;
* clique B: the distinguished ``q6``, ``q7`` plus ``k-2`` anonymous vertices;
* optionally the dashed edge ``p5 - q7``.

Mapping every vertex to its label (anonymous clique-A vertices to 0,
anonymous clique-B vertices to 8) is a fibration of the row-normalized
graph onto the 9-node weighted base ``B_k``, so PageRank of ``G_k`` is a
vector of 9 rational functions of the damping factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import Polynomial, RationalFunction, count_roots_between, solve_parametric, sturm_chain, vec_mat
from .errors import ConstructionError
from .fibration import GraphMorphism, is_epimorphic, is_fibration
from .graph import Graph, UndirectedGraph, WeightedGraph, adjacency_matrix, row_normalize

BASE_NODES = 9
DASHED = (5, 7)  # base labels of the endpoints of the dashed edge
COMPARATOR = 2  # base label of the third vertex used for the rank argument

TWO_THIRDS = Fraction(2, 3)


def _check_k(k: int) -> None:
    if int(k) != k or k < 4:
        raise ValueError(f"family defined for integer k >= 4, got {k}")


# ----------------------------------------------------------------------- base


def base_matrix(k: int, with_edge: bool = False) -> list[list[Fraction]]:
    """Adjacency matrix of ``B_k`` written out entry by entry.

    Row 1 uses denominators ``k+1`` (``u1`` has degree ``k+1``).
    With the dashed edge, entries (5, 7) and (7, 5) become nonzero and rows
    5 and 7 are renormalized: ``p5`` then has degree 2 and ``q7`` degree k.
    """
    _check_k(k)
    F = Fraction
    z = F(0)
    B = [
        [F(k - 2, k - 1), F(k - 1, k - 1), z, z, z, z, z, z, z],
        [F(1, k + 1), z, F(1, k + 1), z, F(1, k + 1), z, z, z, z],
        [z, F(1, 2), z, F(1, 2), z, z, z, z, z],
        [z, z, F(1, 2), z, z, z, F(1, 2), z, z],
        [z, F(1, 2), z, z, z, F(1, 2), z, z, z],
        [z, z, z, z, F(1), z, z, z, z],
        [z, z, z, F(1, k), z, z, z, F(1, k), F(1, k)],
        [z, z, z, z, z, z, F(1, k - 1), z, F(1, k - 1)],
        [z, z, z, z, z, z, F(k - 2, k - 1), F(k - 2, k - 1), F(k - 3, k - 1)],
    ]
    if with_edge:
        B[5] = [z, z, z, z, F(1, 2), z, z, F(1, 2), z]
        B[7] = [z, z, z, z, z, F(1, k), F(1, k), z, F(1, k)]
    return B


def _base_structure(k: int, with_edge: bool) -> tuple[list[list[int]], list[int]]:
    """Arc multiplicities of ``B_k`` and the degree of each fiber's vertices."""
    deg = [k - 1, k + 1, 2, 2, 2, 1, k, k - 1, k - 1]
    mult = [[0] * 9 for _ in range(9)]
    for i, j, m in [
        (0, 0, k - 2), (0, 1, k - 1),
        (1, 0, 1), (1, 2, 1), (1, 4, 1),
        (2, 1, 1), (2, 3, 1),
        (3, 2, 1), (3, 6, 1),
        (4, 1, 1), (4, 5, 1),
        (5, 4, 1),
        (6, 3, 1), (6, 7, 1), (6, 8, 1),
        (7, 6, 1), (7, 8, 1),
        (8, 6, k - 2), (8, 7, k - 2), (8, 8, k - 3),
    ]:
        mult[i][j] = m
    if with_edge:
        mult[5][7] = mult[7][5] = 1
        deg[5], deg[7] = 2, k
    return mult, deg


def build_base(k: int, with_edge: bool = False) -> WeightedGraph:
    """``B_k`` as a weighted multigraph (parallel arcs, loops on 0 and 8).

    Every arc leaving base node ``i`` weighs ``1/deg(i)``; the resulting
    adjacency matrix must coincide with :func:`base_matrix`.
    """
    _check_k(k)
    mult, deg = _base_structure(k, with_edge)
    arcs, weights = [], []
    for i in range(9):
        for j in range(9):
            for _ in range(mult[i][j]):
                arcs.append((i, j))
                weights.append(Fraction(1, deg[i]))
    W = WeightedGraph(Graph(9, tuple(arcs)), tuple(weights))
    if adjacency_matrix(W) != base_matrix(k, with_edge):
        raise ConstructionError(f"B_{k} multigraph disagrees with its displayed matrix")
    return W


# ---------------------------------------------------------------------- total


@dataclass(frozen=True)
class FamilyLayout:
    """Vertex ids of ``G_k`` and their base labels."""

    k: int

    def __post_init__(self):
        _check_k(self.k)

    @property
    def n(self) -> int:
        return 2 * self.k + 4

    @property
    def clique_a(self) -> list[int]:
        return list(range(self.k - 1))

    @property
    def u1(self) -> int:
        return self.k - 1

    @property
    def p2(self) -> int:
        return self.k

    @property
    def p3(self) -> int:
        return self.k + 1

    @property
    def p4(self) -> int:
        return self.k + 2

    @property
    def p5(self) -> int:
        return self.k + 3

    @property
    def q6(self) -> int:
        return self.k + 4

    @property
    def q7(self) -> int:
        return self.k + 5

    @property
    def clique_b(self) -> list[int]:
        return list(range(self.k + 6, 2 * self.k + 4))

    @property
    def labels(self) -> tuple[int, ...]:
        lab = [0] * (self.k - 1) + [1, 2, 3, 4, 5, 6, 7] + [8] * (self.k - 2)
        return tuple(lab)

    def representative(self, label: int) -> int:
        return self.labels.index(label)

    @property
    def dashed_edge(self) -> tuple[int, int]:
        return (self.p5, self.q7)


def _total_edges(k: int, with_edge: bool) -> set[tuple[int, int]]:
    L = FamilyLayout(k)
    a = L.clique_a + [L.u1]
    b = [L.q6, L.q7] + L.clique_b
    edges = {(x, y) for i, x in enumerate(a) for y in a[i + 1:]}
    edges |= {(x, y) for i, x in enumerate(b) for y in b[i + 1:]}
    edges |= {(L.u1, L.p2), (L.p2, L.p3), (L.p3, L.q6), (L.u1, L.p4), (L.p4, L.p5)}
    if with_edge:
        edges.add(L.dashed_edge)
    return {(min(e), max(e)) for e in edges}


def build_total(k: int, with_edge: bool = False) -> UndirectedGraph:
    """``G_k``; rejected unless its weighted quotient reproduces ``B_k``."""
    _check_k(k)
    g = UndirectedGraph(2 * k + 4, frozenset(_total_edges(k, with_edge)))
    _quotient_self_check(g, k, with_edge)
    return g


def _quotient_self_check(g: UndirectedGraph, k: int, with_edge: bool) -> None:
    labels = FamilyLayout(k).labels
    if g.vertex_count != 2 * k + 4:
        raise ConstructionError(f"G_{k} has {g.vertex_count} vertices, expected {2 * k + 4}")
    B = base_matrix(k, with_edge)
    # sum_{i in fiber(s)} Gbar[i][j] must equal B[s][label(j)] for every j
    for j in range(g.vertex_count):
        into = [Fraction(0)] * 9
        for i in g.neighbors[j]:
            into[labels[i]] += Fraction(1, g.degrees[i])
        col = [B[s][labels[j]] for s in range(9)]
        if into != col:
            raise ConstructionError(f"G_{k}: vertex {j} (label {labels[j]}) receives {into}, base column is {col}")


def build_fibration(k: int, with_edge: bool = False) -> GraphMorphism:
    """Weight-preserving epimorphic fibration from row-normalized ``G_k`` onto ``B_k``.

    Arcs of the total graph are matched to parallel base arcs in order,
    one per base arc at every target vertex.
    """
    g = build_total(k, with_edge)
    gbar = row_normalize(g)
    base = build_base(k, with_edge)
    labels = FamilyLayout(k).labels
    parallel: dict[tuple[int, int], list[int]] = {}
    for b, ends in enumerate(base.arcs):
        parallel.setdefault(ends, []).append(b)
    used: dict[tuple[int, int, int], int] = {}
    arc_map = []
    for s, t in gbar.arcs:
        key = (labels[s], labels[t], t)
        idx = used.get(key, 0)
        used[key] = idx + 1
        arc_map.append(parallel[(labels[s], labels[t])][idx])
    f = GraphMorphism(gbar, base, labels, tuple(arc_map))
    check = is_fibration(f)
    if not check or not is_epimorphic(f):
        raise ConstructionError(f"G_{k} -> B_{k} is not an epimorphic fibration: {check.witness}")
    return f


def preference(k: int) -> list[Fraction]:
    """Base preference whose lifting is the uniform distribution on ``G_k``."""
    return [Fraction(1, 2 * k + 4)] * BASE_NODES


def fiber_sizes(k: int) -> list[int]:
    return [k - 1, 1, 1, 1, 1, 1, 1, 1, k - 2]


@dataclass(frozen=True)
class FamilyInstance:
    k: int
    g_pre: UndirectedGraph
    g_post: UndirectedGraph
    b_pre: WeightedGraph
    b_post: WeightedGraph
    fib_pre: GraphMorphism
    fib_post: GraphMorphism
    u: tuple[Fraction, ...]

    @classmethod
    def build(cls, k: int) -> "FamilyInstance":
        fp, fq = build_fibration(k, False), build_fibration(k, True)
        return cls(
            k,
            build_total(k, False),
            build_total(k, True),
            fp.target,
            fq.target,
            fp,
            fq,
            tuple(preference(k)),
        )


# --------------------------------------------------------- symbolic PageRank


def pagerank_system(k: int, with_edge: bool) -> tuple[list[RationalFunction], list[list[RationalFunction]]]:
    """``(u, I - alpha B_k)`` with alpha the indeterminate."""
    B = base_matrix(k, with_edge)
    A = [[RationalFunction(Polynomial((int(i == j), -B[i][j])), _reduced=True) for j in range(9)] for i in range(9)]
    u = [RationalFunction.constant(x) for x in preference(k)]
    return u, A


@lru_cache(maxsize=None)
def _symbolic(k: int, with_edge: bool) -> tuple[RationalFunction, ...]:
    u, A = pagerank_system(k, with_edge)
    x = solve_parametric(u, A)
    one_minus = RationalFunction(Polynomial((1, -1)), _reduced=True)
    return tuple(one_minus * e for e in x)


def symbolic_pagerank(k: int, with_edge: bool = False) -> list[RationalFunction]:
    """PageRank of each fiber of ``G_k`` as a rational function of alpha.

    ``(1 - alpha) u (I - alpha B_k)^-1`` with ``u`` the projected uniform
    preference; entry ``j`` is the score of any vertex labelled ``j``.
    """
    _check_k(k)
    return list(_symbolic(int(k), bool(with_edge)))


def multiply_back_residual(k: int, with_edge: bool) -> list[RationalFunction]:
    """``x (I - alpha B) - u`` for the solved ``x``; all entries must be zero."""
    u, A = pagerank_system(k, with_edge)
    one_minus = RationalFunction(Polynomial((1, -1)), _reduced=True)
    x = [e / one_minus for e in symbolic_pagerank(k, with_edge)]
    return [a - b for a, b in zip(vec_mat(x, A), u)]


def total_mass(k: int, with_edge: bool) -> RationalFunction:
    scores = symbolic_pagerank(k, with_edge)
    acc = RationalFunction.constant(0)
    for size, s in zip(fiber_sizes(k), scores):
        acc = acc + s * size
    return acc


# ------------------------------------------------------------ verification


def score_sandwich(k: int) -> tuple[Fraction, Fraction]:
    """``(a, b)`` with ``a <= 2/3 <= b`` bracketing the score-drop interval."""
    return Fraction(3, 4) - Fraction(3 * k, 4 * k + 1000), Fraction(1, 2) + Fraction(k, 2 * k + 1000)


def rank_pre_sandwich(k: int) -> tuple[Fraction, Fraction]:
    return Fraction(3, 4) - Fraction(3 * k, 4 * k + 200), Fraction(1, 2) + Fraction(k, 2 * k + 200)


def rank_post_sandwich(k: int) -> tuple[Fraction, Fraction]:
    return Fraction(1, 10) - Fraction(k, 10 * k + 2000), Fraction(1, 2) + Fraction(k, 2 * k + 200)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _profile(f: RationalFunction, a: Fraction, b: Fraction) -> dict:
    """Signs and Sturm root counts of the numerator of ``f``.

    ``roots_unit`` counts (0, 1); ``roots_low`` counts (0, a];
    ``roots_high`` counts [b, 1). ``closed`` repeats the three counts on
    [0, 1], [0, a] and [b, 1], where the endpoint roots of these
    differences live.
    """
    p = f.num
    chain = sturm_chain(p)
    den_chain = sturm_chain(f.den)
    return {
        "sign_at_2_3": f.sign_at(TWO_THIRDS),
        "sign_at_0": _sign(p(0)) * _sign(f.den(0)),
        "sign_at_1": _sign(p(1)) * _sign(f.den(1)) if f.den(1) else None,
        "roots_unit": count_roots_between(p, 0, 1, include_b=False, chain=chain),
        "roots_low": count_roots_between(p, 0, a, chain=chain),
        "roots_high": count_roots_between(p, b, 1, include_a=True, include_b=False, chain=chain),
        "closed": (
            count_roots_between(p, 0, 1, include_a=True, chain=chain),
            count_roots_between(p, 0, a, include_a=True, chain=chain),
            count_roots_between(p, b, 1, include_a=True, chain=chain),
        ),
        "denominator_roots_closed_unit": count_roots_between(f.den, 0, 1, include_a=True, chain=den_chain),
        "numerator": p,
        "denominator": f.den,
    }


@dataclass
class ScoreReport:
    k: int
    delta_at_2_3: int
    roots_unit: int
    roots_low: int
    roots_high: int
    a: Fraction
    b: Fraction
    denominator_roots: int
    numerator: Polynomial
    closed: tuple[int, int, int] = (0, 0, 0)

    def expected(self, force: bool = False) -> dict[str, bool]:
        """Checks in force at this ``k`` (all of them with ``force``)."""
        out = {}
        if force or self.k >= 12:
            out["negative_at_2_3"] = self.delta_at_2_3 < 0
            out["two_roots_unit"] = self.roots_unit == 2
        if force or self.k >= 15:
            out["one_root_low"] = self.roots_low == 1
            out["one_root_high"] = self.roots_high == 1
        out["denominator_zero_free"] = self.denominator_roots == 0
        return out

    def passed(self, force: bool = False) -> bool:
        return all(self.expected(force).values())

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "theorem": "score",
            "edge": list(DASHED),
            "delta_at_2_3": self.delta_at_2_3,
            "roots_unit": self.roots_unit,
            "roots_low": self.roots_low,
            "roots_high": self.roots_high,
            "a": str(self.a),
            "b": str(self.b),
            "roots_closed": list(self.closed),
            "denominator_roots_closed_unit": self.denominator_roots,
            "checks": self.expected(),
            "numerator": self.numerator.to_json(),
        }


def score_difference(k: int) -> RationalFunction:
    """``post(5) - pre(5)``: change of the pendant endpoint's PageRank."""
    return symbolic_pagerank(k, True)[5] - symbolic_pagerank(k, False)[5]


def verify_score_theorem(k: int) -> ScoreReport:
    _check_k(k)
    a, b = score_sandwich(k)
    pr = _profile(score_difference(k), a, b)
    return ScoreReport(k, pr["sign_at_2_3"], pr["roots_unit"], pr["roots_low"], pr["roots_high"], a, b,
                       pr["denominator_roots_closed_unit"], pr["numerator"], pr["closed"])


@dataclass
class RankReport:
    k: int
    pre_gap_at_2_3: int
    pre_roots_unit: int
    pre_roots_low: int
    pre_roots_high: int
    post_gap_at_2_3: int
    post_roots_unit: int
    post_roots_low: int
    post_roots_high: int
    pre_sandwich: tuple[Fraction, Fraction]
    post_sandwich: tuple[Fraction, Fraction]
    denominator_roots: int
    pre_numerator: Polynomial
    post_numerator: Polynomial
    pre_closed: tuple[int, int, int] = (0, 0, 0)
    post_closed: tuple[int, int, int] = (0, 0, 0)

    def expected(self, force: bool = False) -> dict[str, bool]:
        """Checks in force at this ``k`` (all of them with ``force``)."""
        out = {}
        if force or self.k >= 6:
            out["post_negative_at_2_3"] = self.post_gap_at_2_3 < 0
            out["post_three_roots_unit"] = self.post_roots_unit == 3
        if force or self.k >= 14:
            out["pre_positive_at_2_3"] = self.pre_gap_at_2_3 > 0
            out["pre_two_roots_unit"] = self.pre_roots_unit == 2
        if force or self.k >= 25:
            out["post_two_roots_low"] = self.post_roots_low == 2
            out["post_one_root_high"] = self.post_roots_high == 1
        out["denominator_zero_free"] = self.denominator_roots == 0
        return out

    def passed(self, force: bool = False) -> bool:
        return all(self.expected(force).values())

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "theorem": "rank",
            "edge": list(DASHED),
            "comparator": COMPARATOR,
            "pre_gap_at_2_3": self.pre_gap_at_2_3,
            "pre_roots_unit": self.pre_roots_unit,
            "pre_roots_low": self.pre_roots_low,
            "pre_roots_high": self.pre_roots_high,
            "post_gap_at_2_3": self.post_gap_at_2_3,
            "post_roots_unit": self.post_roots_unit,
            "post_roots_low": self.post_roots_low,
            "post_roots_high": self.post_roots_high,
            "pre_sandwich": [str(x) for x in self.pre_sandwich],
            "post_sandwich": [str(x) for x in self.post_sandwich],
            "pre_roots_closed": list(self.pre_closed),
            "post_roots_closed": list(self.post_closed),
            "denominator_roots_closed_unit": self.denominator_roots,
            "checks": self.expected(),
            "pre_numerator": self.pre_numerator.to_json(),
            "post_numerator": self.post_numerator.to_json(),
        }


def rank_gaps(k: int) -> tuple[RationalFunction, RationalFunction]:
    """``(pre(5) - pre(2), post(5) - post(2))``."""
    pre, post = symbolic_pagerank(k, False), symbolic_pagerank(k, True)
    return pre[5] - pre[COMPARATOR], post[5] - post[COMPARATOR]


def verify_rank_theorem(k: int) -> RankReport:
    _check_k(k)
    pre_gap, post_gap = rank_gaps(k)
    ps, qs = rank_pre_sandwich(k), rank_post_sandwich(k)
    p = _profile(pre_gap, *ps)
    q = _profile(post_gap, *qs)
    return RankReport(
        k,
        p["sign_at_2_3"], p["roots_unit"], p["roots_low"], p["roots_high"],
        q["sign_at_2_3"], q["roots_unit"], q["roots_low"], q["roots_high"],
        ps, qs,
        p["denominator_roots_closed_unit"] + q["denominator_roots_closed_unit"],
        p["numerator"], q["numerator"],
        p["closed"], q["closed"],
    )


def lifted_pagerank(k: int, with_edge: bool, alpha) -> list[Fraction]:
    """Exact PageRank of every vertex of ``G_k`` read off the base."""
    scores = [f.eval(alpha) for f in symbolic_pagerank(k, with_edge)]
    return [scores[h] for h in FamilyLayout(k).labels]


def embedding_offset_graph(k: int, extra: UndirectedGraph, with_edge: bool = False) -> tuple[UndirectedGraph, int]:
    """Disjoint union ``G_k + extra``; returns the graph and the offset of ``extra``."""
    g = build_total(k, with_edge)
    off = g.vertex_count
    edges = set(g.edges) | {(x + off, y + off) for x, y in extra.edges}
    return UndirectedGraph(off + extra.vertex_count, frozenset(edges)), off

