"""Score and rank monotonicity of a centrality under edge addition.

For an added edge ``x -- y`` (``G' = G + xy``):

* score monotone: ``c_G'(e) > c_G(e)`` for both endpoints ``e``
  (weakly: ``>=``);
* rank monotone: for every ``z != x, y`` and endpoint ``e``,
  ``c_G(e) >= c_G(z)`` implies ``c_G'(e) >= c_G'(z)``
  (strictly: ``c_G'(e) > c_G'(z)``).

Floating-point comparisons use a tolerance band; anything that is not a
clean pass is recomputed with an exact (or much tighter) centrality before
it is reported.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

from . import centrality as C
from .enumeration import all_graphs
from .errors import NotFoundError, UndefinedIndexError
from .graph import UndirectedGraph

EPS = 1e-9
VERIFY_TOL = 1e-14
EXACT_LIMIT = 64  # exact PageRank re-verification up to this many vertices

SCORE_WEAK, SCORE, RANK, RANK_STRICT = "score-weak", "score", "rank", "rank-strict"
AXIOMS = (SCORE_WEAK, SCORE, RANK, RANK_STRICT)


# ------------------------------------------------------------- centralities


@dataclass(frozen=True)
class Centrality:
    """A centrality with a fast evaluation and a re-verification route.

    ``scores`` may be floating point; ``verify`` is exact when
    ``verify_exact`` is true, otherwise a tighter-tolerance recomputation.
    """

    name: str
    scores: Callable[[UndirectedGraph], Sequence]
    verify: Callable[[UndirectedGraph], Sequence]
    exact: bool = False
    verify_exact: bool = False
    params: dict = field(default_factory=dict, hash=False, compare=False)

    def tag(self) -> dict:
        return {"centrality": self.name, **self.params}


def seeley_centrality() -> Centrality:
    f = lambda g: C.seeley(g, exact=True).values  # noqa: E731
    return Centrality("seeley", f, f, exact=True, verify_exact=True)


def pagerank_centrality(alpha=Fraction(17, 20), tol: float = C.DEFAULT_TOL, exact: bool = False,
                        exact_limit: int = EXACT_LIMIT) -> Centrality:
    """PageRank with a rational damping factor (``"0.85"`` means 17/20)."""
    a = Fraction(alpha) if not isinstance(alpha, float) else Fraction(str(alpha))
    C._require_alpha(a)

    def fast(g):
        return C.pagerank(g, float(a), tol=tol).values

    def exact_scores(g):
        return C.pagerank_exact(g, a).values

    def verify(g):
        if g.vertex_count <= exact_limit:
            return exact_scores(g)
        return _pagerank_direct(g, float(a))

    if exact:
        return Centrality("pagerank", exact_scores, exact_scores, True, True, {"alpha": str(a)})
    return Centrality("pagerank", fast, verify, False, False, {"alpha": str(a), "exact_limit": exact_limit})


def _pagerank_direct(g: UndirectedGraph, alpha: float) -> list[float]:
    """Dense direct solve, an independent route from the power iteration."""
    n = g.vertex_count
    deg = np.array(g.degrees, dtype=float)
    P = g.adjacency_array()
    P = np.divide(P, deg[:, None], out=np.zeros_like(P), where=deg[:, None] > 0)
    r = np.linalg.solve((np.eye(n) - alpha * P).T, np.full(n, (1 - alpha) / n))
    if (deg == 0).any():
        r /= r.sum()
    return list(r)


def eigenvector_centrality(norm: str = C.L1, tol: float = C.DEFAULT_TOL) -> Centrality:
    def fast(g):
        return C.eigenvector_centrality(g, norm, tol).values

    def verify(g):
        return C.eigenvector_centrality(g, norm, VERIFY_TOL).values

    return Centrality("eigenvector", fast, verify, params={"norm": norm})


def by_name(kind: str, **params) -> Centrality:
    if kind == "seeley":
        return seeley_centrality()
    if kind == "pagerank":
        return pagerank_centrality(params.get("alpha", Fraction(17, 20)), params.get("tol", C.DEFAULT_TOL),
                                   params.get("exact", False))
    if kind == "eigenvector":
        return eigenvector_centrality(params.get("norm", C.L1), params.get("tol", C.DEFAULT_TOL))
    raise ValueError(f"unknown centrality {kind!r}")


# ------------------------------------------------------------------ verdicts


@dataclass(frozen=True)
class RankViolation:
    endpoint: int
    z: int
    before_endpoint: object
    before_z: object
    after_endpoint: object
    after_z: object
    flavor: str  # "plain": order reversed; "strict": dominance became a tie

    @property
    def margin(self) -> float:
        return float(self.after_z - self.after_endpoint)


@dataclass
class Verdict:
    edge: tuple[int, int]
    tag: dict
    score_before: tuple
    score_after: tuple
    score_monotone: str  # strict | weak | violated
    rank_violations: list[RankViolation]
    rank_monotone: str  # strict | plain | violated
    exact: bool = False
    verified: bool = False

    @property
    def score_deltas(self) -> tuple:
        return tuple(a - b for a, b in zip(self.score_after, self.score_before))

    @property
    def score_margin(self) -> float:
        """Largest drop at an endpoint (positive when score monotonicity fails)."""
        return float(-min(self.score_deltas))

    @property
    def rank_margin(self) -> float:
        plain = [v.margin for v in self.rank_violations if v.flavor == "plain"]
        return max(plain, default=0.0)

    def violates(self, axiom: str) -> bool:
        if axiom == SCORE_WEAK:
            return self.score_monotone == "violated"
        if axiom == SCORE:
            return self.score_monotone != "strict"
        if axiom == RANK:
            return self.rank_monotone == "violated"
        if axiom == RANK_STRICT:
            return self.rank_monotone != "strict"
        raise ValueError(f"unknown axiom {axiom!r}")

    @property
    def any_violation(self) -> bool:
        return self.score_monotone == "violated" or self.rank_monotone == "violated"

    @property
    def hurt_endpoints(self) -> list[int]:
        """Endpoints whose score or rank got worse."""
        out = []
        for e, d in zip(self.edge, self.score_deltas):
            if d < 0 or any(v.endpoint == e and v.flavor == "plain" for v in self.rank_violations):
                out.append(e)
        return out

    def swapped(self) -> "Verdict":
        return Verdict((self.edge[1], self.edge[0]), self.tag, self.score_before[::-1], self.score_after[::-1],
                       self.score_monotone, self.rank_violations, self.rank_monotone, self.exact, self.verified)

    def to_json(self) -> dict:
        def fmt(x):
            return f"{x.numerator}/{x.denominator}" if isinstance(x, Fraction) else float(x)

        return {
            "edge": list(self.edge),
            "tag": self.tag,
            "score_before": [fmt(x) for x in self.score_before],
            "score_after": [fmt(x) for x in self.score_after],
            "score_monotone": self.score_monotone,
            "rank_monotone": self.rank_monotone,
            "rank_violations": [
                {k: (fmt(v) if k.startswith(("before", "after")) else v) for k, v in asdict(rv).items()}
                for rv in self.rank_violations
            ],
            "exact": self.exact,
            "verified": self.verified,
        }


def _cmp(a, b, eps) -> int:
    """Three-way comparison with an equality band of half-width ``eps``."""
    d = a - b
    if d > eps:
        return 1
    if d < -eps:
        return -1
    return 0


def classify(edge: tuple[int, int], before: Sequence, after: Sequence, eps: float, tag: dict,
             exact: bool) -> Verdict:
    x, y = edge
    signs = [_cmp(after[e], before[e], eps) for e in (x, y)]
    if all(s > 0 for s in signs):
        score = "strict"
    elif all(s >= 0 for s in signs):
        score = "weak"
    else:
        score = "violated"
    violations = []
    for e in (x, y):
        for z in range(len(before)):
            if z == x or z == y or _cmp(before[e], before[z], eps) < 0:
                continue
            c = _cmp(after[e], after[z], eps)
            if c <= 0:
                violations.append(RankViolation(e, z, before[e], before[z], after[e], after[z],
                                                "plain" if c < 0 else "strict"))
    if any(v.flavor == "plain" for v in violations):
        rank = "violated"
    elif violations:
        rank = "plain"
    else:
        rank = "strict"
    return Verdict((x, y), tag, (before[x], before[y]), (after[x], after[y]), score, violations, rank, exact)


def _clean(v: Verdict) -> bool:
    return v.score_monotone == "strict" and v.rank_monotone == "strict"


def check_edge(c: Centrality, g: UndirectedGraph, x: int, y: int, eps: float = EPS,
               before: Sequence | None = None) -> Verdict:
    """Add ``x -- y`` to ``g`` and classify both axioms for centrality ``c``.

    ``before`` may carry precomputed scores of ``g`` (fast route).
    """
    g2 = g.add_edge(x, y)
    s0 = before if before is not None else c.scores(g)
    s1 = c.scores(g2)
    v = classify((x, y), s0, s1, 0 if c.exact else eps, c.tag(), c.exact)
    if c.exact or _clean(v):
        return v
    t0, t1 = c.verify(g), c.verify(g2)
    v = classify((x, y), t0, t1, 0 if c.verify_exact else VERIFY_EPS, c.tag(), c.verify_exact)
    v.verified = True
    return v


VERIFY_EPS = 1e-12


# --------------------------------------------------------------- searching


@dataclass
class Counterexample:
    graph: UndirectedGraph
    x: int
    y: int
    verdict: Verdict

    def to_json(self) -> dict:
        return {"vertex_count": self.graph.vertex_count, "edges": sorted(self.graph.edges), "x": self.x,
                "y": self.y, "verdict": self.verdict.to_json()}


def _margin(v: Verdict, axiom: str) -> float:
    if axiom in (SCORE_WEAK,):
        return v.score_margin
    if axiom == RANK:
        return v.rank_margin
    return math.inf  # equality-type failures have no meaningful margin


def search_counterexample(c: Centrality, max_vertices: int, axiom: str, connected_only: bool = True,
                          min_margin: float = 0.0, eps: float = EPS) -> Counterexample | None:
    """First (graph, x, y) on at most ``max_vertices`` vertices violating ``axiom``.

    Graphs are visited by vertex count, one per isomorphism class; graphs
    on which ``c`` is undefined (no edges) are skipped. A violation whose
    verified margin does not exceed ``min_margin`` is passed over.
    """
    if axiom not in AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}")
    for g in all_graphs(max_vertices, connected=connected_only, min_vertices=2):
        try:
            s0 = c.scores(g)
        except UndefinedIndexError:
            continue
        for x, y in g.non_edges():
            v = check_edge(c, g, x, y, eps, before=s0)
            if v.violates(axiom) and _margin(v, axiom) > min_margin:
                return Counterexample(g, x, y, v)
    return None


def random_counterexample(c: Centrality, axiom: str, seed: int = 0, vertices: tuple[int, int] = (9, 14),
                          density: tuple[float, float] = (0.15, 0.5), trials: int = 20000,
                          min_margin: float = 0.0, eps: float = EPS) -> Counterexample | None:
    """Seeded random search over connected G(n, p) graphs beyond the exhaustive range."""
    if axiom not in AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}")
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.randint(*vertices)
        p = rng.uniform(*density)
        g = UndirectedGraph.from_edges(n, [(x, y) for x in range(n) for y in range(x + 1, n) if rng.random() < p])
        if not g.is_connected():
            continue
        s0 = c.scores(g)
        for x, y in g.non_edges():
            v = check_edge(c, g, x, y, eps, before=s0)
            if v.violates(axiom) and _margin(v, axiom) > min_margin:
                return Counterexample(g, x, y, v)
    return None


def is_star_plus_isolated(g: UndirectedGraph) -> bool:
    """All edges share one vertex (a star, possibly with isolated vertices)."""
    if g.edge_count == 0:
        return False
    return max(g.degrees) == g.edge_count


def find_monotone_alpha(g: UndirectedGraph, x: int, y: int, flavor: str = RANK_STRICT,
                        max_j: int = 60) -> Fraction:
    """Smallest probe ``alpha_j = 1 - 2^-j`` at which adding ``x -- y`` is monotone.

    Each probe is checked with exact PageRank. Raises :class:`NotFoundError`
    past ``j = max_j``.
    """
    if flavor not in (RANK_STRICT, SCORE):
        raise ValueError(f"flavor must be {RANK_STRICT!r} or {SCORE!r}")
    for j in range(1, max_j + 1):
        alpha = 1 - Fraction(1, 2**j)
        v = check_edge(pagerank_centrality(alpha, exact=True), g, x, y)
        if not v.violates(flavor):
            return alpha
    raise NotFoundError(f"no alpha up to 1 - 2^-{max_j} makes {x} -- {y} {flavor} monotone")


# ----------------------------------------------------------------- scanning


def centrality_order(scores: Sequence, rel_tol: float = 1e-9) -> list[int]:
    """Vertices by decreasing score; near-ties (within ``rel_tol``) ordered by id."""
    vals = [float(x) for x in scores]
    desc = sorted(range(len(vals)), key=lambda v: (-vals[v], v))
    scale = max((abs(x) for x in vals), default=0.0)
    out: list[int] = []
    group: list[int] = []
    for v in desc:
        if group and vals[group[-1]] - vals[v] > rel_tol * scale:
            out.extend(sorted(group))
            group = []
        group.append(v)
    out.extend(sorted(group))
    return out


class RandomPairs:
    """Uniform random non-adjacent pairs (without repetition)."""

    kind = "random"

    def __init__(self, seed: int = 0):
        self.seed = seed

    def pairs(self, g: UndirectedGraph, scores: Sequence, budget: int) -> list[tuple[int, int]]:
        rng = random.Random(self.seed)
        n = g.vertex_count
        total = n * (n - 1) // 2 - g.edge_count
        if total <= 0:
            return []
        if total <= 4 * budget:
            cands = g.non_edges()
            rng.shuffle(cands)
            return sorted(cands[:budget])
        seen: set[tuple[int, int]] = set()
        while len(seen) < budget:
            x, y = rng.randrange(n), rng.randrange(n)
            if x == y or g.has_edge(x, y):
                continue
            seen.add((min(x, y), max(x, y)))
        return sorted(seen)


class StratifiedPairs:
    """Pairs joining a top stratum to a bottom stratum by centrality.

    The top stratum holds the ``top_fraction`` most central vertices and
    the bottom stratum the ``bottom_fraction`` least central ones (at least
    one vertex each). When ``top_fraction`` leaves fewer candidate pairs
    than ``budget`` the top stratum is widened, in centrality order, until
    the budget can be met; ``widen=False`` disables this.
    """

    kind = "stratified"

    def __init__(self, seed: int = 0, top_fraction: float = 1e-4, bottom_fraction: float = 0.25,
                 widen: bool = True):
        for f in (top_fraction, bottom_fraction):
            if not 0 < f <= 1:
                raise ValueError(f"stratum fractions must lie in (0, 1], got {f}")
        self.seed = seed
        self.top_fraction = top_fraction
        self.bottom_fraction = bottom_fraction
        self.widen = widen

    def strata(self, g: UndirectedGraph, scores: Sequence, budget: int) -> tuple[list[int], list[int]]:
        n = g.vertex_count
        order = centrality_order(scores)
        nb = max(1, math.ceil(self.bottom_fraction * n))
        bottom = order[n - nb:]
        nt = max(1, math.ceil(self.top_fraction * n))
        nt = min(nt, n - nb) if n > nb else nt
        if self.widen:
            while nt < n - nb:
                avail = sum(1 for x in order[:nt] for y in bottom if x != y and not g.has_edge(x, y))
                if avail >= budget:
                    break
                nt += 1
        return order[:nt], bottom

    def pairs(self, g: UndirectedGraph, scores: Sequence, budget: int) -> list[tuple[int, int]]:
        top, bottom = self.strata(g, scores, budget)
        cands = sorted({(min(x, y), max(x, y)) for x in top for y in bottom if x != y and not g.has_edge(x, y)})
        rng = random.Random(self.seed)
        if len(cands) > budget:
            cands = sorted(rng.sample(cands, budget))
        return cands


@dataclass
class ScanResult:
    samples: int
    violations: list[Verdict]
    both_hurt: int = 0

    @property
    def violation_rate(self) -> float:
        return len(self.violations) / self.samples if self.samples else 0.0

    def summary(self) -> dict:
        return {"samples": self.samples, "violations": len(self.violations),
                "violation_rate": self.violation_rate, "both_hurt": self.both_hurt}


def scan_graph(c: Centrality, g: UndirectedGraph, sampler, budget: int, eps: float = EPS,
               workers: int = 1) -> ScanResult:
    """Check sampled non-adjacent pairs; keep only violating verdicts."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    s0 = c.scores(g)
    pairs = sampler.pairs(g, s0, budget)

    def one(p):
        return check_edge(c, g, p[0], p[1], eps, before=s0)

    if workers > 1 and len(pairs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(workers) as ex:
            verdicts = list(ex.map(one, pairs))
    else:
        verdicts = [one(p) for p in pairs]
    bad = [v for v in verdicts if v.any_violation]
    bad.sort(key=lambda v: v.edge)
    both = sum(1 for v in bad if len(v.hurt_endpoints) == 2)
    return ScanResult(len(pairs), bad, both)


def iter_non_edges(g: UndirectedGraph) -> Iterator[tuple[int, int]]:
    yield from g.non_edges()
