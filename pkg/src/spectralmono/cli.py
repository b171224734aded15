"""Command-line interface.

Exit codes: 0 clean, 2 usage or input error, 3 violations found,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import centrality as C
from . import family as fam
from . import monotonicity as M
from .errors import (ConstructionError, ConvergenceError, EdgeListParseError, MorphismError,
                     SingularMatrixError, SpectralMonoError)
from .fibration import GraphMorphism, is_epimorphic, is_fibration, verify_quotient_identity
from .graph import read_edge_list

EXIT_OK, EXIT_USAGE, EXIT_VIOLATIONS, EXIT_VERIFY = 0, 2, 3, 4
WORKERS_ENV = "SPECTRALMONO_WORKERS"
DEFAULT_BUDGET = 5000

# k from which every check of a theorem is in force
FULL_THRESHOLD = {"score": 15, "rank": 25}

DESK_SCALE = ("Scanning targets desk-scale graphs (up to about 10^6 edges held in memory); "
              "multi-million-vertex collaboration graphs are out of scope.")


class UsageError(Exception):
    pass


# -------------------------------------------------------------- arguments


def rational(text: str) -> Fraction:
    """Parse ``0.85`` or ``17/20`` as an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def damping(text: str) -> Fraction:
    a = rational(text)
    if not 0 <= a < 1:
        raise argparse.ArgumentTypeError(f"damping factor must lie in [0, 1), got {text}")
    return a


def fraction_in_unit(text: str) -> float:
    x = float(rational(text))
    if not 0 < x <= 1:
        raise argparse.ArgumentTypeError(f"threshold must lie in (0, 1], got {text}")
    return x


def positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {n}")
    return n


def _centrality_options(p: argparse.ArgumentParser, default: str) -> None:
    g = p.add_argument_group("centrality")
    g.add_argument("--kind", choices=["seeley", "pagerank", "eigenvector", "katz"], default=default)
    g.add_argument("--alpha", type=damping, default=Fraction(17, 20), help="PageRank damping (default 0.85)")
    g.add_argument("--beta", type=rational, help="Katz damping")
    g.add_argument("--norm", choices=list(C.NORMS), default=C.L1, help="eigenvector normalization")
    g.add_argument("--tol", type=float, default=C.DEFAULT_TOL)
    g.add_argument("--max-iter", type=positive_int, default=C.DEFAULT_MAX_ITER)
    g.add_argument("--exact", action="store_true", help="exact rational PageRank")


def _format_option(p: argparse.ArgumentParser, choices: Sequence[str], default: str) -> None:
    p.add_argument("--format", choices=list(choices), default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectralmono",
        description="Spectral centralities and their monotonicity under edge addition.",
        epilog=DESK_SCALE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("centrality", help="score every vertex of a graph")
    p.add_argument("graph", help="edge-list file")
    _centrality_options(p, "pagerank")
    _format_option(p, ["json", "csv", "table"], "csv")

    p = sub.add_parser("check-edge", help="check both axioms for one added edge")
    p.add_argument("graph")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    _centrality_options(p, "pagerank")
    _format_option(p, ["json", "table"], "json")

    p = sub.add_parser("scan", help="sample non-adjacent pairs and report violations", epilog=DESK_SCALE)
    p.add_argument("graph")
    _centrality_options(p, "pagerank")
    p.add_argument("--sampler", choices=["random", "stratified"], default="stratified")
    p.add_argument("--top-fraction", type=fraction_in_unit, default=1e-4)
    p.add_argument("--bottom-fraction", type=fraction_in_unit, default=0.25)
    p.add_argument("--no-widen", action="store_true", help="keep the top stratum at exactly --top-fraction")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="number of pairs to check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=positive_int, help=f"worker threads (default ${WORKERS_ENV} or 1)")
    _format_option(p, ["json", "table"], "json")

    p = sub.add_parser("search", help="exhaustive counterexample search on small graphs")
    _centrality_options(p, "eigenvector")
    p.add_argument("--axiom", choices=list(M.AXIOMS), default=M.SCORE_WEAK)
    p.add_argument("--max-vertices", type=int, default=6)
    p.add_argument("--all-graphs", action="store_true", help="include disconnected graphs")
    p.add_argument("--min-margin", type=float, default=0.0)
    _format_option(p, ["json", "table"], "json")

    p = sub.add_parser("family", help="the G_k / B_k counterexample family")
    fsub = p.add_subparsers(dest="action", required=True)
    v = fsub.add_parser("verify", help="exact sign and root-count checks")
    v.add_argument("--theorem", choices=["score", "rank"], required=True)
    v.add_argument("--k-min", type=int, required=True)
    v.add_argument("--k-max", type=int, required=True)
    v.add_argument("--strict", action="store_true", help="apply every check at every k")
    e = fsub.add_parser("export", help="write G_k and/or the morphism onto B_k")
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--with-edge", action="store_true", help="include the dashed edge")
    e.add_argument("--graph", help="edge-list output path for G_k")
    e.add_argument("--morphism", help="JSON output path for G_k -> B_k")

    p = sub.add_parser("fibration", help="graph fibrations")
    fsub = p.add_subparsers(dest="action", required=True)
    c = fsub.add_parser("check", help="fibration property and quotient identity")
    c.add_argument("morphism", help="JSON morphism file")
    c.add_argument("--beta", type=rational, action="append",
                   help="damping to test (repeatable; default 1/4 1/2 2/3 17/20)")
    c.add_argument("--mode", choices=["exact", "float"], default="exact")
    return parser


def centrality_from_args(args) -> M.Centrality:
    if args.kind == "seeley":
        return M.seeley_centrality()
    if args.kind == "pagerank":
        return M.pagerank_centrality(args.alpha, args.tol, exact=args.exact)
    if args.kind == "eigenvector":
        return M.eigenvector_centrality(args.norm, args.tol)
    raise UsageError(f"--kind {args.kind} is not supported here")


# -------------------------------------------------------------- output


def _num(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return float(x)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _verdict_rows(verdicts: Sequence[M.Verdict]) -> list[list]:
    rows = []
    for v in verdicts:
        worst = [r for r in v.rank_violations if r.flavor == "plain"]
        rows.append([f"{v.edge[0]}-{v.edge[1]}", v.score_monotone, v.rank_monotone,
                     " ".join(f"{float(d):+.3e}" for d in v.score_deltas),
                     len(worst), "yes" if v.verified or v.exact else "no"])
    return rows


VERDICT_HEADER = ["edge", "score", "rank", "score deltas", "rank violations", "verified"]


# -------------------------------------------------------------- commands


def cmd_centrality(args, out) -> int:
    g = read_edge_list(args.graph)
    params = {"alpha": args.alpha if args.exact else float(args.alpha), "norm": args.norm,
              "tol": args.tol, "max_iter": args.max_iter, "exact": args.exact}
    if args.kind == "katz":
        if args.beta is None:
            raise UsageError("--kind katz needs --beta")
        params["beta"] = args.beta
    sv = C.compute(g, args.kind, **params)
    if args.format == "table":
        out.write(_table([[i, _num(x)] for i, x in enumerate(sv.values)], ["vertex", "score"]) + "\n")
    else:
        out.write(sv.dumps(args.format))
        if args.format == "json":
            out.write("\n")
    return EXIT_OK


def cmd_check_edge(args, out) -> int:
    g = read_edge_list(args.graph)
    v = M.check_edge(centrality_from_args(args), g, args.x, args.y)
    if args.format == "table":
        out.write(_table(_verdict_rows([v]), VERDICT_HEADER) + "\n")
    else:
        out.write(_dump(v.to_json()) + "\n")
    return EXIT_VIOLATIONS if v.any_violation else EXIT_OK


def _workers(args) -> int:
    if args.workers:
        return args.workers
    env = os.environ.get(WORKERS_ENV, "").strip()
    if not env:
        return 1
    try:
        n = int(env)
    except ValueError:
        raise UsageError(f"${WORKERS_ENV} must be a positive integer, got {env!r}") from None
    if n < 1:
        raise UsageError(f"${WORKERS_ENV} must be a positive integer, got {env!r}")
    return n


def cmd_scan(args, out) -> int:
    if args.budget < 1:
        raise UsageError("--budget must be at least 1")
    workers = _workers(args)
    c = centrality_from_args(args)
    g = read_edge_list(args.graph)
    if args.sampler == "random":
        sampler = M.RandomPairs(args.seed)
    else:
        sampler = M.StratifiedPairs(args.seed, args.top_fraction, args.bottom_fraction, widen=not args.no_widen)
    result = M.scan_graph(c, g, sampler, args.budget, workers=workers)
    summary = {"summary": True, "sampler": sampler.kind, "seed": args.seed, "budget": args.budget,
               **c.tag(), **result.summary()}
    if args.format == "table":
        out.write(_table(_verdict_rows(result.violations), VERDICT_HEADER) + "\n")
        out.write(f"{result.samples} pairs checked, {len(result.violations)} violations "
                  f"(rate {result.violation_rate:.4f}), both endpoints hurt: {result.both_hurt}\n")
    else:
        for v in result.violations:
            out.write(_dump(v.to_json()) + "\n")
        out.write(_dump(summary) + "\n")
    return EXIT_VIOLATIONS if result.violations else EXIT_OK


def cmd_search(args, out) -> int:
    if not 2 <= args.max_vertices <= 8:
        raise UsageError("--max-vertices must lie in 2..8")
    ce = M.search_counterexample(centrality_from_args(args), args.max_vertices, args.axiom,
                                 connected_only=not args.all_graphs, min_margin=args.min_margin)
    if ce is None:
        if args.format == "table":
            out.write("no counterexample\n")
        else:
            out.write(_dump({"found": False, "axiom": args.axiom}) + "\n")
        return EXIT_OK
    if args.format == "table":
        out.write(f"graph: n={ce.graph.vertex_count} edges={sorted(ce.graph.edges)}\n")
        out.write(_table(_verdict_rows([ce.verdict]), VERDICT_HEADER) + "\n")
    else:
        out.write(_dump({"found": True, "axiom": args.axiom, **ce.to_json()}) + "\n")
    return EXIT_VIOLATIONS


def cmd_family_verify(args, out) -> int:
    if args.k_min < 4 or args.k_max < args.k_min:
        raise UsageError("need 4 <= --k-min <= --k-max")
    verify = fam.verify_score_theorem if args.theorem == "score" else fam.verify_rank_theorem
    full = FULL_THRESHOLD[args.theorem]
    failed = below = 0
    for k in range(args.k_min, args.k_max + 1):
        rep = verify(k)
        row = rep.to_json()
        if not rep.passed(force=args.strict):
            status = "fail"
            failed += 1
        elif k < full and not rep.passed(force=True):
            status = "below-threshold"
            below += 1
        else:
            status = "pass"
        row["status"] = status
        out.write(_dump(row) + "\n")
    out.write(_dump({"summary": True, "theorem": args.theorem, "edge": list(fam.DASHED),
                     "k_min": args.k_min, "k_max": args.k_max, "strict": args.strict,
                     "failed": failed, "below_threshold": below}) + "\n")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_family_export(args, out) -> int:
    if not (args.graph or args.morphism):
        raise UsageError("nothing to export: give --graph and/or --morphism")
    from .graph import write_edge_list

    if args.graph:
        write_edge_list(fam.build_total(args.k, args.with_edge), args.graph)
    if args.morphism:
        f = fam.build_fibration(args.k, args.with_edge)
        with open(args.morphism, "w", encoding="utf-8") as fh:
            json.dump(f.to_json(), fh)
            fh.write("\n")
    layout = fam.FamilyLayout(args.k)
    out.write(_dump({"k": args.k, "vertices": layout.n, "dashed_edge": list(layout.dashed_edge),
                     "with_edge": args.with_edge}) + "\n")
    return EXIT_OK


def cmd_fibration_check(args, out) -> int:
    with open(args.morphism, encoding="utf-8") as fh:
        f = GraphMorphism.from_json(json.load(fh))
    fib = is_fibration(f)
    epi = is_epimorphic(f)
    report = {"is_fibration": fib.ok, "epimorphic": epi,
              "witness": list(fib.witness) if fib.witness else None, "identities": []}
    ok = fib.ok and epi
    if ok:
        n = f.total.node_count
        u = [Fraction(1, n)] * f.base.node_count  # lifts to the uniform vector
        for beta in args.beta or [Fraction(1, 4), Fraction(1, 2), Fraction(2, 3), Fraction(17, 20)]:
            q = verify_quotient_identity(f, beta if args.mode == "exact" else float(beta), u, args.mode)
            report["identities"].append({"beta": str(beta), "equal": q.equal, "max_deviation": q.max_deviation})
            ok &= q.equal
    out.write(_dump(report) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "centrality": cmd_centrality,
    "check-edge": cmd_check_edge,
    "scan": cmd_scan,
    "search": cmd_search,
    ("family", "verify"): cmd_family_verify,
    ("family", "export"): cmd_family_export,
    ("fibration", "check"): cmd_fibration_check,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse reports usage errors itself
        return int(e.code or 0)
    key = (args.command, args.action) if hasattr(args, "action") else args.command
    try:
        return COMMANDS[key](args, out)
    except (ConvergenceError, SingularMatrixError, ConstructionError) as e:
        print(f"spectralmono: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (UsageError, OSError, EdgeListParseError, MorphismError, ValueError, KeyError, SpectralMonoError) as e:
        print(f"spectralmono: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
