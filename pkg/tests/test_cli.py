import io
import json
import subprocess
import sys

import pytest

from spectralmono import family as fam
from spectralmono.cli import main
from spectralmono.graph import UndirectedGraph, write_edge_list


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def graph_file(tmp_path):
    def make(g, name="g.txt"):
        path = tmp_path / name
        write_edge_list(g, str(path))
        return str(path)
    return make


def test_centrality_outputs(graph_file):
    code, out = run("centrality", graph_file(UndirectedGraph.path(3)), "--kind", "seeley")
    assert code == 0 and out == "vertex,score\n0,0.25\n1,0.5\n2,0.25\n"
    code, out = run("centrality", graph_file(UndirectedGraph.path(2)), "--kind", "pagerank", "--alpha", "0.85")
    assert [float(line.split(",")[1]) for line in out.splitlines()[1:]] == pytest.approx([0.5, 0.5])
    code, out = run("centrality", graph_file(UndirectedGraph.cycle(4)), "--kind", "eigenvector", "--norm", "l1",
                    "--format", "json")
    assert json.loads(out)["scores"] == pytest.approx([0.25] * 4)
    code, out = run("centrality", graph_file(UndirectedGraph.path(3)), "--kind", "pagerank", "--alpha", "1/2",
                    "--exact", "--format", "table")
    assert code == 0 and "vertex" in out.splitlines()[0]


def test_usage_errors(graph_file, tmp_path):
    p3 = graph_file(UndirectedGraph.path(3))
    assert run("scan", p3, "--budget", "0")[0] == 2
    assert run("centrality", p3, "--alpha", "1.5")[0] == 2
    assert run("centrality", str(tmp_path / "missing.txt"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\nzero one\n")
    assert run("centrality", str(bad))[0] == 2
    assert run("centrality", graph_file(UndirectedGraph(3), "empty.txt"), "--kind", "seeley")[0] == 2
    assert run("centrality", p3, "--kind", "katz")[0] == 2
    assert run("scan", p3, "--top-fraction", "0")[0] == 2
    assert run("family", "verify", "--theorem", "score", "--k-min", "9", "--k-max", "3")[0] == 2


def test_check_edge_exit_codes(graph_file):
    code, out = run("check-edge", graph_file(UndirectedGraph.path(3)), "0", "2", "--kind", "seeley")
    assert code == 0 and json.loads(out)["score_monotone"] == "strict"
    g12 = graph_file(fam.build_total(12))
    x, y = fam.FamilyLayout(12).dashed_edge
    code, out = run("check-edge", g12, str(x), str(y), "--alpha", "2/3", "--exact")
    assert code == 3 and json.loads(out)["score_monotone"] == "violated"


def test_scan_is_deterministic_across_workers(graph_file, monkeypatch):
    import random

    rng = random.Random(0)
    g = UndirectedGraph.from_edges(40, [(i, j) for i in range(40) for j in range(i + 1, 40) if rng.random() < 0.1])
    path = graph_file(g)
    _, one = run("scan", path, "--sampler", "random", "--budget", "80", "--seed", "3")
    monkeypatch.setenv("SPECTRALMONO_WORKERS", "3")
    _, three = run("scan", path, "--sampler", "random", "--budget", "80", "--seed", "3")
    assert one == three
    monkeypatch.setenv("SPECTRALMONO_WORKERS", "many")
    assert run("scan", path, "--budget", "10")[0] == 2


def test_scan_seeley_is_clean(graph_file):
    code, out = run("scan", graph_file(UndirectedGraph.cycle(7)), "--kind", "seeley", "--budget", "20",
                    "--format", "table")
    assert code == 0 and "0 violations" in out


def test_search_command():
    code, out = run("search", "--kind", "seeley", "--axiom", "rank-strict", "--max-vertices", "5")
    assert code == 0 and json.loads(out)["found"] is False
    code, out = run("search", "--kind", "eigenvector", "--norm", "l2", "--axiom", "score-weak", "--max-vertices", "5")
    rep = json.loads(out)
    assert code == 3 and rep["found"] and rep["vertex_count"] == 5
    assert run("search", "--max-vertices", "9")[0] == 2


def test_family_verify_statuses():
    code, out = run("family", "verify", "--theorem", "rank", "--k-min", "4", "--k-max", "5")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["status"] for r in rows[:-1]] == ["below-threshold"] * 2
    assert run("family", "verify", "--theorem", "rank", "--k-min", "4", "--k-max", "5", "--strict")[0] == 4
    code, out = run("family", "verify", "--theorem", "score", "--k-min", "15", "--k-max", "17", "--strict")
    assert code == 0 and json.loads(out.splitlines()[-1])["failed"] == 0


def test_family_export_and_fibration_check(tmp_path):
    m = tmp_path / "m5.json"
    gpath = tmp_path / "g5.txt"
    code, out = run("family", "export", "--k", "5", "--morphism", str(m), "--graph", str(gpath))
    assert code == 0 and json.loads(out)["vertices"] == 14
    code, out = run("fibration", "check", str(m))
    rep = json.loads(out)
    assert code == 0 and rep["is_fibration"] and all(i["max_deviation"] == 0 for i in rep["identities"])
    code, out = run("fibration", "check", str(m), "--beta", "0.3", "--mode", "float")
    assert code == 0
    # node 1 has two liftings of the base loop: a morphism but not a fibration
    bad = {"total": {"node_count": 2, "arcs": [[0, 1], [1, 1], [1, 0]]},
           "base": {"node_count": 1, "arcs": [[0, 0]]}, "node_map": [0, 0], "arc_map": [0, 0, 0]}
    m.write_text(json.dumps(bad))
    code, out = run("fibration", "check", str(m))
    assert code == 4 and json.loads(out)["is_fibration"] is False
    bad["arc_map"] = [0, 0]
    m.write_text(json.dumps(bad))
    assert run("fibration", "check", str(m))[0] == 2
    assert run("family", "export", "--k", "5")[0] == 2


def test_help_mentions_scale_limit():
    res = subprocess.run([sys.executable, "-m", "spectralmono.cli", "scan", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "desk-scale" in res.stdout
    res = subprocess.run([sys.executable, "-m", "spectralmono.cli", "bogus"], capture_output=True, text=True)
    assert res.returncode == 2
