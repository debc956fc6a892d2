from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from hinmotif import cli

from .conftest import G1_PATH, G1_QUERY_PATH


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_stats_table():
    code, out, _ = run("stats", "--graph", G1_PATH)
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert ["author", "3", "a2", "4"] in rows
    assert rows[2][:2] == ["term", "3"]
    assert "edges=7" in out


def test_stats_with_threshold_and_json():
    code, out, _ = run("stats", "--graph", G1_PATH, "--degree-threshold", "term=1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["node_counts"] == {"author": 3, "term": 1}
    assert doc["edges"] == 3


def test_stats_missing_file(tmp_path):
    code, out, err = run("stats", "--graph", tmp_path / "nope.tsv")
    assert code == 2 and out == ""
    assert "nope.tsv" in err


def test_stats_empty_file(tmp_path):
    empty = tmp_path / "empty.tsv"
    empty.write_text("")
    code, out, _ = run("stats", "--graph", empty)
    assert code == 0
    assert "edges=0 nodes=0 average_degree=0.000" in out


def test_query_g1():
    code, out, _ = run("query", "--graph", G1_PATH, "--query", G1_QUERY_PATH)
    assert code == 0
    body = [line for line in out.splitlines() if not line.startswith("#")]
    assert body == ["rank\tA1\tA2\tT\tscore", "1\ta2\ta3\tt3\t12.000", "2\ta1\ta2\tt1\t13.000"]


def test_query_metric_override_keeps_row_set():
    _, raw, _ = run("query", "--graph", G1_PATH, "--query", G1_QUERY_PATH)
    code, ps, _ = run("query", "--graph", G1_PATH, "--query", G1_QUERY_PATH, "--metric", "pathsim")
    assert code == 0
    rows = lambda text: {tuple(line.split("\t")[1:4]) for line in text.splitlines()[2:]}  # noqa: E731
    assert rows(raw) == rows(ps)
    assert "3.227" in ps


def test_query_distribution():
    code, out, _ = run(
        "query", "--graph", G1_PATH, "--query", G1_QUERY_PATH, "--groups", "2", "--distribution"
    )
    assert code == 0
    tail = out.split("# distribution groups=2\n")[1].splitlines()
    assert tail[0] == "group\ttype\tnode\tcount"
    assert "1\tterm\tt3\t1" in tail and "2\tterm\tt1\t1" in tail


def test_query_top_truncates():
    code, out, _ = run("query", "--graph", G1_PATH, "--query", G1_QUERY_PATH, "--top", "1")
    assert code == 0
    assert len(out.splitlines()) == 4  # header, columns, both ends of a 2-row list


def test_query_validation_failure(tmp_path):
    doc = json.loads(G1_QUERY_PATH.read_text())
    doc["start"] = [{"A1": "a1", "A2": "a3", "T": "t1"}]
    q = tmp_path / "bad.json"
    q.write_text(json.dumps(doc))
    code, out, err = run("query", "--graph", G1_PATH, "--query", q)
    assert code == 2 and out == ""
    assert "pattern edge a1-a3 missing in graph" in err


def test_query_parse_failure(tmp_path):
    q = tmp_path / "bad.json"
    q.write_text('{"pattern": 1}')
    code, _, err = run("query", "--graph", G1_PATH, "--query", q)
    assert code == 2 and "pattern" in err


def test_bad_graph_line(tmp_path):
    g = tmp_path / "g.tsv"
    g.write_text("a\tauthor\tt\n")
    code, _, err = run("stats", "--graph", g)
    assert code == 2 and "line 1" in err


def test_bad_flags():
    assert run("query", "--graph", G1_PATH)[0] == 2
    assert run("stats", "--graph", G1_PATH, "--degree-threshold", "term")[0] == 2
    assert run("query", "--graph", G1_PATH, "--query", G1_QUERY_PATH, "--metric", "jaccard")[0] == 2


@pytest.mark.parametrize("threads", [1, 4, 8])
def test_query_deterministic_across_threads(threads):
    _, base, _ = run("query", "--graph", G1_PATH, "--query", G1_QUERY_PATH, "--distribution")
    _, out, _ = run(
        "query", "--graph", G1_PATH, "--query", G1_QUERY_PATH, "--distribution", "--threads", threads
    )
    assert out == base


def test_bench_smoke():
    code, out, _ = run(
        "bench", "--nodes", "10", "--degrees", "2,3", "--lengths", "3,5", "--degree", "3",
        "--repeats", "1", "--starts", "1", "--seed", "7",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# seed=7 ")
    assert lines[1].split("\t")[0] == "sweep"
    assert [line.split("\t")[0] for line in lines[2:]] == ["degree", "degree", "length", "length"]


def test_bench_infeasible():
    code, _, err = run("bench", "--nodes", "10", "--degrees", "2,10", "--repeats", "1")
    assert code == 2 and "infeasible" in err


def test_verify_passes():
    code, out, _ = run("verify", "--cases", "5", "--seed", "3")
    assert code == 0
    assert out.startswith("all 5 cases passed")


def test_verify_reports_injected_fault(monkeypatch):
    from hinmotif import verify

    real = verify.paths_mod.count_symmetric_paths

    def broken(graph, path, cands, refs):
        counts = real(graph, path, cands, refs)
        counts.a2a = counts.a2a * 2
        return counts

    monkeypatch.setattr(verify.paths_mod, "count_symmetric_paths", broken)
    code, out, _ = run("verify", "--cases", "3", "--seed", "11")
    assert code == 1
    assert "FAIL path_counts seed=" in out
    assert "--- graph ---" in out
    assert "cases failed (seed=11)" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hinmotif", "stats", "--graph", str(G1_PATH)],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("type\tnodes")
