import json
import subprocess
import sys

import pytest

from dnacodex.cli import main


def run(capsys, *args):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_search_writes_code(capsys, tmp_path):
    f = tmp_path / "c.txt"
    code, out, _ = run(capsys, "search", "--n", 4, "--d", 3, "--w", 2, "--target", 6, "--seed", 1, "--out", f)
    assert code == 0
    lines = f.read_text().splitlines()
    assert lines[0] == "# n=4 d=3 w=2 size=6"
    assert len(lines) == 7
    assert run(capsys, "verify", "--file", f)[0] == 0


def test_search_json_single(capsys):
    code, out, _ = run(capsys, "search", "--n", 5, "--d", 5, "--w", 2, "--target", 1, "--json")
    rec = json.loads(out)
    assert code == 0 and rec["size"] == 1 and rec["reached_target"]
    (word,) = rec["code"]
    assert sum(ch in "GC" for ch in word) == 2


def test_search_unreached_is_ok(capsys):
    code, out, _ = run(capsys, "search", "--n", 4, "--d", 3, "--w", 2, "--target", 7, "--max-stagnation", 50, "--json")
    assert code == 0 and json.loads(out)["reached_target"] is False


def test_search_json_stable(capsys):
    args = ("search", "--n", 6, "--d", 4, "--w", 3, "--max-stagnation", 500, "--seed", 3, "--runs", 2, "--json")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_search_missing_w(capsys):
    assert run(capsys, "search", "--n", 4, "--d", 3)[0] == 2


def test_search_bad_params(capsys):
    assert run(capsys, "search", "--n", 4, "--d", 5, "--w", 2)[0] == 2
    assert run(capsys, "search", "--n", 4, "--d", 3, "--w", 2, "--alpha", -1)[0] == 2


def test_search_unwritable(capsys, tmp_path):
    assert run(capsys, "search", "--n", 4, "--d", 3, "--w", 2, "--target", 2, "--out", tmp_path / "no" / "x")[0] == 3


def test_verify_palindrome(capsys, tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("ACGT\n")
    code, out, _ = run(capsys, "verify", "--file", f, "--n", 4, "--d", 3, "--w", 2, "--mode", "strong", "--json")
    rep = json.loads(out)
    assert code == 1
    assert {"kind": "SelfComplement", "sequences": ["ACGT"], "value": 0} in rep["violations"]
    assert run(capsys, "verify", "--file", f, "--n", 4, "--d", 3, "--w", 2, "--mode", "weak")[0] == 0


def test_verify_lists_all_violations_text(capsys, tmp_path):
    f = tmp_path / "v.txt"
    f.write_text("GGAAA\nGGAAT\n")
    code, out, _ = run(capsys, "verify", "--file", f, "--n", 5, "--d", 3, "--w", 2, "--mode", "weak")
    assert code == 1 and "HammingPair: GGAAA, GGAAT (value 1)" in out


def test_verify_io_errors(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("ACGX\n")
    assert run(capsys, "verify", "--file", f, "--n", 4, "--d", 3, "--w", 2)[0] == 3
    assert run(capsys, "verify", "--file", tmp_path / "missing.txt", "--n", 4, "--d", 3, "--w", 2)[0] == 3
    f.write_text("ACG\n")
    assert run(capsys, "verify", "--file", f, "--n", 4, "--d", 3, "--w", 2)[0] == 3
    f.write_bytes(b"\xff\xfe")
    assert run(capsys, "verify", "--file", f, "--n", 4, "--d", 3, "--w", 2)[0] == 3


def test_verify_needs_params(capsys, tmp_path):
    f = tmp_path / "bare.txt"
    f.write_text("ACGA\n")
    assert run(capsys, "verify", "--file", f)[0] == 2


def test_graph_stats(capsys):
    code, out, _ = run(capsys, "graph", "--kind", "gcrc", "--n", 5, "--d", 3, "--w", 2, "--stats")
    s = json.loads(out)
    assert code == 0
    assert (s["vertices"], s["edges"], round(s["density"], 5)) == (304, 34848, 0.75664)
    s = json.loads(run(capsys, "graph", "--kind", "gc", "--n", 6, "--d", 5, "--w", 3)[1])
    assert (s["vertices"], s["edges"]) == (1280, 437120)


def test_graph_too_large(capsys):
    code, _, err = run(capsys, "graph", "--kind", "gcrc", "--n", 20, "--d", 3, "--w", 10)
    assert code == 2 and "193730707456" in err


def test_graph_dimacs(capsys, tmp_path):
    f = tmp_path / "g.col"
    assert run(capsys, "graph", "--kind", "gcrc", "--n", 5, "--d", 4, "--w", 2, "--dimacs", f)[0] == 0
    assert f.read_text().splitlines()[0] == "p edge 208 6208"
    assert run(capsys, "graph", "--kind", "gcrc", "--n", 5, "--d", 4, "--w", 2, "--dimacs", tmp_path / "x" / "g")[0] == 3


def test_graph_bad_kind(capsys):
    assert run(capsys, "graph", "--kind", "xx", "--n", 5, "--d", 4, "--w", 2)[0] == 2


def test_clique_count(capsys):
    code, out, _ = run(capsys, "clique", "--kind", "gcrc", "--n", 5, "--d", 4, "--w", 2, "--count")
    r = json.loads(out)
    assert code == 0 and (r["size"], r["count"]) == (3, 16384)


def test_clique_weak(capsys, tmp_path):
    f = tmp_path / "w.txt"
    code, out, _ = run(capsys, "clique", "--kind", "gc", "--n", 5, "--d", 3, "--w", 2, "--out", f)
    assert code == 0 and json.loads(out)["size"] == 30
    assert run(capsys, "verify", "--file", f, "--mode", "weak")[0] == 0


def test_clique_two(capsys):
    assert json.loads(run(capsys, "clique", "--kind", "gcrc", "--n", 7, "--d", 6, "--w", 3)[1])["size"] == 2


def test_clique_witness_verifies(capsys, tmp_path):
    f = tmp_path / "w16.txt"
    code, out, _ = run(capsys, "clique", "--kind", "gcrc", "--n", 6, "--d", 4, "--w", 3, "--out", f)
    assert code == 0 and json.loads(out)["size"] == 16
    assert run(capsys, "verify", "--file", f, "--mode", "strong")[0] == 0


def test_clique_abort(capsys):
    code, out, err = run(capsys, "clique", "--kind", "gc", "--n", 5, "--d", 3, "--w", 2, "--node-budget", 10, "--no-symmetry")
    r = json.loads(out)
    assert code == 4 and r["aborted"] and "partial" in err


def test_clique_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("DNACODEX_BUDGET", "10")
    code, _, _ = run(capsys, "clique", "--kind", "gc", "--n", 5, "--d", 3, "--w", 2, "--no-symmetry")
    assert code == 4


def test_clique_json_stable(capsys):
    args = ("clique", "--kind", "gcrc", "--n", 5, "--d", 3, "--w", 2)
    a, b = json.loads(run(capsys, *args)[1]), json.loads(run(capsys, *args)[1])
    a.pop("elapsed"), b.pop("elapsed")
    assert a == b


def test_table_exact(capsys):
    code, out, _ = run(capsys, "table", "--max-n", 5, "--mode", "exact", "--json")
    got = {(e["n"], e["d"]): e["value"] for e in json.loads(out)["entries"]}
    assert code == 0
    assert got == {(4, 3): 6, (4, 4): 2, (5, 3): 15, (5, 4): 3, (5, 5): 1}


def test_table_exact_seven(capsys):
    code, out, _ = run(capsys, "table", "--max-n", 7, "--mode", "exact", "--budget", "small", "--json")
    entries = {(e["n"], e["d"]): e for e in json.loads(out)["entries"]}
    assert code == 0
    for nd, v in {(6, 4): 16, (6, 5): 4, (6, 6): 2, (7, 5): 11, (7, 6): 2, (7, 7): 1}.items():
        assert entries[nd]["value"] == v and entries[nd]["status"] == "Exact"


def test_table_sls_tiny(capsys):
    code, out, _ = run(capsys, "table", "--max-n", 4, "--mode", "sls", "--budget", "tiny", "--json")
    assert code == 0
    for e in json.loads(out)["entries"]:
        assert e["status"] == "LowerBound" and e["value"] <= e["recorded"]


def test_table_json_stable(capsys):
    args = ("table", "--max-n", 5, "--mode", "both", "--budget", "tiny", "--json")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_table_regression_exit(capsys, monkeypatch):
    from dnacodex import tables

    monkeypatch.setitem(tables.CODE_SIZES, (4, 3), (7, tables.Mark.EXACT))
    code, _, err = run(capsys, "table", "--max-n", 4, "--mode", "exact")
    assert code == 4 and "regression" in err


def test_table_bad_range(capsys):
    assert run(capsys, "table", "--max-n", 3)[0] == 2
    assert run(capsys, "table", "--max-n", 15)[0] == 2


def test_module_entry_point():
    p = subprocess.run(
        [sys.executable, "-m", "dnacodex", "graph", "--kind", "gcrc", "--n", "5", "--d", "4", "--w", "2"],
        capture_output=True,
        text=True,
    )
    assert p.returncode == 0 and json.loads(p.stdout)["vertices"] == 208


def test_no_command(capsys):
    assert run(capsys)[0] == 2
