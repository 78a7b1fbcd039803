"""``dnacodex`` command line.

Exit codes: 0 ok, 1 invalid code, 2 bad arguments, 3 I/O or parse failure,
4 search aborted on its budget or a table regression.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence as Seq

from . import clique, codeset, graph, sls, tables
from .codeset import CodeParams
from .errors import DnaCodexError, Exhausted, InvalidParams, ParseError, TooLarge

EXIT_OK, EXIT_INVALID, EXIT_ARGS, EXIT_IO, EXIT_ABORT = 0, 1, 2, 3, 4


class _Exit(Exception):
    def __init__(self, code: int, message: str = "") -> None:
        super().__init__(message)
        self.code = code


def _budget(name: str | None) -> tables.Budget:
    """Named preset; DNACODEX_BUDGET overrides the node budget of any preset."""
    base = tables.BUDGETS[name or "default"]
    raw = os.environ.get("DNACODEX_BUDGET", "")
    if raw.isdigit():
        base = tables.Budget(base.max_vertices, int(raw), base.max_stagnation, base.runs)
    return base


def _params(a: argparse.Namespace) -> CodeParams:
    try:
        return CodeParams(a.n, a.d, a.w)
    except InvalidParams as e:
        raise _Exit(EXIT_ARGS, str(e)) from e


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True)


def _write_code(code: codeset.CodeSet, path: str) -> None:
    try:
        codeset.write_code(code, path)
    except OSError as e:
        raise _Exit(EXIT_IO, f"cannot write {path}: {e}") from e


# ------------------------------------------------------------------ commands


def cmd_search(a: argparse.Namespace) -> int:
    params = _params(a)
    try:
        sp = sls.SlsParams(
            params,
            target=a.target,
            max_stagnation=a.max_stagnation,
            alpha=a.alpha,
            beta=a.beta,
            seed=a.seed,
        )
        out = sls.run_multi(sp, a.runs, workers=a.workers)
    except InvalidParams as e:
        raise _Exit(EXIT_ARGS, str(e)) from e
    except Exhausted as e:
        raise _Exit(EXIT_ARGS, str(e)) from e
    if a.out:
        _write_code(out.code, a.out)
    rec = out.to_record()
    if a.json:
        print(_dump(rec))
    else:
        hit = "reached" if out.reached_target else "did not reach"
        tgt = f" target {a.target}" if a.target is not None else ""
        print(f"{params}: size {out.size} (seed {out.seed}, {out.total_moves} moves){', ' + hit + tgt if tgt else ''}")
        for s in out.code.strings():
            print(s)
    return EXIT_OK


def cmd_verify(a: argparse.Namespace) -> int:
    try:
        with open(a.file, encoding="utf-8") as fh:
            text = fh.read()
        seqs, header = codeset.parse_code_text(text)
    except (OSError, UnicodeDecodeError) as e:
        raise _Exit(EXIT_IO, f"cannot read {a.file}: {e}") from e
    except ParseError as e:
        raise _Exit(EXIT_IO, f"{a.file}: {e}") from e
    n = a.n if a.n is not None else (header.n if header else None)
    d = a.d if a.d is not None else (header.d if header else None)
    w = a.w if a.w is not None else (header.w if header else None)
    if None in (n, d, w):
        raise _Exit(EXIT_ARGS, "--n, --d and --w are required when the file has no header")
    try:
        params = CodeParams(n, d, w)
    except InvalidParams as e:
        raise _Exit(EXIT_ARGS, str(e)) from e
    try:
        code = codeset.CodeSet(params, seqs)
    except DnaCodexError as e:
        raise _Exit(EXIT_IO, f"{a.file}: {e}") from e
    report = codeset.verify_strong(code) if a.mode == "strong" else codeset.verify_weak(code)
    print(_dump(report.to_dict()) if a.json else str(report))
    return EXIT_OK if report.valid else EXIT_INVALID


def _build(a: argparse.Namespace) -> graph.ConflictGraph:
    params = _params(a)
    limit = a.max_vertices if a.max_vertices is not None else graph.max_vertices_from_env()
    try:
        return graph.build(a.kind, params, max_vertices=limit)
    except TooLarge as e:
        raise _Exit(EXIT_ARGS, str(e)) from e


def cmd_graph(a: argparse.Namespace) -> int:
    g = _build(a)
    if a.dimacs:
        try:
            graph.export_dimacs(g, a.dimacs)
        except OSError as e:
            raise _Exit(EXIT_IO, f"cannot write {a.dimacs}: {e}") from e
    print(_dump(graph.stats(g).to_dict(g)))
    return EXIT_OK


def cmd_clique(a: argparse.Namespace) -> int:
    g = _build(a)
    nodes = a.node_budget if a.node_budget is not None else _budget(a.budget).node_budget
    res = clique.max_clique(g, method=a.method, use_symmetry=not a.no_symmetry, node_budget=nodes)
    out = res.to_dict()
    out.update(kind=g.kind.value, n=a.n, d=a.d, w=a.w)
    status = EXIT_OK
    if res.aborted:
        status = EXIT_ABORT
    elif a.count:
        cnt = clique.count_max_cliques(g, res.size, node_budget=nodes)
        out["count"] = cnt.count
        out["count_exhausted"] = cnt.exhausted
        if not cnt.exhausted:
            status = EXIT_ABORT
    if a.out:
        _write_code(clique.clique_to_code(g, res), a.out)
    print(_dump(out))
    if status == EXIT_ABORT:
        print(f"budget of {nodes} nodes exhausted; results are partial", file=sys.stderr)
    return status


def cmd_table(a: argparse.Namespace) -> int:
    if a.max_n < 4:
        raise _Exit(EXIT_ARGS, "--max-n must be at least 4")
    if a.max_n > 14:
        raise _Exit(EXIT_ARGS, "recorded values stop at n = 14")
    checks = tables.compute_table(a.max_n, mode=a.mode, budget=_budget(a.budget), seed=a.seed, workers=a.workers)
    if a.json:
        print(_dump({"mode": a.mode, "entries": [c.to_dict() for c in checks]}))
    else:
        print(tables.format_markdown(checks))
    bad = [c for c in checks if not c.ok]
    for c in bad:
        print(f"regression at (n={c.entry.n}, d={c.entry.d}): {c.note}", file=sys.stderr)
    return EXIT_ABORT if bad else EXIT_OK


# -------------------------------------------------------------------- parser


def _add_ndw(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--n", type=int, required=required, help="word length")
    p.add_argument("--d", type=int, required=required, help="minimum distance")
    p.add_argument("--w", type=int, required=required, help="GC content")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dnacodex", description="Search, verify and bound DNA codes.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="local search for a strong code")
    _add_ndw(p)
    p.add_argument("--target", type=int)
    p.add_argument("--max-stagnation", type=int, default=sls.DEFAULT_MAX_STAGNATION)
    p.add_argument("--alpha", type=float, default=sls.DEFAULT_ALPHA)
    p.add_argument("--beta", type=float, default=sls.DEFAULT_BETA)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write the best code here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="check a code file")
    p.add_argument("--file", required=True)
    _add_ndw(p, required=False)
    p.add_argument("--mode", choices=("strong", "weak"), default="strong")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    for name, func, hlp in (
        ("graph", cmd_graph, "build a conflict graph"),
        ("clique", cmd_clique, "solve maximum clique on a conflict graph"),
    ):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--kind", choices=("gcrc", "gc"), required=True)
        _add_ndw(p)
        p.add_argument("--max-vertices", type=int, help="refuse larger graphs (default from DNACODEX_MAX_VERTICES)")
        p.set_defaults(func=func)
    graph_p, clique_p = sub.choices["graph"], sub.choices["clique"]
    graph_p.add_argument("--dimacs", help="write the graph in DIMACS format")
    graph_p.add_argument("--stats", action="store_true", help="print statistics (always on)")
    clique_p.add_argument("--count", action="store_true", help="also count maximum cliques")
    clique_p.add_argument("--out", help="write the witness code here")
    clique_p.add_argument("--method", choices=clique.METHODS, default="coloring")
    clique_p.add_argument("--no-symmetry", action="store_true")
    clique_p.add_argument("--budget", choices=tuple(tables.BUDGETS), default=None)
    clique_p.add_argument("--node-budget", type=int)

    p = sub.add_parser("table", help="recompute the table of code sizes for w = n // 2")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "sls", "both"), default="both")
    p.add_argument("--budget", choices=tuple(tables.BUDGETS), default="default")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)
    return ap


def main(argv: Seq[str] | None = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return a.func(a)
    except _Exit as e:
        if str(e):
            print(f"dnacodex: {e}", file=sys.stderr)
        return e.code
    except DnaCodexError as e:
        print(f"dnacodex: {e}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
