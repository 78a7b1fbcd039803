"""Exact maximum-clique search and maximum-clique counting.

The search runs in three layers:

1. **Twin reduction.**  Vertices with identical neighbourhoods are pairwise
   non-adjacent, so a clique uses at most one of them.  One representative per
   class is kept; counts are recovered by weighting each representative with
   its class size.  In the strong graphs every word and its reverse complement
   are twins, which halves the graph.
2. **Orbit branching.**  While the current subgraph has a large automorphism
   group (nauty), only one representative per orbit is branched on, and later
   orbits exclude earlier ones.  Candidates adjacent to all others join the
   clique outright, and a greedy-colouring bound prunes each branch.  The
   recursion stops after a few levels, where symmetry rarely pays.
3. **Compiled branch and bound** on the remaining subproblems, with either
   greedy-colouring bounds (default) or Östergård's suffix bounds.
"""

from __future__ import annotations

import logging
import os
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels, symmetry
from .codeset import CodeSet
from .errors import IndexOutOfRange, InvalidParams
from .graph import ConflictGraph, GraphKind, pack_rows, unpack_rows
from .seqcore import Sequence

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10**9
METHODS = ("coloring", "ostergard")

# orbit branching is used while #orbits <= ORBIT_RATIO * #vertices
ORBIT_RATIO = 0.6
# subproblems smaller than this go straight to the kernel
MIN_SYMMETRY_SIZE = 40
# beyond this many vertices the dense matrix for nauty is not worth building
MAX_SYMMETRY_SIZE = 8000
# orbit branching is only applied this many levels deep
MAX_SYMMETRY_DEPTH = 6


def default_node_budget() -> int:
    raw = os.environ.get("DNACODEX_BUDGET", "")
    return int(raw) if raw.isdigit() else DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class CliqueResult:
    size: int
    vertices: tuple[int, ...]
    sequences: tuple[Sequence, ...] | None
    nodes_explored: int
    elapsed: float
    aborted: bool = False

    def to_dict(self) -> dict:
        out = {
            "size": self.size,
            "optimal": not self.aborted,
            "aborted": self.aborted,
            "nodes_explored": self.nodes_explored,
            "vertices": list(self.vertices),
        }
        if self.sequences is not None:
            out["code"] = [str(s) for s in self.sequences]
        out["elapsed"] = round(self.elapsed, 3)
        return out


def _checked_result(g: ConflictGraph, verts, nodes: int, elapsed: float, aborted: bool) -> CliqueResult:
    verts = tuple(sorted(int(v) for v in verts))
    if not g.is_clique(verts):
        raise AssertionError(f"solver produced a non-clique: {verts}")
    seqs = tuple(g.vertices[i] for i in verts) if g.vertices is not None else None
    return CliqueResult(len(verts), verts, seqs, nodes, elapsed, aborted)


@dataclass(frozen=True)
class CountResult:
    max_size: int
    count: int
    exhausted: bool
    nodes_explored: int = 0

    def to_dict(self) -> dict:
        return {
            "max_size": self.max_size,
            "count": self.count,
            "exhausted": self.exhausted,
            "nodes_explored": self.nodes_explored,
        }


def induced(adj: np.ndarray, v: int, idx: np.ndarray) -> np.ndarray:
    """Packed adjacency of the subgraph induced by ``idx`` (in that order)."""
    idx = np.asarray(idx, dtype=np.int64)
    out = np.zeros((len(idx), max(1, (len(idx) + 63) // 64)), dtype=np.uint64)
    step = max(1, (1 << 24) // max(v, 1))
    for s in range(0, len(idx), step):
        rows = unpack_rows(adj[idx[s : s + step]], v)
        out[s : s + step] = pack_rows(rows[:, idx])
    return out


def twin_classes(g: ConflictGraph) -> tuple[np.ndarray, np.ndarray]:
    """Representatives (smallest index) of identical-neighbourhood classes and
    the class sizes, both ordered by representative."""
    if g.v == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    _, first, counts = np.unique(g.adjacency, axis=0, return_index=True, return_counts=True)
    order = np.argsort(first)
    return first[order].astype(np.int64), counts[order].astype(np.int64)


class _Abort(Exception):
    pass


class _Search:
    def __init__(self, adj: np.ndarray, method: str, use_symmetry: bool, node_budget: int, deadline: float | None):
        self.adj = adj
        self.v = adj.shape[0]
        self.kernel = (
            _kernels.max_clique_coloring if method == "coloring" else _kernels.max_clique_ostergard
        )
        self.use_symmetry = use_symmetry and symmetry.available() and self.v <= MAX_SYMMETRY_SIZE
        self.mat = unpack_rows(adj, self.v) if self.use_symmetry else None
        self.budget = node_budget
        self.deadline = deadline
        self.nodes = 0
        self.best: list[int] = []

    def _record(self, clique: list[int]) -> None:
        if len(clique) > len(self.best):
            self.best = clique

    def _run_kernel(self, U: np.ndarray, prefix: list[int]) -> None:
        need = len(self.best) - len(prefix)
        sub = induced(self.adj, self.v, U)
        deg = np.bitwise_count(sub).sum(axis=1)
        order = np.argsort(-deg, kind="stable")
        sub = induced(sub, len(U), order)
        left = max(0, self.budget - self.nodes)
        size, clique, nodes, aborted = self.kernel(sub, max(need, 0), left)
        self.nodes += nodes
        if len(clique) > need and len(clique) > 0:
            self._record(prefix + [int(U[order[i]]) for i in clique])
        if aborted:
            raise _Abort()

    def _charge(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Abort()
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Abort()

    def solve(self, U: np.ndarray, prefix: list[int], depth: int = 0) -> None:
        self._charge()
        m = len(U)
        if m == 0:
            self._record(prefix)
            return
        if m + len(prefix) <= len(self.best):
            return
        if not self.use_symmetry or m < MIN_SYMMETRY_SIZE or depth >= MAX_SYMMETRY_DEPTH:
            self._run_kernel(U, prefix)
            return
        sub = self.mat[np.ix_(U, U)]
        # vertices adjacent to every other candidate belong to some maximum clique
        universal = sub.sum(axis=1) == m - 1
        if universal.any():
            prefix = prefix + U[universal].tolist()
            U, sub = U[~universal], sub[np.ix_(~universal, ~universal)]
            m = len(U)
            if m == 0:
                self._record(prefix)
                return
        packed = pack_rows(sub)
        if len(prefix) + _kernels.color_bound(packed) <= len(self.best):
            return
        if m < MIN_SYMMETRY_SIZE:
            self._run_kernel(U, prefix)
            return
        orbs = symmetry.orbits(sub)
        if len(orbs) > ORBIT_RATIO * m:
            self._run_kernel(U, prefix)
            return
        alive = np.ones(m, dtype=bool)
        for orb in orbs:
            if int(alive.sum()) + len(prefix) <= len(self.best):
                break
            r = int(orb[0])
            cand = U[alive & sub[r]]
            self.solve(cand, prefix + [int(U[r])], depth + 1)
            alive[orb] = False


def max_clique(
    g: ConflictGraph,
    *,
    method: str = "coloring",
    use_symmetry: bool = True,
    reduce_twins: bool = True,
    node_budget: int | None = None,
    time_budget: float | None = None,
) -> CliqueResult:
    """A maximum clique of ``g``.

    If the node or time budget runs out the result has ``aborted=True`` and its
    clique is only the best found so far (a lower bound).  The time budget is
    checked between subproblems, the node budget inside the kernels.
    """
    if method not in METHODS:
        raise InvalidParams(f"unknown method {method!r}; expected one of {METHODS}")
    t0 = time.monotonic()
    budget = default_node_budget() if node_budget is None else node_budget
    if reduce_twins:
        reps, _ = twin_classes(g)
    else:
        reps = np.arange(g.v, dtype=np.int64)
    q = induced(g.adjacency, g.v, reps)
    deg = np.bitwise_count(q).sum(axis=1)
    order = np.argsort(-deg, kind="stable")
    q = induced(q, len(reps), order)
    label = reps[order]
    deadline = t0 + time_budget if time_budget is not None else None
    search = _Search(q, method, use_symmetry, budget, deadline)
    aborted = False
    try:
        search.solve(np.arange(len(reps), dtype=np.int64), [])
    except _Abort:
        aborted = True
        log.warning("clique search aborted after %d nodes; result is a lower bound", search.nodes)
    verts = [int(label[i]) for i in search.best]
    return _checked_result(g, verts, search.nodes, time.monotonic() - t0, aborted)


def count_max_cliques(
    g: ConflictGraph,
    known_max: int | None = None,
    *,
    node_budget: int | None = None,
) -> CountResult:
    """Number of distinct maximum cliques (as vertex sets).

    ``known_max`` must be the true clique number; when omitted it is computed
    with :func:`max_clique`.  Twin classes are enumerated once and weighted by
    their sizes.
    """
    budget = default_node_budget() if node_budget is None else node_budget
    nodes = 0
    if known_max is None:
        res = max_clique(g, node_budget=budget)
        nodes += res.nodes_explored
        if res.aborted:
            return CountResult(res.size, 0, False, nodes)
        k = res.size
    else:
        k = known_max
    if k < 0:
        raise InvalidParams("known_max must be >= 0")
    if k == 0:
        return CountResult(0, 1, True, nodes)
    if k == 1:
        if g.v == 0 or g.edge_count() > 0:
            raise InvalidParams("known_max=1 does not match the graph")
        return CountResult(1, g.v, True, nodes)
    reps, sizes = twin_classes(g)
    q = induced(g.adjacency, g.v, reps)
    deg = np.bitwise_count(q).sum(axis=1)
    order = np.argsort(-deg, kind="stable")
    q = induced(q, len(reps), order)
    count, kn, aborted = _kernels.count_cliques_of_size(q, sizes[order], k, max(0, budget - nodes))
    nodes += kn
    if aborted:
        log.warning("clique counting aborted after %d nodes; count is partial", nodes)
        return CountResult(k, int(count), False, nodes)
    if count == 0:
        raise InvalidParams(f"graph has no clique of size {k}; known_max is wrong")
    return CountResult(k, int(count), True, nodes)


def clique_to_code(g: ConflictGraph, c: CliqueResult) -> CodeSet:
    if g.params is None or g.vertices is None:
        raise InvalidParams("graph carries no code parameters or vertex labels")
    for i in c.vertices:
        if not 0 <= i < g.v:
            raise IndexOutOfRange(f"vertex {i} not in 0..{g.v - 1}")
    return CodeSet(g.params, (g.vertices[i] for i in c.vertices))


def clique_mode(g: ConflictGraph) -> str:
    """Verification mode matching the graph kind."""
    return "weak" if g.kind is GraphKind.GC else "strong"
