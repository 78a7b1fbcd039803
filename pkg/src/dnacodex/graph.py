"""Compatibility graphs whose cliques are exactly the (weak) DNA codes.

Vertices are the admissible words in lexicographic order.  Adjacency is a packed
bit matrix: row ``i`` is an array of ``uint64`` words and bit ``j % 64`` of word
``j // 64`` is set iff ``{i, j}`` is an edge.
"""

from __future__ import annotations

import io
import os
import re
from dataclasses import dataclass
from enum import Enum
from math import comb
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from .codeset import CodeParams
from .errors import IndexOutOfRange, MissingHeader, ParseError, TooLarge
from .seqcore import Sequence, constant_gc_codes, constant_gc_count, low_mask, parse

DEFAULT_MAX_VERTICES = 50_000


class GraphKind(str, Enum):
    GCRC = "gcrc"
    GC = "gc"


def max_vertices_from_env() -> int:
    raw = os.environ.get("DNACODEX_MAX_VERTICES")
    return int(raw) if raw else DEFAULT_MAX_VERTICES


def pack_rows(mat: np.ndarray) -> np.ndarray:
    """Pack a boolean ``(r, v)`` matrix into ``(r, ceil(v/64))`` uint64 words."""
    r, v = mat.shape
    nw = max(1, (v + 63) // 64)
    packed = np.packbits(mat, axis=1, bitorder="little")
    out = np.zeros((r, nw * 8), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return out.view("<u8").astype(np.uint64, copy=False)


def unpack_rows(words: np.ndarray, v: int) -> np.ndarray:
    if words.shape[0] == 0:
        return np.zeros((0, v), dtype=bool)
    bits = np.unpackbits(np.ascontiguousarray(words).view(np.uint8), axis=1, bitorder="little")
    return bits[:, :v].astype(bool)


class ConflictGraph:
    """A simple undirected graph on ``v`` vertices, optionally labelled with words.

    ``kind``/``params``/``vertices`` are present for graphs built from code
    parameters and may be ``None`` for plain graphs (e.g. an imported DIMACS file).
    """

    def __init__(
        self,
        adjacency: np.ndarray,
        kind: GraphKind | None = None,
        params: CodeParams | None = None,
        vertices: tuple[Sequence, ...] | None = None,
    ) -> None:
        self.adjacency = np.ascontiguousarray(adjacency, dtype=np.uint64)
        self.kind = kind
        self.params = params
        self.vertices = vertices
        if vertices is not None and len(vertices) != self.v:
            raise ValueError("vertex labels do not match adjacency size")

    @property
    def v(self) -> int:
        return self.adjacency.shape[0]

    @property
    def nwords(self) -> int:
        return self.adjacency.shape[1]

    @classmethod
    def from_bool(cls, mat: np.ndarray, **kw) -> ConflictGraph:
        mat = np.asarray(mat, dtype=bool)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if not (mat == mat.T).all() or mat.diagonal().any():
            raise ValueError("adjacency must be symmetric with an empty diagonal")
        return cls(pack_rows(mat), **kw)

    @classmethod
    def from_edges(cls, v: int, edges: Iterable[tuple[int, int]], **kw) -> ConflictGraph:
        mat = np.zeros((v, v), dtype=bool)
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at {i}")
            mat[i, j] = mat[j, i] = True
        return cls.from_bool(mat, **kw)

    def to_bool(self) -> np.ndarray:
        return unpack_rows(self.adjacency, self.v)

    def has_edge(self, i: int, j: int) -> bool:
        return bool((int(self.adjacency[i, j >> 6]) >> (j & 63)) & 1)

    def neighbors(self, i: int) -> np.ndarray:
        return np.flatnonzero(unpack_rows(self.adjacency[i : i + 1], self.v)[0])

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.adjacency).sum(axis=1).astype(np.int64)

    def edge_count(self) -> int:
        return int(self.degrees().sum()) // 2

    def edges(self) -> Iterable[tuple[int, int]]:
        """Edges ``(i, j)`` with ``i < j`` in row-major order."""
        for i in range(self.v):
            nb = self.neighbors(i)
            for j in nb[nb > i]:
                yield i, int(j)

    def is_clique(self, idx: Iterable[int]) -> bool:
        idx = list(idx)
        return all(self.has_edge(a, b) for k, a in enumerate(idx) for b in idx[k + 1 :])

    def __repr__(self) -> str:
        label = f"{self.kind.value}{self.params}" if self.kind and self.params else "plain"
        return f"ConflictGraph({label}, v={self.v})"


# -------------------------------------------------------------------- build

def _ham(x: np.ndarray, low: np.uint64) -> np.ndarray:
    return np.bitwise_count((x | (x >> np.uint64(1))) & low)


def rc_codes(codes: np.ndarray, n: int) -> np.ndarray:
    r = np.zeros_like(codes)
    for i in range(n):
        base = (codes >> np.uint64(2 * i)) & np.uint64(3)
        r |= base << np.uint64(2 * (n - 1 - i))
    return r ^ np.uint64((1 << (2 * n)) - 1)


def vertex_count_upper(params: CodeParams) -> int:
    return constant_gc_count(params.n, params.w)


def build(kind: GraphKind | str, params: CodeParams, max_vertices: int | None = None) -> ConflictGraph:
    """Build the strong (``gcrc``) or weak (``gc``) compatibility graph.

    Raises :class:`TooLarge` before enumerating anything when the number of
    constant-GC words exceeds ``max_vertices``.
    """
    kind = GraphKind(kind)
    limit = max_vertices if max_vertices is not None else max_vertices_from_env()
    total = vertex_count_upper(params)
    if total > limit:
        raise TooLarge(total, limit)
    n, d = params.n, params.d
    low = np.uint64(low_mask(n))
    codes = constant_gc_codes(n, params.w)
    rcs = rc_codes(codes, n)
    if kind is GraphKind.GCRC:
        keep = _ham(codes ^ rcs, low) >= d
        codes, rcs = codes[keep], rcs[keep]
    v = len(codes)
    nw = max(1, (v + 63) // 64)
    adj = np.zeros((v, nw), dtype=np.uint64)
    block = max(1, (1 << 21) // max(v, 1))
    for start in range(0, v, block):
        stop = min(v, start + block)
        ok = _ham(codes[start:stop, None] ^ codes[None, :], low) >= d
        if kind is GraphKind.GCRC:
            ok &= _ham(rcs[start:stop, None] ^ codes[None, :], low) >= d
        adj[start:stop] = pack_rows(ok)
    verts = tuple(Sequence(n, int(c)) for c in codes)
    return ConflictGraph(adj, kind=kind, params=params, vertices=verts)


@dataclass(frozen=True)
class GraphStats:
    vertices: int
    edges: int
    density: float
    degenerate: bool = False

    def to_dict(self, g: ConflictGraph | None = None) -> dict:
        out: dict = {}
        if g is not None and g.kind is not None and g.params is not None:
            out.update(kind=g.kind.value, n=g.params.n, d=g.params.d, w=g.params.w)
        out.update(vertices=self.vertices, edges=self.edges, density=round(self.density, 6))
        if self.degenerate:
            out["degenerate"] = True
        return out


def stats(g: ConflictGraph) -> GraphStats:
    v = g.v
    e = g.edge_count()
    if v <= 1:
        return GraphStats(v, e, 0.0, degenerate=True)
    return GraphStats(v, e, e / comb(v, 2))


# ------------------------------------------------------------------- DIMACS

_META_RE = re.compile(r"dnacodex\s+kind=(\w+)\s+n=(\d+)\s+d=(\d+)\s+w=(\d+)")


def write_dimacs(g: ConflictGraph, fh: TextIO) -> None:
    e = g.edge_count()
    fh.write(f"p edge {g.v} {e}\n")
    if g.kind is not None and g.params is not None:
        p = g.params
        fh.write(f"c dnacodex kind={g.kind.value} n={p.n} d={p.d} w={p.w}\n")
    if g.vertices is not None:
        for i, s in enumerate(g.vertices, start=1):
            fh.write(f"c vertex {i} {s}\n")
    mat = g.to_bool()
    rows, cols = np.nonzero(np.triu(mat, 1))
    buf = io.StringIO()
    for i, j in zip((rows + 1).tolist(), (cols + 1).tolist()):
        buf.write(f"e {i} {j}\n")
    fh.write(buf.getvalue())


def export_dimacs(g: ConflictGraph, sink: str | Path | TextIO) -> None:
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="ascii") as fh:
            write_dimacs(g, fh)
    else:
        write_dimacs(g, sink)


def read_dimacs(fh: Iterable[str]) -> ConflictGraph:
    v = declared = None
    header_line = 0
    labels: dict[int, Sequence] = {}
    meta = None
    src: list[int] = []
    dst: list[int] = []
    seen: set[tuple[int, int]] = set()
    lineno = 0
    for lineno, raw in enumerate(fh, start=1):
        parts = raw.split()
        if not parts:
            continue
        tag = parts[0]
        if tag == "c":
            if len(parts) >= 4 and parts[1] == "vertex":
                if v is None:
                    raise MissingHeader(lineno)
                try:
                    idx = int(parts[2])
                    labels[idx] = parse(parts[3])
                except ValueError as exc:
                    raise ParseError(lineno, f"bad vertex label: {exc}") from exc
                if not 1 <= idx <= v:
                    raise ParseError(lineno, f"vertex {idx} out of range 1..{v}")
            else:
                m = _META_RE.search(raw)
                if m:
                    meta = m
            continue
        if tag == "p":
            if v is not None:
                raise ParseError(lineno, "duplicate 'p' line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(lineno, "expected 'p edge <v> <e>'")
            try:
                v, declared = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise ParseError(lineno, "non-integer vertex or edge count") from exc
            if v < 0 or declared < 0:
                raise ParseError(lineno, "negative count")
            header_line = lineno
            continue
        if tag == "e":
            if v is None:
                raise MissingHeader(lineno)
            if len(parts) != 3:
                raise ParseError(lineno, "expected 'e <i> <j>'")
            try:
                i, j = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise ParseError(lineno, "non-integer endpoint") from exc
            if not (1 <= i <= v and 1 <= j <= v):
                raise ParseError(lineno, f"endpoint out of range 1..{v}")
            if i == j:
                raise ParseError(lineno, "self-loop")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ParseError(lineno, f"duplicate edge {key}")
            seen.add(key)
            src.append(i - 1)
            dst.append(j - 1)
            continue
        raise ParseError(lineno, f"unknown line type {tag!r}")
    if v is None:
        raise MissingHeader(lineno + 1)
    if len(src) != declared:
        raise ParseError(header_line, f"header declares {declared} edges, found {len(src)}")
    mat = np.zeros((v, v), dtype=bool)
    if src:
        a, b = np.array(src), np.array(dst)
        mat[a, b] = True
        mat[b, a] = True
    vertices = None
    if v and len(labels) == v:
        vertices = tuple(labels[i] for i in range(1, v + 1))
    kind = params = None
    if meta is not None and vertices is not None:
        kind = GraphKind(meta[1])
        params = CodeParams(int(meta[2]), int(meta[3]), int(meta[4]))
    return ConflictGraph(pack_rows(mat), kind=kind, params=params, vertices=vertices)


def import_dimacs(source: str | Path | TextIO) -> ConflictGraph:
    if isinstance(source, (str, Path)):
        with open(source, encoding="ascii") as fh:
            return read_dimacs(fh)
    return read_dimacs(source)


def check_index(g: ConflictGraph, i: int) -> None:
    if not 0 <= i < g.v:
        raise IndexOutOfRange(f"vertex {i} not in 0..{g.v - 1}")
