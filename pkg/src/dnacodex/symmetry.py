"""Automorphism orbits via nauty (pynauty), used to prune symmetric branches."""

from __future__ import annotations

import numpy as np

try:
    import pynauty
except ImportError:  # pragma: no cover - exercised only without pynauty
    pynauty = None


def available() -> bool:
    return pynauty is not None


def orbits(mat: np.ndarray) -> list[np.ndarray]:
    """Vertex orbits of ``Aut(G)`` for a boolean adjacency matrix.

    Orbits are returned largest first, ties broken by smallest member; each is
    a sorted index array.
    """
    m = mat.shape[0]
    if m == 0:
        return []
    upper = np.triu(mat, 1)
    if int(upper.sum()) * 2 > m * (m - 1) // 2:
        # nauty is faster on the sparser of G and its complement; Aut is shared
        upper = np.triu(~mat, 1)
    rows, cols = np.nonzero(upper)
    bounds = np.searchsorted(rows, np.arange(m + 1))
    cols = cols.tolist()
    adj = {i: cols[bounds[i] : bounds[i + 1]] for i in range(m) if bounds[i] < bounds[i + 1]}
    g = pynauty.Graph(m, adjacency_dict=adj)
    _, _, _, orb, _ = pynauty.autgrp(g)
    orb = np.asarray(orb)
    _, inverse = np.unique(orb, return_inverse=True)
    order = np.argsort(inverse, kind="stable")
    groups = np.split(order, np.cumsum(np.bincount(inverse))[:-1])
    groups.sort(key=lambda a: (-len(a), int(a[0])))
    return groups
