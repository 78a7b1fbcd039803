"""Compiled bitset kernels for exact clique search.

All kernels take a packed adjacency matrix ``A`` (``(v, nw)`` uint64) and treat
vertex ``i`` as the ``i``-th bit.  Search state lives in explicit per-depth
arrays; numba recursion is avoided.  Each kernel honours a node budget and
reports ``aborted`` instead of returning a silently truncated answer.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)
_ZERO = np.uint64(0)


@njit(cache=True, inline="always")
def _popc(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True, inline="always")
def _ctz(x):
    # x != 0
    return _popc((x & (~x + _ONE)) - _ONE)


@njit(cache=True)
def _color_sort(P, A, kmin, out_v, out_c):
    """Greedy sequential colouring of the vertex set ``P``.

    Writes the vertices whose colour is >= ``kmin`` to ``out_v``/``out_c`` in
    non-decreasing colour order and returns how many were written.
    """
    nw = P.shape[0]
    U = P.copy()
    Q = np.empty(nw, dtype=np.uint64)
    left = 0
    for w in range(nw):
        left += _popc(U[w])
    cnt = 0
    k = 0
    while left > 0:
        k += 1
        for w in range(nw):
            Q[w] = U[w]
        for w in range(nw):
            while Q[w] != _ZERO:
                b = Q[w] & (~Q[w] + _ONE)
                v = w * 64 + _ctz(b)
                Q[w] ^= b
                U[w] ^= b
                left -= 1
                for w2 in range(w, nw):
                    Q[w2] &= ~A[v, w2]
                if k >= kmin:
                    out_v[cnt] = v
                    out_c[cnt] = k
                    cnt += 1
    return cnt


@njit(cache=True)
def color_bound(A):
    """Number of colours in a greedy colouring of the whole graph, an upper
    bound on its clique number."""
    v = A.shape[0]
    if v == 0:
        return 0
    nw = A.shape[1]
    P = np.zeros(nw, dtype=np.uint64)
    for i in range(v):
        P[i // 64] |= _ONE << np.uint64(i % 64)
    ov = np.zeros(v, dtype=np.int64)
    oc = np.zeros(v, dtype=np.int64)
    n = _color_sort(P, A, 1, ov, oc)
    return oc[n - 1]


@njit(cache=True)
def max_clique_coloring(A, lower, node_budget):
    """Branch and bound with greedy-colouring bounds.

    Returns ``(best, clique, nodes, aborted)``; ``clique`` is empty when nothing
    larger than ``lower`` exists (or was found before the budget ran out).
    """
    v = A.shape[0]
    nw = A.shape[1]
    best = lower
    found = 0
    nodes = 0
    aborted = False
    if v == 0:
        return best, np.zeros(0, dtype=np.int64), nodes, aborted
    root = np.zeros(nw, dtype=np.uint64)
    for i in range(v):
        root[i // 64] |= _ONE << np.uint64(i % 64)
    rv = np.zeros(v, dtype=np.int64)
    rc = np.zeros(v, dtype=np.int64)
    n0 = _color_sort(root, A, 1, rv, rc)
    # the colour count bounds the clique number, hence the search depth
    maxd = rc[n0 - 1] + 2
    P = np.zeros((maxd, nw), dtype=np.uint64)
    ov = np.zeros((maxd, v + 1), dtype=np.int64)
    oc = np.zeros((maxd, v + 1), dtype=np.int64)
    cnt = np.zeros(maxd, dtype=np.int64)
    C = np.zeros(maxd, dtype=np.int64)
    bestC = np.zeros(maxd, dtype=np.int64)
    P[0] = root
    k0 = 0
    for j in range(n0):
        if rc[j] > best:
            ov[0, k0] = rv[j]
            oc[0, k0] = rc[j]
            k0 += 1
    cnt[0] = k0
    L = 0
    while L >= 0:
        if cnt[L] == 0:
            L -= 1
            continue
        cnt[L] -= 1
        i = cnt[L]
        x = ov[L, i]
        if L + oc[L, i] <= best:
            L -= 1
            continue
        nodes += 1
        if nodes > node_budget:
            aborted = True
            break
        C[L] = x
        empty = True
        for w in range(nw):
            y = P[L, w] & A[x, w]
            P[L + 1, w] = y
            if y != _ZERO:
                empty = False
        P[L, x // 64] &= ~(_ONE << np.uint64(x % 64))
        if empty:
            if L + 1 > best:
                best = L + 1
                found = best
                for j in range(best):
                    bestC[j] = C[j]
            continue
        kmin = best - L
        if kmin < 1:
            kmin = 1
        cnt[L + 1] = _color_sort(P[L + 1], A, kmin, ov[L + 1], oc[L + 1])
        L += 1
    return best, bestC[:found].copy(), nodes, aborted


@njit(cache=True)
def max_clique_ostergard(A, lower, node_budget):
    """Östergård's algorithm: vertices are added from last to first and
    ``c[i]``, the clique number of the suffix ``{i, ..., v-1}``, bounds every
    branch whose smallest candidate is ``i``.  Same return contract as
    :func:`max_clique_coloring`.
    """
    v = A.shape[0]
    nw = A.shape[1]
    c = np.zeros(v + 1, dtype=np.int64)
    U = np.zeros((v + 2, nw), dtype=np.uint64)
    C = np.zeros(v + 2, dtype=np.int64)
    bestC = np.zeros(v + 2, dtype=np.int64)
    best = lower
    found = 0
    nodes = 0
    aborted = False
    for i in range(v - 1, -1, -1):
        wi = i // 64
        for w in range(nw):
            U[0, w] = A[i, w] if w > wi else _ZERO
        bit = i % 64
        if bit < 63:
            U[0, wi] = A[i, wi] & ~((_ONE << np.uint64(bit + 1)) - _ONE)
        C[0] = i
        L = 0
        hit = False
        while L >= 0 and not hit:
            size = L + 1
            k = 0
            for w in range(nw):
                k += _popc(U[L, w])
            if k == 0:
                if size > best:
                    best = size
                    found = size
                    for j in range(size):
                        bestC[j] = C[j]
                    hit = True
                L -= 1
                continue
            if size + k <= best:
                L -= 1
                continue
            j = -1
            for w in range(nw):
                if U[L, w] != _ZERO:
                    j = w * 64 + _ctz(U[L, w])
                    break
            if size + c[j] <= best:
                L -= 1
                continue
            nodes += 1
            if nodes > node_budget:
                aborted = True
                break
            U[L, j // 64] &= ~(_ONE << np.uint64(j % 64))
            for w in range(nw):
                U[L + 1, w] = U[L, w] & A[j, w]
            C[L + 1] = j
            L += 1
        if aborted:
            break
        c[i] = best
    return best, bestC[:found].copy(), nodes, aborted


@njit(cache=True)
def count_cliques_of_size(A, weights, k, node_budget):
    """Weighted count of the ``k``-cliques (``k >= 2``).

    A clique contributes the product of its vertex weights, which lets a
    twin-reduced graph report counts for the original graph.
    """
    v = A.shape[0]
    nw = A.shape[1]
    maxd = k + 2
    P = np.zeros((maxd, nw), dtype=np.uint64)
    ov = np.zeros((maxd, v + 1), dtype=np.int64)
    oc = np.zeros((maxd, v + 1), dtype=np.int64)
    cnt = np.zeros(maxd, dtype=np.int64)
    prod = np.ones(maxd, dtype=np.int64)
    total = np.int64(0)
    nodes = 0
    aborted = False
    if v == 0:
        return total, nodes, aborted
    for i in range(v):
        P[0, i // 64] |= _ONE << np.uint64(i % 64)
    cnt[0] = _color_sort(P[0], A, k, ov[0], oc[0])
    L = 0
    while L >= 0:
        if cnt[L] == 0:
            L -= 1
            continue
        cnt[L] -= 1
        i = cnt[L]
        x = ov[L, i]
        if L + oc[L, i] < k:
            L -= 1
            continue
        nodes += 1
        if nodes > node_budget:
            aborted = True
            break
        px = prod[L] * weights[x]
        for w in range(nw):
            P[L + 1, w] = P[L, w] & A[x, w]
        P[L, x // 64] &= ~(_ONE << np.uint64(x % 64))
        if L + 2 == k:
            # every remaining neighbour closes a k-clique
            s = np.int64(0)
            for w in range(nw):
                y = P[L + 1, w]
                while y != _ZERO:
                    b = y & (~y + _ONE)
                    s += weights[w * 64 + _ctz(b)]
                    y ^= b
            total += px * s
            continue
        prod[L + 1] = px
        cnt[L + 1] = _color_sort(P[L + 1], A, k - L - 1, ov[L + 1], oc[L + 1])
        L += 1
    return total, nodes, aborted
