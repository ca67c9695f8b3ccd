"""Pure-Python BFS kernels over CSR adjacency.

These mirror the compiled implementations in ``_speedups.pyx`` loop for loop
so both backends produce identical floating-point results. Keep the two in
sync when editing.

All kernels take (indptr, indices) as produced by ``Graph.csr()``:
``indices[indptr[v]:indptr[v+1]]`` are v's neighbors in ascending order.
"""

from __future__ import annotations

import numpy as np


def betweenness(indptr, indices) -> np.ndarray:
    """Exact unweighted betweenness, each unordered pair counted once.

    Brandes-style: one BFS per source builds the shortest-path DAG implicitly
    (dist, sigma), then dependencies are accumulated in reverse BFS order by
    re-scanning adjacency for predecessor edges. The full accumulation counts
    ordered pairs, so the result is halved at the end.
    """
    n = len(indptr) - 1
    ip = indptr.tolist()
    idx = indices.tolist()
    bc = [0.0] * n
    dist = [-1] * n
    sigma = [0.0] * n
    delta = [0.0] * n
    order = [0] * n

    for s in range(n):
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head, tail = 0, 1
        while head < tail:
            v = order[head]
            head += 1
            dv = dist[v]
            sv = sigma[v]
            for j in range(ip[v], ip[v + 1]):
                w = idx[j]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dv + 1:
                    sigma[w] += sv
        for i in range(tail - 1, 0, -1):
            w = order[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            dw = dist[w]
            for j in range(ip[w], ip[w + 1]):
                v = idx[j]
                if dist[v] == dw - 1:
                    delta[v] += sigma[v] * coeff
            bc[w] += delta[w]
        for i in range(tail):
            v = order[i]
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0

    for v in range(n):
        bc[v] = bc[v] / 2.0
    return np.array(bc, dtype=np.float64)


def closeness_sums(indptr, indices) -> tuple[np.ndarray, np.ndarray]:
    """Per-vertex (sum of hop distances to reachable vertices, reach count).

    The source itself is excluded from both the sum and the count.
    """
    n = len(indptr) - 1
    ip = indptr.tolist()
    idx = indices.tolist()
    sums = np.zeros(n, dtype=np.int64)
    reach = np.zeros(n, dtype=np.int32)
    dist = [-1] * n
    order = [0] * n

    for s in range(n):
        dist[s] = 0
        order[0] = s
        head, tail = 0, 1
        total = 0
        while head < tail:
            v = order[head]
            head += 1
            dv1 = dist[v] + 1
            for j in range(ip[v], ip[v + 1]):
                w = idx[j]
                if dist[w] < 0:
                    dist[w] = dv1
                    total += dv1
                    order[tail] = w
                    tail += 1
        sums[s] = total
        reach[s] = tail - 1
        for i in range(tail):
            dist[order[i]] = -1
    return sums, reach


def bfs_dist_sigma(indptr, indices, source: int) -> tuple[np.ndarray, np.ndarray]:
    """Hop distances (-1 if unreachable) and shortest-path counts from source."""
    n = len(indptr) - 1
    ip = indptr.tolist()
    idx = indices.tolist()
    dist = np.full(n, -1, dtype=np.int32)
    sigma = np.zeros(n, dtype=np.float64)
    d = dist.tolist()
    sg = sigma.tolist()
    order = [0] * n
    d[source] = 0
    sg[source] = 1.0
    order[0] = source
    head, tail = 0, 1
    while head < tail:
        v = order[head]
        head += 1
        dv = d[v]
        sv = sg[v]
        for j in range(ip[v], ip[v + 1]):
            w = idx[j]
            if d[w] < 0:
                d[w] = dv + 1
                order[tail] = w
                tail += 1
            if d[w] == dv + 1:
                sg[w] += sv
    dist[:] = d
    sigma[:] = sg
    return dist, sigma
