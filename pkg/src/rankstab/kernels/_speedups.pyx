# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled BFS kernels; keep loop structure in sync with pure.py."""

import numpy as np


def betweenness(indptr, indices):
    cdef int n = len(indptr) - 1
    cdef const int[:] ip = np.ascontiguousarray(indptr, dtype=np.int32)
    cdef const int[:] idx = np.ascontiguousarray(indices, dtype=np.int32)
    bc_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] bc = bc_arr
    dist_arr = np.full(n, -1, dtype=np.int32)
    cdef int[:] dist = dist_arr
    sigma_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] sigma = sigma_arr
    delta_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] delta = delta_arr
    order_arr = np.zeros(n, dtype=np.int32)
    cdef int[:] order = order_arr

    cdef int s, v, w, i, j, head, tail, dv, dw
    cdef double sv, coeff

    with nogil:
        for s in range(n):
            dist[s] = 0
            sigma[s] = 1.0
            order[0] = s
            head = 0
            tail = 1
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
    return bc_arr


def closeness_sums(indptr, indices):
    cdef int n = len(indptr) - 1
    cdef const int[:] ip = np.ascontiguousarray(indptr, dtype=np.int32)
    cdef const int[:] idx = np.ascontiguousarray(indices, dtype=np.int32)
    sums_arr = np.zeros(n, dtype=np.int64)
    cdef long long[:] sums = sums_arr
    reach_arr = np.zeros(n, dtype=np.int32)
    cdef int[:] reach = reach_arr
    dist_arr = np.full(n, -1, dtype=np.int32)
    cdef int[:] dist = dist_arr
    order_arr = np.zeros(n, dtype=np.int32)
    cdef int[:] order = order_arr

    cdef int s, v, w, i, j, head, tail, dv1
    cdef long long total

    with nogil:
        for s in range(n):
            dist[s] = 0
            order[0] = s
            head = 0
            tail = 1
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
    return sums_arr, reach_arr


def bfs_dist_sigma(indptr, indices, int source):
    cdef int n = len(indptr) - 1
    cdef const int[:] ip = np.ascontiguousarray(indptr, dtype=np.int32)
    cdef const int[:] idx = np.ascontiguousarray(indices, dtype=np.int32)
    dist_arr = np.full(n, -1, dtype=np.int32)
    cdef int[:] dist = dist_arr
    sigma_arr = np.zeros(n, dtype=np.float64)
    cdef double[:] sigma = sigma_arr
    order_arr = np.zeros(n, dtype=np.int32)
    cdef int[:] order = order_arr

    cdef int v, w, j, head, tail, dv
    cdef double sv

    with nogil:
        dist[source] = 0
        sigma[source] = 1.0
        order[0] = source
        head = 0
        tail = 1
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
    return dist_arr, sigma_arr
