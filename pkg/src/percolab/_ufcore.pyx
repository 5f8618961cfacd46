# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled union-find kernel.

Hot loop of the whole package: merging the endpoints of every open edge.
Union by size with full path compression; labels are root vertex ids.
"""

import numpy as np


def uf_labels(int n, const int[::1] eu, const int[::1] ev, const unsigned char[::1] open_bits):
    """Root label per vertex for the subgraph of open edges."""
    parent_arr = np.arange(n, dtype=np.int32)
    size_arr = np.ones(n, dtype=np.int32)
    cdef int[::1] parent = parent_arr
    cdef int[::1] size = size_arr
    cdef Py_ssize_t m = eu.shape[0]
    cdef Py_ssize_t i
    cdef int a, b, r, nxt, v
    for i in range(m):
        if open_bits[i] == 0:
            continue
        a = eu[i]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = ev[i]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
    for i in range(n):
        v = <int> i
        r = v
        while parent[r] != r:
            r = parent[r]
        while parent[v] != r:
            nxt = parent[v]
            parent[v] = r
            v = nxt
    return parent_arr
