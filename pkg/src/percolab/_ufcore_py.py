"""Pure-Python union-find kernel.

Reference implementation and fallback for environments where the compiled
extension is unavailable.  Same contract as percolab._ufcore.uf_labels.
"""

from __future__ import annotations

import numpy as np


def uf_labels(n: int, eu: np.ndarray, ev: np.ndarray, open_bits: np.ndarray) -> np.ndarray:
    """Root label per vertex for the subgraph of open edges.

    Union by size with full path compression.  Labels are root vertex ids,
    not compacted; callers canonicalise if they need 0..k-1.
    """
    parent = list(range(n))
    size = [1] * n
    eu_l = eu.tolist()
    ev_l = ev.tolist()
    bits_l = open_bits.tolist()
    for i in range(len(eu_l)):
        if not bits_l[i]:
            continue
        a = eu_l[i]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = ev_l[i]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
    for v in range(n):
        r = v
        while parent[r] != r:
            r = parent[r]
        while parent[v] != r:
            parent[v], v = r, parent[v]
    return np.asarray(parent, dtype=np.int32)
