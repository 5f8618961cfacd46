"""Shared test helpers: independent reference implementations.

The reference functions here deliberately avoid the package's own
algorithms (BFS instead of union-find, direct summation instead of the
vectorized paths) so they can serve as oracles.
"""

from collections import deque

import numpy as np
import pytest


def bfs_components(n, eu, ev, bits):
    """Component partition as a sorted tuple of sorted vertex tuples."""
    adj = [[] for _ in range(n)]
    for u, v, b in zip(eu, ev, bits):
        if b:
            adj[int(u)].append(int(v))
            adj[int(v)].append(int(u))
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        dq = deque([start])
        while dq:
            x = dq.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    dq.append(y)
        comps.append(tuple(sorted(comp)))
    return tuple(sorted(comps))


def labels_to_partition(labels):
    labels = np.asarray(labels)
    comps = {}
    for v, lab in enumerate(labels.tolist()):
        comps.setdefault(lab, []).append(v)
    return tuple(sorted(tuple(sorted(c)) for c in comps.values()))


def random_graph_instance(rng, max_n=50):
    """A random small graph plus a random bit vector, for oracle sweeps."""
    n = int(rng.integers(2, max_n + 1))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if not pairs:
        return n, np.zeros(0, np.int32), np.zeros(0, np.int32), np.zeros(0, bool)
    keep = rng.random(len(pairs)) < rng.uniform(0.02, 0.5)
    eu = np.array([p[0] for p, k in zip(pairs, keep) if k], dtype=np.int32)
    ev = np.array([p[1] for p, k in zip(pairs, keep) if k], dtype=np.int32)
    bits = rng.random(len(eu)) < rng.uniform(0.1, 0.9)
    return n, eu, ev, bits.astype(bool)


@pytest.fixture
def rng_fixed():
    return np.random.default_rng(12345)
