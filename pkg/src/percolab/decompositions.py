"""Edge decompositions: greedy paths, then matchings with size guarantees.

path_decomposition splits E(G) into pairwise edge-disjoint simple paths by
repeatedly peeling a maximal path.  The extraction order is part of the
determinism contract:

* the start vertex is chosen among vertices of positive remaining degree,
  preferring odd remaining degree, then highest remaining degree, then
  lowest id;
* each extension step moves to the unvisited neighbor of highest remaining
  degree (ties to the lowest id), first forward from the tail, then
  backward from the head until neither end extends.

matching_decomposition drops short paths into a leftover set, splits every
remaining path into its two alternating matchings, and demotes any
undersized matching into the leftover.  The returned object always
satisfies the leftover bound (M2) and the matching size bound (M3); the
matching count bound (M1) is reported, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import HostGraph


@dataclass(frozen=True)
class PathDecomposition:
    graph_key: str
    paths: tuple          # vertex sequences, tuple of tuples
    path_edges: tuple     # parallel tuple of edge-id tuples

    @property
    def count(self) -> int:
        return len(self.paths)

    def to_json_dict(self) -> dict:
        return {"paths": [list(p) for p in self.paths]}


@dataclass(frozen=True)
class MatchingDecomposition:
    graph_key: str
    eps: float
    matchings: tuple      # tuple of edge-id tuples
    leftover: tuple       # edge ids not covered by any matching
    report: dict

    def to_json_dict(self) -> dict:
        return {
            "matchings": [list(m) for m in self.matchings],
            "leftover": list(self.leftover),
            "report": self.report,
        }


def path_decomposition(G: HostGraph) -> PathDecomposition:
    """Greedy maximal-path decomposition covering every edge exactly once."""
    indptr, nbr, nbr_edge = G.adjacency
    rem_deg = np.diff(indptr).astype(np.int64)
    used = np.zeros(G.edge_count, dtype=bool)
    paths = []
    path_edges = []
    remaining = G.edge_count

    def start_key(v: int):
        return (rem_deg[v] % 2 == 0, -rem_deg[v], v)

    def next_step(t: int, visited: set):
        best = None
        best_key = None
        for idx in range(indptr[t], indptr[t + 1]):
            e = int(nbr_edge[idx])
            y = int(nbr[idx])
            if used[e] or y in visited:
                continue
            key = (-rem_deg[y], y)
            if best_key is None or key < best_key:
                best, best_key = (y, e), key
        return best

    while remaining:
        start = min((v for v in range(G.n) if rem_deg[v] > 0), key=start_key)
        verts = [start]
        eids: list[int] = []
        visited = {start}
        for extend_back in (False, True):
            while True:
                t = verts[0] if extend_back else verts[-1]
                step = next_step(t, visited)
                if step is None:
                    break
                y, e = step
                used[e] = True
                remaining -= 1
                rem_deg[t] -= 1
                rem_deg[y] -= 1
                visited.add(y)
                if extend_back:
                    verts.insert(0, y)
                    eids.insert(0, e)
                else:
                    verts.append(y)
                    eids.append(e)
        paths.append(tuple(verts))
        path_edges.append(tuple(eids))
    return PathDecomposition(G.key, tuple(paths), tuple(path_edges))


def matching_decomposition(G: HostGraph, eps: float) -> MatchingDecomposition:
    """Split E(G) into near-linear-size matchings plus a small leftover.

    Requires e(G) >= 2n/eps.  With e = e(G) and n = |V(G)|:

    * paths of length <= 2*eps*e/n go to the leftover (their total is the
      M2 bound 2*eps*e);
    * every other path contributes its two alternating matchings;
    * matchings smaller than eps*e/(2n) are merged into the leftover, so
      M3 holds for the returned object by construction.

    M2 is re-verified after the merge; a violation raises, since the
    object would not meet its contract (it cannot occur for the graphs
    the guarantee targets).
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    e = G.edge_count
    n = G.n
    if e < 2 * n / eps:
        raise ValueError(f"need e(G) >= 2n/eps = {2 * n / eps:.1f}, got {e}")
    pd = path_decomposition(G)
    short_threshold = 2.0 * eps * e / n
    m3_bound = eps * e / (2.0 * n)
    leftover: list[int] = []
    matchings: list[tuple] = []
    for eids in pd.path_edges:
        if len(eids) <= short_threshold:
            leftover.extend(eids)
            continue
        for m in (eids[0::2], eids[1::2]):
            if len(m) < m3_bound:
                leftover.extend(m)
            else:
                matchings.append(tuple(m))
    m1_paths = len(matchings) <= 2 * pd.count
    m1_2n = len(matchings) <= 2 * n
    m2 = len(leftover) <= 2.0 * eps * e
    m3 = all(len(m) >= m3_bound for m in matchings)
    if not m2:
        raise RuntimeError(
            "leftover exceeds the M2 bound; the path decomposition is too fragmented"
        )
    report = {
        "M1": m1_2n,
        "M1_vs_paths": m1_paths,
        "M2": m2,
        "M3": m3,
        "path_count": pd.count,
        "matching_count": len(matchings),
        "leftover_edges": len(leftover),
        "short_threshold": short_threshold,
        "m3_bound": m3_bound,
        "min_matching_size": min((len(m) for m in matchings), default=0),
    }
    return MatchingDecomposition(G.key, float(eps), tuple(matchings), tuple(leftover), report)
