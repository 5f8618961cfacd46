"""Host graph construction: deterministic vertex/edge structures.

Vertices are dense ints 0..n-1 and edges carry dense stable ids 0..m-1 in
construction order.  Product graphs use a layer-major layout that the
measure and renormalisation code relies on:

* vertex (layer l, fiber f) has id l*n_G + f;
* edge ids [l*e_G, (l+1)*e_G) are the copy of G inside layer l, in G's
  edge order;
* edge ids [n_H*e_G + k*n_G, n_H*e_G + (k+1)*n_G) are the matching edges
  for the k-th edge of H, in fiber order.

All arrays are frozen after construction; a HostGraph is safe to share
across threads.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import rng

_MAX_INDEX = 2**31 - 1


class HostGraph:
    """Immutable graph with dense edge ids and optional product/grid coords."""

    __slots__ = (
        "n", "edges", "eu", "ev", "kind", "key", "q_meta",
        "layer", "fiber", "grid_xy", "annulus",
        "h_factor", "g_factor",
        "_indptr", "_nbr", "_nbr_edge",
    )

    def __init__(self, n, edges, kind, key, q_meta=None, layer=None, fiber=None,
                 grid_xy=None, annulus=None, h_factor=None, g_factor=None):
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        if n > _MAX_INDEX:
            raise ValueError("vertex count exceeds index range")
        edges = np.ascontiguousarray(edges, dtype=np.int32).reshape(-1, 2)
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise ValueError("edge endpoint out of range")
        if np.any(edges[:, 0] == edges[:, 1]):
            raise ValueError("loops are not allowed")
        self.n = int(n)
        self.edges = edges
        self.eu = np.ascontiguousarray(edges[:, 0])
        self.ev = np.ascontiguousarray(edges[:, 1])
        self.kind = kind
        self.key = key
        self.q_meta = q_meta
        self.layer = layer
        self.fiber = fiber
        self.grid_xy = grid_xy
        self.annulus = annulus
        self.h_factor = h_factor
        self.g_factor = g_factor
        self._indptr = None
        self._nbr = None
        self._nbr_edge = None
        for arr in (self.edges, self.eu, self.ev, layer, fiber, grid_xy, annulus):
            if arr is not None:
                arr.setflags(write=False)

    @property
    def edge_count(self) -> int:
        return self.edges.shape[0]

    def _build_adjacency(self):
        m = self.edge_count
        src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        eid = np.tile(np.arange(m, dtype=np.int32), 2)
        order = np.argsort(src, kind="stable")
        deg = np.bincount(src, minlength=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        nbr = dst[order]
        nbr_edge = eid[order]
        for arr in (indptr, nbr, nbr_edge):
            arr.setflags(write=False)
        self._indptr, self._nbr, self._nbr_edge = indptr, nbr, nbr_edge

    @property
    def adjacency(self):
        """(indptr, neighbors, edge_ids) in CSR form, built lazily."""
        if self._indptr is None:
            self._build_adjacency()
        return self._indptr, self._nbr, self._nbr_edge

    def degrees(self) -> np.ndarray:
        indptr, _, _ = self.adjacency
        return np.diff(indptr)

    # --- product layout helpers -------------------------------------------
    def copy_slice(self, l: int) -> slice:
        """Edge-id slice holding the copy of G inside layer l."""
        if self.kind != "product":
            raise ValueError("copy_slice is defined for product graphs only")
        e_g = self.g_factor.edge_count
        return slice(l * e_g, (l + 1) * e_g)

    def cross_slice(self, k: int) -> slice:
        """Edge-id slice holding the matching edges of the k-th H-edge."""
        if self.kind != "product":
            raise ValueError("cross_slice is defined for product graphs only")
        base = self.h_factor.n * self.g_factor.edge_count
        n_g = self.g_factor.n
        return slice(base + k * n_g, base + (k + 1) * n_g)

    def validate(self) -> bool:
        """Full adjacency/edge-list cross-check.  O(n + m)."""
        indptr, nbr, nbr_edge = self.adjacency
        m = self.edge_count
        if indptr[-1] != 2 * m:
            raise AssertionError("adjacency size mismatch")
        seen = np.zeros(m, dtype=np.int64)
        for v in range(self.n):
            for idx in range(indptr[v], indptr[v + 1]):
                e = nbr_edge[idx]
                u, w = self.edges[e]
                if v not in (u, w) or nbr[idx] not in (u, w) or nbr[idx] == v:
                    raise AssertionError("adjacency entry disagrees with edge list")
                seen[e] += 1
        if not np.all(seen == 2):
            raise AssertionError("each edge must appear exactly twice in adjacency")
        pairs = np.sort(self.edges, axis=1)
        if len(np.unique(pairs, axis=0)) != m:
            raise AssertionError("duplicate edges")
        return True

    def __repr__(self):
        return f"HostGraph({self.key}, n={self.n}, m={self.edge_count})"


def complete_graph(n: int) -> HostGraph:
    """K_n.  n*(n-1)/2 edges in row-major pair order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    iu, iv = np.triu_indices(n, k=1)
    edges = np.column_stack([iu, iv])
    return HostGraph(n, edges, "complete", f"complete({n})", q_meta=1.0)


def erdos_renyi(n: int, q: float, seed: int) -> HostGraph:
    """G(n, q) with a deterministic per-pair coin keyed by seed."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must lie in [0, 1]")
    iu, iv = np.triu_indices(n, k=1)
    u = rng.uniforms(seed, (rng.STREAM_EDGE,), len(iu))
    mask = u < q
    edges = np.column_stack([iu[mask], iv[mask]])
    n_pairs = len(iu)
    if n_pairs and 0.0 < q < 1.0:
        sigma = math.sqrt(n_pairs * q * (1.0 - q))
        if abs(edges.shape[0] - q * n_pairs) > 3.0 * sigma:
            warnings.warn(
                f"edge count {edges.shape[0]} is more than 3 sigma from {q * n_pairs:.1f}",
                stacklevel=2,
            )
    return HostGraph(n, edges, "erdos_renyi", f"erdos_renyi({n},{q!r},{seed})", q_meta=q)


def hypercube(d: int) -> HostGraph:
    """Q_d: 2^d vertices, d*2^(d-1) edges, bit-major edge order."""
    if not 0 <= d <= 24:
        raise ValueError("d must lie in [0, 24]")
    n = 1 << d
    blocks = []
    v = np.arange(n, dtype=np.int32)
    for bit in range(d):
        lo = v[(v >> bit) & 1 == 0]
        blocks.append(np.column_stack([lo, lo | (1 << bit)]))
    edges = np.concatenate(blocks) if blocks else np.empty((0, 2), dtype=np.int32)
    return HostGraph(n, edges, "hypercube", f"hypercube({d})")


def grid_2d(w: int, h: int, boundary: str = "open") -> HostGraph:
    """w x h grid.  Open boundary: 2wh-w-h edges; torus: 2wh (needs w,h >= 3).

    Vertex id = y*w + x.  Coordinates are recentred so the sup-norm annulus
    index is meaningful: odd dimensions put the origin at the centre, even
    dimensions put it at the lower-left vertex of the central 2x2 block.
    """
    if boundary not in ("open", "torus"):
        raise ValueError("boundary must be 'open' or 'torus'")
    if w < 1 or h < 1:
        raise ValueError("grid dimensions must be >= 1")
    if boundary == "torus" and (w < 3 or h < 3):
        raise ValueError("torus boundary needs w, h >= 3 to avoid multi-edges")
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            elif boundary == "torus":
                edges.append((v, y * w))
            if y + 1 < h:
                edges.append((v, v + w))
            elif boundary == "torus":
                edges.append((v, x))
    x0 = (w - 1) // 2
    y0 = (h - 1) // 2
    xs = np.tile(np.arange(w, dtype=np.int32) - x0, h)
    ys = np.repeat(np.arange(h, dtype=np.int32) - y0, w)
    grid_xy = np.column_stack([xs, ys])
    annulus = None
    if boundary == "open":
        annulus = np.maximum(np.abs(xs), np.abs(ys)).astype(np.int32)
    return HostGraph(
        w * h,
        np.asarray(edges, dtype=np.int32),
        "grid2d",
        f"grid2d({w},{h},{boundary})",
        grid_xy=grid_xy,
        annulus=annulus,
    )


def cartesian_product(H: HostGraph, G: HostGraph) -> HostGraph:
    """Cartesian product with the layer-major edge layout described above."""
    n_h, n_g = H.n, G.n
    n = n_h * n_g
    m = n_h * G.edge_count + n_g * H.edge_count
    if n > _MAX_INDEX or m > _MAX_INDEX:
        raise ValueError("product too large for 32-bit indexing")
    blocks = [G.edges + l * n_g for l in range(n_h)]
    f = np.arange(n_g, dtype=np.int32)
    for hu, hv in H.edges:
        blocks.append(np.column_stack([hu * n_g + f, hv * n_g + f]))
    edges = np.concatenate(blocks) if blocks else np.empty((0, 2), dtype=np.int32)
    layer = np.repeat(np.arange(n_h, dtype=np.int32), n_g)
    fiber = np.tile(np.arange(n_g, dtype=np.int32), n_h)
    annulus = np.repeat(H.annulus, n_g) if H.annulus is not None else None
    return HostGraph(
        n, edges, "product", f"product({H.key},{G.key})",
        layer=layer, fiber=fiber, annulus=annulus,
        h_factor=H, g_factor=G,
    )


def custom_graph(n: int, edges, name: str = "custom") -> HostGraph:
    """Arbitrary edge list with caller-chosen name; used by tests and oracles."""
    edges = np.asarray(list(edges), dtype=np.int32).reshape(-1, 2)
    if edges.size:
        pairs = np.sort(edges, axis=1)
        if len(np.unique(pairs, axis=0)) != edges.shape[0]:
            raise ValueError("duplicate edges in edge list")
    return HostGraph(n, edges, "custom", f"custom({name},{n},{edges.shape[0]})")


@dataclass(frozen=True)
class PseudorandomAudit:
    """Worst induced-edge-count deviation over random vertex subsets."""

    graph_key: str
    q: float
    samples: int
    max_abs_deviation: float
    normalized_deviation: float
    seed: int


def pseudorandomness_deviation(G: HostGraph, q: float, num_samples: int, seed: int) -> PseudorandomAudit:
    """Audit |e(G[U]) - q|U|^2/2| over uniformly random U of random sizes.

    The normalisation divides by q*n^2 so graphs of different sizes are
    comparable; q = 0 reports 0 when the graph is empty and inf otherwise.
    """
    if num_samples < 1:
        raise ValueError("num_samples must be >= 1")
    gen = rng.generator(seed, rng.STREAM_SUBSET)
    eu = G.edges[:, 0]
    ev = G.edges[:, 1]
    worst = 0.0
    for _ in range(num_samples):
        size = int(gen.integers(0, G.n + 1))
        mask = np.zeros(G.n, dtype=bool)
        if size:
            mask[gen.permutation(G.n)[:size]] = True
        induced = int(np.count_nonzero(mask[eu] & mask[ev])) if G.edge_count else 0
        dev = abs(induced - q * size * size / 2.0)
        if dev > worst:
            worst = dev
    if q > 0:
        normalized = worst / (q * G.n * G.n)
    else:
        normalized = 0.0 if worst == 0.0 else math.inf
    return PseudorandomAudit(G.key, q, num_samples, worst, normalized, seed)


def graph_to_json(G: HostGraph) -> str:
    """Debug export: {n, edges, kind, coords?} as deterministic JSON."""
    doc = {
        "n": G.n,
        "edges": G.edges.tolist(),
        "kind": G.kind,
    }
    coords = {}
    if G.layer is not None:
        coords["layer"] = G.layer.tolist()
        coords["fiber"] = G.fiber.tolist()
    if G.grid_xy is not None:
        coords["grid"] = G.grid_xy.tolist()
    if G.annulus is not None:
        coords["annulus"] = G.annulus.tolist()
    if coords:
        doc["coords"] = coords
    return json.dumps(doc, sort_keys=True)
