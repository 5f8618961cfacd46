"""Component analysis of sampled edge configurations.

Components are computed with a union-find kernel (compiled when available,
see percolab.kernels).  On top of plain component extraction this module
implements the two product-graph observables the experiments revolve
around:

* the left-meets-right event on two-layer products: some component holds a
  strict majority of each layer;
* single-step renormalisation: a sample on H x G is coarsened to a sample
  on H by evaluating the left-meets-right event on every H-edge's induced
  two-fiber subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graphs import HostGraph
from .measures import EdgeSample

# Guard on the (components x layers) table size; beyond this the per-layer
# count table is omitted from summaries.
_LAYER_TABLE_CAP = 20_000_000


def _check_sample(G: HostGraph, s: EdgeSample) -> None:
    if s.graph_key != G.key:
        raise ValueError(f"sample belongs to {s.graph_key}, not {G.key}")
    if s.bits.shape[0] != G.edge_count:
        raise ValueError("sample bit count does not match graph edge count")


def _roots(G: HostGraph, s: EdgeSample) -> np.ndarray:
    return kernels.uf_labels(G.n, G.eu, G.ev, s.bits.view(np.uint8))


@dataclass(frozen=True)
class ComponentSummary:
    """Canonical component labels plus size/layer/annulus statistics."""

    graph_key: str
    labels: np.ndarray          # component id per vertex, 0..k-1
    sizes: np.ndarray           # size per component id
    layer_counts: np.ndarray | None   # (k, n_layers) for product graphs
    annulus_min: np.ndarray | None    # per component id
    annulus_max: np.ndarray | None

    @property
    def count(self) -> int:
        return int(self.sizes.shape[0])

    def sizes_desc(self) -> np.ndarray:
        return np.sort(self.sizes)[::-1]

    def spans(self) -> np.ndarray:
        if self.annulus_min is None:
            raise ValueError("graph carries no annulus labels")
        return self.annulus_max - self.annulus_min + 1

    def to_json_dict(self) -> dict:
        doc = {"sizes": self.sizes_desc().tolist()}
        if self.layer_counts is not None and self.layer_counts.shape[1] == 2:
            per_layer = self.layer_counts.sum(axis=0)
            doc["lmr"] = bool(
                np.any(
                    (2 * self.layer_counts[:, 0] > per_layer[0])
                    & (2 * self.layer_counts[:, 1] > per_layer[1])
                )
            )
        if self.annulus_min is not None:
            doc["span"] = int(self.spans().max(initial=0))
        return doc


def connected_components(G: HostGraph, s: EdgeSample) -> ComponentSummary:
    """Union-find components of the open subgraph."""
    _check_sample(G, s)
    roots = _roots(G, s)
    uniq, labels = np.unique(roots, return_inverse=True)
    labels = labels.astype(np.int32)
    sizes = np.bincount(labels, minlength=len(uniq))
    layer_counts = None
    if G.layer is not None:
        n_layers = int(G.layer.max()) + 1
        if len(uniq) * n_layers <= _LAYER_TABLE_CAP:
            layer_counts = np.bincount(
                labels.astype(np.int64) * n_layers + G.layer,
                minlength=len(uniq) * n_layers,
            ).reshape(len(uniq), n_layers)
    ann_min = ann_max = None
    if G.annulus is not None:
        ann_min = np.full(len(uniq), np.iinfo(np.int32).max, dtype=np.int32)
        ann_max = np.full(len(uniq), -1, dtype=np.int32)
        np.minimum.at(ann_min, labels, G.annulus)
        np.maximum.at(ann_max, labels, G.annulus)
    return ComponentSummary(G.key, labels, sizes, layer_counts, ann_min, ann_max)


def lmr_event(G: HostGraph, s: EdgeSample) -> bool:
    """Left meets right: some component holds a strict majority of both
    layers of a two-layer product graph.

    Majorities are strict: on an even fiber count a component owning
    exactly half of a layer does not qualify.
    """
    if G.kind != "product" or G.h_factor is None or G.h_factor.n != 2:
        raise ValueError("lmr_event needs a two-layer product graph")
    _check_sample(G, s)
    roots = _roots(G, s)
    n_g = G.g_factor.n
    c0 = np.bincount(roots[:n_g], minlength=G.n)
    c1 = np.bincount(roots[n_g:], minlength=G.n)
    return bool(np.any((2 * c0 > n_g) & (2 * c1 > n_g)))


def annulus_span(G: HostGraph, s: EdgeSample, include: np.ndarray | None = None) -> int:
    """Largest component span, in annuli, of the open subgraph.

    Span of a component is (max annulus - min annulus + 1) over its
    vertices.  ``include`` optionally restricts which vertices count
    toward the span (components are still formed on the full sample);
    pass e.g. a non-pendant-state mask to measure the band occupied by
    the 0/1-state core of each component.
    """
    if G.annulus is None:
        raise ValueError("graph carries no annulus labels")
    _check_sample(G, s)
    roots = _roots(G, s)
    if include is None:
        sel = slice(None)
    else:
        sel = np.asarray(include, dtype=bool)
        if sel.shape != (G.n,):
            raise ValueError("include mask must have one entry per vertex")
    mins = np.full(G.n, np.iinfo(np.int32).max, dtype=np.int32)
    maxs = np.full(G.n, -1, dtype=np.int32)
    np.minimum.at(mins, roots[sel], G.annulus[sel])
    np.maximum.at(maxs, roots[sel], G.annulus[sel])
    occupied = maxs >= 0
    if not np.any(occupied):
        return 0
    return int((maxs[occupied] - mins[occupied] + 1).max())


def renormalise(PG: HostGraph, s: EdgeSample, H: HostGraph) -> EdgeSample:
    """Coarsen a sample on H x G to a sample on H.

    The k-th H-edge (u, v) is declared open when the left-meets-right
    event holds on the induced subgraph spanned by fibers u and v (their
    two copies of G plus the matching edges between them).  The result is
    a deterministic function of the input sample.
    """
    if PG.kind != "product" or PG.h_factor is None:
        raise ValueError("renormalise needs a product graph sample")
    if PG.h_factor.key != H.key:
        raise ValueError("H does not match the product's first factor")
    _check_sample(PG, s)
    n_g = PG.g_factor.n
    ga, gb = PG.g_factor.eu, PG.g_factor.ev
    f = np.arange(n_g, dtype=np.int32)
    sub_a = np.concatenate([ga, ga + n_g, f])
    sub_b = np.concatenate([gb, gb + n_g, f + n_g])
    out = np.zeros(H.edge_count, dtype=bool)
    for k in range(H.edge_count):
        hu, hv = int(H.edges[k, 0]), int(H.edges[k, 1])
        bits = np.concatenate([
            s.bits[PG.copy_slice(hu)],
            s.bits[PG.copy_slice(hv)],
            s.bits[PG.cross_slice(k)],
        ])
        roots = kernels.uf_labels(2 * n_g, sub_a, sub_b, bits.view(np.uint8))
        c0 = np.bincount(roots[:n_g], minlength=2 * n_g)
        c1 = np.bincount(roots[n_g:], minlength=2 * n_g)
        out[k] = bool(np.any((2 * c0 > n_g) & (2 * c1 > n_g)))
    return EdgeSample(H.key, out, s.seed, s.replica)


def lift_consistency_check(H: HostGraph, rs: EdgeSample, PG: HostGraph, s: EdgeSample) -> bool:
    """Coupling property of renormalisation.

    For every pair of H-vertices u, v lying in one component of the
    renormalised sample, some vertex of fiber u must connect to some
    vertex of fiber v in the product sample.  Holds always for samples
    produced by renormalise(); exposed as a check so experiments can
    assert it per replica.
    """
    _check_sample(H, rs)
    _check_sample(PG, s)
    if PG.h_factor is None or PG.h_factor.key != H.key:
        raise ValueError("H does not match the product's first factor")
    roots_h = kernels.uf_labels(H.n, H.eu, H.ev, rs.bits.view(np.uint8))
    roots_pg = _roots(PG, s)
    n_g = PG.g_factor.n
    fiber_sets = [
        set(np.unique(roots_pg[u * n_g:(u + 1) * n_g]).tolist()) for u in range(H.n)
    ]
    groups: dict[int, list[int]] = {}
    for v in range(H.n):
        groups.setdefault(int(roots_h[v]), []).append(v)
    for members in groups.values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                if not (fiber_sets[members[i]] & fiber_sets[members[j]]):
                    return False
    return True
