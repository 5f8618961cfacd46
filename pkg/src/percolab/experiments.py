"""Seeded Monte Carlo sweeps over (p, n) grids, plus concentration checks.

Each sweep cell builds a measure and a host graph, draws ``replicas``
independent edge samples, computes one scalar statistic per replica, and
aggregates mean and standard error.  Replica ``i`` of a cell draws from
streams keyed by ``(seed, i)``, so replicas are independent, order-free,
and could be evaluated concurrently; the reduction always sums in replica
index order, which keeps the CSV bit-identical across reruns (the
``elapsed_ms`` column is the one intentionally non-reproducible field).

Statistics by experiment name:

* ``lmr``                  – indicator of the layer-majority event on K2 x fiber
* ``component_fraction``   – largest component size / n on the fiber itself
* ``annulus``              – max radial span of any component on box x K_n
* ``renormalise_density``  – open fraction of the renormalised base sample
* ``edge_concentration``   – min over decomposition matchings of open-edge counts
"""

from __future__ import annotations

import io
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .components import annulus_span, connected_components, lmr_event, renormalise
from .decompositions import matching_decomposition
from .graphs import (
    HostGraph,
    cartesian_product,
    complete_graph,
    erdos_renyi,
    grid_2d,
)
from .measures import measure_from_config, sample_edges

EXPERIMENTS = (
    "lmr",
    "component_fraction",
    "annulus",
    "renormalise_density",
    "edge_concentration",
)

CSV_HEADER = "experiment,p,n,replicas,mean,stderr,seed,elapsed_ms"


@dataclass(frozen=True)
class SweepConfig:
    """One sweep request: an experiment crossed over p and n grids."""

    experiment: str
    measure: dict
    graph: dict = field(default_factory=lambda: {"kind": "complete"})
    p_values: tuple = (0.6,)
    n_values: tuple = (100,)
    replicas: int = 50
    seed: int = 0
    out: str | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(
                f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}"
            )
        if self.replicas < 1:
            raise ValueError("replicas must be >= 1")
        if not self.p_values or not self.n_values:
            raise ValueError("p_values and n_values must be non-empty")
        object.__setattr__(self, "p_values", tuple(float(p) for p in self.p_values))
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))


@dataclass(frozen=True)
class SweepRow:
    experiment: str
    p: float
    n: int
    replicas: int
    mean: float
    stderr: float
    seed: int
    elapsed_ms: int

    def to_csv_line(self) -> str:
        return (
            f"{self.experiment},{self.p!r},{self.n},{self.replicas},"
            f"{self.mean!r},{self.stderr!r},{self.seed},{self.elapsed_ms}"
        )


def sweep_config_from_json(source) -> SweepConfig:
    """Build a SweepConfig from a JSON file path, JSON text, or a dict."""
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            data = json.loads(text)
        else:
            with open(text, "r", encoding="utf-8") as fh:
                data = json.load(fh)
    known = {
        "experiment", "measure", "graph", "p_values", "n_values",
        "replicas", "seed", "out", "params",
    }
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown sweep config keys: {sorted(unknown)}")
    kwargs = dict(data)
    for key in ("p_values", "n_values"):
        if key in kwargs:
            kwargs[key] = tuple(kwargs[key])
    return SweepConfig(**kwargs)


def _build_fiber(graph_spec: dict, n: int, seed: int) -> HostGraph:
    kind = graph_spec.get("kind", "complete")
    if kind == "complete":
        return complete_graph(n)
    if kind == "erdos_renyi":
        q = float(graph_spec["q"])
        return erdos_renyi(n, q, int(graph_spec.get("seed", seed)))
    raise ValueError(f"unsupported fiber graph kind {kind!r}")


def _build_cell(cfg: SweepConfig, p: float, n: int):
    """Graph + per-replica statistic closure for one (p, n) cell."""
    measure = measure_from_config({**cfg.measure, "p": p})
    fiber_seed = int(cfg.graph.get("seed", cfg.seed))

    if cfg.experiment == "lmr":
        fiber = _build_fiber(cfg.graph, n, fiber_seed)
        G = cartesian_product(complete_graph(2), fiber)
        return measure, G, lambda s: float(lmr_event(G, s))

    if cfg.experiment == "component_fraction":
        G = _build_fiber(cfg.graph, n, fiber_seed)
        return measure, G, lambda s: connected_components(G, s).sizes_desc()[0] / G.n

    if cfg.experiment == "annulus":
        box = int(cfg.params.get("box", 25))
        H = grid_2d(box, box, boundary="open")
        G = cartesian_product(H, complete_graph(n))
        return measure, G, lambda s: float(annulus_span(G, s))

    if cfg.experiment == "renormalise_density":
        box = int(cfg.params.get("box", 3))
        H = grid_2d(box, box, boundary="open")
        G = cartesian_product(H, complete_graph(n))
        e_h = len(H.eu)
        return measure, G, lambda s: renormalise(G, s, H).open_count / e_h

    if cfg.experiment == "edge_concentration":
        if "eps" not in cfg.params:
            raise ValueError("edge_concentration requires params['eps']")
        eps = float(cfg.params["eps"])
        G = _build_fiber(cfg.graph, n, fiber_seed)
        dec = matching_decomposition(G, eps)
        matchings = [np.asarray(m, dtype=np.int64) for m in dec.matchings]
        if not matchings:
            raise ValueError("decomposition produced no matchings for this cell")

        def stat(s):
            bits = s.bits
            return float(min(int(bits[m].sum()) for m in matchings))

        return measure, G, stat

    raise AssertionError(f"unhandled experiment {cfg.experiment!r}")


def run_sweep(cfg: SweepConfig) -> str:
    """Run every (p, n) cell and return (optionally also write) the CSV."""
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for p in cfg.p_values:
        for n in cfg.n_values:
            t0 = time.perf_counter()
            measure, G, stat = _build_cell(cfg, p, n)
            values = np.empty(cfg.replicas)
            for r in range(cfg.replicas):
                s = sample_edges(measure, G, cfg.seed, replica=r)
                values[r] = stat(s)
            mean = float(values.mean())
            if cfg.replicas > 1:
                stderr = float(values.std(ddof=1) / math.sqrt(cfg.replicas))
            else:
                stderr = 0.0
            elapsed_ms = int(round((time.perf_counter() - t0) * 1000.0))
            row = SweepRow(
                cfg.experiment, p, n, cfg.replicas, mean, stderr, cfg.seed, elapsed_ms
            )
            buf.write(row.to_csv_line() + "\n")
    csv_text = buf.getvalue()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    return csv_text


def chernoff_samples(eps: float, p: float, delta: float) -> int:
    """Smallest N with 2*exp(-eps^2 * N * p / 3) <= delta.

    For delta >= 2 the bound already holds at N = 0.  The closed-form
    inversion ceil(3*ln(2/delta) / (eps^2 * p)) seeds the answer; the
    result is then nudged so minimality is exact despite float rounding.
    """
    if not 0.0 < eps <= 1.0:
        raise ValueError("eps must lie in (0, 1]")
    if p <= 0.0:
        raise ValueError("p must be positive")
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    if delta >= 2.0:
        return 0

    def ok(n: int) -> bool:
        return 2.0 * math.exp(-eps * eps * n * p / 3.0) <= delta

    n = max(0, math.ceil(3.0 * math.log(2.0 / delta) / (eps * eps * p)))
    while not ok(n):
        n += 1
    while n > 0 and ok(n - 1):
        n -= 1
    return n


@dataclass(frozen=True)
class ConcentrationReport:
    """Empirical tail frequency of a sparse edge sample vs. its tail bound."""

    graph_key: str
    p: float
    eps: float
    replicas: int
    edge_count: int
    threshold: float          # event is e(sample) <= threshold
    hits: int
    frequency: float
    bound: float

    @property
    def within_bound(self) -> bool:
        return self.frequency <= self.bound

    def to_json_dict(self) -> dict:
        return {
            "graph": self.graph_key,
            "p": self.p,
            "eps": self.eps,
            "replicas": self.replicas,
            "edge_count": self.edge_count,
            "threshold": self.threshold,
            "hits": self.hits,
            "frequency": self.frequency,
            "bound": self.bound,
            "within_bound": self.within_bound,
        }


def edge_concentration_check(
    G: HostGraph, measure, eps: float, replicas: int, seed: int
) -> ConcentrationReport:
    """Frequency of {open edges <= (1-3*eps)*p*e(G)} against its tail bound.

    The reference bound is 4*n*exp(-eps^3 * p * e(G) / (6*n)); it is often
    vacuous (> 1) at desk scales, in which case the comparison is trivially
    satisfied and the report simply records both numbers.
    """
    if not 0.0 < eps < 1.0 / 3.0:
        raise ValueError("eps must lie in (0, 1/3) for the tail event to bite")
    if replicas < 1:
        raise ValueError("replicas must be >= 1")
    e = len(G.eu)
    if e < 2.0 * G.n / eps:
        raise ValueError("graph too sparse: need e(G) >= 2n/eps")
    p = measure.p
    threshold = (1.0 - 3.0 * eps) * p * e
    hits = 0
    for r in range(replicas):
        s = sample_edges(measure, G, seed, replica=r)
        if s.open_count <= threshold:
            hits += 1
    bound = 4.0 * G.n * math.exp(-(eps**3) * p * e / (6.0 * G.n))
    return ConcentrationReport(
        G.key, p, eps, replicas, e, threshold, hits, hits / replicas, bound
    )
