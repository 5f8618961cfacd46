"""Edge measures: product baseline and state-based 1-independent laws.

A state-based measure assigns each vertex an independent random state (the
distribution may depend on a vertex class derived from coordinates) and
opens each edge by a deterministic or randomized rule on the ordered pair
of endpoint states plus an edge class.  Because vertex states are iid and
an edge only reads its own endpoints, vertex-disjoint edge sets are
independent by construction.

Supported constructions:

* ``build_product(p)``        -- independent coins, the comparison baseline;
* ``build_two_state(p)``      -- equal-state rule on iid {0,1} states;
* ``build_multi_state(r, p)`` -- equal-state rule on r+1 states, tuned so
  every edge marginal is exactly p for p in (1/(r+1), 1/r];
* ``build_lmr_lower(p)``      -- the two-layer construction that keeps the
  left and right halves of a doubled graph from sharing a majority
  component, valid for p in (1/2, 4-2*sqrt(3)];
* ``build_radial(p)``         -- the mod-6 annulus construction on open
  grid products, confining components to a bounded band of annuli.

Sampling is a pure function of (measure, graph, seed, replica); see
percolab.rng for the keying scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .graphs import HostGraph

#: Critical value 4 - 2*sqrt(3) of the inequality theta(p)*sqrt(p) <= 1-p.
P_STAR_THRESHOLD = 4.0 - 2.0 * math.sqrt(3.0)

#: Internal id of the absorbing pendant state in the three-state laws.
STAR = 2

_MARGINAL_TOL = 1e-12


class MeasureInvariantError(ValueError):
    """A measure failed one of its construction-time guarantees."""


class IncompatibleMeasureError(ValueError):
    """Measure bound to a graph whose shape it does not support."""


def theta(p: float) -> float:
    """Giant-cluster density (1 + sqrt(2p-1))/2.  Defined for p in (1/2, 1]."""
    if not 0.5 < p <= 1.0:
        raise ValueError("theta(p) requires p in (1/2, 1]")
    return 0.5 * (1.0 + math.sqrt(2.0 * p - 1.0))


@dataclass(frozen=True)
class StateSpec:
    """Vertex state space: labels plus one probability row per vertex class."""

    labels: tuple
    class_names: tuple
    probs: np.ndarray  # (n_classes, n_states)

    def __post_init__(self):
        probs = np.ascontiguousarray(self.probs, dtype=np.float64)
        if probs.shape != (len(self.class_names), len(self.labels)):
            raise ValueError("probability table shape mismatch")
        if probs.min() < 0.0:
            raise MeasureInvariantError("negative state probability")
        if np.abs(probs.sum(axis=1) - 1.0).max() > _MARGINAL_TOL:
            raise MeasureInvariantError("state probabilities must sum to 1 within 1e-12")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)


@dataclass(frozen=True)
class EdgeRule:
    """Open probability per (edge class, ordered state pair).

    probs[c, s_a, s_b] is the probability that an edge of class c with
    oriented endpoint states (s_a, s_b) is open.  Orientation is fixed by
    the measure's edge layout (e.g. (layer0, layer1) or (inner, outer)).
    """

    class_names: tuple
    probs: np.ndarray  # (n_edge_classes, n_states, n_states)

    def __post_init__(self):
        probs = np.ascontiguousarray(self.probs, dtype=np.float64)
        if probs.ndim != 3 or probs.shape[0] != len(self.class_names):
            raise ValueError("rule table shape mismatch")
        if probs.min() < 0.0 or probs.max() > 1.0:
            raise ValueError("rule probabilities must lie in [0, 1]")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def deterministic(self) -> bool:
        return bool(np.all((self.probs == 0.0) | (self.probs == 1.0)))


@dataclass(frozen=True)
class EdgeSample:
    """One sampled edge configuration: a bit per edge id of one graph."""

    graph_key: str
    bits: np.ndarray  # bool, length = edge count
    seed: int
    replica: int

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=bool)
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @property
    def open_count(self) -> int:
        return int(np.count_nonzero(self.bits))


def sample_to_hex(sample: EdgeSample) -> str:
    """Hex encoding of the bit vector (little-endian bit packing)."""
    return np.packbits(sample.bits, bitorder="little").tobytes().hex()


def hex_to_bits(hexstr: str, m: int) -> np.ndarray:
    raw = np.frombuffer(bytes.fromhex(hexstr), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:m].astype(bool)


class Measure:
    """Common interface of all edge measures."""

    variant = "abstract"
    construction = "abstract"

    def __init__(self, p: float):
        self.p = float(p)
        self._verified_graphs: set = set()

    def check_compatible(self, G: HostGraph) -> None:  # noqa: B027
        """Raise IncompatibleMeasureError if G's shape is unsupported."""

    def to_config(self) -> dict:
        return {"variant": self.variant, "construction": self.construction, "p": self.p}

    def __repr__(self):
        return f"{type(self).__name__}(p={self.p!r})"


class ProductMeasure(Measure):
    """Independent coin per edge, open with probability p."""

    variant = "product"
    construction = "product"


class StateBasedMeasure(Measure):
    """Vertex-state measure: subclasses supply classes, layout and rule."""

    variant = "state_based"

    def __init__(self, p: float, state_spec: StateSpec, edge_rule: EdgeRule):
        super().__init__(p)
        self.state_spec = state_spec
        self.edge_rule = edge_rule

    # subclasses implement these two
    def vertex_classes(self, G: HostGraph) -> np.ndarray:
        raise NotImplementedError

    def edge_layout(self, G: HostGraph):
        """(oriented_a, oriented_b, edge_class) arrays over edge ids."""
        raise NotImplementedError

    def _states_from_uniforms(self, G: HostGraph, u: np.ndarray) -> np.ndarray:
        vclass = self.vertex_classes(G)
        states = np.empty(u.shape, dtype=np.int8)
        nk = len(self.state_spec.labels)
        for c in range(len(self.state_spec.class_names)):
            sel = vclass == c
            if not np.any(sel):
                continue
            cum = np.cumsum(self.state_spec.probs[c])
            states[..., sel] = np.minimum(
                np.searchsorted(cum, u[..., sel], side="right"), nk - 1
            ).astype(np.int8)
        return states

    def _bits_from_states(self, G: HostGraph, states: np.ndarray,
                          seed: int, replica: int) -> np.ndarray:
        ea, eb, eclass = self.edge_layout(G)
        p_open = self.edge_rule.probs[eclass, states[ea], states[eb]]
        if self.edge_rule.deterministic:
            return p_open == 1.0
        coins = rng.uniforms(seed, (replica, rng.STREAM_EDGE), G.edge_count)
        return coins < p_open


def draw_states(m: Measure, G: HostGraph, seed: int, replica: int) -> np.ndarray:
    """The vertex states behind sample_edges(m, G, seed, replica)."""
    if not isinstance(m, StateBasedMeasure):
        raise ValueError("draw_states is defined for state-based measures only")
    m.check_compatible(G)
    u = rng.uniforms(seed, (replica, rng.STREAM_VERTEX), G.n)
    return m._states_from_uniforms(G, u)


def sample_edges(m: Measure, G: HostGraph, seed: int, replica: int) -> EdgeSample:
    """Draw one edge configuration.  Pure function of all four arguments."""
    m.check_compatible(G)
    _verify_marginals_once(m, G)
    if isinstance(m, ProductMeasure):
        bits = rng.uniforms(seed, (replica, rng.STREAM_EDGE), G.edge_count) < m.p
    else:
        states = draw_states(m, G, seed, replica)
        bits = m._bits_from_states(G, states, seed, replica)
    return EdgeSample(G.key, bits, seed, replica)


def edge_marginals(m: Measure, G: HostGraph) -> np.ndarray:
    """Exact open probability of every edge, by summing the rule over states."""
    m.check_compatible(G)
    if isinstance(m, ProductMeasure):
        return np.full(G.edge_count, m.p)
    ea, eb, eclass = m.edge_layout(G)
    vclass = m.vertex_classes(G)
    pa = m.state_spec.probs[vclass[ea]]
    pb = m.state_spec.probs[vclass[eb]]
    return np.einsum("ek,el,ekl->e", pa, pb, m.edge_rule.probs[eclass])


def edge_marginal(m: Measure, G: HostGraph, edge_id: int) -> float:
    if not 0 <= edge_id < G.edge_count:
        raise ValueError("edge id out of range")
    return float(edge_marginals(m, G)[edge_id])


def _verify_marginals_once(m: Measure, G: HostGraph) -> None:
    if G.key in m._verified_graphs:
        return
    lo = float(edge_marginals(m, G).min()) if G.edge_count else m.p
    if lo < m.p - _MARGINAL_TOL:
        raise MeasureInvariantError(
            f"edge marginal {lo} below p={m.p} on {G.key}"
        )
    m._verified_graphs.add(G.key)


# --------------------------------------------------------------------------
# constructions


def build_product(p: float) -> ProductMeasure:
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    return ProductMeasure(p)


class TwoStateMeasure(StateBasedMeasure):
    """Equal-state rule on iid {0,1} states with P[1] = theta(p)."""

    construction = "two_state"

    def __init__(self, p: float):
        if not 0.5 <= p <= 1.0:
            raise ValueError("two-state measure requires p in [1/2, 1]")
        th = 0.5 if p == 0.5 else theta(p)
        spec = StateSpec(("0", "1"), ("any",), np.array([[1.0 - th, th]]))
        rule = EdgeRule(("any",), np.eye(2)[None, :, :])
        super().__init__(p, spec, rule)
        self.theta = th

    def vertex_classes(self, G):
        return np.zeros(G.n, dtype=np.int32)

    def edge_layout(self, G):
        return G.edges[:, 0], G.edges[:, 1], np.zeros(G.edge_count, dtype=np.int32)


def build_two_state(p: float) -> TwoStateMeasure:
    return TwoStateMeasure(p)


class MultiStateMeasure(StateBasedMeasure):
    """Equal-state rule on r+1 states; marginal exactly p in (1/(r+1), 1/r]."""

    construction = "multi_state"

    def __init__(self, r: int, p: float):
        if r < 1:
            raise ValueError("r must be >= 1")
        if not 1.0 / (r + 1) < p <= 1.0 / r:
            raise ValueError(f"multi-state measure with r={r} requires p in (1/{r + 1}, 1/{r}]")
        s = (1.0 - math.sqrt(r * ((r + 1) * p - 1.0))) / (r + 1)
        probs = np.full(r + 1, (1.0 - s) / r)
        probs[r] = s
        labels = tuple(str(i + 1) for i in range(r + 1))
        spec = StateSpec(labels, ("any",), probs[None, :])
        rule = EdgeRule(("any",), np.eye(r + 1)[None, :, :])
        super().__init__(p, spec, rule)
        self.r = r
        self.rare_state_prob = s

    def vertex_classes(self, G):
        return np.zeros(G.n, dtype=np.int32)

    def edge_layout(self, G):
        return G.edges[:, 0], G.edges[:, 1], np.zeros(G.edge_count, dtype=np.int32)

    def to_config(self):
        cfg = super().to_config()
        cfg["r"] = self.r
        return cfg


def build_multi_state(r: int, p: float) -> MultiStateMeasure:
    return MultiStateMeasure(r, p)


class LmrLowerMeasure(StateBasedMeasure):
    """Two-layer construction blocking a shared majority component.

    Target graphs are products K2 x G.  Layer 0 draws states {0,1} with
    P[1] = theta(p); layer 1 draws {0,star} with P[0] = sqrt(p).  Edges
    inside layer 0 open on equal states, edges inside layer 1 open when
    both states are 0, and the matching edge at fiber v opens when the
    layer-1 endpoint is star or both endpoints are 0.  Every marginal is
    then >= p precisely because theta(p)*sqrt(p) <= 1-p on the admitted
    p range (1/2, 4-2*sqrt(3)].

    Structural consequences checked by the test-suite: star vertices have
    degree <= 1, and no component contains both a state-1 layer-0 vertex
    and a state-0 layer-1 vertex.
    """

    construction = "lmr_lower"

    _CLASS_L0, _CLASS_L1, _CLASS_CROSS = 0, 1, 2

    def __init__(self, p: float, n: int | None = None):
        if not 0.5 < p <= P_STAR_THRESHOLD:
            raise ValueError("lmr_lower requires p in (1/2, 4-2*sqrt(3)]")
        th = theta(p)
        sq = math.sqrt(p)
        spec = StateSpec(
            ("0", "1", "star"),
            ("layer0", "layer1"),
            np.array([[1.0 - th, th, 0.0], [sq, 0.0, 1.0 - sq]]),
        )
        probs = np.zeros((3, 3, 3))
        probs[self._CLASS_L0, 0, 0] = 1.0
        probs[self._CLASS_L0, 1, 1] = 1.0
        probs[self._CLASS_L1, 0, 0] = 1.0
        probs[self._CLASS_CROSS, :, STAR] = 1.0
        probs[self._CLASS_CROSS, 0, 0] = 1.0
        rule = EdgeRule(("layer0", "layer1", "cross"), probs)
        super().__init__(p, spec, rule)
        self.theta = th
        self.expected_fiber_count = n

    def check_compatible(self, G):
        if G.kind != "product" or G.h_factor is None:
            raise IncompatibleMeasureError("lmr_lower needs a product graph")
        if G.h_factor.n != 2 or G.h_factor.edge_count != 1:
            raise IncompatibleMeasureError("lmr_lower needs a two-layer product (K2 x G)")
        if self.expected_fiber_count is not None and G.g_factor.n != self.expected_fiber_count:
            raise IncompatibleMeasureError(
                f"measure was declared for {self.expected_fiber_count} fibers, graph has {G.g_factor.n}"
            )

    def vertex_classes(self, G):
        return G.layer

    def edge_layout(self, G):
        eu, ev = G.edges[:, 0], G.edges[:, 1]
        lu, lv = G.layer[eu], G.layer[ev]
        eclass = np.where(lu == lv, np.where(lu == 0, self._CLASS_L0, self._CLASS_L1),
                          self._CLASS_CROSS)
        swap = lu > lv  # orient cross edges as (layer0, layer1)
        ea = np.where(swap, ev, eu)
        eb = np.where(swap, eu, ev)
        return ea, eb, eclass.astype(np.int32)


def build_lmr_lower(p: float, n: int | None = None) -> LmrLowerMeasure:
    return LmrLowerMeasure(p, n)


class RadialMeasure(StateBasedMeasure):
    """Mod-6 annulus construction on open grid products.

    Vertex classes follow the sup-norm annulus index a mod 6:

    ====== ======================================
    a mod6 state distribution
    ====== ======================================
    0      1 surely
    1      1 w.p. theta(p), else 0
    2      0 w.p. sqrt(p), else star
    3      0 surely
    4      0 w.p. theta(p), else 1
    5      1 w.p. sqrt(p), else star
    ====== ======================================

    An edge opens when both states are equal and not star, or when it
    points outward (strictly larger annulus) into a star vertex.  Star
    vertices end up with degree <= 1 (their only candidate edge comes from
    the unique inward grid neighbor), so components never mix states 0
    and 1, and the 0/1 vertices of a component are confined to at most 4
    consecutive annuli.  Counting pendant star leaves the band is at most
    5; see components.annulus_span's include mask.
    """

    construction = "radial"

    _CLASS_LEVEL, _CLASS_OUTWARD = 0, 1

    def __init__(self, p: float, box: HostGraph | None = None, fiber: HostGraph | None = None):
        if not 0.5 < p <= P_STAR_THRESHOLD:
            raise ValueError("radial measure requires p in (1/2, 4-2*sqrt(3)]")
        th = theta(p)
        sq = math.sqrt(p)
        spec = StateSpec(
            ("0", "1", "star"),
            tuple(f"annulus_mod6_{i}" for i in range(6)),
            np.array(
                [
                    [0.0, 1.0, 0.0],
                    [1.0 - th, th, 0.0],
                    [sq, 0.0, 1.0 - sq],
                    [1.0, 0.0, 0.0],
                    [th, 1.0 - th, 0.0],
                    [0.0, sq, 1.0 - sq],
                ]
            ),
        )
        probs = np.zeros((2, 3, 3))
        probs[self._CLASS_LEVEL, 0, 0] = 1.0
        probs[self._CLASS_LEVEL, 1, 1] = 1.0
        probs[self._CLASS_OUTWARD, 0, 0] = 1.0
        probs[self._CLASS_OUTWARD, 1, 1] = 1.0
        probs[self._CLASS_OUTWARD, :, STAR] = 1.0
        rule = EdgeRule(("level", "outward"), probs)
        super().__init__(p, spec, rule)
        self.theta = th
        if box is not None and (box.kind != "grid2d" or box.annulus is None):
            raise IncompatibleMeasureError("radial box must be an open-boundary grid")
        self.expected_box_key = box.key if box is not None else None
        self.expected_fiber_key = fiber.key if fiber is not None else None

    def check_compatible(self, G):
        if G.kind != "product" or G.h_factor is None:
            raise IncompatibleMeasureError("radial measure needs a product graph")
        if G.h_factor.kind != "grid2d" or G.annulus is None:
            raise IncompatibleMeasureError(
                "radial measure needs an open-boundary grid as the first factor"
            )
        if self.expected_box_key is not None and G.h_factor.key != self.expected_box_key:
            raise IncompatibleMeasureError("graph box does not match the declared box")
        if self.expected_fiber_key is not None and G.g_factor.key != self.expected_fiber_key:
            raise IncompatibleMeasureError("graph fiber does not match the declared fiber")

    def vertex_classes(self, G):
        return (G.annulus % 6).astype(np.int32)

    def edge_layout(self, G):
        eu, ev = G.edges[:, 0], G.edges[:, 1]
        au, av = G.annulus[eu], G.annulus[ev]
        eclass = np.where(au == av, self._CLASS_LEVEL, self._CLASS_OUTWARD).astype(np.int32)
        swap = au > av  # orient as (inner, outer)
        ea = np.where(swap, ev, eu)
        eb = np.where(swap, eu, ev)
        return ea, eb, eclass


def build_radial(p: float, box: HostGraph | None = None, fiber: HostGraph | None = None) -> RadialMeasure:
    return RadialMeasure(p, box, fiber)


_CONSTRUCTIONS = {
    "product": lambda cfg: build_product(cfg["p"]),
    "two_state": lambda cfg: build_two_state(cfg["p"]),
    "multi_state": lambda cfg: build_multi_state(cfg["r"], cfg["p"]),
    "lmr_lower": lambda cfg: build_lmr_lower(cfg["p"]),
    "radial": lambda cfg: build_radial(cfg["p"]),
}


def measure_from_config(cfg: dict) -> Measure:
    """Rebuild a measure from its JSON-able config (inverse of to_config)."""
    name = cfg.get("construction")
    if name not in _CONSTRUCTIONS:
        raise ValueError(f"unknown measure construction {name!r}")
    return _CONSTRUCTIONS[name](cfg)


@dataclass(frozen=True)
class ProbeReport:
    """Empirical dependence check between two small edge sets."""

    graph_key: str
    edges_a: tuple
    edges_b: tuple
    replicas: int
    tv_discrepancy: float
    shares_vertex: bool
    seed: int


def independence_probe(m: Measure, G: HostGraph, edges_a, edges_b,
                       replicas: int, seed: int) -> ProbeReport:
    """Total-variation gap between the joint law of two edge sets and the
    product of their empirical marginals.

    Sets sharing a vertex are allowed; that is the negative-control mode
    (state-based measures are expected to show real dependence there).
    """
    edges_a = tuple(int(e) for e in edges_a)
    edges_b = tuple(int(e) for e in edges_b)
    if not 1 <= len(edges_a) <= 8 or not 1 <= len(edges_b) <= 8:
        raise ValueError("edge sets must have between 1 and 8 edges")
    if replicas < 1000:
        raise ValueError("need at least 1000 replicas")
    for e in edges_a + edges_b:
        if not 0 <= e < G.edge_count:
            raise ValueError("edge id out of range")
    m.check_compatible(G)
    _verify_marginals_once(m, G)
    verts_a = set(G.edges[list(edges_a)].ravel().tolist())
    verts_b = set(G.edges[list(edges_b)].ravel().tolist())
    shares = bool(verts_a & verts_b)

    ka, kb = len(edges_a), len(edges_b)
    counts = np.zeros((1 << ka) * (1 << kb), dtype=np.int64)
    pow_a = (1 << np.arange(ka)).astype(np.int64)
    pow_b = (1 << np.arange(kb)).astype(np.int64)
    want = np.array(edges_a + edges_b)

    gen = rng.generator(seed, rng.STREAM_VERTEX)
    chunk = 4096
    done = 0
    if isinstance(m, StateBasedMeasure):
        ea, eb, eclass = m.edge_layout(G)
        sel_a, sel_b, sel_c = ea[want], eb[want], eclass[want]
        if not m.edge_rule.deterministic:
            coin_gen = rng.generator(seed, rng.STREAM_EDGE)
    while done < replicas:
        r = min(chunk, replicas - done)
        if isinstance(m, ProductMeasure):
            bits = gen.random((r, len(want))) < m.p
        else:
            u = gen.random((r, G.n))
            states = m._states_from_uniforms(G, u)
            p_open = m.edge_rule.probs[sel_c, states[:, sel_a], states[:, sel_b]]
            if m.edge_rule.deterministic:
                bits = p_open == 1.0
            else:
                bits = coin_gen.random((r, len(want))) < p_open
        code = bits[:, :ka] @ pow_a * (1 << kb) + bits[:, ka:] @ pow_b
        counts += np.bincount(code, minlength=len(counts))
        done += r

    joint = counts.reshape(1 << ka, 1 << kb) / replicas
    marg_a = joint.sum(axis=1)
    marg_b = joint.sum(axis=0)
    tv = 0.5 * float(np.abs(joint - np.outer(marg_a, marg_b)).sum())
    return ProbeReport(G.key, edges_a, edges_b, replicas, tv, shares, seed)
