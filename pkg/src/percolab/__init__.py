"""percolab: a laboratory for 1-independent bond percolation models.

The package samples state-based edge measures on product graphs, checks
structural events (layer majorities, radial confinement, renormalised
lifts), scans a 3x3 constraint system for feasibility, and evaluates the
small collection of closed-form counts and probabilities that anchor the
Monte Carlo side as golden values.

Everything randomized is keyed by explicit integer seeds through
counter-based generators, so every experiment is replayable bit for bit.
"""

from .components import (
    ComponentSummary,
    annulus_span,
    connected_components,
    lift_consistency_check,
    lmr_event,
    renormalise,
)
from .decompositions import (
    MatchingDecomposition,
    PathDecomposition,
    matching_decomposition,
    path_decomposition,
)
from .exact import (
    complete_multipartite,
    p_lower_threshold,
    pm_count_bruteforce,
    pm_count_tripartite,
    prob_large_component,
    small_component_prob,
    two_state_small_component_brute,
)
from .experiments import (
    ConcentrationReport,
    SweepConfig,
    SweepRow,
    chernoff_samples,
    edge_concentration_check,
    run_sweep,
    sweep_config_from_json,
)
from .feasibility import (
    FeasibilityVerdict,
    ResidualReport,
    ScanResult,
    SearchConfig,
    analytic_candidate,
    constraint_residuals,
    search_feasible,
    threshold_scan,
)
from .graphs import (
    HostGraph,
    PseudorandomAudit,
    cartesian_product,
    complete_graph,
    custom_graph,
    erdos_renyi,
    graph_to_json,
    grid_2d,
    hypercube,
    pseudorandomness_deviation,
)
from .kernels import BACKEND
from .measures import (
    P_STAR_THRESHOLD,
    STAR,
    EdgeSample,
    IncompatibleMeasureError,
    Measure,
    MeasureInvariantError,
    build_lmr_lower,
    build_multi_state,
    build_product,
    build_radial,
    build_two_state,
    draw_states,
    edge_marginal,
    edge_marginals,
    hex_to_bits,
    independence_probe,
    measure_from_config,
    sample_edges,
    sample_to_hex,
    theta,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ComponentSummary",
    "ConcentrationReport",
    "EdgeSample",
    "FeasibilityVerdict",
    "HostGraph",
    "IncompatibleMeasureError",
    "MatchingDecomposition",
    "Measure",
    "MeasureInvariantError",
    "P_STAR_THRESHOLD",
    "PathDecomposition",
    "PseudorandomAudit",
    "ResidualReport",
    "ScanResult",
    "SearchConfig",
    "STAR",
    "SweepConfig",
    "SweepRow",
    "annulus_span",
    "analytic_candidate",
    "build_lmr_lower",
    "build_multi_state",
    "build_product",
    "build_radial",
    "build_two_state",
    "cartesian_product",
    "chernoff_samples",
    "complete_graph",
    "complete_multipartite",
    "connected_components",
    "constraint_residuals",
    "custom_graph",
    "draw_states",
    "edge_concentration_check",
    "edge_marginal",
    "edge_marginals",
    "erdos_renyi",
    "graph_to_json",
    "grid_2d",
    "hex_to_bits",
    "hypercube",
    "independence_probe",
    "lift_consistency_check",
    "lmr_event",
    "matching_decomposition",
    "measure_from_config",
    "p_lower_threshold",
    "path_decomposition",
    "pm_count_bruteforce",
    "pm_count_tripartite",
    "prob_large_component",
    "pseudorandomness_deviation",
    "renormalise",
    "run_sweep",
    "sample_edges",
    "sample_to_hex",
    "search_feasible",
    "small_component_prob",
    "sweep_config_from_json",
    "theta",
    "threshold_scan",
    "two_state_small_component_brute",
]
