"""Command-line front end.

Subcommands
-----------
sweep        Monte Carlo parameter sweeps -> CSV (see experiments module).
feasibility  Single-p feasibility verdict (JSON) or a `scan` over a p grid (CSV).
exact        Closed-form values: `pm`, `prob`, `p2n` -> JSON with rational
             and decimal forms where an exact rational exists.
decompose    Path/matching decompositions of a generated graph -> JSON.
audit        Pseudorandomness deviation audit of a generated graph -> JSON.
renormalise  Sample a product measure on grid x K_n and renormalise -> JSON.

All randomness flows through explicit --seed flags; rerunning a command
with identical flags reproduces its output byte for byte (sweeps excepted
only in their elapsed_ms column).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from fractions import Fraction

from . import exact as exact_mod
from . import feasibility as feas_mod
from .components import lift_consistency_check, renormalise
from .decompositions import matching_decomposition, path_decomposition
from .experiments import SweepConfig, run_sweep, sweep_config_from_json
from .graphs import (
    cartesian_product,
    complete_graph,
    erdos_renyi,
    grid_2d,
    hypercube,
    pseudorandomness_deviation,
)
from .measures import measure_from_config, sample_edges, sample_to_hex


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _rational_decimal(x: Fraction) -> dict:
    return {"rational": f"{x.numerator}/{x.denominator}", "decimal": float(x)}


def _build_graph(args) -> "HostGraph":
    kind = args.graph
    if kind == "complete":
        return complete_graph(args.n)
    if kind == "erdos_renyi":
        if args.q is None:
            raise SystemExit("erdos_renyi graphs need --q")
        return erdos_renyi(args.n, args.q, args.graph_seed)
    if kind == "hypercube":
        return hypercube(args.n)
    if kind == "grid":
        return grid_2d(args.n, args.n, boundary=args.boundary)
    raise SystemExit(f"unknown graph kind {kind!r}")


def _add_graph_flags(sub, default="complete"):
    sub.add_argument("--graph", default=default,
                     choices=["complete", "erdos_renyi", "hypercube", "grid"])
    sub.add_argument("--n", type=int, required=True,
                     help="vertices (complete/erdos_renyi), dimension (hypercube), or side (grid)")
    sub.add_argument("--q", type=float, default=None, help="edge density for erdos_renyi")
    sub.add_argument("--graph-seed", type=int, default=0)
    sub.add_argument("--boundary", default="open", choices=["open", "torus"])


def _cmd_sweep(args) -> int:
    if args.config:
        cfg = sweep_config_from_json(args.config)
        if args.out:
            cfg = SweepConfig(**{**asdict_sweep(cfg), "out": args.out})
    else:
        if not (args.experiment and args.measure and args.p and args.n):
            raise SystemExit("without --config, sweep needs --experiment, --measure, --p, --n")
        measure = {"construction": args.measure}
        if args.r is not None:
            measure["r"] = args.r
        graph = {"kind": args.fiber}
        if args.q is not None:
            graph["q"] = args.q
        params = {}
        if args.eps is not None:
            params["eps"] = args.eps
        if args.box is not None:
            params["box"] = args.box
        cfg = SweepConfig(
            experiment=args.experiment,
            measure=measure,
            graph=graph,
            p_values=tuple(args.p),
            n_values=tuple(args.n),
            replicas=args.reps,
            seed=args.seed,
            out=args.out,
            params=params,
        )
    csv_text = run_sweep(cfg)
    if not cfg.out:
        sys.stdout.write(csv_text)
    return 0


def asdict_sweep(cfg: SweepConfig) -> dict:
    return {
        "experiment": cfg.experiment,
        "measure": cfg.measure,
        "graph": cfg.graph,
        "p_values": cfg.p_values,
        "n_values": cfg.n_values,
        "replicas": cfg.replicas,
        "seed": cfg.seed,
        "out": cfg.out,
        "params": cfg.params,
    }


def _cmd_feasibility(args) -> int:
    cfg = feas_mod.SearchConfig(
        multistarts=args.starts, tol=args.tol, seed=args.seed
    )
    if args.mode == "scan":
        if args.lo is None or args.hi is None or args.step is None:
            raise SystemExit("feasibility scan needs --lo, --hi and --step")
        result = feas_mod.threshold_scan(args.lo, args.hi, args.step, cfg)
        text = result.to_csv()
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    if args.p is None:
        raise SystemExit("feasibility needs --p (or the scan mode)")
    verdict = feas_mod.search_feasible(args.p, cfg)
    _emit(
        {
            "p": verdict.p,
            "feasible": verdict.feasible,
            "min_violation": verdict.min_violation,
            "matrix": None if verdict.matrix is None else verdict.matrix.tolist(),
            "starts": verdict.starts,
            "tol": verdict.tol,
        },
        args.out,
    )
    return 0


def _cmd_exact(args) -> int:
    if args.what == "pm":
        parts = tuple(int(x) for x in args.parts.split(","))
        count = exact_mod.pm_count_tripartite(parts)
        _emit(
            {
                "parts": list(parts),
                "count": _rational_decimal(Fraction(count)),
            },
            args.out,
        )
        return 0
    if args.what == "prob":
        p = Fraction(args.p)
        small = exact_mod.small_component_prob(args.n, p)
        _emit(
            {
                "n": args.n,
                "p": f"{p.numerator}/{p.denominator}",
                "small_component_prob": _rational_decimal(small),
                "large_component_prob": _rational_decimal(1 - small),
            },
            args.out,
        )
        return 0
    if args.what == "p2n":
        value = exact_mod.p_lower_threshold(args.n)
        payload = {
            "n": args.n,
            "decimal": value,
            "closed_form": "(1 - tan(pi/(4*n))**2) / 2",
            "rational": "0/1" if args.n == 1 else None,
        }
        _emit(payload, args.out)
        return 0
    raise SystemExit(f"unknown exact query {args.what!r}")


def _cmd_decompose(args) -> int:
    G = _build_graph(args)
    paths = path_decomposition(G)
    payload = {
        "graph": G.key,
        "paths": [list(p) for p in paths.paths],
        "matchings": [],
        "leftover": [],
        "report": {},
    }
    if args.eps is not None:
        dec = matching_decomposition(G, args.eps)
        payload["matchings"] = [list(m) for m in dec.matchings]
        payload["leftover"] = list(dec.leftover)
        payload["report"] = dec.report
    _emit(payload, args.out)
    return 0


def _cmd_audit(args) -> int:
    G = _build_graph(args)
    if args.q is None:
        raise SystemExit("audit needs --q (the density the graph is audited against)")
    audit = pseudorandomness_deviation(G, args.q, num_samples=args.samples, seed=args.seed)
    _emit(asdict(audit), args.out)
    return 0


def _cmd_renormalise(args) -> int:
    H = grid_2d(args.box, args.box, boundary="open")
    PG = cartesian_product(H, complete_graph(args.n))
    measure = measure_from_config({"construction": args.measure, "p": args.p})
    s = sample_edges(measure, PG, args.seed, replica=args.replica)
    rs = renormalise(PG, s, H)
    lift_ok = lift_consistency_check(H, rs, PG, s)
    eh = len(H.eu)
    _emit(
        {
            "base_graph": H.key,
            "product_graph": PG.key,
            "p": args.p,
            "seed": args.seed,
            "replica": args.replica,
            "open_edges": [int(e) for e in rs.bits.nonzero()[0]],
            "bits_hex": sample_to_hex(rs),
            "density": rs.open_count / eh,
            "lift_consistent": bool(lift_ok),
        },
        args.out,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="percolab",
        description="Percolation laboratory: sweeps, feasibility scans, exact values.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a Monte Carlo sweep, emit CSV")
    sweep.add_argument("--config", help="JSON sweep config (file path or inline JSON)")
    sweep.add_argument("--experiment")
    sweep.add_argument("--measure", help="measure construction name")
    sweep.add_argument("--r", type=int, default=None, help="state count parameter for multi_state")
    sweep.add_argument("--p", type=float, nargs="+")
    sweep.add_argument("--n", type=int, nargs="+")
    sweep.add_argument("--reps", type=int, default=50)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--out")
    sweep.add_argument("--fiber", default="complete", choices=["complete", "erdos_renyi"])
    sweep.add_argument("--q", type=float, default=None)
    sweep.add_argument("--eps", type=float, default=None)
    sweep.add_argument("--box", type=int, default=None)
    sweep.set_defaults(func=_cmd_sweep)

    feas = sub.add_parser("feasibility", help="feasibility verdicts for the 3x3 system")
    feas.add_argument("mode", nargs="?", default="point", choices=["point", "scan"])
    feas.add_argument("--p", type=float, default=None)
    feas.add_argument("--lo", type=float, default=None)
    feas.add_argument("--hi", type=float, default=None)
    feas.add_argument("--step", type=float, default=None)
    feas.add_argument("--starts", type=int, default=500)
    feas.add_argument("--tol", type=float, default=1e-9)
    feas.add_argument("--seed", type=int, default=0)
    feas.add_argument("--out")
    feas.set_defaults(func=_cmd_feasibility)

    exact = sub.add_parser("exact", help="closed-form counts and probabilities")
    exact_sub = exact.add_subparsers(dest="what", required=True)
    pm = exact_sub.add_parser("pm", help="perfect matching count of a complete multipartite graph")
    pm.add_argument("--parts", required=True, help="comma-separated part sizes, e.g. 2,2,2")
    pm.add_argument("--out")
    prob = exact_sub.add_parser("prob", help="small/large component probabilities on K_{2n}")
    prob.add_argument("--n", type=int, required=True)
    prob.add_argument("--p", required=True, help="probability as a decimal or fraction string")
    prob.add_argument("--out")
    p2n = exact_sub.add_parser("p2n", help="lower threshold for 1-independent measures on K_{2n}")
    p2n.add_argument("--n", type=int, required=True)
    p2n.add_argument("--out")
    exact.set_defaults(func=_cmd_exact)

    dec = sub.add_parser("decompose", help="path and matching decompositions")
    _add_graph_flags(dec)
    dec.add_argument("--eps", type=float, default=None,
                     help="matching-decomposition slack; omit for paths only")
    dec.add_argument("--out")
    dec.set_defaults(func=_cmd_decompose)

    audit = sub.add_parser("audit", help="pseudorandomness deviation audit")
    _add_graph_flags(audit, default="erdos_renyi")
    audit.add_argument("--samples", type=int, default=200)
    audit.add_argument("--seed", type=int, default=0)
    audit.add_argument("--out")
    audit.set_defaults(func=_cmd_audit)

    ren = sub.add_parser("renormalise", help="sample grid x K_n and renormalise to the grid")
    ren.add_argument("--box", type=int, default=3)
    ren.add_argument("--n", type=int, required=True, help="fiber size (K_n)")
    ren.add_argument("--measure", default="product")
    ren.add_argument("--p", type=float, required=True)
    ren.add_argument("--seed", type=int, default=0)
    ren.add_argument("--replica", type=int, default=0)
    ren.add_argument("--out")
    ren.set_defaults(func=_cmd_renormalise)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
