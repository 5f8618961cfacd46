"""Benchmark the union-find kernel: compiled extension vs pure Python.

Times ``uf_labels`` on a ladder of graph sizes and edge densities, checks
that both backends return identical labels, and reports the speedup.  An
end-to-end sweep timing (sampling + components through the public API) is
run in subprocesses so each backend is selected the way real imports
select it, via the PERCOLAB_PURE environment variable.

Usage: python3 benchmarks/bench_kernels.py [--quick]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from percolab.graphs import cartesian_product, complete_graph, erdos_renyi, grid_2d
from percolab.kernels import BACKEND, available_backends

_END_TO_END = """
import time
from percolab.experiments import SweepConfig, run_sweep
from percolab.kernels import BACKEND

cfg = SweepConfig(
    experiment="component_fraction",
    measure={{"construction": "two_state"}},
    p_values=(0.6,),
    n_values=({n},),
    replicas={replicas},
    seed=0,
)
t0 = time.perf_counter()
run_sweep(cfg)
print(f"{{BACKEND}} {{time.perf_counter() - t0:.3f}}")
"""


def _cases(quick: bool):
    yield "K2 x K500 (p=0.55)", cartesian_product(complete_graph(2), complete_graph(500)), 0.55
    yield "25x25 box x K20 (p=0.54)", cartesian_product(grid_2d(25, 25), complete_graph(20)), 0.54
    yield "ER(2000, 0.05) (p=0.6)", erdos_renyi(2000, 0.05, 0), 0.6
    if not quick:
        yield "ER(20000, 0.002) (p=0.6)", erdos_renyi(20_000, 0.002, 0), 0.6
        yield "K2 x K3000 (p=0.55)", cartesian_product(complete_graph(2), complete_graph(3000)), 0.55


def _time_kernel(fn, G, bits, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(G.n, G.eu, G.ev, bits)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="small cases only")
    args = parser.parse_args()

    backends = available_backends()
    print(f"active backend: {BACKEND}; available: {', '.join(sorted(backends))}")
    if "compiled" not in backends:
        print("compiled extension not built; timing the pure backend only")

    gen = np.random.default_rng(0)
    header = f"{'case':<28} {'edges':>9} " + "".join(f"{name:>12}" for name in sorted(backends))
    print(header)
    print("-" * len(header))
    for label, G, p in _cases(args.quick):
        bits = (gen.random(G.edge_count) < p).view(np.uint8)
        results = {}
        times = {}
        for name, fn in backends.items():
            times[name] = _time_kernel(fn, G, bits, repeats=3)
            results[name] = fn(G.n, G.eu, G.ev, bits)
        first = next(iter(results.values()))
        for other in results.values():
            assert np.array_equal(first, other), f"backend mismatch on {label}"
        row = f"{label:<28} {G.edge_count:>9} "
        row += "".join(f"{times[name] * 1e3:>10.2f}ms" for name in sorted(backends))
        if len(times) == 2:
            row += f"   x{times['pure'] / times['compiled']:.1f}"
        print(row)

    print()
    print("end-to-end sweep (two_state p=0.6, component fraction):")
    n, replicas = (500, 10) if args.quick else (2000, 20)
    for pure in ("0", "1"):
        env = dict(os.environ, PERCOLAB_PURE=pure)
        out = subprocess.run(
            [sys.executable, "-c", _END_TO_END.format(n=n, replicas=replicas)],
            env=env, capture_output=True, text=True, check=True,
        )
        backend, elapsed = out.stdout.split()
        print(f"  {backend:>9}: {float(elapsed):.3f}s  (K_{n}, {replicas} replicas)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
