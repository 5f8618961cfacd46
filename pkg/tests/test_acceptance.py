"""End-to-end acceptance checks, one test per shipped guarantee.

Each test prints a single ``[criterion NN] PASS/FAIL`` line and then
asserts, so a plain ``pytest -v -s tests/test_acceptance.py`` doubles as
the acceptance report.  Statistical checks run at fixed seeds; their
margins were chosen so that honest resampling passes with room to spare.

Criterion 08 ships in two parts.  The structural half (no 0/1 mixing,
state-0/1 band confined to four annuli, full components to five) passes
and guards every attainable sub-claim.  The literal half additionally
demands the four-annulus bound for full components *including* pendant
star leaves; outward edges into star vertices extend the band to five,
so that test is expected to fail and is marked xfail(strict=True) to
keep the gap visible without hiding regressions.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction

import numpy as np
import pytest

from percolab import rng
from percolab.components import (
    annulus_span,
    connected_components,
    lift_consistency_check,
    lmr_event,
    renormalise,
)
from percolab.decompositions import matching_decomposition
from percolab.exact import (
    complete_multipartite,
    pm_count_bruteforce,
    pm_count_tripartite,
    small_component_prob,
    two_state_small_component_brute,
)
from percolab.experiments import SweepConfig, run_sweep
from percolab.feasibility import (
    SearchConfig,
    analytic_candidate,
    constraint_residuals,
    threshold_scan,
)
from percolab.graphs import cartesian_product, complete_graph, erdos_renyi, grid_2d
from percolab.measures import (
    P_STAR_THRESHOLD,
    STAR,
    build_lmr_lower,
    build_multi_state,
    build_product,
    build_radial,
    build_two_state,
    draw_states,
    sample_edges,
    theta,
)

P_C = P_STAR_THRESHOLD  # 4 - 2*sqrt(3)


def _report(num: str, ok: bool, detail: str) -> None:
    print(f"[criterion {num}] {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"criterion {num}: {detail}"


# --------------------------------------------------------------------------
# 01 — closed-form constants at the threshold


def test_criterion_01_threshold_constants():
    errs = {
        "p_c": abs(P_C - (4.0 - 2.0 * math.sqrt(3.0))),
        "theta(p_c)": abs(theta(P_C) - (3.0 - math.sqrt(3.0)) / 2.0),
        "sqrt(p_c)": abs(math.sqrt(P_C) - (math.sqrt(3.0) - 1.0)),
    }
    chain = (
        1.0 / math.sqrt(P_C) - 1.0,
        1.0 - theta(P_C),
        (theta(P_C) / (1.0 - P_C)) * (P_C / 2.0),
        (math.sqrt(3.0) - 1.0) / 2.0,
    )
    for i, a in enumerate(chain):
        for b in chain[i + 1 :]:
            errs[f"chain[{i}]"] = max(errs.get(f"chain[{i}]", 0.0), abs(a - b))
    worst = max(errs.values())
    _report("01", worst <= 1e-12, f"max error {worst:.3e} over {sorted(errs)} (tol 1e-12)")


# --------------------------------------------------------------------------
# 02 — state-agreement identities on random p


def test_criterion_02_theta_identities():
    u = np.random.default_rng(42).random(10_000)
    worst = 0.0
    for p in 1.0 - 0.5 * u:  # p in (1/2, 1]
        th = theta(p)
        worst = max(
            worst,
            abs(th * th + (1.0 - th) * (1.0 - th) - p),
            abs(2.0 * th * (1.0 - th) - (1.0 - p)),
        )
    _report("02", worst < 1e-12, f"max identity error {worst:.3e} on 10^4 p-values (tol 1e-12)")


# --------------------------------------------------------------------------
# 03 — feasibility flip located by the multistart scan


def test_criterion_03_feasibility_flip_bracket():
    scan = threshold_scan(0.51, 0.60, 0.002, SearchConfig(multistarts=500))
    verdicts = [r.feasible for r in scan.rows]
    flips = [i for i in range(len(verdicts) - 1) if verdicts[i] != verdicts[i + 1]]
    ok = len(flips) == 1
    detail = f"{len(flips)} verdict flips"
    if ok:
        lo, hi = scan.rows[flips[0]].p, scan.rows[flips[0] + 1].p
        ok = (
            verdicts[0]
            and not verdicts[-1]
            and lo >= 0.534 - 1e-9
            and hi <= 0.538 + 1e-9
            and lo < P_C < hi
            and scan.largest_feasible_p == lo
        )
        detail = f"single flip in [{lo:.3f}, {hi:.3f}] ⊆ [0.534, 0.538], contains {P_C:.6f}"
    _report("03", ok, detail)


# --------------------------------------------------------------------------
# 04 — rank-one candidate: feasible below the threshold, violated above


def test_criterion_04_analytic_candidate_two_regimes():
    worst_below = 0.0
    for k in range(1, 101):  # p in (1/2, p_c]
        p = 0.5 + k * (P_C - 0.5) / 100.0
        worst_below = max(
            worst_below, constraint_residuals(p, analytic_candidate(p)).max_violation
        )
    min_above = math.inf
    bad_name = None
    for k in range(1, 101):  # p in (p_c, 1]
        p = min(P_C + k * (1.0 - P_C) / 100.0, 1.0)
        rep = constraint_residuals(p, analytic_candidate(p))
        min_above = min(min_above, rep.residuals["sum_lower"])
        if rep.worst() != "sum_lower":
            bad_name = (p, rep.worst())
    ok = worst_below <= 1e-12 and min_above > 0.0 and bad_name is None
    _report(
        "04",
        ok,
        f"below: max violation {worst_below:.3e} (tol 1e-12); "
        f"above: pair-sum lower residual ≥ {min_above:.3e} and is the worst residual",
    )


# --------------------------------------------------------------------------
# 05 — half-split probability: closed form == brute force, Monte Carlo agrees


def test_criterion_05_half_split_exact_and_monte_carlo():
    reps = 100_000
    worst_z = 0.0
    for n in (2, 3, 4, 5):
        G = complete_graph(2 * n)
        for pf in (Fraction(11, 20), Fraction(3, 5), Fraction(7, 10)):
            P = small_component_prob(n, pf)
            assert isinstance(P, Fraction)
            assert P == Fraction(math.comb(2 * n, n)) * ((1 - pf) / 2) ** n
            assert two_state_small_component_brute(n, pf) == P

            m = build_two_state(float(pf))
            # the half-split event equals the size-<=n component event:
            # cross-checked replica-by-replica through the full sampler
            for rep in range(300):
                summ = connected_components(G, sample_edges(m, G, 7, rep))
                by_states = int((draw_states(m, G, 7, rep) == 1).sum()) == n
                assert bool(summ.sizes.max() <= n) == by_states
            hits = sum(
                int((draw_states(m, G, 0, rep) == 1).sum()) == n for rep in range(reps)
            )
            Pf = float(P)
            z = abs(hits / reps - Pf) / math.sqrt(Pf * (1.0 - Pf) / reps)
            worst_z = max(worst_z, z)
    _report(
        "05",
        worst_z <= 4.0,
        f"12 cells exact (rational); MC 10^5 replicas worst |z| = {worst_z:.2f} (≤ 4 SE)",
    )


# --------------------------------------------------------------------------
# 06 — perfect-matching counts across all small part profiles


def _profiles(total: int):
    for a in range(total // 2, 0, -1):
        for b in range(min(a, total - a), 0, -1):
            c = total - a - b
            if c == 0:
                yield (a, b)
            elif 0 < c <= b:
                yield (a, b, c)


def test_criterion_06_matching_count_scan():
    checked = 0
    for total in (2, 4, 6, 8, 10, 12):
        n = total // 2
        counts = {}
        for parts in _profiles(total):
            cnt = pm_count_tripartite(parts)
            assert cnt == pm_count_bruteforce(complete_multipartite(parts)), parts
            counts[parts] = cnt
            checked += 1
        assert min(counts.values()) == math.factorial(n)
        assert counts[(n, n)] == math.factorial(n)
    _report(
        "06",
        True,
        f"{checked} profiles: formula == brute force; minimum n! attained at (n, n)",
    )


# --------------------------------------------------------------------------
# 07 — majority-overlap transition at desk scale


def test_criterion_07_lmr_transition():
    G = cartesian_product(complete_graph(2), complete_graph(500))
    freqs = {}
    for name, m in (
        ("lmr_lower@0.53", build_lmr_lower(0.53)),
        ("product@0.55", build_product(0.55)),
        ("two_state@0.55", build_two_state(0.55)),
    ):
        freqs[name] = (
            sum(lmr_event(G, sample_edges(m, G, 0, rep)) for rep in range(200)) / 200.0
        )
    ok = (
        freqs["lmr_lower@0.53"] <= 0.05
        and freqs["product@0.55"] >= 0.99
        and freqs["two_state@0.55"] >= 0.95
    )
    _report(
        "07",
        ok,
        f"200 replicas on K2xK500: lmr_lower {freqs['lmr_lower@0.53']:.3f} ≤ 0.05, "
        f"product {freqs['product@0.55']:.3f} ≥ 0.99, "
        f"two_state {freqs['two_state@0.55']:.3f} ≥ 0.95",
    )


# --------------------------------------------------------------------------
# 08 — radial confinement on the open box


@functools.lru_cache(maxsize=1)
def _radial_runs():
    box = grid_2d(25, 25)
    G = cartesian_product(box, complete_graph(20))
    m = build_radial(P_C)
    mixed = 0
    span_all = []
    span_core = []
    for rep in range(100):
        s = sample_edges(m, G, 0, rep)
        states = draw_states(m, G, 0, rep)
        summ = connected_components(G, s)
        has0 = np.zeros(summ.count, dtype=bool)
        has1 = np.zeros(summ.count, dtype=bool)
        has0[summ.labels[states == 0]] = True
        has1[summ.labels[states == 1]] = True
        mixed += int(np.any(has0 & has1))
        span_all.append(annulus_span(G, s))
        span_core.append(annulus_span(G, s, include=states != STAR))
    return mixed, max(span_all), max(span_core)


def test_criterion_08_radial_confinement_structure():
    mixed, span_all, span_core = _radial_runs()
    ok = mixed == 0 and span_core <= 4 and span_all <= 5
    _report(
        "08",
        ok,
        f"100 replicas on 25x25 box x K20: {mixed} replicas mix states 0/1; "
        f"state-0/1 band spans ≤ {span_core} annuli (≤ 4); "
        f"full components ≤ {span_all} (≤ 5 with pendant star leaves)",
    )


@pytest.mark.xfail(
    strict=True,
    reason="pendant star leaves attach one annulus outward, so full components "
    "reach five consecutive annuli; the four-annulus bound holds for the "
    "state-0/1 vertices only (see the structural test above)",
)
def test_criterion_08_radial_confinement_literal_span():
    mixed, span_all, _ = _radial_runs()
    ok = mixed == 0 and span_all <= 4
    _report(
        "08-literal",
        ok,
        f"full-component annulus span ≤ {span_all} (literal bound 4, star leaves included)",
    )


# --------------------------------------------------------------------------
# 09 — renormalised sample stays coupled to the fine sample


def test_criterion_09_renormalisation_coupling():
    H = grid_2d(3, 3)
    PG = cartesian_product(H, complete_graph(200))
    lift_ok = 0
    for builder in (build_product, build_two_state):
        m = builder(0.6)
        for rep in range(100):
            s = sample_edges(m, PG, 0, rep)
            lift_ok += int(lift_consistency_check(H, renormalise(PG, s, H), PG, s))

    PG5 = cartesian_product(H, complete_graph(500))
    densities = {}
    for builder in (build_product, build_two_state):
        m = builder(0.6)
        dens = [
            renormalise(PG5, sample_edges(m, PG5, 0, rep), H).bits.mean()
            for rep in range(100)
        ]
        densities[m.construction] = float(np.mean(dens))
    ok = lift_ok == 200 and all(d >= 0.99 for d in densities.values())
    _report(
        "09",
        ok,
        f"lift consistent in {lift_ok}/200 replicas (product + two_state, 3x3 x K200); "
        f"renormalised density at 500 fibers: product {densities['product']:.4f}, "
        f"two_state {densities['two_state']:.4f} (≥ 0.99)",
    )


# --------------------------------------------------------------------------
# 10 — largest-component fraction matches the closed forms


def test_criterion_10_component_fraction_targets():
    targets = (
        ({"construction": "two_state"}, 0.6, (1.0 + math.sqrt(0.2)) / 2.0),
        ({"construction": "multi_state", "r": 2}, 0.4, (1.0 + math.sqrt(0.1)) / 3.0),
    )
    details = []
    ok = True
    for measure, p, target in targets:
        cfg = SweepConfig(
            experiment="component_fraction",
            measure=measure,
            graph={"kind": "erdos_renyi", "q": 0.05, "seed": 0},
            p_values=(p,),
            n_values=(2000,),
            replicas=50,
            seed=0,
        )
        mean = float(run_sweep(cfg).strip().split("\n")[1].split(",")[4])
        ok = ok and abs(mean - target) <= 0.02
        details.append(f"{measure['construction']} p={p}: |{mean:.4f} - {target:.4f}| "
                       f"= {abs(mean - target):.4f}")
    _report("10", ok, "; ".join(details) + " (tol 0.02, ER(2000, 0.05), 50 replicas)")


# --------------------------------------------------------------------------
# 11 — matching decomposition contracts on random graphs


def test_criterion_11_matching_decomposition_contracts():
    eps = 0.1
    worst_leftover = 0.0
    worst_margin = math.inf
    for seed in range(10):
        G = erdos_renyi(200, 0.5, seed)
        md = matching_decomposition(G, eps)
        e, n = G.edge_count, G.n
        # matchings really are matchings and partition their edges
        seen: set[int] = set()
        for mt in md.matchings:
            verts = G.edges[list(mt)].ravel()
            assert len(set(verts.tolist())) == 2 * len(mt)
            assert seen.isdisjoint(mt)
            seen.update(mt)
        assert seen.isdisjoint(md.leftover)
        assert len(seen) + len(md.leftover) == e
        # M2, M3 recomputed from scratch; M1 as reported
        assert len(md.leftover) <= 2.0 * eps * e
        assert all(len(mt) >= eps * e / (2.0 * n) for mt in md.matchings)
        assert md.report["M2"] is True and md.report["M3"] is True
        assert md.report["M1"] is True and len(md.matchings) <= 2 * n
        worst_leftover = max(worst_leftover, len(md.leftover) / (2.0 * eps * e))
        worst_margin = min(
            worst_margin,
            min(len(mt) for mt in md.matchings) / (eps * e / (2.0 * n)),
        )
    _report(
        "11",
        True,
        f"10 seeds of ER(200, 0.5), eps=0.1: leftover ≤ {worst_leftover:.2f}x its bound, "
        f"smallest matching ≥ {worst_margin:.2f}x its bound, matching count ≤ 2n",
    )


# --------------------------------------------------------------------------
# 12 — sweeps are bit-identical under a fixed seed


def _strip_elapsed(csv_text: str) -> str:
    return "\n".join(line.rsplit(",", 1)[0] for line in csv_text.strip().split("\n"))


def test_criterion_12_sweep_determinism():
    configs = (
        SweepConfig(experiment="lmr", measure={"construction": "two_state"},
                    p_values=(0.6,), n_values=(30,), replicas=8, seed=3),
        SweepConfig(experiment="component_fraction", measure={"construction": "product"},
                    graph={"kind": "erdos_renyi", "q": 0.3, "seed": 1},
                    p_values=(0.6, 0.7), n_values=(50,), replicas=6, seed=3),
        SweepConfig(experiment="annulus", measure={"construction": "radial"},
                    params={"box": 13}, p_values=(0.535,), n_values=(4,),
                    replicas=4, seed=3),
        SweepConfig(experiment="renormalise_density", measure={"construction": "product"},
                    params={"box": 3}, p_values=(0.6,), n_values=(40,),
                    replicas=5, seed=3),
        SweepConfig(experiment="edge_concentration", measure={"construction": "product"},
                    params={"eps": 0.25}, p_values=(0.7,), n_values=(20,),
                    replicas=6, seed=3),
    )
    for cfg in configs:
        first, second = _strip_elapsed(run_sweep(cfg)), _strip_elapsed(run_sweep(cfg))
        assert first == second, f"{cfg.experiment} sweep not reproducible"
        assert len(first.split("\n")) == 1 + len(cfg.p_values) * len(cfg.n_values)
    _report(
        "12",
        True,
        f"{len(configs)} experiments rerun bit-identically (elapsed_ms column excluded)",
    )
