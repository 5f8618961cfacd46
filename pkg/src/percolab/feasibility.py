"""Numerical feasibility of the 3x3 two-block density system.

A nonnegative 3x3 matrix A is feasible at level p when all fourteen scalar
constraints below hold (residual convention: residual <= 0 means
satisfied, so max_violation is the largest positive residual):

* sum_lower:   A[0,0] + A[1,1] + p <= sum(A)
* sum_upper:   sum(A) <= 1
* half_col_j:  A[0,j] >= colsum_j / 2          (j = 0,1,2)
* half_row_i:  A[i,0] >= rowsum_i / 2          (i = 0,1,2)
* quad_col_j:  A[0,j]^2 + A[1,j]^2 >= p * colsum_j^2
* quad_row_i:  A[i,0]^2 + A[i,1]^2 >= p * rowsum_i^2

The rank-one analytic candidate outer(u, w) with u = (theta, 1-theta, 0)
and w = (sqrt(p), 0, 1-sqrt(p)) satisfies everything except possibly
sum_lower, which flips exactly at p = 4 - 2*sqrt(3).  The search is a
numerical companion, not a proof: infeasible verdicts mean the multistart
pattern search found no feasible point at the requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .measures import P_STAR_THRESHOLD, theta

RESIDUAL_NAMES = (
    "sum_lower",
    "sum_upper",
    "half_col_0", "half_col_1", "half_col_2",
    "half_row_0", "half_row_1", "half_row_2",
    "quad_col_0", "quad_col_1", "quad_col_2",
    "quad_row_0", "quad_row_1", "quad_row_2",
)


def _as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=np.float64)
    if A.shape != (3, 3):
        raise ValueError("feasibility matrices are 3x3")
    if A.min() < 0.0:
        raise ValueError("feasibility matrices must be entrywise nonnegative")
    return A


def _batch_residuals(p: float, X: np.ndarray) -> np.ndarray:
    """Residual table (N, 14) for a batch X of shape (N, 3, 3)."""
    S = X.sum(axis=(1, 2))
    col = X.sum(axis=1)   # (N, 3)
    row = X.sum(axis=2)   # (N, 3)
    out = np.empty((X.shape[0], 14))
    out[:, 0] = X[:, 0, 0] + X[:, 1, 1] + p - S
    out[:, 1] = S - 1.0
    out[:, 2:5] = 0.5 * col - X[:, 0, :]
    out[:, 5:8] = 0.5 * row - X[:, :, 0]
    out[:, 8:11] = p * col**2 - (X[:, 0, :] ** 2 + X[:, 1, :] ** 2)
    out[:, 11:14] = p * row**2 - (X[:, :, 0] ** 2 + X[:, :, 1] ** 2)
    return out


def _batch_max_violation(p: float, X: np.ndarray) -> np.ndarray:
    r = _batch_residuals(p, X)
    np.maximum(r, 0.0, out=r)
    return r.max(axis=1)


@dataclass(frozen=True)
class ResidualReport:
    """All fourteen residuals of one matrix at one level p."""

    p: float
    residuals: dict

    @property
    def max_violation(self) -> float:
        return max(0.0, max(self.residuals.values()))

    def satisfied(self, tol: float = 1e-12) -> bool:
        return self.max_violation <= tol

    def worst(self) -> str:
        return max(self.residuals, key=self.residuals.get)


def constraint_residuals(p: float, A) -> ResidualReport:
    """Exact residual evaluation of a single candidate matrix."""
    if not 0.0 < p <= 1.0:
        raise ValueError("p must lie in (0, 1]")
    A = _as_matrix(A)
    vals = _batch_residuals(p, A[None, :, :])[0]
    return ResidualReport(p, dict(zip(RESIDUAL_NAMES, vals.tolist())))


def analytic_candidate(p: float) -> np.ndarray:
    """Rank-one candidate outer(u, w); feasible iff p <= 4 - 2*sqrt(3)."""
    th = theta(p)
    u = np.array([th, 1.0 - th, 0.0])
    w = np.array([math.sqrt(p), 0.0, 1.0 - math.sqrt(p)])
    return np.outer(u, w)


@dataclass(frozen=True)
class SearchConfig:
    multistarts: int = 500
    iterations: int = 400          # pattern-search sweep budget
    tol: float = 1e-9
    seed: int = 0
    initial_step: float = 0.25
    min_step: float = 1e-8


@dataclass(frozen=True)
class FeasibilityVerdict:
    p: float
    feasible: bool
    matrix: np.ndarray | None
    min_violation: float
    starts: int
    tol: float


def search_feasible(p: float, cfg: SearchConfig = SearchConfig()) -> FeasibilityVerdict:
    """Multistart coordinate pattern search for a feasible matrix.

    Starts from the analytic candidate, the zero matrix, and uniform
    random matrices, then descends max_violation one coordinate move at a
    time (all starts advance in lockstep as one numpy batch).  A feasible
    verdict is always re-checked with an exact single-point evaluation,
    so max_violation <= tol is guaranteed for returned matrices.
    """
    if not 0.5 < p <= 1.0:
        raise ValueError("the search is defined for p in (1/2, 1]")
    if cfg.multistarts < 1:
        raise ValueError("need at least one start")
    n_random = max(0, cfg.multistarts - 2)
    gen = rng.generator(cfg.seed, rng.STREAM_START)
    X = np.concatenate([
        analytic_candidate(p)[None, :, :],
        np.zeros((1, 3, 3)),
        gen.uniform(0.0, 1.0 / 3.0, size=(n_random, 3, 3)),
    ])[: cfg.multistarts]
    fX = _batch_max_violation(p, X)

    def finish(idx: int) -> FeasibilityVerdict:
        A = X[idx].copy()
        exact = constraint_residuals(p, A).max_violation
        feasible = exact <= cfg.tol
        return FeasibilityVerdict(
            p, feasible, A if feasible else None, float(exact), cfg.multistarts, cfg.tol
        )

    if fX.min() <= cfg.tol:
        return finish(int(fX.argmin()))

    step = cfg.initial_step
    sweeps = 0
    while step >= cfg.min_step and sweeps < cfg.iterations:
        improved = False
        for i in range(3):
            for j in range(3):
                for sign in (1.0, -1.0):
                    Y = X.copy()
                    Y[:, i, j] = np.maximum(Y[:, i, j] + sign * step, 0.0)
                    fY = _batch_max_violation(p, Y)
                    better = fY < fX
                    if np.any(better):
                        X[better] = Y[better]
                        fX[better] = fY[better]
                        improved = True
        sweeps += 1
        if fX.min() <= cfg.tol:
            return finish(int(fX.argmin()))
        if not improved:
            step *= 0.5
    return finish(int(fX.argmin()))


@dataclass(frozen=True)
class ScanRow:
    p: float
    feasible: bool
    min_violation: float


@dataclass(frozen=True)
class ScanResult:
    rows: tuple
    largest_feasible_p: float | None

    def to_csv(self) -> str:
        lines = ["p,verdict,min_violation"]
        for r in self.rows:
            verdict = "feasible" if r.feasible else "infeasible"
            lines.append(f"{r.p!r},{verdict},{r.min_violation!r}")
        return "\n".join(lines) + "\n"


def threshold_scan(p_lo: float, p_hi: float, step: float,
                   cfg: SearchConfig = SearchConfig()) -> ScanResult:
    """Feasibility verdicts over an inclusive p grid."""
    if step <= 0:
        raise ValueError("step must be positive")
    if p_lo > p_hi:
        raise ValueError("need p_lo <= p_hi")
    rows = []
    largest = None
    k = 0
    while True:
        p = p_lo + k * step
        if p > p_hi + 1e-12:
            break
        point_cfg = SearchConfig(
            multistarts=cfg.multistarts,
            iterations=cfg.iterations,
            tol=cfg.tol,
            seed=rng.mix(cfg.seed, k),
            initial_step=cfg.initial_step,
            min_step=cfg.min_step,
        )
        verdict = search_feasible(min(p, 1.0), point_cfg)
        rows.append(ScanRow(verdict.p, verdict.feasible, verdict.min_violation))
        if verdict.feasible:
            largest = verdict.p
        k += 1
    return ScanResult(tuple(rows), largest)
