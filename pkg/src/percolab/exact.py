"""Exact combinatorial companions to the simulation modules.

Everything here is computed in exact arithmetic (fractions.Fraction and
Python ints).  Floats passed in are converted with Fraction(float), i.e.
the exact binary value of the float, which keeps golden test values
bit-stable.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction

import numpy as np

from . import kernels
from .graphs import HostGraph, custom_graph


def p_lower_threshold(n: int) -> float:
    """(1 - tan^2(pi/4n))/2: below this no equal-marginal p is attainable
    by 1-independent measures on a cycle scale of 2n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t = math.tan(math.pi / (4 * n))
    return 0.5 * (1.0 - t * t)


def small_component_prob(n: int, p) -> Fraction:
    """P[largest component <= n] for the equal-state measure on K_{2n}:
    binom(2n, n) * ((1-p)/2)^n, exact in p."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pf = p if isinstance(p, Fraction) else Fraction(p)
    if not 0 <= pf <= 1:
        raise ValueError("p must lie in [0, 1]")
    if float(pf) < p_lower_threshold(n):
        warnings.warn(
            f"p={float(pf)} is below the n={n} attainability threshold; "
            "the formula is evaluated anyway",
            stacklevel=2,
        )
    return Fraction(math.comb(2 * n, n)) * ((1 - pf) / 2) ** n


def prob_large_component(n: int, p) -> Fraction:
    """P[largest component > n] on K_{2n} under the equal-state measure."""
    return 1 - small_component_prob(n, p)


def two_state_small_component_brute(n: int, p) -> Fraction:
    """Independent oracle for small_component_prob.

    Enumerates all 2^(2n) state vectors, computes components of the
    equal-state sample on K_{2n} with the union-find kernel, and sums the
    exact probability of the qualifying vectors.  The sum over vectors
    with k ones is reduced through the power-sum recurrence for
    theta^j + (1-theta)^j, whose coefficients are rational in p because
    theta(1-theta) = (1-p)/2 and theta + (1-theta) = 1.
    """
    if not 1 <= n <= 6:
        raise ValueError("brute force is for 2n <= 12 vertices")
    nv = 2 * n
    iu, iv = np.triu_indices(nv, k=1)
    eu = np.ascontiguousarray(iu, dtype=np.int32)
    ev = np.ascontiguousarray(iv, dtype=np.int32)
    hist = [0] * (nv + 1)
    for code in range(1 << nv):
        states = np.array([(code >> i) & 1 for i in range(nv)], dtype=np.int8)
        bits = np.ascontiguousarray(states[eu] == states[ev], dtype=np.uint8)
        roots = kernels.uf_labels(nv, eu, ev, bits)
        largest = int(np.bincount(roots).max())
        if largest <= n:
            hist[int(states.sum())] += 1
    for k in range(nv + 1):
        if hist[k] != hist[nv - k]:
            raise AssertionError("state-flip symmetry violated; enumeration bug")
    pf = p if isinstance(p, Fraction) else Fraction(p)
    m = (1 - pf) / 2  # theta * (1 - theta)
    # S[j] = theta^j + (1-theta)^j
    S = [Fraction(2), Fraction(1)]
    for _ in range(2, nv + 1):
        S.append(S[-1] - m * S[-2])
    total = hist[n] * m**n
    for k in range(n):
        total += hist[k] * m**k * S[nv - 2 * k]
    return total


def pm_count_tripartite(parts) -> int:
    """Perfect matchings of a complete multipartite graph with <= 3 parts.

    For part sizes (a, b, c) summing to 2n with every part <= n the count
    is a! b! c! / ((n-a)! (n-b)! (n-c)!).  Parts are padded with zeros up
    to three entries.  More than three nonzero parts are rejected: merging
    two small parts only removes edges, so it is a lower-bound reduction,
    not a count-preserving normalisation.
    """
    parts = tuple(int(x) for x in parts)
    if len(parts) > 3:
        raise ValueError("at most 3 parts are supported")
    if any(x < 0 for x in parts):
        raise ValueError("part sizes must be nonnegative")
    a, b, c = (parts + (0, 0, 0))[:3]
    total = a + b + c
    if total == 0 or total % 2:
        raise ValueError("part sizes must sum to a positive even number")
    n = total // 2
    if max(a, b, c) > n:
        raise ValueError("no perfect matching: one part exceeds half the vertices")
    num = math.factorial(a) * math.factorial(b) * math.factorial(c)
    den = math.factorial(n - a) * math.factorial(n - b) * math.factorial(n - c)
    count, rem = divmod(num, den)
    if rem:
        raise AssertionError("matching count must be integral")
    return count


def complete_multipartite(parts) -> HostGraph:
    """Complete multipartite host graph; vertices grouped part by part."""
    parts = tuple(int(x) for x in parts if int(x) > 0)
    n = sum(parts)
    bounds = []
    start = 0
    for size in parts:
        bounds.append((start, start + size))
        start += size
    edges = []
    for i in range(len(bounds)):
        for j in range(i + 1, len(bounds)):
            for u in range(*bounds[i]):
                for v in range(*bounds[j]):
                    edges.append((u, v))
    label = "x".join(str(s) for s in parts)
    return custom_graph(n, edges, name=f"multipartite_{label}")


def pm_count_bruteforce(G: HostGraph) -> int:
    """Count perfect matchings by branching on the lowest unmatched vertex.

    Odd vertex counts return 0 by convention.  Limited to 16 vertices.
    """
    if G.n > 16:
        raise ValueError("brute force is limited to 16 vertices")
    if G.n % 2:
        return 0
    adj = [[] for _ in range(G.n)]
    for u, v in G.edges.tolist():
        adj[u].append(v)
        adj[v].append(u)
    full = (1 << G.n) - 1

    def rec(mask: int) -> int:
        if mask == full:
            return 1
        free = ~mask & full
        u = (free & -free).bit_length() - 1
        total = 0
        for v in adj[u]:
            if not (mask >> v) & 1:
                total += rec(mask | (1 << u) | (1 << v))
        return total

    return rec(0)
