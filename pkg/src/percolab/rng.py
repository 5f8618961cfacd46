"""Counter-based randomness, keyed so results never depend on loop order.

Every random draw in the package goes through a Philox generator keyed by a
tuple (seed, replica, stream).  Per-vertex and per-edge variates are drawn as
whole arrays indexed by vertex/edge id, so a sample is a pure function of
(seed, replica) no matter how the caller iterates.  Determinism is promised
within this implementation only, not across numpy major versions.
"""

from __future__ import annotations

import numpy as np

# Stream tags keep logically distinct draws on distinct key paths.
STREAM_VERTEX = 0
STREAM_EDGE = 1
STREAM_SUBSET = 2
STREAM_START = 3


def generator(seed: int, *path: int) -> np.random.Generator:
    """Philox generator for the key (seed, *path)."""
    ss = np.random.SeedSequence((int(seed),) + tuple(int(x) for x in path))
    return np.random.Generator(np.random.Philox(ss))


def uniforms(seed: int, path: tuple[int, ...], size: int) -> np.ndarray:
    """size uniforms on [0,1) for the key (seed, *path), drawn in one block."""
    return generator(seed, *path).random(size)


def mix(seed: int, replica: int) -> int:
    """Derive the 64-bit child seed used for one replica of an experiment."""
    ss = np.random.SeedSequence((int(seed), int(replica)))
    return int(ss.generate_state(1, np.uint64)[0])
