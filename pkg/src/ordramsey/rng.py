"""Seeded counter-based generators.

Every random draw in the package goes through a Philox stream keyed by
``(seed, stream...)`` so Monte Carlo trials are reproducible one by one and
independent of how they are split across workers.
"""
from __future__ import annotations

import numpy as np

DEFAULT_SEED = 0


def generator(seed: int, *stream: int) -> np.random.Generator:
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, *(int(s) for s in stream)])
    return np.random.Generator(np.random.Philox(ss))


def random_permutation(n: int, rng: np.random.Generator) -> tuple[int, ...]:
    """Uniform permutation of ``[n]`` (Fisher-Yates via ``Generator.permutation``)."""
    return tuple(int(x) + 1 for x in rng.permutation(n))
