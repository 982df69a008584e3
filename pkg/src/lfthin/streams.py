"""Seeded random streams.

All sampling goes through numpy's PCG64 bit generator seeded via
``SeedSequence``; independent replicate streams come from ``spawn``.
"""
from __future__ import annotations

import numpy as np

RNG_ALGORITHM = "numpy.random.PCG64 seeded by numpy.random.SeedSequence"


def make_rng(seed) -> np.random.Generator:
    """Generator from an integer seed, a ``SeedSequence`` or an existing generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(ss))


def spawn_rngs(seed, n: int) -> list[np.random.Generator]:
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [np.random.Generator(np.random.PCG64(child)) for child in ss.spawn(n)]
