"""Seeded random streams.

Every stream is a numpy ``PCG64`` bit generator keyed by
``SeedSequence(entropy=seed, spawn_key=(purpose,))``. Only ``Generator.random``
(53-bit doubles from the raw PCG64 output) is ever drawn from, and uniform
integer choices are ``floor(u * m)``, so the streams do not depend on numpy's
distribution algorithms and are portable across platforms.

Purposes keep graph edges, clique placement and chain moves on disjoint
streams even when two integer seeds coincide.
"""

import numpy as np

GENERATOR_NAME = "numpy PCG64 via SeedSequence(entropy=seed, spawn_key=(purpose,))"

GRAPH = 0
CLIQUE = 1
CHAIN = 2

_U64 = (1 << 64) - 1


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= _U64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: int, purpose: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=check_seed(seed), spawn_key=(purpose,))
    return np.random.Generator(np.random.PCG64(ss))


def derive(seed: int, offset: int) -> int:
    """``seed + offset`` wrapped to 64 bits."""
    return (int(seed) + int(offset)) & _U64


def pick(rng: np.random.Generator, m: int) -> int:
    i = int(rng.random() * m)
    return min(i, m - 1)
