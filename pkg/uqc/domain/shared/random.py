from enum import IntEnum

import numpy as np

from .errors import ValidationError


def spawn_rng(seed: int, *keys: int) -> np.random.Generator:
    """
    Build a deterministic generator for the stream identified by ``keys``.

    Streams keyed by (seed, run, point) are independent of the order in
    which they are created, so results do not depend on scheduling.
    """
    entropy = [int(seed), *(int(k) for k in keys)]
    if any(value < 0 for value in entropy):
        raise ValidationError(f"Seed and stream keys must be non-negative, got {entropy}")
    return np.random.default_rng(np.random.SeedSequence(entropy))


class Stream(IntEnum):
    """First stream key of each stochastic stage"""
    INIT = 0
    TRAIN = 1
    EVAL = 2
    THEORY = 3
    MONTE_CARLO = 4
