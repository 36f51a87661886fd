"""Seeding helpers.

All randomness flows through numpy's counter-based Philox bit generator so
that trials can be split into independent, replayable streams: a root seed
plus a structured spawn key (e.g. ``[root, param_index, trial]``) always
yields the same stream regardless of scheduling or thread count.
"""

import numpy as np

__all__ = ["make_rng", "trial_rng"]


def make_rng(seed) -> np.random.Generator:
    """Build a Generator from an int seed, a list of ints (entropy key),
    a SeedSequence, or pass an existing Generator through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        ss = seed
    else:
        ss = np.random.SeedSequence(seed)
    return np.random.Generator(np.random.Philox(ss))


def trial_rng(root_seed: int, *key: int) -> np.random.Generator:
    """Independent stream for one trial, keyed by (root_seed, *key)."""
    return make_rng(np.random.SeedSequence([int(root_seed), *map(int, key)]))
