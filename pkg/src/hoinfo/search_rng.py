"""Deterministic RNG streams derived from a master seed.

Every stochastic task (sample index, annealing run, TSE scale) gets its own
generator keyed by (master_seed, stream indices). Results therefore depend
only on the seed and the task's index, never on scheduling order or worker
count.
"""
import numpy as np


def rng_for(master_seed, *stream):
    """Generator for the sub-task identified by ``stream`` under ``master_seed``."""
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.PCG64(seq))
