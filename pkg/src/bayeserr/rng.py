"""Seedable, splittable random streams.

All sampling goes through :func:`make_rng`.  A child stream is identified by
the parent seed plus a tuple of non-negative integers (for instance
``(n, trial)``); :class:`numpy.random.SeedSequence` hashes the pair into the
initial state of a PCG64 generator.  Both algorithms are fixed by NumPy's
stability policy, so a given ``(seed, key)`` always yields the same stream,
regardless of platform or of the order in which trials are executed.
"""

import numpy as np

DEFAULT_SEED = 0


def make_rng(seed=None, *key):
    """Return a generator for stream ``key`` under ``seed``.

    ``seed`` may already be a :class:`numpy.random.Generator`, in which case it
    is returned unchanged and ``key`` must be empty.
    """
    if isinstance(seed, np.random.Generator):
        if key:
            raise TypeError("cannot derive a keyed child stream from a live Generator")
        return seed
    if seed is None:
        seed = DEFAULT_SEED
    if isinstance(seed, np.random.SeedSequence):
        ss = np.random.SeedSequence(seed.entropy, spawn_key=tuple(seed.spawn_key) + key)
    else:
        ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))
