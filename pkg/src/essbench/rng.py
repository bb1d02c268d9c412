"""Deterministic per-stream random generators.

Every stream is a Philox (counter-based) generator keyed by a 64-bit seed
derived from the master seed and a path of integer indices, so replicate k
gets the same variates no matter which worker draws it or in which order.
"""

import numpy as np

__all__ = ["splitmix64", "derive_seed", "generator"]

_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """The splitmix64 finaliser: a 64-bit avalanche hash."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def derive_seed(master_seed: int, *path: int) -> int:
    """Mix ``master_seed`` with each index of ``path`` in turn."""
    s = splitmix64(int(master_seed) & _MASK)
    for idx in path:
        s = splitmix64(s ^ (int(idx) & _MASK))
    return s


def generator(master_seed: int, *path: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=derive_seed(master_seed, *path)))
