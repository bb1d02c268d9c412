"""Asymptotic variance by non-overlapping and overlapping batch means."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import IactEstimate, as_samples, mean_and_var
from .errors import TooFewBatchesError

__all__ = ["BatchSpec", "resolve_batch_size", "iact_bm", "iact_obm"]

SIZE_POLICIES = ("fixed", "count_cuberoot", "count_twothirds")


@dataclass(frozen=True)
class BatchSpec:
    """How to batch a chain.

    ``count_cuberoot`` / ``count_twothirds`` fix the number of batches at
    floor(N^(1/3)) / floor(N^(2/3)); ``fixed`` takes the batch size ``m``.
    """

    mode: str = "nonoverlapping"
    size_policy: str = "count_cuberoot"
    m: int | None = None
    unbiased: bool = False

    def __post_init__(self):
        if self.mode not in ("nonoverlapping", "overlapping"):
            raise ValueError(f"unknown batch mode {self.mode!r}")
        if self.size_policy not in SIZE_POLICIES:
            raise ValueError(f"unknown size policy {self.size_policy!r}")
        if self.size_policy == "fixed" and (self.m is None or self.m < 2):
            raise ValueError("fixed batch size needs m >= 2")


def resolve_batch_size(n: int, spec: BatchSpec) -> int:
    if spec.size_policy == "fixed":
        return int(spec.m)
    # k = floor(cuberoot(n) or cuberoot(n^2)) in exact integers
    target = n if spec.size_policy == "count_cuberoot" else n * n
    k = int(round(target ** (1.0 / 3.0)))
    while k ** 3 > target:
        k -= 1
    while (k + 1) ** 3 <= target:
        k += 1
    return max(n // max(k, 1), 1)


def iact_bm(chain, spec: BatchSpec = BatchSpec()):
    """Non-overlapping batch means.

    Returns ``(gamma2, IactEstimate)`` where gamma2 = m * (1/k) sum (mu_j - mu)^2
    estimates the asymptotic variance and IACT = gamma2 / R(0). Samples beyond
    k*m are dropped from the end.
    """
    x = as_samples(chain)
    n = x.shape[0]
    m = resolve_batch_size(n, spec)
    k = n // m if m >= 1 else 0
    if k < 2:
        raise TooFewBatchesError(f"batch size {m} leaves {k} batch(es) of {n} samples")
    means = x[: k * m].reshape(k, m).mean(axis=1)
    dev = means - means.mean()
    denom = k - 1 if spec.unbiased else k
    gamma_bm = float(np.dot(dev, dev)) / denom
    gamma2 = m * gamma_bm
    _, r0 = mean_and_var(x)
    tau = gamma2 / r0 if r0 > 0 else math.nan
    params = {"m": m, "k": k, "size_policy": spec.size_policy}
    return gamma2, IactEstimate(tau, "bm", params, n)


def iact_obm(chain, spec: BatchSpec = BatchSpec(mode="overlapping")):
    """Overlapping batch means over all N - m + 1 windows of length m.

    gamma2 = N m / ((N - m)(N - m + 1)) * sum_j (mu_j - mean)^2 with window
    means from a running sum.
    """
    x = as_samples(chain)
    n = x.shape[0]
    m = resolve_batch_size(n, spec)
    if not 2 <= m <= n - 1:
        raise ValueError(f"OBM batch size must lie in [2, {n - 1}], got {m}")
    mean = float(np.mean(x))
    csum = np.concatenate(([0.0], np.cumsum(x - mean)))
    window_dev = (csum[m:] - csum[:-m]) / m
    ss = float(np.dot(window_dev, window_dev))
    gamma2 = n * m / ((n - m) * (n - m + 1)) * ss
    _, r0 = mean_and_var(x)
    tau = gamma2 / r0 if r0 > 0 else math.nan
    params = {"m": m, "size_policy": spec.size_policy}
    return gamma2, IactEstimate(tau, "obm", params, n)
