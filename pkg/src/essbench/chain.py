"""Chain containers, sample moments, autocovariances and MCSE arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInputError, InvalidIACTError, ZeroVarianceError
from .normal import normal_quantile

__all__ = [
    "Chain",
    "ChainSet",
    "AcovSeq",
    "IactEstimate",
    "as_samples",
    "mean_and_var",
    "autocov_direct",
    "autocov_fft",
    "autocorr",
    "ess_of",
    "mcse_ci",
]


@dataclass(frozen=True)
class Chain:
    """Scalar draws of one MCMC trajectory."""

    samples: np.ndarray
    id: int = 0

    def __post_init__(self):
        arr = np.ascontiguousarray(self.samples, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("chain samples must be one-dimensional")
        if not np.all(np.isfinite(arr)):
            raise ValueError("chain samples must be finite")
        object.__setattr__(self, "samples", arr)

    def __len__(self):
        return self.samples.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.samples if dtype is None else self.samples.astype(dtype)


@dataclass(frozen=True)
class ChainSet:
    """M equal-length chains stored row-wise in an (M, N) array."""

    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[None, :]
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise ValueError("a ChainSet needs a 2-D (n_chains, n_samples) array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("chain samples must be finite")
        object.__setattr__(self, "samples", np.ascontiguousarray(arr))

    @classmethod
    def from_chains(cls, chains) -> ChainSet:
        arrays = [as_samples(c) for c in chains]
        if not arrays:
            raise ValueError("a ChainSet needs at least one chain")
        lengths = {a.shape[0] for a in arrays}
        if len(lengths) != 1:
            raise ValueError(f"chains have differing lengths {sorted(lengths)}")
        return cls(np.stack(arrays))

    @property
    def n_chains(self) -> int:
        return self.samples.shape[0]

    @property
    def common_length(self) -> int:
        return self.samples.shape[1]

    @property
    def chains(self) -> list[Chain]:
        return [Chain(row, id=i) for i, row in enumerate(self.samples)]

    def __len__(self):
        return self.n_chains

    def __getitem__(self, i):
        return self.samples[i]


@dataclass(frozen=True)
class AcovSeq:
    """Autocovariance estimates R(0..K) of a chain of length ``n``."""

    values: np.ndarray
    n: int
    mean_used: float

    @property
    def max_lag(self) -> int:
        return self.values.shape[0] - 1


@dataclass(frozen=True)
class IactEstimate:
    """An IACT estimate tagged with the method and parameters that produced it.

    Non-positive raw values are kept as-is and reported through ``valid``.
    """

    iact: float
    method: str
    params: dict = field(default_factory=dict)
    n_used: int = 0
    flags: tuple = ()

    @property
    def valid(self) -> bool:
        return bool(np.isfinite(self.iact) and self.iact > 0)

    @property
    def ess(self) -> float:
        return ess_of(self.n_used, self)

    def clamped(self, floor: float = 1.0) -> IactEstimate:
        """Copy with ``iact`` raised to at least ``floor``."""
        if self.iact >= floor:
            return self
        return IactEstimate(max(self.iact, floor), self.method, dict(self.params),
                            self.n_used, self.flags + ("clamped",))


def as_samples(chain) -> np.ndarray:
    """Return the 1-D float64 sample array behind a Chain or array-like."""
    if isinstance(chain, Chain):
        return chain.samples
    arr = np.asarray(chain, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError("expected a one-dimensional chain")
    return arr


def mean_and_var(chain) -> tuple[float, float]:
    """Sample mean and the 1/N-normalised variance R(0)."""
    x = as_samples(chain)
    if x.shape[0] < 2:
        raise DegenerateInputError(f"need at least 2 samples, got {x.shape[0]}")
    mean = float(np.mean(x))
    r0 = float(np.mean((x - mean) ** 2))
    return mean, r0


def _check_lag(n, max_lag):
    if n < 2:
        raise DegenerateInputError(f"need at least 2 samples, got {n}")
    if not 0 <= max_lag <= n - 1:
        raise ValueError(f"max_lag must lie in [0, {n - 1}], got {max_lag}")


def autocov_direct(chain, max_lag: int) -> AcovSeq:
    """Autocovariances by direct summation, denominator N at every lag."""
    x = as_samples(chain)
    n = x.shape[0]
    _check_lag(n, max_lag)
    mean = float(np.mean(x))
    xc = x - mean
    full = np.correlate(xc, xc, mode="full")[n - 1:]
    return AcovSeq(full[: max_lag + 1] / n, n, mean)


def autocov_fft(chain, max_lag: int) -> AcovSeq:
    """Autocovariances through the periodogram.

    The centred chain is zero-padded to the next power of two >= 2N so the
    inverse transform of |FFT|^2 gives the linear (not circular) correlation.
    Agrees with :func:`autocov_direct` to floating-point accuracy.
    """
    x = as_samples(chain)
    n = x.shape[0]
    _check_lag(n, max_lag)
    mean = float(np.mean(x))
    xc = x - mean
    size = 1 << int(2 * n - 1).bit_length()
    spec = np.fft.rfft(xc, size)
    acov = np.fft.irfft(spec.real ** 2 + spec.imag ** 2, size)[: max_lag + 1]
    return AcovSeq(acov / n, n, mean)


def autocorr(acov: AcovSeq) -> np.ndarray:
    """rho(k) = R(k) / R(0)."""
    r0 = acov.values[0]
    if not r0 > 0:
        raise ZeroVarianceError("autocorrelation undefined for a zero-variance chain")
    rho = acov.values / r0
    rho[0] = 1.0
    return rho


def ess_of(n: int, iact) -> float:
    """Effective sample size n / IACT.

    ``iact`` may be an :class:`IactEstimate` or a plain number. A non-positive
    IACT yields ``inf``; check ``IactEstimate.valid`` before trusting it.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    tau = iact.iact if isinstance(iact, IactEstimate) else float(iact)
    if not tau > 0:
        return math.inf
    return n / tau


def mcse_ci(mean: float, iact: float, r0: float, n: int,
            alpha: float = 0.05) -> tuple[float, float, float]:
    """Monte Carlo standard error sqrt(IACT * R(0) / n) and the normal
    ``1 - alpha`` confidence interval around ``mean``."""
    if isinstance(iact, IactEstimate):
        iact = iact.iact
    if not iact > 0:
        raise InvalidIACTError(f"IACT must be positive, got {iact}")
    if r0 < 0 or n < 1 or not 0 < alpha < 1:
        raise ValueError("need r0 >= 0, n >= 1 and 0 < alpha < 1")
    mcse = math.sqrt(iact * r0 / n)
    z = normal_quantile(1.0 - alpha / 2.0)
    return mcse, mean - z * mcse, mean + z * mcse
