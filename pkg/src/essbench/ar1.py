"""AR(1) processes X_t = a X_{t-1} + eps_t with closed-form ground truth."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .chain import Chain
from .errors import NonStationaryError
from .rng import generator

__all__ = [
    "Ar1Params",
    "ar1_simulate",
    "ar1_exact_iact",
    "ar1_coeff_for_iact",
    "ar1_spectral_density",
    "ar1_transient_moments",
    "ar1_stationary_moments",
    "ar1_mean_variance",
]


@dataclass(frozen=True)
class Ar1Params:
    a: float
    mu_eps: float = 0.0
    sigma_eps: float = 1.0

    def __post_init__(self):
        if not abs(self.a) < 1:
            raise NonStationaryError(f"|a| must be < 1, got a={self.a}")
        if not self.sigma_eps > 0:
            raise ValueError("sigma_eps must be positive")


def ar1_stationary_moments(params: Ar1Params) -> tuple[float, float]:
    a = params.a
    return params.mu_eps / (1.0 - a), params.sigma_eps ** 2 / (1.0 - a * a)


def ar1_simulate(params: Ar1Params, n: int, seed: int, init="stationary_draw",
                 replicate: int = 0) -> Chain:
    """Simulate X_1..X_n.

    ``init`` is ``"stationary_draw"`` (X_0 drawn from the stationary law) or a
    number used as the fixed X_0. X_0 itself is not part of the output, so
    sample t (1-based) follows :func:`ar1_transient_moments` at time t.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = generator(seed, replicate)
    if isinstance(init, str):
        if init != "stationary_draw":
            raise ValueError(f"unknown init {init!r}")
        m, v = ar1_stationary_moments(params)
        x0 = m + math.sqrt(v) * rng.standard_normal()
    else:
        x0 = float(init)
    eps = params.mu_eps + params.sigma_eps * rng.standard_normal(n)
    x, _ = lfilter([1.0], [1.0, -params.a], eps, zi=[params.a * x0])
    return Chain(x, id=replicate)


def ar1_exact_iact(a: float) -> float:
    """(1 + a) / (1 - a)."""
    if not abs(a) < 1:
        raise NonStationaryError(f"|a| must be < 1, got a={a}")
    return (1.0 + a) / (1.0 - a)


def ar1_coeff_for_iact(tau: float) -> float:
    """Inverse of :func:`ar1_exact_iact`: a = (tau - 1) / (tau + 1)."""
    if not tau >= 1:
        raise ValueError(f"IACT must be >= 1, got {tau}")
    return (tau - 1.0) / (tau + 1.0)


def ar1_spectral_density(a: float, omega):
    """Variance-normalised spectral density (1-a^2) / (2 pi (1 - 2a cos w + a^2)).

    2 pi f(0) reproduces :func:`ar1_exact_iact`.
    """
    omega = np.asarray(omega, dtype=float)
    return (1.0 - a * a) / (2.0 * np.pi * (1.0 - 2.0 * a * np.cos(omega) + a * a))


def ar1_transient_moments(params: Ar1Params, t: int, x0_mode="fixed_zero"):
    """Mean and variance of X_t.

    ``fixed_zero`` starts from X_0 = 0: mean mu (1 - a^t)/(1 - a), variance
    sigma^2 (1 - a^{2t})/(1 - a^2). ``stationary`` returns the t-independent
    stationary moments.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if x0_mode == "stationary":
        return ar1_stationary_moments(params)
    if x0_mode != "fixed_zero":
        raise ValueError(f"unknown x0_mode {x0_mode!r}")
    a, mu, s2 = params.a, params.mu_eps, params.sigma_eps ** 2
    return mu * (1.0 - a ** t) / (1.0 - a), s2 * (1.0 - a ** (2 * t)) / (1.0 - a * a)


def ar1_mean_variance(params: Ar1Params, n: int) -> float:
    """Large-n variance of the sample mean: sigma^2 / (n (1 - a)^2)."""
    return params.sigma_eps ** 2 / (n * (1.0 - params.a) ** 2)
