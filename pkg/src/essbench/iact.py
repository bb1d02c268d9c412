"""IACT estimators built on autocorrelations: lag windows, Geyer's initial
sequences and AR(p) spectral fitting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chain import AcovSeq, IactEstimate, as_samples, autocorr, autocov_fft
from .errors import DegenerateInputError, NearUnitRootError, ZeroVarianceError

__all__ = [
    "WindowSpec",
    "ArModel",
    "lag_window",
    "resolve_width",
    "iact_window",
    "geyer_pair_sums",
    "iact_geyer",
    "levinson_durbin",
    "fit_ar_acov",
    "fit_ar_iact",
    "default_ar_order",
    "chain_window_iact",
    "chain_geyer_iact",
]

WINDOW_KINDS = ("truncated", "bartlett", "tukey")
WIDTH_POLICIES = ("fixed", "sqrt_n", "sokal_adaptive")


@dataclass(frozen=True)
class WindowSpec:
    """Lag-window choice.

    ``width_param`` means M for ``fixed``, the multiplier c in M = floor(c sqrt(N))
    for ``sqrt_n`` and the factor c in M >= c * IACT(M) for ``sokal_adaptive``.
    """

    kind: str = "bartlett"
    width_policy: str = "sqrt_n"
    width_param: float | None = None
    tukey_a: float = 0.25

    def __post_init__(self):
        if self.kind not in WINDOW_KINDS:
            raise ValueError(f"unknown window kind {self.kind!r}")
        if self.width_policy not in WIDTH_POLICIES:
            raise ValueError(f"unknown width policy {self.width_policy!r}")
        if not 0 < self.tukey_a <= 0.25:
            raise ValueError("tukey_a must lie in (0, 0.25]")
        if self.width_policy == "fixed":
            if self.width_param is None or int(self.width_param) < 1:
                raise ValueError("fixed width needs M >= 1")
        elif self.width_param is not None and not self.width_param > 0:
            raise ValueError("width multiplier must be positive")

    @property
    def c(self) -> float:
        if self.width_param is not None:
            return float(self.width_param)
        return 6.0 if self.width_policy == "sokal_adaptive" else 1.0


def lag_window(kind: str, M: int, tukey_a: float = 0.25) -> np.ndarray:
    """Weights lambda(0..M) of the named lag window."""
    k = np.arange(M + 1, dtype=float)
    if kind == "truncated":
        return np.ones(M + 1)
    if kind == "bartlett":
        return 1.0 - k / M
    if kind == "tukey":
        return 1.0 - 2.0 * tukey_a + 2.0 * tukey_a * np.cos(np.pi * k / M)
    raise ValueError(f"unknown window kind {kind!r}")


def _windowed_sum(rho, M, kind, tukey_a):
    lam = lag_window(kind, M, tukey_a)
    # lambda(0) * rho(0) + 2 * sum_{k>=1}; summed from the small tail upward
    return float(lam[0] * rho[0] + 2.0 * np.sum((lam[1:] * rho[1: M + 1])[::-1]))


def resolve_width(acorr, n: int, spec: WindowSpec) -> tuple[int, tuple]:
    """Window width M for ``spec`` plus any flags raised while choosing it."""
    kmax = len(acorr) - 1
    if spec.width_policy == "fixed":
        return int(spec.width_param), ()
    if spec.width_policy == "sqrt_n":
        M = max(1, int(math.floor(spec.c * math.sqrt(n))))
        if M > kmax:
            return kmax, ("width_capped",)
        return M, ()
    # Sokal: smallest M with M >= c * tau(M), tau from the flat truncated sum
    running = 1.0 + 2.0 * np.cumsum(np.asarray(acorr[1:], dtype=float))
    M = np.arange(1, kmax + 1)
    hits = np.nonzero(M >= spec.c * running)[0]
    if hits.size == 0:
        return kmax, ("sokal_not_converged",)
    return int(M[hits[0]]), ()


def iact_window(acorr, n: int, spec: WindowSpec = WindowSpec()) -> IactEstimate:
    """IACT as the lag-window weighted sum of autocorrelations.

    Parameters
    ----------
    acorr : array_like
        rho(0..K) with rho(0) = 1, e.g. from :func:`autocorr`.
    n : int
        Length of the chain the autocorrelations came from.
    spec : WindowSpec
        Window kind and width policy.
    """
    rho = np.asarray(acorr, dtype=float)
    if rho.ndim != 1 or rho.shape[0] < 2:
        raise ValueError("need autocorrelations up to at least lag 1")
    M, flags = resolve_width(rho, n, spec)
    if not 1 <= M <= rho.shape[0] - 1:
        raise ValueError(f"window width M={M} outside [1, {rho.shape[0] - 1}]")
    tau = _windowed_sum(rho, M, spec.kind, spec.tukey_a)
    if not tau > 0:
        flags = flags + ("nonpositive",)
    params = {"M": M, "width_policy": spec.width_policy}
    if spec.kind == "tukey":
        params["tukey_a"] = spec.tukey_a
    return IactEstimate(tau, spec.kind, params, n, flags)


def geyer_pair_sums(gamma) -> np.ndarray:
    """Gamma_m = gamma_{2m} + gamma_{2m+1} over every complete pair."""
    g = np.asarray(gamma, dtype=float)
    npairs = g.shape[0] // 2
    return g[0: 2 * npairs: 2] + g[1: 2 * npairs: 2]


def _initial_sequence(pairs, monotone):
    nonpos = np.nonzero(pairs <= 0)[0]
    stop = int(nonpos[0]) if nonpos.size else pairs.shape[0]
    kept = pairs[:stop]
    if monotone and kept.size:
        kept = np.minimum.accumulate(kept)
    return kept


def iact_geyer(acov, variant: str = "initial_monotone") -> IactEstimate:
    """Geyer's initial positive / initial monotone sequence estimator.

    ``acov`` is an :class:`AcovSeq` or a plain array of autocovariances
    gamma_0..gamma_K. Pairs are summed up to (not including) the first
    non-positive pair; IACT = (2 * sum Gamma_m - gamma_0) / gamma_0.
    """
    if variant not in ("initial_positive", "initial_monotone"):
        raise ValueError(f"unknown Geyer variant {variant!r}")
    if isinstance(acov, AcovSeq):
        gamma, n = acov.values, acov.n
    else:
        gamma = np.asarray(acov, dtype=float)
        n = gamma.shape[0]
    if not gamma[0] > 0:
        raise ZeroVarianceError("Geyer estimator needs gamma_0 > 0")
    pairs = geyer_pair_sums(gamma)
    kept = _initial_sequence(pairs, variant == "initial_monotone")
    if kept.size == 0:
        return IactEstimate(1.0, f"geyer_{variant}", {"n_pairs": 0}, n,
                            ("gamma0_nonpositive",))
    tau = (2.0 * float(np.sum(kept[::-1])) - gamma[0]) / gamma[0]
    flags = ("sequence_exhausted",) if kept.size == pairs.size else ()
    return IactEstimate(tau, f"geyer_{variant}", {"n_pairs": int(kept.size)}, n, flags)


@dataclass(frozen=True)
class ArModel:
    """AR(p) in regression form X_t = sum_i coeffs[i-1] X_{t-i} + eps_t."""

    order: int
    coeffs: np.ndarray
    innovation_var: float
    aic: float
    aic_path: np.ndarray = field(default=None, repr=False)

    def characteristic_roots(self) -> np.ndarray:
        """Roots of z^p - phi_1 z^{p-1} - ... - phi_p."""
        if self.order == 0:
            return np.empty(0, dtype=complex)
        return np.roots(np.concatenate(([1.0], -np.asarray(self.coeffs))))

    @property
    def is_stationary(self) -> bool:
        return bool(np.all(np.abs(self.characteristic_roots()) < 1.0))


def levinson_durbin(r, order: int):
    """Solve the Yule-Walker equations for orders 0..``order``.

    Returns ``(phis, sigma2)`` where ``phis[p]`` is the length-p coefficient
    vector and ``sigma2[p]`` the innovation variance of the order-p fit.
    """
    r = np.asarray(r, dtype=float)
    if r.shape[0] < order + 1:
        raise ValueError("need autocovariances up to lag `order`")
    if not r[0] > 0:
        raise DegenerateInputError("Toeplitz system is singular: zero variance")
    phis = [np.empty(0)]
    sigma2 = np.empty(order + 1)
    sigma2[0] = r[0]
    phi = np.empty(0)
    for p in range(1, order + 1):
        k = (r[p] - np.dot(phi, r[p - 1: 0: -1])) / sigma2[p - 1]
        phi = np.concatenate((phi - k * phi[::-1], [k]))
        sigma2[p] = sigma2[p - 1] * (1.0 - k * k)
        phis.append(phi)
        if not sigma2[p] > 0:
            # perfectly predictable sequence; higher orders are meaningless
            sigma2 = sigma2[: p + 1]
            break
    return phis, sigma2


def default_ar_order(n: int) -> int:
    return max(1, int(math.floor(10.0 * math.log10(n))))


def fit_ar_acov(r, n: int, p_max: int):
    """AIC-selected AR fit and its IACT from autocovariances R(0..p_max).

    AIC(p) = n log(sigma2_p) + 2p for p = 0..p_max;
    IACT = sigma2_p / ((1 - sum phi)^2 R(0)).
    """
    r = np.asarray(r, dtype=float)
    phis, sigma2 = levinson_durbin(r, p_max)
    usable = sigma2 > 0
    orders = np.arange(sigma2.shape[0])
    aic = np.full(sigma2.shape, np.inf)
    aic[usable] = n * np.log(sigma2[usable]) + 2.0 * orders[usable]
    p = int(np.argmin(aic))
    phi = phis[p]
    model = ArModel(p, phi, float(sigma2[p]), float(aic[p]), aic)
    denom = 1.0 - float(np.sum(phi))
    if abs(denom) < 1e-12:
        raise NearUnitRootError(f"sum of AR coefficients is 1 - {denom:.3g}")
    tau = model.innovation_var / (denom * denom * r[0])
    est = IactEstimate(tau, "ar", {"p": p, "p_max": p_max}, n)
    return model, est


def fit_ar_iact(chain, p_max: int | None = None):
    """Fit AR(p), p <= ``p_max`` chosen by AIC, and return (model, IACT).

    ``p_max`` defaults to floor(10 log10 N).
    """
    x = as_samples(chain)
    n = x.shape[0]
    if p_max is None:
        p_max = default_ar_order(n)
    if p_max < 1 or n < p_max + 2:
        raise DegenerateInputError(f"need p_max >= 1 and N >= p_max + 2 (N={n}, p_max={p_max})")
    acov = autocov_fft(x, p_max)
    if not acov.values[0] > 0:
        raise DegenerateInputError("Toeplitz system is singular: zero variance")
    return fit_ar_acov(acov.values, n, p_max)


def chain_window_iact(chain, spec: WindowSpec = WindowSpec()) -> IactEstimate:
    """Convenience: FFT autocorrelations of ``chain`` then :func:`iact_window`."""
    x = as_samples(chain)
    n = x.shape[0]
    if spec.width_policy == "sokal_adaptive":
        max_lag = n - 1
    else:
        M = int(spec.width_param) if spec.width_policy == "fixed" else int(math.floor(spec.c * math.sqrt(n)))
        max_lag = min(n - 1, max(M, 1))
    return iact_window(autocorr(autocov_fft(x, max_lag)), n, spec)


def chain_geyer_iact(chain, variant: str = "initial_monotone") -> IactEstimate:
    x = as_samples(chain)
    return iact_geyer(autocov_fft(x, x.shape[0] - 1), variant)
