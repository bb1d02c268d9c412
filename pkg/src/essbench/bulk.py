"""PSRF, rank normalisation and the combined ESS-Bulk estimator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .chain import ChainSet, IactEstimate, autocov_fft
from .errors import AllChainsConstantError, ChainLengthError
from .iact import geyer_pair_sums
from .normal import normal_quantile

__all__ = [
    "PsrfReport",
    "BulkOptions",
    "BulkReport",
    "rank_normalize",
    "split_chains",
    "psrf",
    "ess_bulk",
    "BULK_VARIANTS",
    "bulk_variant",
]


@dataclass(frozen=True)
class PsrfReport:
    B: float
    W: float
    var_hat: float
    rhat: float


@dataclass(frozen=True)
class BulkOptions:
    """Pre-processing for :func:`ess_bulk`.

    ``rhat_term`` selects the offset in the combined autocorrelation:
    ``"inverse_rhat"`` uses 1 - 1/R, ``"w_over_var"`` uses 1 - W/var_hat.
    ``rank_offset`` is ``"printed"`` for (r - 3/8)/(S - 1/8) or ``"blom"`` for
    (r - 3/8)/(S + 1/4).
    """

    split: bool = True
    rank_normalize: bool = True
    burn_in: int = 0
    rhat_term: str = "inverse_rhat"
    rank_offset: str = "printed"

    def __post_init__(self):
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if self.rhat_term not in ("inverse_rhat", "w_over_var"):
            raise ValueError(f"unknown rhat_term {self.rhat_term!r}")
        if self.rank_offset not in ("printed", "blom"):
            raise ValueError(f"unknown rank_offset {self.rank_offset!r}")


@dataclass(frozen=True)
class BulkReport:
    rho_hat: np.ndarray
    iact: IactEstimate
    ess: float
    psrf: PsrfReport


def _as_2d(chainset):
    if isinstance(chainset, ChainSet):
        return chainset.samples
    return ChainSet(chainset).samples


def rank_normalize(chainset, offset: str = "printed") -> ChainSet:
    """Replace pooled samples by normal scores of their average ranks."""
    x = _as_2d(chainset)
    S = x.size
    ranks = rankdata(x, method="average").reshape(x.shape)
    denom = S - 0.125 if offset == "printed" else S + 0.25
    return ChainSet(normal_quantile((ranks - 0.375) / denom))


def split_chains(chainset) -> ChainSet:
    """Cut every chain into a first and a second half (middle sample of odd
    lengths is dropped)."""
    x = _as_2d(chainset)
    half = x.shape[1] // 2
    return ChainSet(np.concatenate([x[:, :half], x[:, x.shape[1] - half:]], axis=0))


def psrf(chainset) -> PsrfReport:
    """Potential scale reduction factor of M >= 2 chains."""
    x = _as_2d(chainset)
    M, N = x.shape
    if M < 2 or N < 2:
        raise ValueError(f"PSRF needs >= 2 chains of >= 2 samples, got {M}x{N}")
    means = x.mean(axis=1)
    B = N / (M - 1) * float(np.sum((means - means.mean()) ** 2))
    W = float(np.mean(np.var(x, axis=1, ddof=1)))
    if not W > 0:
        raise AllChainsConstantError("all chains are constant; PSRF undefined")
    var_hat = (N - 1) / N * W + B / N
    return PsrfReport(B, W, var_hat, float(np.sqrt(var_hat / W)))


def _geyer_monotone_rho(rho):
    """1 + 2 sum_{t>=1} rho(t), truncated by the initial monotone pair rule
    with rho(0) taken as 1."""
    seq = np.array(rho, dtype=float)
    seq[0] = 1.0
    pairs = geyer_pair_sums(seq)
    nonpos = np.nonzero(pairs <= 0)[0]
    stop = int(nonpos[0]) if nonpos.size else pairs.shape[0]
    kept = np.minimum.accumulate(pairs[:stop]) if stop else pairs[:0]
    if kept.size == 0:
        return 1.0, 0
    return 2.0 * float(np.sum(kept[::-1])) - 1.0, int(kept.size)


def ess_bulk(chainset, opts: BulkOptions = BulkOptions()) -> BulkReport:
    """ESS-Bulk: burn-in, split, rank-normalise, combine per-chain
    autocorrelations through the PSRF and truncate with Geyer's initial
    monotone rule.

    With a single (unsplit) chain the PSRF is undefined; R is then taken as
    1 and var_hat as W, so the result equals the single-chain Geyer estimate.
    """
    x = _as_2d(chainset)[:, opts.burn_in:]
    if opts.split:
        x = split_chains(x).samples
    M, N = x.shape
    if N < 8:
        raise ChainLengthError(f"chains have {N} samples after burn-in/split; need >= 8")
    if opts.rank_normalize:
        x = rank_normalize(x, opts.rank_offset).samples

    acovs = np.stack([autocov_fft(row, N - 1).values for row in x])
    s2 = acovs[:, 0] * N / (N - 1)
    if M >= 2:
        report = psrf(x)
    else:
        W = float(s2[0])
        if not W > 0:
            raise AllChainsConstantError("chain is constant")
        report = PsrfReport(0.0, W, W, 1.0)
    if np.any(acovs[:, 0] <= 0):
        raise AllChainsConstantError("a chain is constant; autocorrelation undefined")
    rho_m = acovs / acovs[:, :1]
    weighted = np.mean(s2[:, None] * rho_m, axis=0) / report.var_hat
    if opts.rhat_term == "inverse_rhat":
        offset = 1.0 - 1.0 / report.rhat
    else:
        offset = 1.0 - report.W / report.var_hat
    rho_hat = offset + weighted

    tau, npairs = _geyer_monotone_rho(rho_hat)
    total = M * N
    flags = () if tau > 0 else ("nonpositive",)
    est = IactEstimate(tau, "ess_bulk",
                       {"split": opts.split, "rank_normalize": opts.rank_normalize,
                        "burn_in": opts.burn_in, "n_pairs": npairs, "n_chains": M},
                       total, flags)
    return BulkReport(rho_hat, est, total / tau, report)


# ESS-Bulk usage variants: burn-in handled by the caller's data selection,
# these fix the pre-processing and how many chains go in together.
BULK_VARIANTS = {
    "ess_bulk_1": {"use_burn_in": False, "group_size": 4},
    "ess_bulk_2": {"use_burn_in": True, "group_size": 1},
    "ess_bulk_3": {"use_burn_in": True, "group_size": 4},
}


def bulk_variant(name: str, burn_in: int = 0, **overrides) -> BulkOptions:
    """Options for the named variant; ``burn_in`` applies only where the
    variant removes burn-in."""
    spec = BULK_VARIANTS[name]
    opts = {"split": True, "rank_normalize": True,
            "burn_in": burn_in if spec["use_burn_in"] else 0}
    opts.update(overrides)
    return BulkOptions(**opts)
