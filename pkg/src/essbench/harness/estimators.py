"""Estimator specs from config dicts, applied to single chains or chain groups."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..batch import BatchSpec, iact_bm, iact_obm
from ..bulk import BULK_VARIANTS, bulk_variant, ess_bulk
from ..chain import IactEstimate, mcse_ci, mean_and_var
from ..errors import ConfigError
from ..iact import WindowSpec, chain_geyer_iact, chain_window_iact, fit_ar_iact

__all__ = ["Estimator", "make_estimator", "EstimatorRow", "ROW_FIELDS", "make_row"]

ROW_FIELDS = ("method", "replicate_id", "checkpoint_n", "iact", "ess", "mcse",
              "ci_lo", "ci_hi", "flags")


@dataclass(frozen=True)
class EstimatorRow:
    method: str
    replicate_id: int
    checkpoint_n: int
    iact: float
    ess: float
    mcse: float
    ci_lo: float
    ci_hi: float
    flags: str = ""

    def as_tuple(self):
        return tuple(getattr(self, f) for f in ROW_FIELDS)


@dataclass(frozen=True)
class Estimator:
    """A configured estimator.

    ``group`` estimators (ESS-Bulk 1 and 3) consume several chains at once;
    the rest see one chain. ``use_burn_in`` False means the estimator sees
    the burn-in samples too.
    """

    label: str
    method: str
    options: dict
    group: bool = False
    use_burn_in: bool = True

    def single(self, x: np.ndarray, burn_in: int = 0) -> IactEstimate:
        """IACT of one chain; ``x`` includes ``burn_in`` leading samples only
        for ESS-Bulk 2, which removes them itself."""
        m, o = self.method, self.options
        if m in ("truncated", "bartlett", "tukey"):
            spec = WindowSpec(m, o.get("width_policy", "sqrt_n"), o.get("width_param"),
                              o.get("tukey_a", 0.25))
            return chain_window_iact(x, spec)
        if m == "geyer":
            return chain_geyer_iact(x, o.get("variant", "initial_monotone"))
        if m in ("bm", "obm"):
            spec = BatchSpec("nonoverlapping" if m == "bm" else "overlapping",
                             o.get("size_policy", "count_cuberoot"), o.get("m"),
                             o.get("unbiased", False))
            return (iact_bm if m == "bm" else iact_obm)(x, spec)[1]
        if m == "ar":
            return fit_ar_iact(x, o.get("p_max"))[1]
        if m in BULK_VARIANTS:
            return ess_bulk(x[None, :], self.bulk_options(burn_in)).iact
        raise ConfigError(f"unknown estimator method {m!r}")

    def grouped(self, xs: np.ndarray, burn_in: int = 0) -> IactEstimate:
        return ess_bulk(xs, self.bulk_options(burn_in)).iact

    def bulk_options(self, burn_in):
        extra = {k: self.options[k] for k in ("rhat_term", "rank_offset") if k in self.options}
        return bulk_variant(self.method, burn_in, **extra)


_KNOWN = ("truncated", "bartlett", "tukey", "geyer", "bm", "obm", "ar") + tuple(BULK_VARIANTS)


def make_estimator(spec: dict) -> Estimator:
    spec = dict(spec)
    method = spec.pop("method")
    if method not in _KNOWN:
        raise ConfigError(f"unknown estimator method {method!r}")
    label = spec.pop("label", method)
    if method in BULK_VARIANTS:
        v = BULK_VARIANTS[method]
        return Estimator(label, method, spec, group=v["group_size"] > 1,
                         use_burn_in=v["use_burn_in"])
    return Estimator(label, method, spec)


def make_row(label, replicate_id, checkpoint_n, est: IactEstimate, data,
             n_total=None, alpha=0.05, clamp=False) -> EstimatorRow:
    """Row with ESS = checkpoint_n / IACT and MCSE/CI of ``data``'s mean.

    ``n_total`` is the sample count behind the MCSE (defaults to data size).
    """
    if clamp:
        est = est.clamped()
    flags = list(est.flags)
    tau = est.iact
    mean, r0 = mean_and_var(np.ravel(data))
    n_total = int(np.size(data)) if n_total is None else n_total
    if est.valid:
        ess = checkpoint_n / tau
        mcse, lo, hi = mcse_ci(mean, tau, r0, n_total, alpha)
    else:
        if "nonpositive" not in flags:
            flags.append("nonpositive")
        ess, mcse, lo, hi = math.inf, math.nan, math.nan, math.nan
    return EstimatorRow(label, int(replicate_id), int(checkpoint_n), float(tau), float(ess),
                        float(mcse), float(lo), float(hi), ";".join(flags))
