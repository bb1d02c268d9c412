"""pCN Metropolis-Hastings and two-stage delayed acceptance on KL coefficients.

Variate-stream contract, per step: one block of ``m`` standard normals for the
proposal, then one uniform for each accept/reject test whose log-ratio is
negative. Tests with log-ratio >= 0 accept without drawing. Consequently a
delayed-acceptance step whose coarse model equals the fine one consumes
exactly the variates of the matching pCN step, and so does one whose coarse
likelihood is identically zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = ["McmcState", "SamplerStats", "pcn_propose", "pcn_step", "da_step",
           "initial_state", "run_chain"]


@dataclass(frozen=True)
class McmcState:
    theta: np.ndarray
    log_like_fine: float
    log_like_coarse: float | None = None
    iteration: int = 0


@dataclass
class SamplerStats:
    proposals: int = 0
    promoted: int = 0
    accepted: int = 0
    fine_solves: int = 0
    coarse_solves: int = 0

    def as_dict(self):
        return dict(vars(self))


def pcn_propose(theta, beta: float, rng: np.random.Generator) -> np.ndarray:
    """sqrt(1 - beta^2) theta + beta xi with xi ~ N(0, I)."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    theta = np.asarray(theta, dtype=float)
    xi = rng.standard_normal(theta.shape[0])
    return math.sqrt(1.0 - beta * beta) * theta + beta * xi


def _accept(log_alpha: float, rng) -> bool:
    if log_alpha >= 0.0:
        return True
    if math.isnan(log_alpha):
        return False
    return math.log(rng.random()) < log_alpha


def initial_state(theta, fine, coarse=None) -> McmcState:
    theta = np.asarray(theta, dtype=float)
    lc = coarse.loglike(theta) if coarse is not None else None
    return McmcState(theta, fine.loglike(theta), lc, 0)


def pcn_step(state: McmcState, model, beta: float, rng, stats: SamplerStats | None = None
             ) -> McmcState:
    """One pCN Metropolis step; the prior cancels so only the likelihood
    ratio enters the acceptance probability."""
    prop = pcn_propose(state.theta, beta, rng)
    ll = model.loglike(prop)
    if stats is not None:
        stats.proposals += 1
        stats.promoted += 1
        stats.fine_solves += 1
    if _accept(ll - state.log_like_fine, rng):
        if stats is not None:
            stats.accepted += 1
        return McmcState(prop, ll, state.log_like_coarse, state.iteration + 1)
    return replace(state, iteration=state.iteration + 1)


def da_step(state: McmcState, coarse, fine, beta: float, rng,
            stats: SamplerStats | None = None) -> McmcState:
    """Two-stage delayed acceptance with a pCN proposal.

    Stage 1 screens with the coarse likelihood; only promoted proposals pay
    for a fine solve and face the corrected stage-2 test.
    """
    if state.log_like_coarse is None:
        raise ValueError("delayed acceptance needs a cached coarse log-likelihood")
    prop = pcn_propose(state.theta, beta, rng)
    lc = coarse.loglike(prop)
    if stats is not None:
        stats.proposals += 1
        stats.coarse_solves += 1
    d_coarse = lc - state.log_like_coarse
    if not _accept(d_coarse, rng):
        return replace(state, iteration=state.iteration + 1)
    lf = fine.loglike(prop)
    if stats is not None:
        stats.promoted += 1
        stats.fine_solves += 1
    if _accept((lf - state.log_like_fine) - d_coarse, rng):
        if stats is not None:
            stats.accepted += 1
        return McmcState(prop, lf, lc, state.iteration + 1)
    return replace(state, iteration=state.iteration + 1)


def run_chain(fine, n_iter: int, beta: float, rng, theta0, coarse=None,
              probe_cells=(), stats: SamplerStats | None = None):
    """Run ``n_iter`` steps (pCN, or DA when ``coarse`` is given).

    Returns ``(thetas, etas)``: the (n_iter, m) coefficient trajectory and the
    (n_iter, len(probe_cells)) log-permeability at the flat ``probe_cells``.
    """
    stats = stats if stats is not None else SamplerStats()
    state = initial_state(theta0, fine, coarse)
    m = state.theta.shape[0]
    thetas = np.empty((n_iter, m))
    probe_cells = np.asarray(probe_cells, dtype=np.int64)
    probe_rows = (fine.basis.vectors[probe_cells, :] * np.sqrt(fine.basis.eigenvalues)
                  if probe_cells.size else np.empty((0, m)))
    for t in range(n_iter):
        if coarse is None:
            state = pcn_step(state, fine, beta, rng, stats)
        else:
            state = da_step(state, coarse, fine, beta, rng, stats)
        thetas[t] = state.theta
    etas = thetas @ probe_rows.T
    return thetas, etas
