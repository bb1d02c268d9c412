"""Synthetic data and multi-chain MCMC runs for the elliptic inverse problem."""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..chain import ChainSet
from ..elliptic.mcmc import SamplerStats, run_chain
from ..elliptic.model import EllipticModel, build_model, coarsen_model, synthesize_data
from ..errors import ConfigError, SolverError
from ..rng import derive_seed, generator
from .chain_io import write_chains
from .config import ExperimentConfig
from .output import write_json

logger = logging.getLogger(__name__)

__all__ = ["MODEL_DEFAULTS", "model_settings", "fine_model", "resolve_probes",
           "elliptic_synth", "run_elliptic", "write_grid_csv"]

MODEL_DEFAULTS = {
    "nx": 16, "ny": 16, "lx": 0.2, "ly": 0.2, "n_modes": 20, "noise_var": 1e-3,
    "solver_tol": 1e-10, "half_factor": True, "likelihood_enabled": True,
    "beta": 0.1, "sampler": "da", "n_chains": 4, "theta_star": None,
    "noise_seed": None, "add_noise": True, "data_path": None, "write_fields": False,
    "probes": {"A": [0.03125, 0.03125], "B": [0.65625, 0.90625]},
}

_THETA_STAR_STREAM = 0x7374617221
_CHAIN_STREAM = 0x636861696E


def model_settings(cfg: ExperimentConfig) -> dict:
    unknown = set(cfg.model) - set(MODEL_DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown model keys: {sorted(unknown)}")
    s = dict(MODEL_DEFAULTS)
    s.update(cfg.model)
    if s["sampler"] not in ("pcn", "da"):
        raise ConfigError("model.sampler must be 'pcn' or 'da'")
    return s


def fine_model(s: dict) -> EllipticModel:
    return build_model(s["nx"], s["ny"], s["lx"], s["ly"], s["n_modes"], s["noise_var"],
                       s["solver_tol"], half_factor=s["half_factor"],
                       likelihood_enabled=s["likelihood_enabled"])


def resolve_probes(model: EllipticModel, probes: dict) -> dict:
    """Probe name -> (i, j, flat index) of the fine cell containing the point."""
    out = {}
    for name, (x, y) in probes.items():
        i, j = model.grid.cell_of(x, y)
        out[name] = (i, j, model.grid.flat(i, j))
    return out


def write_grid_csv(path, field: np.ndarray) -> None:
    """One row per j (bottom row first), one column per i."""
    np.savetxt(path, np.asarray(field).T, delimiter=",", fmt="%.17g")


def _theta_star(cfg, s, m):
    if s["theta_star"] is not None:
        theta = np.asarray(s["theta_star"], dtype=float)
        if theta.shape != (m,):
            raise ConfigError(f"theta_star must have {m} entries")
        return theta
    return generator(cfg.master_seed, _THETA_STAR_STREAM).standard_normal(m)


def elliptic_synth(cfg: ExperimentConfig, out_dir=None) -> dict:
    """Draw/accept theta_star, synthesise data and write ``data.json``."""
    out_dir = out_dir or cfg.output_dir
    os.makedirs(out_dir, exist_ok=True)
    s = model_settings(cfg)
    model = fine_model(s)
    theta = _theta_star(cfg, s, model.n_modes)
    noise_seed = s["noise_seed"] if s["noise_seed"] is not None else derive_seed(
        cfg.master_seed, 0x6E6F697365)
    model = synthesize_data(model, theta, noise_seed, add_noise=s["add_noise"])
    payload = {
        "nx": s["nx"], "ny": s["ny"], "noise_var": s["noise_var"],
        "theta_star": theta.tolist(), "obs_cells": model.obs_cells.tolist(),
        "data": model.data.tolist(), "noise_seed": int(noise_seed),
    }
    write_json(os.path.join(out_dir, "data.json"), payload)
    if s["write_fields"]:
        write_grid_csv(os.path.join(out_dir, "eta_star.csv"), model.eta(theta))
        write_grid_csv(os.path.join(out_dir, "pressure_star.csv"), model.forward(theta))
    return {"model": model, "theta_star": theta, "path": os.path.join(out_dir, "data.json")}


def _model_with_data(cfg, s, out_dir):
    if s["data_path"]:
        with open(s["data_path"]) as fh:
            payload = json.load(fh)
        model = fine_model(s)
        if payload["nx"] != s["nx"] or payload["ny"] != s["ny"]:
            raise ConfigError("data file grid does not match model grid")
        from dataclasses import replace
        return replace(model, obs_cells=np.asarray(payload["obs_cells"]),
                       data=np.asarray(payload["data"], dtype=float))
    return elliptic_synth(cfg, out_dir)["model"]


def run_elliptic(cfg: ExperimentConfig, out_dir=None, threads: int | None = None) -> dict:
    """Run ``n_chains`` independent chains of ``chain_length`` iterations.

    Writes one chain file per KL coefficient (``theta_XX.essc``) and per probe
    (``eta_<name>.essc``), each holding all chains, plus ``run.json``.
    """
    out_dir = out_dir or cfg.output_dir
    threads = threads or cfg.threads
    os.makedirs(out_dir, exist_ok=True)
    s = model_settings(cfg)
    fine = _model_with_data(cfg, s, out_dir)
    coarse = coarsen_model(fine) if s["sampler"] == "da" else None
    probes = resolve_probes(fine, s["probes"])
    cells = [p[2] for p in probes.values()]

    def one(c):
        rng = generator(cfg.master_seed, _CHAIN_STREAM, c)
        theta0 = rng.standard_normal(fine.n_modes)
        stats = SamplerStats()
        try:
            thetas, etas = run_chain(fine, cfg.chain_length, s["beta"], rng, theta0,
                                     coarse, cells, stats)
        except SolverError as exc:
            raise SolverError(f"chain {c}: {exc} (after {stats.proposals} proposals)") from exc
        return thetas, etas, stats

    if threads == 1:
        results = [one(c) for c in range(s["n_chains"])]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(s["n_chains"])))

    thetas = np.stack([r[0] for r in results])  # (chains, iters, modes)
    etas = np.stack([r[1] for r in results])
    files = {}
    for k in range(fine.n_modes):
        path = os.path.join(out_dir, f"theta_{k:02d}.essc")
        write_chains(path, ChainSet(thetas[:, :, k]))
        files[f"theta_{k:02d}"] = path
    for n, name in enumerate(probes):
        path = os.path.join(out_dir, f"eta_{name}.essc")
        write_chains(path, ChainSet(etas[:, :, n]))
        files[f"eta_{name}"] = path
    stats = [r[2].as_dict() for r in results]
    write_json(os.path.join(out_dir, "run.json"), {
        "sampler": s["sampler"], "beta": s["beta"], "iterations": cfg.chain_length,
        "n_chains": s["n_chains"], "master_seed": cfg.master_seed,
        "probes": {k: list(v) for k, v in probes.items()}, "chain_stats": stats,
    })
    for c, st in enumerate(stats):
        logger.info("chain %d: accepted %d/%d, fine solves %d", c, st["accepted"],
                    st["proposals"], st["fine_solves"])
    return {"files": files, "stats": stats, "probes": probes, "thetas": thetas,
            "etas": etas}
