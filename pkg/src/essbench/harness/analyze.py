"""Post-hoc analysis of stored chains: per-chain and pooled estimator tables,
PSRF curves and running means."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from ..bulk import psrf
from ..chain import ChainSet, ess_of, mcse_ci, mean_and_var
from ..errors import ConfigError, EssBenchError
from .chain_io import read_chains
from .config import ExperimentConfig
from .ensemble import ensemble_rows
from .estimators import ROW_FIELDS, make_estimator, make_row
from .output import SUMMARY_FIELDS, ensemble_summary, write_json, write_table

__all__ = ["TableRow", "TABLE_FIELDS", "table_row", "multichain_table", "psrf_curve",
           "running_means", "analyze_ar1", "analyze_chains", "analyze"]

TABLE_FIELDS = ("quantity", "method", "checkpoint_n", "avg_iact", "min_iact", "max_iact",
                "total_ess", "mcse", "ci_lo", "ci_hi")


@dataclass(frozen=True)
class TableRow:
    method: str
    avg_iact: float
    min_iact: float
    max_iact: float
    total_ess: float
    mcse: float
    ci_lo: float
    ci_hi: float


def table_row(method: str, iacts, mean: float, r0: float, n_total: int,
              alpha: float = 0.05) -> TableRow:
    """One results-table row from per-chain IACTs and pooled moments.

    The average IACT drives everything: ``total_ess = n_total / avg`` and the
    MCSE is ``sqrt(avg * r0 / n_total)``.

    >>> r = table_row("bartlett", [2474.60], 7.99e-2, 0.148, 4 * 2_100_000)
    >>> round(r.total_ess, 2)
    3394.49
    """
    iacts = np.atleast_1d(np.asarray(iacts, dtype=float))
    avg = float(np.mean(iacts))
    mcse, lo, hi = mcse_ci(mean, avg, r0, n_total, alpha)
    return TableRow(method, avg, float(iacts.min()), float(iacts.max()),
                    ess_of(n_total, avg), mcse, lo, hi)


def multichain_table(cs: ChainSet, cfg: ExperimentConfig, quantity: str = ""):
    """Rows for one stored quantity (all chains) at every checkpoint.

    Returns ``(table, rows)``: ``table`` holds TABLE_FIELDS tuples, ``rows``
    EstimatorRows (per chain; pooled estimators get ``replicate_id = -1``
    and ``checkpoint_n`` equal to the total retained count).
    """
    x = cs.samples
    n_chains, length = x.shape
    b = cfg.burn_in
    estimators = [make_estimator(s) for s in cfg.estimators]
    table, rows = [], []
    for cp in cfg.checkpoint_list:
        if b + cp > length:
            raise ConfigError(f"checkpoint {cp} + burn-in {b} exceeds stored length {length}")
        retained = x[:, b: b + cp]
        n_total = n_chains * cp
        mean, r0 = mean_and_var(retained.ravel())
        for est in estimators:
            if est.group:
                data = x[:, : b + cp]
                e = est.grouped(data, burn_in=b)
                rows.append(make_row(est.label, -1, n_total, e, retained, alpha=cfg.alpha,
                                     clamp=cfg.clamp_iact))
                iacts = [rows[-1].iact]
            else:
                iacts = []
                for c in range(n_chains):
                    if est.method.startswith("ess_bulk"):
                        e = est.single(x[c, : b + cp], burn_in=b)
                    else:
                        e = est.single(retained[c])
                    rows.append(make_row(est.label, c, cp, e, retained[c], alpha=cfg.alpha,
                                         clamp=cfg.clamp_iact))
                    iacts.append(rows[-1].iact)
            tr = table_row(est.label, iacts, mean, r0, n_total, cfg.alpha)
            table.append((quantity, tr.method, cp, tr.avg_iact, tr.min_iact, tr.max_iact,
                          tr.total_ess, tr.mcse, tr.ci_lo, tr.ci_hi))
    return table, rows


def psrf_curve(cs: ChainSet, checkpoints, burn_in: int = 0) -> list[tuple[int, float]]:
    """(checkpoint, R-hat) on the raw retained draws; NaN where undefined."""
    out = []
    for cp in checkpoints:
        try:
            rhat = psrf(cs.samples[:, burn_in: burn_in + cp]).rhat
        except EssBenchError:
            rhat = float("nan")
        out.append((int(cp), float(rhat)))
    return out


def running_means(cs: ChainSet, n_points: int = 1000):
    """Running means of each chain and of the pooled chains.

    Returns ``(iterations, per_chain, pooled)`` sampled at up to ``n_points``
    roughly evenly spaced iterations (1-based counts).
    """
    x = cs.samples
    n = x.shape[1]
    its = np.unique(np.linspace(1, n, min(n_points, n)).astype(np.int64))
    cums = np.cumsum(x, axis=1)[:, its - 1]
    per_chain = cums / its
    pooled = cums.sum(axis=0) / (its * x.shape[0])
    return its, per_chain, pooled


def _load(path):
    cs = read_chains(path)
    name = os.path.splitext(os.path.basename(path))[0]
    return name, cs


def analyze_chains(paths, cfg: ExperimentConfig, out_dir=None) -> dict:
    """Tables, rows, PSRF curves and running means for multi-chain files."""
    out_dir = out_dir or cfg.output_dir
    os.makedirs(out_dir, exist_ok=True)
    table, rows, psrf_rows, rm_rows = [], [], [], []
    for path in paths:
        name, cs = _load(path)
        t, r = multichain_table(cs, cfg, name)
        table += t
        rows += r
        psrf_rows += [(name, cp, rh) for cp, rh in
                      psrf_curve(cs, cfg.checkpoint_list, cfg.burn_in)]
        its, per_chain, pooled = running_means(cs)
        for k, it in enumerate(its):
            rm_rows += [(name, int(it), c, float(per_chain[c, k]))
                        for c in range(per_chain.shape[0])]
            rm_rows.append((name, int(it), -1, float(pooled[k])))
    fmt = cfg.format
    paths_out = {
        "table": write_table(os.path.join(out_dir, "table.csv"), TABLE_FIELDS, table, fmt),
        "rows": write_table(os.path.join(out_dir, "rows.csv"), ROW_FIELDS,
                            [r.as_tuple() for r in rows], fmt),
        "psrf": write_table(os.path.join(out_dir, "psrf.csv"),
                            ("quantity", "checkpoint_n", "rhat"), psrf_rows, fmt),
        "running_mean": write_table(os.path.join(out_dir, "running_mean.csv"),
                                    ("quantity", "iteration", "chain", "mean"), rm_rows, fmt),
    }
    return {"table": table, "rows": rows, "psrf": psrf_rows, "paths": paths_out}


def analyze_ar1(path, cfg: ExperimentConfig, out_dir=None, threads: int | None = None) -> dict:
    """Recompute ensemble rows from a stored ``chains.essc``.

    Bootstrap groups come from the same seed stream as the in-process run, so
    the rows are identical to those written by :func:`run_ar1_ensemble`.
    """
    out_dir = out_dir or cfg.output_dir
    os.makedirs(out_dir, exist_ok=True)
    chains = read_chains(path).samples
    if chains.shape != (cfg.n_replicates, cfg.chain_length):
        raise ConfigError(f"stored chains have shape {chains.shape}, config expects "
                          f"{(cfg.n_replicates, cfg.chain_length)}")
    rows, groups = ensemble_rows(chains, cfg, threads)
    summary = ensemble_summary(rows)
    paths = {
        "rows": write_table(os.path.join(out_dir, "rows.csv"), ROW_FIELDS,
                            [r.as_tuple() for r in rows], cfg.format),
        "summary": write_table(os.path.join(out_dir, "summary.csv"), SUMMARY_FIELDS,
                               summary, cfg.format),
    }
    write_json(os.path.join(out_dir, "groups.json"), {"groups": groups})
    return {"rows": rows, "summary": summary, "groups": groups, "paths": paths}


def analyze(cfg: ExperimentConfig, inputs=None, out_dir=None, threads: int | None = None):
    """Dispatch on ``cfg.kind``: AR(1) ensembles re-run the ensemble sweep on
    ``chains.essc``; anything else gets the multi-chain table treatment."""
    inputs = list(inputs or cfg.inputs)
    if not inputs:
        raise ConfigError("analyze needs at least one chain file (config 'inputs' or --input)")
    expanded = []
    for p in inputs:
        if os.path.isdir(p):
            expanded += sorted(os.path.join(p, f) for f in os.listdir(p) if f.endswith(".essc"))
        else:
            expanded.append(p)
    if cfg.kind == "ar1_ensemble":
        if len(expanded) != 1:
            raise ConfigError("AR(1) analysis takes exactly one chains file")
        return analyze_ar1(expanded[0], cfg, out_dir, threads)
    return analyze_chains(expanded, cfg, out_dir)

