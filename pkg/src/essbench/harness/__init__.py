"""Experiment driver: AR(1) ensembles, elliptic runs, analysis and reports."""

from .analyze import analyze, table_row
from .chain_io import read_chains, write_chains
from .config import ExperimentConfig, load_config
from .elliptic_run import elliptic_synth, run_elliptic
from .ensemble import run_ar1_ensemble
from .report import report

__all__ = ["analyze", "table_row", "read_chains", "write_chains", "ExperimentConfig",
           "load_config", "elliptic_synth", "run_elliptic", "run_ar1_ensemble", "report"]
