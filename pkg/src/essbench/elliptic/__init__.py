"""Log-permeability inverse problem on the unit square: KL prior, Darcy
forward solver, Gaussian likelihood and pCN / delayed-acceptance samplers."""

from .darcy import assemble, solve_pressure
from .mcmc import (McmcState, SamplerStats, da_step, initial_state, pcn_propose, pcn_step,
                   run_chain)
from .model import (EllipticModel, build_model, chessboard_cells, coarsen_model,
                    log_likelihood, synthesize_data)
from .prior import (GridSpec, KlBasis, block_average, covariance_matrix, field_from_coeffs,
                    kl_basis)

__all__ = ["assemble", "solve_pressure", "McmcState", "SamplerStats", "da_step",
           "initial_state", "pcn_propose", "pcn_step", "run_chain", "EllipticModel",
           "build_model", "chessboard_cells", "coarsen_model", "log_likelihood",
           "synthesize_data", "GridSpec", "KlBasis", "block_average", "covariance_matrix",
           "field_from_coeffs", "kl_basis"]
