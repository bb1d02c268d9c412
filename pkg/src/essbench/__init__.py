"""Integrated autocorrelation time and effective sample size estimators,
an exact AR(1) oracle and an elliptic inverse-problem MCMC testbed."""

from .ar1 import (Ar1Params, ar1_coeff_for_iact, ar1_exact_iact, ar1_mean_variance,
                  ar1_simulate, ar1_spectral_density, ar1_stationary_moments,
                  ar1_transient_moments)
from .batch import BatchSpec, iact_bm, iact_obm, resolve_batch_size
from .bulk import (BULK_VARIANTS, BulkOptions, BulkReport, PsrfReport, bulk_variant,
                   ess_bulk, psrf, rank_normalize, split_chains)
from .chain import (AcovSeq, Chain, ChainSet, IactEstimate, autocorr, autocov_direct,
                    autocov_fft, ess_of, mcse_ci, mean_and_var)
from .errors import (AllChainsConstantError, ChainFormatError, ChainLengthError, ConfigError,
                     DegenerateInputError, EssBenchError, InvalidFieldError, InvalidIACTError,
                     MagicMismatchError, NearUnitRootError, NonStationaryError, SolverError,
                     TooFewBatchesError, TruncatedPayloadError, VersionMismatchError,
                     ZeroVarianceError)
from .iact import (ArModel, WindowSpec, chain_geyer_iact, chain_window_iact,
                   fit_ar_acov, fit_ar_iact, geyer_pair_sums, iact_geyer, iact_window,
                   lag_window, levinson_durbin, resolve_width)
from .normal import normal_cdf, normal_quantile
from .rng import derive_seed, generator, splitmix64

__all__ = ["Ar1Params", "ar1_coeff_for_iact", "ar1_exact_iact", "ar1_mean_variance",
           "ar1_simulate", "ar1_spectral_density", "ar1_stationary_moments",
           "ar1_transient_moments", "BatchSpec", "iact_bm", "iact_obm",
           "resolve_batch_size", "BULK_VARIANTS", "BulkOptions", "BulkReport", "PsrfReport",
           "bulk_variant", "ess_bulk", "psrf", "rank_normalize", "split_chains", "AcovSeq",
           "Chain", "ChainSet", "IactEstimate", "autocorr", "autocov_direct", "autocov_fft",
           "ess_of", "mcse_ci", "mean_and_var", "AllChainsConstantError",
           "ChainFormatError", "ChainLengthError", "ConfigError", "DegenerateInputError",
           "EssBenchError", "InvalidFieldError", "InvalidIACTError", "MagicMismatchError",
           "NearUnitRootError", "NonStationaryError", "SolverError", "TooFewBatchesError",
           "TruncatedPayloadError", "VersionMismatchError", "ZeroVarianceError", "ArModel",
           "WindowSpec", "chain_geyer_iact", "chain_window_iact", "fit_ar_acov",
           "fit_ar_iact", "geyer_pair_sums", "iact_geyer", "iact_window", "lag_window",
           "levinson_durbin", "resolve_width", "normal_cdf", "normal_quantile",
           "derive_seed", "generator", "splitmix64"]

__version__ = "0.1.0"
