"""Observation model, Gaussian likelihood and the coarse screening model."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..errors import SolverError
from ..rng import generator
from .darcy import solve_pressure
from .prior import GridSpec, KlBasis, block_average, field_from_coeffs, kl_basis

__all__ = [
    "EllipticModel",
    "chessboard_cells",
    "log_likelihood",
    "build_model",
    "synthesize_data",
    "coarsen_model",
]


def chessboard_cells(grid: GridSpec) -> np.ndarray:
    """Flat indices of cells with i + j even (cell (0, 0) included)."""
    i, j = np.meshgrid(np.arange(grid.nx), np.arange(grid.ny), indexing="ij")
    return np.flatnonzero(((i + j) % 2 == 0).ravel())


@dataclass(frozen=True)
class EllipticModel:
    """Everything needed to turn KL coefficients into a log-likelihood.

    ``basis.vectors`` live on ``grid``; for a coarse model they are the 2x2
    block averages of the fine modes, so coarse eta is the block average of
    fine eta.
    """

    grid: GridSpec
    basis: KlBasis
    obs_cells: np.ndarray
    noise_var: float = 1e-3
    data: np.ndarray | None = None
    solver_tol: float = 1e-10
    half_factor: bool = True
    likelihood_enabled: bool = True
    on_solver_failure: str = "raise"

    def __post_init__(self):
        if not self.noise_var > 0:
            raise ValueError("noise_var must be positive")
        obs = np.asarray(self.obs_cells, dtype=np.int64)
        if obs.size and (obs.min() < 0 or obs.max() >= self.grid.n_cells):
            raise ValueError("observation cells outside the grid")
        object.__setattr__(self, "obs_cells", obs)
        if self.on_solver_failure not in ("raise", "reject"):
            raise ValueError("on_solver_failure must be 'raise' or 'reject'")

    @property
    def n_modes(self) -> int:
        return self.basis.n_modes

    def eta(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return (self.basis.vectors @ (np.sqrt(self.basis.eigenvalues) * theta)).reshape(
            self.grid.nx, self.grid.ny)

    def forward(self, theta) -> np.ndarray:
        """Pressure field for KL coefficients ``theta``."""
        return solve_pressure(np.exp(self.eta(theta)), self.grid, self.solver_tol)

    def loglike(self, theta) -> float:
        """Log-likelihood of ``theta``; one forward solve unless disabled."""
        if not self.likelihood_enabled:
            return 0.0
        try:
            p = self.forward(theta)
        except SolverError:
            if self.on_solver_failure == "reject":
                return -np.inf
            raise
        return log_likelihood(self, p)


def log_likelihood(model: EllipticModel, pressure) -> float:
    """-(1/(2 sigma^2)) sum over observed cells of (data - pressure)^2.

    With ``model.half_factor`` False the 1/2 is dropped.
    """
    if model.data is None:
        raise ValueError("model has no data")
    r = model.data - np.asarray(pressure, dtype=float).ravel()[model.obs_cells]
    scale = 0.5 if model.half_factor else 1.0
    return -scale * float(np.dot(r, r)) / model.noise_var


def build_model(nx: int = 16, ny: int = 16, lx: float = 0.2, ly: float = 0.2,
                n_modes: int = 20, noise_var: float = 1e-3, solver_tol: float = 1e-10,
                **kwargs) -> EllipticModel:
    """Fine model without data on the chessboard observation pattern."""
    grid = GridSpec(nx, ny)
    basis = kl_basis(grid, lx, ly, n_modes)
    return EllipticModel(grid, basis, chessboard_cells(grid), noise_var,
                         solver_tol=solver_tol, **kwargs)


def synthesize_data(model: EllipticModel, theta_star, noise_seed: int,
                    add_noise: bool = True) -> EllipticModel:
    """Copy of ``model`` whose data are F(theta_star) at the observed cells
    plus i.i.d. N(0, noise_var) noise drawn from ``noise_seed``."""
    field_from_coeffs(model.basis, theta_star)  # shape check
    p = model.forward(theta_star).ravel()[model.obs_cells]
    if add_noise:
        rng = generator(noise_seed, 0x6E6F697365)
        p = p + np.sqrt(model.noise_var) * rng.standard_normal(p.shape[0])
    return replace(model, data=p)


def coarsen_model(fine: EllipticModel) -> EllipticModel:
    """Screening model on the 2x-coarsened grid.

    Coarse eta is the 2x2 block average of fine eta. Coarse data sit on the
    coarse chessboard, restricted to cells with >= 2 observed children, and
    are the mean of the observed children's data. Noise variance is kept.
    """
    cgrid = fine.grid.coarsened()
    fnx, fny = fine.grid.nx, fine.grid.ny
    modes = fine.basis.vectors.T.reshape(fine.n_modes, fnx, fny)
    cvec = np.stack([block_average(m).ravel() for m in modes], axis=1)
    cbasis = KlBasis(cgrid, fine.basis.eigenvalues, cvec, fine.basis.trace)

    observed = np.zeros(fine.grid.n_cells)
    observed[fine.obs_cells] = 1.0
    child_count = block_average(observed.reshape(fnx, fny)) * 4.0
    cand = np.intersect1d(chessboard_cells(cgrid), np.flatnonzero(child_count.ravel() >= 2))

    cdata = None
    if fine.data is not None:
        full = np.zeros(fine.grid.n_cells)
        full[fine.obs_cells] = fine.data
        sums = block_average(full.reshape(fnx, fny)) * 4.0
        cdata = sums.ravel()[cand] / child_count.ravel()[cand]
    return EllipticModel(cgrid, cbasis, cand, fine.noise_var, cdata, fine.solver_tol,
                         fine.half_factor, fine.likelihood_enabled, fine.on_solver_failure)
