"""Grid, squared-exponential Gaussian random field and its truncated KL basis."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

__all__ = ["GridSpec", "KlBasis", "covariance_matrix", "kl_basis", "field_from_coeffs",
           "block_average"]


@dataclass(frozen=True)
class GridSpec:
    """Cell-centred grid on the unit square.

    Fields are stored as (nx, ny) arrays indexed [i, j] with i along x;
    flat cell index is i * ny + j.
    """

    nx: int = 16
    ny: int = 16

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 cells per side")

    @property
    def n_cells(self) -> int:
        return self.nx * self.ny

    @property
    def hx(self) -> float:
        return 1.0 / self.nx

    @property
    def hy(self) -> float:
        return 1.0 / self.ny

    def centers(self):
        """Cell-centre coordinates as two (nx, ny) arrays."""
        x = (np.arange(self.nx) + 0.5) / self.nx
        y = (np.arange(self.ny) + 0.5) / self.ny
        return np.meshgrid(x, y, indexing="ij")

    def cell_of(self, x: float, y: float) -> tuple[int, int]:
        """Indices of the cell containing point (x, y)."""
        i = min(int(np.floor(x * self.nx)), self.nx - 1)
        j = min(int(np.floor(y * self.ny)), self.ny - 1)
        return i, j

    def flat(self, i: int, j: int) -> int:
        return i * self.ny + j

    def coarsened(self) -> GridSpec:
        if self.nx % 2 or self.ny % 2:
            raise ValueError("coarsening needs even cell counts")
        return GridSpec(self.nx // 2, self.ny // 2)


@dataclass(frozen=True)
class KlBasis:
    """Leading KL modes: ``vectors`` is (n_cells, n_modes), one mode per column."""

    grid: GridSpec
    eigenvalues: np.ndarray
    vectors: np.ndarray
    trace: float

    @property
    def n_modes(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def captured_variance(self) -> float:
        return float(np.sum(self.eigenvalues) / self.trace)

    def pointwise_variance(self) -> np.ndarray:
        """sum_i lambda_i phi_i(x)^2 per cell, shaped like the grid."""
        v = (self.vectors ** 2) @ self.eigenvalues
        return v.reshape(self.grid.nx, self.grid.ny)


def covariance_matrix(grid: GridSpec, lx: float = 0.2, ly: float = 0.2) -> np.ndarray:
    """exp(-(dx/lx)^2 - (dy/ly)^2) between all pairs of cell centres."""
    X, Y = grid.centers()
    x, y = X.ravel(), Y.ravel()
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    return np.exp(-(dx / lx) ** 2 - (dy / ly) ** 2)


def kl_basis(grid: GridSpec = GridSpec(), lx: float = 0.2, ly: float = 0.2,
             n_modes: int = 20) -> KlBasis:
    if not 1 <= n_modes <= grid.n_cells:
        raise ValueError(f"n_modes must lie in [1, {grid.n_cells}]")
    C = covariance_matrix(grid, lx, ly)
    lam, vec = np.linalg.eigh(C)
    order = np.argsort(lam)[::-1][:n_modes]
    lam, vec = lam[order], vec[:, order]
    # sign convention: largest-magnitude entry of each mode is positive
    idx = np.argmax(np.abs(vec), axis=0)
    vec = vec * np.sign(vec[idx, np.arange(n_modes)])
    basis = KlBasis(grid, np.clip(lam, 0.0, None), vec, float(np.trace(C)))
    logger.info("KL basis %dx%d, %d modes capture %.6f of the variance",
                grid.nx, grid.ny, n_modes, basis.captured_variance)
    return basis


def field_from_coeffs(basis: KlBasis, theta):
    """Log-permeability eta = sum sqrt(lambda_i) theta_i phi_i and kappa = exp(eta)."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (basis.n_modes,):
        raise ValueError(f"expected {basis.n_modes} coefficients, got shape {theta.shape}")
    eta = (basis.vectors @ (np.sqrt(basis.eigenvalues) * theta)).reshape(
        basis.grid.nx, basis.grid.ny)
    return eta, np.exp(eta)


def block_average(field: np.ndarray) -> np.ndarray:
    """Mean over non-overlapping 2x2 blocks of an (nx, ny) array."""
    nx, ny = field.shape
    return field.reshape(nx // 2, 2, ny // 2, 2).mean(axis=(1, 3))
