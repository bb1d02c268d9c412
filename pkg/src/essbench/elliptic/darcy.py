"""Two-point (5-point stencil) cell-centred finite differences for
-div(kappa grad p) = 0 on the unit square.

Boundary conditions: p = 1 on the left edge, p = 0 on the right edge,
zero flux on top and bottom. Dirichlet values are imposed on the boundary
face, half a cell from the adjacent centre; no-flux faces simply carry no
transmissibility. Face permeabilities are harmonic means of the two cells.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.linalg import cg

from ..errors import InvalidFieldError, SolverError
from .prior import GridSpec

__all__ = ["assemble", "solve_pressure", "P_LEFT", "P_RIGHT"]

P_LEFT = 1.0
P_RIGHT = 0.0


def _harmonic(a, b):
    return 2.0 * a * b / (a + b)


def assemble(kappa: np.ndarray, grid: GridSpec):
    """Sparse SPD matrix A and right-hand side b of the flux balance A p = b."""
    kappa = np.asarray(kappa, dtype=float)
    if kappa.shape != (grid.nx, grid.ny):
        raise ValueError(f"kappa has shape {kappa.shape}, grid is {grid.nx}x{grid.ny}")
    if not np.all(kappa > 0) or not np.all(np.isfinite(kappa)):
        raise InvalidFieldError("permeability must be finite and strictly positive")
    nx, ny = grid.nx, grid.ny
    idx = np.arange(grid.n_cells).reshape(nx, ny)
    tx = _harmonic(kappa[:-1, :], kappa[1:, :]) * (grid.hy / grid.hx)
    ty = _harmonic(kappa[:, :-1], kappa[:, 1:]) * (grid.hx / grid.hy)

    diag = np.zeros((nx, ny))
    diag[:-1, :] += tx
    diag[1:, :] += tx
    diag[:, :-1] += ty
    diag[:, 1:] += ty
    t_left = 2.0 * kappa[0, :] * (grid.hy / grid.hx)
    t_right = 2.0 * kappa[-1, :] * (grid.hy / grid.hx)
    diag[0, :] += t_left
    diag[-1, :] += t_right

    b = np.zeros((nx, ny))
    b[0, :] += t_left * P_LEFT
    b[-1, :] += t_right * P_RIGHT

    rows = np.concatenate([idx.ravel(), idx[:-1, :].ravel(), idx[1:, :].ravel(),
                           idx[:, :-1].ravel(), idx[:, 1:].ravel()])
    cols = np.concatenate([idx.ravel(), idx[1:, :].ravel(), idx[:-1, :].ravel(),
                           idx[:, 1:].ravel(), idx[:, :-1].ravel()])
    vals = np.concatenate([diag.ravel(), -tx.ravel(), -tx.ravel(),
                           -ty.ravel(), -ty.ravel()])
    A = coo_matrix((vals, (rows, cols)), shape=(grid.n_cells, grid.n_cells)).tocsr()
    return A, b.ravel()


def solve_pressure(kappa: np.ndarray, grid: GridSpec, tol: float = 1e-10,
                   x0=None, return_info: bool = False):
    """Pressure at cell centres, shaped (nx, ny).

    Conjugate gradients on the SPD system to relative residual ``tol``.
    Raises :class:`SolverError` after 10 * n_cells iterations without
    convergence.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    A, b = assemble(kappa, grid)
    maxiter = 10 * grid.n_cells
    count = [0]

    def _tick(_):
        count[0] += 1

    p, info = cg(A, b, x0=x0, rtol=tol, atol=0.0, maxiter=maxiter, callback=_tick)
    if info != 0:
        raise SolverError(f"CG did not reach rtol={tol:g} in {maxiter} iterations")
    p = p.reshape(grid.nx, grid.ny)
    if return_info:
        resid = np.linalg.norm(A @ p.ravel() - b) / np.linalg.norm(b)
        return p, {"iterations": count[0], "relative_residual": float(resid)}
    return p
