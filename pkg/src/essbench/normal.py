"""Inverse standard-normal CDF.

Wichura's AS241 (PPND16) rational approximation followed by one Newton step
against an erfc-based CDF. Works elementwise on arrays.
"""

import numpy as np
from scipy.special import erfc

__all__ = ["normal_cdf", "normal_quantile"]

_SQRT2 = np.sqrt(2.0)
_SQRT2PI = np.sqrt(2.0 * np.pi)

# AS241 coefficients, central region |q| <= 0.425
_A = (3.387132872796366608, 133.14166789178437745, 1971.5909503065514427,
      13731.693765509461125, 45921.953931549871457, 67265.770927008700853,
      33430.575583588128105, 2509.0809287301226727)
_B = (1.0, 42.313330701600911252, 687.1870074920579083, 5394.1960214247511077,
      21213.794301586595867, 39307.89580009271061, 28729.085735721942674,
      5226.495278852545925)
# intermediate tail, r <= 5
_C = (1.42343711074968357734, 4.6303378461565452959, 5.7694972214606914055,
      3.64784832476320460504, 1.27045825245236838258, 0.24178072517745061177,
      0.0227238449892691845833, 7.7454501427834140764e-4)
_D = (1.0, 2.05319162663775882187, 1.6763848301838038494,
      0.68976733498510000455, 0.14810397642748007459, 0.0151986665636164571966,
      5.475938084995344946e-4, 1.05075007164441684324e-9)
# far tail
_E = (6.6579046435011037772, 5.4637849111641143699, 1.7848265399172913358,
      0.29656057182850489123, 0.026532189526576123093, 0.0012426609473880784386,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 0.59983220655588793769, 0.13692988092273580531,
      0.0148753612908506148525, 7.868691311456132591e-4, 1.8463183175100546818e-5,
      1.4215117583164458887e-7, 2.04426310338993978564e-15)


def _poly(coeffs, x):
    out = np.zeros_like(x)
    for c in reversed(coeffs):
        out = out * x + c
    return out


def normal_cdf(x):
    """Standard-normal CDF via erfc (accurate in both tails)."""
    x = np.asarray(x, dtype=float)
    return 0.5 * erfc(-x / _SQRT2)


def _ppnd16(p):
    q = p - 0.5
    out = np.empty_like(p)

    central = np.abs(q) <= 0.425
    if central.any():
        qc = q[central]
        r = 0.180625 - qc * qc
        out[central] = qc * _poly(_A, r) / _poly(_B, r)

    tail = ~central
    if tail.any():
        pt = p[tail]
        r = np.where(q[tail] < 0.0, pt, 1.0 - pt)
        r = np.sqrt(-np.log(r))
        near = r <= 5.0
        val = np.empty_like(r)
        rn = r[near] - 1.6
        val[near] = _poly(_C, rn) / _poly(_D, rn)
        rf = r[~near] - 5.0
        val[~near] = _poly(_E, rf) / _poly(_F, rf)
        out[tail] = np.where(q[tail] < 0.0, -val, val)
    return out


def normal_quantile(p):
    """Return Phi^{-1}(p) for 0 < p < 1.

    Accepts a scalar or an array; returns the same shape (a Python float for
    scalar input).

    Raises
    ------
    ValueError
        If any ``p`` lies outside the open interval (0, 1).
    """
    scalar = np.ndim(p) == 0
    p = np.atleast_1d(np.asarray(p, dtype=float))
    if np.any(~((p > 0.0) & (p < 1.0))):
        raise ValueError("normal_quantile requires 0 < p < 1")
    x = _ppnd16(p)
    # One Newton step; the density cannot underflow for p >= 1e-300.
    pdf = np.exp(-0.5 * x * x) / _SQRT2PI
    # Work on the smaller tail so the residual keeps relative precision.
    upper = p > 0.5
    resid = np.where(upper, (1.0 - p) - normal_cdf(-x), normal_cdf(x) - p)
    x = x - resid / pdf
    return float(x[0]) if scalar else x
