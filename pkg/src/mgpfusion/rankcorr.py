"""Rank correlations, their Gaussian-copula links to linear correlation,
Spearman's rho under monotone marginal transforms, and correlation repair.
"""

from __future__ import annotations

import enum

import numpy as np
from scipy import stats

QUAD_ORDER = 64
EIG_FLOOR = 1e-8


class Direction(str, enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


def _pair(xs, ys):
    x = np.asarray(xs, dtype=float).ravel()
    y = np.asarray(ys, dtype=float).ravel()
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 2:
        raise ValueError("need at least two observations")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("observations must be finite")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise ValueError("rank correlation undefined for constant input")
    return x, y


def _pearson(a, b):
    a = a - a.mean()
    b = b - b.mean()
    return float(np.clip(a @ b / np.sqrt((a @ a) * (b @ b)), -1.0, 1.0))


def spearman(xs, ys) -> float:
    """Spearman's rho as the Pearson correlation of mid-ranks."""
    x, y = _pair(xs, ys)
    return _pearson(stats.rankdata(x), stats.rankdata(y))


def kendall(xs, ys) -> float:
    """Kendall's tau-b (tie corrected)."""
    x, y = _pair(xs, ys)
    return float(stats.kendalltau(x, y, variant="b").statistic)


def _check_corr(r, name):
    r = np.asarray(r, dtype=float)
    if np.any(~(np.abs(r) <= 1)):
        raise ValueError(f"{name} must lie in [-1, 1]")
    return r


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def _keep_ends(r, val):
    # +-1 and 0 are fixed points of every conversion; return them exactly
    return np.where((np.abs(r) == 1) | (r == 0), r, np.clip(val, -1.0, 1.0))


def spearman_to_linear(rho_s):
    """Linear correlation of a Gaussian copula from Spearman's rho: ``2 sin(pi rho_s / 6)``."""
    rho_s = _check_corr(rho_s, "Spearman's rho")
    return _out(_keep_ends(rho_s, 2.0 * np.sin(np.pi * rho_s / 6.0)))


def linear_to_spearman(rho):
    """Spearman's rho of a Gaussian copula with linear correlation ``rho``."""
    rho = _check_corr(rho, "linear correlation")
    return _out(_keep_ends(rho, 6.0 / np.pi * np.arcsin(rho / 2.0)))


def kendall_to_linear(tau):
    """Linear correlation of a Gaussian copula from Kendall's tau: ``sin(pi tau / 2)``."""
    tau = _check_corr(tau, "Kendall's tau")
    return _out(_keep_ends(tau, np.sin(np.pi * tau / 2.0)))


def linear_to_kendall(rho):
    rho = _check_corr(rho, "linear correlation")
    return _out(_keep_ends(rho, 2.0 / np.pi * np.arcsin(rho)))


def spearman_after_transform(copula_cdf, d1=Direction.INCREASING,
                             d2=Direction.INCREASING, order=QUAD_ORDER) -> float:
    """Spearman's rho of ``(T1(X1), T2(X2))`` from the copula of ``(X1, X2)``.

    ``copula_cdf(u1, u2)`` must accept broadcastable arrays. The double
    integral of the (reflected) copula over the unit square uses a
    tensor-product Gauss-Legendre rule of the given order.
    """
    d1, d2 = Direction(d1), Direction(d2)
    nodes, weights = np.polynomial.legendre.leggauss(order)
    u = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    u1 = u[:, None]
    u2 = u[None, :]
    a1 = u1 if d1 is Direction.INCREASING else 1.0 - u1
    a2 = u2 if d2 is Direction.INCREASING else 1.0 - u2
    vals = np.asarray(copula_cdf(a1, a2), dtype=float)
    if vals.shape != (order, order) or not np.all(np.isfinite(vals)):
        raise ArithmeticError("copula quadrature produced non-finite values")
    integral = float(w @ vals @ w)
    if d1 is d2:
        return 12.0 * integral - 3.0
    return 3.0 - 12.0 * integral


def nearest_pd(R, floor=EIG_FLOOR) -> np.ndarray:
    """Repair a pseudo correlation matrix into a positive definite correlation matrix.

    Eigenvalues are raised to a clip level ``c`` and the result is rescaled to
    unit diagonal. Rescaling by ``D = diag(S)^-1/2`` can shrink eigenvalues by
    up to ``max(diag S)``, so ``c`` is lifted until ``c / max(diag S)`` clears
    ``floor``. A matrix already satisfying the floor is returned unchanged,
    which makes the repair idempotent.
    """
    R = np.array(R, dtype=float)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise ValueError("correlation matrix must be square")
    if not np.allclose(R, R.T, rtol=0, atol=1e-12):
        raise ValueError("correlation matrix must be symmetric")
    if not 0 < floor < 1:
        raise ValueError("eigenvalue floor must lie in (0, 1)")
    R = 0.5 * (R + R.T)
    np.fill_diagonal(R, 1.0)
    vals, vecs = np.linalg.eigh(R)
    if vals.min() >= floor:
        return R
    c = floor
    for _ in range(50):
        S = (vecs * np.maximum(vals, c)) @ vecs.T
        smax = float(np.diag(S).max())
        if c >= 1.01 * floor * smax:
            break
        c = 1.02 * floor * smax
    d = 1.0 / np.sqrt(np.diag(S))
    out = np.clip(S * np.outer(d, d), -1.0, 1.0)
    out = 0.5 * (out + out.T)
    np.fill_diagonal(out, 1.0)
    return out
