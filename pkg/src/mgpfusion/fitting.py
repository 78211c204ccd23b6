"""Gaussian-copula fitting from repeated observations and length-scale estimation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .kernels import as_locations
from .rankcorr import (kendall, kendall_to_linear, nearest_pd, spearman,
                       spearman_to_linear)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

_ESTIMATORS = {
    "spearman": (spearman, spearman_to_linear),
    "kendall": (kendall, kendall_to_linear),
}


@dataclass(frozen=True)
class SampleMatrix:
    """Repeated observations: rows are realizations, columns are sensors."""

    values: np.ndarray
    X: np.ndarray
    modality: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        X = as_locations(self.X)
        modality = np.asarray(self.modality, dtype=int).reshape(-1)
        if values.ndim != 2 or values.shape[1] != X.shape[0] or modality.size != X.shape[0]:
            raise ValueError("values must be (rows, sensors) aligned with X and modality")
        if values.shape[0] < 3:
            raise ValueError("at least 3 realizations are required")
        const = np.all(values == values[0], axis=0)
        if np.any(const):
            raise ValueError(f"constant sensor columns: {np.flatnonzero(const).tolist()}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "modality", modality)


def fit_pseudo_correlation(data: SampleMatrix, estimator="spearman") -> np.ndarray:
    """Pairwise rank correlations mapped to the linear scale, repaired to PD."""
    try:
        rank_corr, to_linear = _ESTIMATORS[estimator]
    except KeyError:
        raise ValueError(f"estimator must be 'spearman' or 'kendall', not {estimator!r}") from None
    n = data.values.shape[1]
    R = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            R[i, j] = R[j, i] = to_linear(rank_corr(data.values[:, i], data.values[:, j]))
    return nearest_pd(R)


def golden_section(fun, a, b, tol=1e-6):
    """Minimize a unimodal ``fun`` on ``[a, b]`` to an interval narrower than ``tol``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = fun(d)
    return c if fc < fd else d


def length_scale_objective(R_hat, locs, mask=None):
    """Return ``g(log_l) = sum_{i<j} (R_ij - exp(-d_ij^2 / (2 l^2)))^2``.

    ``mask`` optionally selects which pairs ``(i, j)`` enter the sum.
    """
    X = as_locations(locs)
    R_hat = np.asarray(R_hat, dtype=float)
    iu = np.triu_indices(X.shape[0], k=1)
    d2 = squareform(pdist(X, "sqeuclidean"))[iu]
    r = R_hat[iu]
    if mask is not None:
        keep = np.asarray(mask, dtype=bool)[iu]
        d2, r = d2[keep], r[keep]
    if d2.size == 0:
        raise ValueError("no location pairs to fit")

    def objective(log_l):
        val = float(np.sum((r - np.exp(-0.5 * d2 * math.exp(-2.0 * log_l))) ** 2))
        if not math.isfinite(val):
            raise ArithmeticError(f"non-finite objective at log l = {log_l}")
        return val

    return objective


def default_bounds(locs):
    d = pdist(as_locations(locs))
    d = d[d > 0]
    if d.size == 0:
        raise ValueError("at least two distinct locations are required")
    med = float(np.median(d))
    return 1e-3 * med, 1e3 * med


def fit_length_scale(R_hat, locs, bounds=None, mask=None, tol=1e-6) -> float:
    """Least-squares squared-exponential length scale for a pseudo correlation matrix.

    Golden-section search on ``log l`` over ``bounds`` (default
    ``[1e-3, 1e3]`` times the median pairwise distance).
    """
    lo, hi = default_bounds(locs) if bounds is None else bounds
    if not 0 < lo < hi:
        raise ValueError(f"bounds must satisfy 0 < l_min < l_max, got {(lo, hi)}")
    objective = length_scale_objective(R_hat, locs, mask)
    return math.exp(golden_section(objective, math.log(lo), math.log(hi), tol))
