"""Squared-exponential kernel and the coregionalized joint covariance.

Locations are handled as ``(n, 2)`` float arrays; modality labels are
0-based integer arrays of length ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial.distance import cdist

JITTER_START = 1e-10
JITTER_CAP = 1e-4


class Location(NamedTuple):
    x1: float
    x2: float


class CholeskyError(np.linalg.LinAlgError):
    """No jitter on the ladder made the matrix factorizable."""


@dataclass(frozen=True)
class KernelConfig:
    """Hyperparameters of the squared-exponential kernel.

    Parameters
    ----------
    length_scale : float
        Characteristic length ``l`` (> 0).
    theta : float
        Signal variance ``theta`` (> 0); ``k(a, a) == theta``.
    jitter : float
        Starting rung of the Cholesky jitter ladder, relative to ``theta``.
    """

    length_scale: float = 1.0
    theta: float = 1.0
    jitter: float = JITTER_START

    def __post_init__(self):
        if not (np.isfinite(self.length_scale) and self.length_scale > 0):
            raise ValueError(f"length_scale must be > 0, got {self.length_scale}")
        if not (np.isfinite(self.theta) and self.theta > 0):
            raise ValueError(f"theta must be > 0, got {self.theta}")
        if not self.jitter >= 0:
            raise ValueError(f"jitter must be >= 0, got {self.jitter}")


def as_locations(locs) -> np.ndarray:
    """Coerce a point, list of points or array to a finite ``(n, 2)`` array."""
    X = np.atleast_2d(np.asarray(locs, dtype=float))
    if X.ndim != 2 or X.shape[1] != 2:
        raise ValueError(f"locations must have shape (n, 2), got {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("location coordinates must be finite")
    return X


def validate_coregionalization(B) -> np.ndarray:
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise ValueError(f"coregionalization matrix must be square, got {B.shape}")
    if not np.allclose(B, B.T, rtol=0, atol=1e-12):
        raise ValueError("coregionalization matrix must be symmetric")
    if np.any(np.diag(B) <= 0):
        raise ValueError("coregionalization diagonal must be strictly positive")
    if np.linalg.eigvalsh(B).min() < -1e-10 * np.abs(B).max():
        raise ValueError("coregionalization matrix must be positive semi-definite")
    return B


def sq_exp_kernel(a, b, cfg: KernelConfig):
    """Evaluate ``theta * exp(-|a - b|^2 / (2 l^2))``.

    With two single points the result is a float; with point sets of shape
    ``(n, 2)`` and ``(m, 2)`` it is the ``(n, m)`` Gram matrix.
    """
    A = as_locations(a)
    Bp = as_locations(b)
    d2 = cdist(A, Bp, "sqeuclidean")
    K = cfg.theta * np.exp(-0.5 * d2 / cfg.length_scale**2)
    if np.ndim(a) == 1 and np.ndim(b) == 1:
        return float(K[0, 0])
    return K


def cross_cov(Xa, ma, Xb, mb, B, cfg: KernelConfig) -> np.ndarray:
    """Cross-covariance block ``B[m_i, m_j] * k(x_i, x_j)``."""
    B = np.asarray(B, dtype=float)
    ma = np.asarray(ma, dtype=int)
    mb = np.asarray(mb, dtype=int)
    return B[np.ix_(ma, mb)] * sq_exp_kernel(as_locations(Xa), as_locations(Xb), cfg)


def build_joint_cov(X, modality, B, cfg: KernelConfig) -> np.ndarray:
    """Joint covariance of linearly dependent GPs under intrinsic coregionalization.

    Entry ``(i, j)`` is ``B[m_i, m_j] * k(x_i, x_j)``. When the rows are
    ordered by modality this is exactly the block matrix
    ``[[K1, K12], [K21, K2]]``.
    """
    X = as_locations(X)
    modality = np.asarray(modality, dtype=int).reshape(-1)
    if modality.shape[0] != X.shape[0]:
        raise ValueError("one modality label per location is required")
    if X.shape[0] == 0:
        raise ValueError("at least one location is required")
    B = validate_coregionalization(B)
    if modality.min() < 0 or modality.max() >= B.shape[0]:
        raise ValueError(
            f"modality labels must lie in [0, {B.shape[0] - 1}] to match B"
        )
    K = cross_cov(X, modality, X, modality, B, cfg)
    return 0.5 * (K + K.T)


def cholesky_psd(K, max_jitter=None, start_jitter=None):
    """Lower Cholesky factor of ``K + eps * I`` for the smallest working ``eps``.

    The ladder is ``0, start, 10 * start, ...`` up to ``max_jitter``. Both
    default to the ``JITTER_START``/``JITTER_CAP`` fractions of the mean
    diagonal of ``K``.

    Returns
    -------
    L : ndarray
        Lower-triangular factor.
    eps : float
        The jitter that was added to the diagonal.
    """
    K = np.asarray(K, dtype=float)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError("K must be a square matrix")
    if not np.allclose(K, K.T, rtol=1e-10, atol=1e-12):
        raise ValueError("K must be symmetric")
    scale = float(np.mean(np.diag(K))) if K.size else 1.0
    scale = scale if scale > 0 else 1.0
    if start_jitter is None:
        start_jitter = JITTER_START * scale
    if max_jitter is None:
        max_jitter = JITTER_CAP * scale

    eye = np.eye(K.shape[0])
    eps = 0.0
    while True:
        try:
            return np.linalg.cholesky(K + eps * eye), eps
        except np.linalg.LinAlgError:
            pass
        eps = start_jitter if eps == 0.0 else eps * 10.0
        # small slack so the cap itself is reachable despite rounding
        if eps > max_jitter * (1 + 1e-9):
            raise CholeskyError(f"matrix not factorizable with jitter <= {max_jitter:g}")
