"""Spatial best linear unbiased estimation of the latent intensity.

Two variants share one solver and differ only in the correlation fed into
the first two moments:

* ``CorrelationMode.RANK`` (R-BLUE) uses the Spearman correlation implied by
  the latent Gaussian model, ``(6 / pi) asin(rho / 2)``. Because the
  latent-to-physical chain is strictly increasing, this is also the Spearman
  correlation between the latent value and the observation.
* ``CorrelationMode.PEARSON`` (L-BLUE) uses the model linear correlation.

How sensor noise enters the moments is set by ``NoiseModel``:

* ``ADDITIVE`` (default): ``c_k = rho(f*, f_k) sd(f*) sd(Z_k)`` and
  ``A_ij = rho(f_i, f_j) sd(Z_i) sd(Z_j) + [i == j] noise_var_i``. These are
  the exact second moments when the marginals are Gaussian, so the Pearson
  variant is then ordinary GP regression.
* ``SCALED``: the latent correlation is paired with the noisy observation
  scale, ``c_k = rho(f*, f_k) sd(f*) sd(Y_k)`` and
  ``A_ij = rho(f_i, f_j) sd(Y_i) sd(Y_j)`` with
  ``sd(Y)^2 = var(Z) + noise_var``. Noise then rescales the observations
  but is never averaged out.

In both cases ``m_k = mean(Z_k)``, the estimate is
``f* = mu* + c^T A^-1 (Y - m)`` and its MSE is
``B[m*, m*] theta - c^T A^-1 c``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import solve_triangular

from .copula import latent_to_physical
from .kernels import as_locations, cholesky_psd
from .model import ModelConfig
from .rankcorr import linear_to_spearman


class CorrelationMode(str, enum.Enum):
    RANK = "rank"
    PEARSON = "pearson"


class NoiseModel(str, enum.Enum):
    ADDITIVE = "additive"
    SCALED = "scaled"


@dataclass(frozen=True)
class ObservationSet:
    """Sensor locations, 0-based modality labels and observed values ``Y``.

    ``noise_var`` holds one variance per modality; ``None`` means "take it
    from the model".
    """

    X: np.ndarray
    modality: np.ndarray
    y: np.ndarray
    noise_var: np.ndarray = None

    def __post_init__(self):
        X = as_locations(self.X)
        modality = np.asarray(self.modality, dtype=int).reshape(-1)
        y = np.asarray(self.y, dtype=float).reshape(-1)
        if not (X.shape[0] == modality.size == y.size) or y.size == 0:
            raise ValueError("X, modality and y must be non-empty and aligned")
        if np.any(modality < 0):
            raise ValueError("modality labels are 0-based non-negative integers")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "modality", modality)
        object.__setattr__(self, "y", y)
        if self.noise_var is not None:
            nv = np.asarray(self.noise_var, dtype=float).reshape(-1)
            if np.any(nv < 0):
                raise ValueError("noise variances must be >= 0")
            object.__setattr__(self, "noise_var", nv)

    def __len__(self):
        return self.y.size

    def with_values(self, y):
        return replace(self, y=np.asarray(y, dtype=float))


@dataclass(frozen=True)
class BlueEstimate:
    f_hat: float
    mse: float


def _mode_corr(R, mode):
    mode = CorrelationMode(mode)
    return linear_to_spearman(R) if mode is CorrelationMode.RANK else R


def _check_modalities(modality, model):
    modality = np.asarray(modality, dtype=int).reshape(-1)
    if modality.size and (modality.min() < 0 or modality.max() >= model.n_modalities):
        raise ValueError(f"unknown modality; model has {model.n_modalities}")
    return modality


def _noise(obs, model):
    nv = model.noise_var if obs.noise_var is None else obs.noise_var
    if nv.size < model.n_modalities:
        raise ValueError("one noise variance per modality is required")
    return nv[obs.modality]


def _obs_std(obs, model, noise_model):
    var = np.array([model.marginals[m].variance() for m in obs.modality])
    if NoiseModel(noise_model) is NoiseModel.SCALED:
        var = var + _noise(obs, model)
    return np.sqrt(var)


def cross_corr_vector(x_star, modality_star, obs: ObservationSet, model: ModelConfig,
                      mode=CorrelationMode.RANK,
                      noise_model=NoiseModel.ADDITIVE) -> np.ndarray:
    """``E[f* Y]`` for one or several query points.

    A single query point gives a length-``N`` vector; ``Q`` query points give
    a ``(Q, N)`` array.
    """
    Xq = as_locations(x_star)
    mq = _check_modalities(np.broadcast_to(modality_star, (Xq.shape[0],)), model)
    _check_modalities(obs.modality, model)
    R = model.latent_corr(Xq, mq, obs.X, obs.modality)
    c = _mode_corr(R, mode) * np.outer(model.latent_std(mq),
                                       _obs_std(obs, model, noise_model))
    return c[0] if np.ndim(x_star) == 1 else c


def auto_corr_matrix(obs: ObservationSet, model: ModelConfig,
                     mode=CorrelationMode.RANK,
                     noise_model=NoiseModel.ADDITIVE) -> np.ndarray:
    """``E[(Y - m)(Y - m)^T]`` under the chosen correlation mode."""
    _check_modalities(obs.modality, model)
    R = _mode_corr(model.latent_corr(obs.X, obs.modality, obs.X, obs.modality), mode)
    np.fill_diagonal(R, 1.0)
    s = _obs_std(obs, model, noise_model)
    A = R * np.outer(s, s)
    if NoiseModel(noise_model) is NoiseModel.ADDITIVE:
        A[np.diag_indices_from(A)] += _noise(obs, model)
    return 0.5 * (A + A.T)


def obs_mean_vector(obs: ObservationSet, model: ModelConfig) -> np.ndarray:
    _check_modalities(obs.modality, model)
    return np.array([model.marginals[m].mean() for m in obs.modality])


class BluePredictor:
    """BLUE for a fixed sensor layout; reuses one factorization of ``A``.

    The weights depend only on geometry and model, so a predictor can be
    applied to many observation vectors and query sets.
    """

    def __init__(self, obs: ObservationSet, model: ModelConfig,
                 mode=CorrelationMode.RANK, noise_model=NoiseModel.ADDITIVE):
        self.obs = obs
        self.model = model
        self.mode = CorrelationMode(mode)
        self.noise_model = NoiseModel(noise_model)
        A = auto_corr_matrix(obs, model, self.mode, self.noise_model)
        self.chol, self.jitter = cholesky_psd(A)
        self.mean = obs_mean_vector(obs, model)

    def weights(self, Xq, mq):
        """Return ``(W, mse)`` with ``W = c^T A^-1`` of shape ``(Q, N)``."""
        Xq = as_locations(Xq)
        mq = _check_modalities(np.broadcast_to(mq, (Xq.shape[0],)), self.model)
        C = cross_corr_vector(Xq, mq, self.obs, self.model, self.mode, self.noise_model)
        V = solve_triangular(self.chol, C.T, lower=True)
        W = solve_triangular(self.chol, V, lower=True, trans="T").T
        mse = self.model.latent_var(mq) - np.sum(V * V, axis=0)
        return W, np.clip(mse, 0.0, None)

    def predict(self, Xq, mq, y=None):
        """Predicted latent intensities and their MSE at the query points."""
        Xq = as_locations(Xq)
        mq = np.broadcast_to(np.asarray(mq, dtype=int), (Xq.shape[0],))
        W, mse = self.weights(Xq, mq)
        y = self.obs.y if y is None else np.asarray(y, dtype=float)
        f_hat = self.model.latent_mean[mq] + (y - self.mean) @ W.T
        return f_hat, mse


def blue_predict(x_star, modality_star, obs: ObservationSet, model: ModelConfig,
                 mode=CorrelationMode.RANK,
                 noise_model=NoiseModel.ADDITIVE) -> BlueEstimate:
    """Predict the latent intensity of ``modality_star`` at ``x_star``."""
    f_hat, mse = BluePredictor(obs, model, mode, noise_model).predict(
        np.asarray(x_star, dtype=float).reshape(1, 2), [int(modality_star)])
    return BlueEstimate(f_hat=float(f_hat[0]), mse=float(mse[0]))


def physical_point_estimate(f_hat, modality, model: ModelConfig) -> np.ndarray:
    """Push latent predictions through the copula transform onto the physical scale.

    This is a point transform of ``f_hat``, not the posterior mean of the
    physical field.
    """
    return latent_to_physical(f_hat, modality, model).z
