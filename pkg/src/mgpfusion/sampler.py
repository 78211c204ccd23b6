"""Seeded draws of the coupled latent Gaussian processes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernels import as_locations, cholesky_psd
from .model import ModelConfig


def make_rng(seed, index=None) -> np.random.Generator:
    """Generator for ``seed``, or for the independent child stream ``index``.

    Child streams use ``SeedSequence`` spawn keys, so stream ``i`` is the
    same whether or not streams ``0..i-1`` were ever created.
    """
    if isinstance(seed, np.random.Generator):
        if index is not None:
            raise ValueError("cannot derive an indexed stream from a Generator")
        return seed
    if isinstance(seed, np.random.SeedSequence):
        ss = seed
    else:
        ss = np.random.SeedSequence(int(seed))
    if index is not None:
        ss = np.random.SeedSequence(ss.entropy, spawn_key=tuple(ss.spawn_key) + (int(index),))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class FieldRealization:
    X: np.ndarray
    modality: np.ndarray
    f: np.ndarray
    seed: object = None


def latent_factor(X, modality, model: ModelConfig):
    """Cholesky factor of the joint latent covariance (with ladder jitter)."""
    K = model.joint_cov(X, modality)
    L, _ = cholesky_psd(K, start_jitter=model.kernel.jitter * model.kernel.theta)
    return L


def sample_latent(X, modality, model: ModelConfig, seed, size=None, factor=None):
    """Draw ``f = mu + L z`` at the given locations.

    Parameters
    ----------
    X, modality : array_like
        ``(N, 2)`` locations and their 0-based modality labels.
    model : ModelConfig
    seed : int, SeedSequence or Generator
    size : int, optional
        Number of independent draws; ``f`` then has shape ``(size, N)``.
    factor : ndarray, optional
        Precomputed :func:`latent_factor` for these locations.
    """
    X = as_locations(X)
    modality = np.asarray(modality, dtype=int).reshape(-1)
    L = latent_factor(X, modality, model) if factor is None else factor
    rng = make_rng(seed)
    mu = model.latent_mean[modality]
    if size is None:
        f = mu + L @ rng.standard_normal(X.shape[0])
    else:
        f = mu + rng.standard_normal((size, X.shape[0])) @ L.T
    return FieldRealization(X=X, modality=modality, f=f, seed=seed)
