"""Model configuration shared by the sampler, the copula transform and the BLUE."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .distributions import Marginal
from .kernels import KernelConfig, build_joint_cov, cross_cov, validate_coregionalization


@dataclass(frozen=True)
class ModelConfig:
    """Kernel, coregionalization, marginals and sensor noise for ``M`` modalities.

    Parameters
    ----------
    kernel : KernelConfig
        Shared spatial kernel.
    B : array_like
        ``(M, M)`` PSD coregionalization matrix.
    marginals : sequence of Marginal
        Target marginal of each physical field.
    noise_var : array_like
        Additive Gaussian noise variance of each modality's sensors.
    latent_mean : array_like, optional
        Constant latent mean per modality, zero by default.
    """

    kernel: KernelConfig
    B: np.ndarray
    marginals: tuple
    noise_var: np.ndarray
    latent_mean: np.ndarray = field(default=None)

    def __post_init__(self):
        B = validate_coregionalization(self.B)
        M = B.shape[0]
        marginals = tuple(self.marginals)
        if len(marginals) != M or not all(isinstance(m, Marginal) for m in marginals):
            raise ValueError(f"need {M} Marginal objects, got {marginals!r}")
        noise = np.broadcast_to(np.asarray(self.noise_var, dtype=float), (M,)).copy()
        if np.any(noise < 0) or not np.all(np.isfinite(noise)):
            raise ValueError("noise variances must be finite and >= 0")
        mean = np.zeros(M) if self.latent_mean is None else np.broadcast_to(
            np.asarray(self.latent_mean, dtype=float), (M,)).copy()
        for arr in (B, noise, mean):
            arr.setflags(write=False)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "marginals", marginals)
        object.__setattr__(self, "noise_var", noise)
        object.__setattr__(self, "latent_mean", mean)

    @property
    def n_modalities(self) -> int:
        return self.B.shape[0]

    def latent_var(self, modality=None):
        """Prior variance ``B[m, m] * theta`` of the latent field(s)."""
        v = np.diag(self.B) * self.kernel.theta
        return v if modality is None else v[np.asarray(modality, dtype=int)]

    def latent_std(self, modality=None):
        return np.sqrt(self.latent_var(modality))

    def joint_cov(self, X, modality):
        return build_joint_cov(X, modality, self.B, self.kernel)

    def cross_cov(self, Xa, ma, Xb, mb):
        return cross_cov(Xa, ma, Xb, mb, self.B, self.kernel)

    def latent_corr(self, Xa, ma, Xb, mb):
        """Model linear (Pearson) correlation between latent values."""
        sa = self.latent_std(ma)
        sb = self.latent_std(mb)
        R = self.cross_cov(Xa, ma, Xb, mb) / np.outer(sa, sb)
        return np.clip(R, -1.0, 1.0)

    def with_params(self, length_scale=None, theta=None, noise_std=None):
        """Copy with kernel hyperparameters and/or a common noise std replaced."""
        kernel = replace(
            self.kernel,
            **{k: v for k, v in (("length_scale", length_scale), ("theta", theta))
               if v is not None},
        )
        noise = self.noise_var if noise_std is None else np.full(
            self.n_modalities, float(noise_std) ** 2)
        return replace(self, kernel=kernel, noise_var=noise)
