"""Gaussian copula: the latent-to-physical transform chain and the copula CDF.

Step 1 maps each latent value to a uniform through its own normal CDF,
step 2 maps the uniform to the physical scale through the target quantile.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .distributions import Gaussian
from .model import ModelConfig

U_EPS = 1e-15

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)
_GL_PANELS = 4


@dataclass(frozen=True)
class TransformedField:
    u: np.ndarray
    z: np.ndarray
    marginals: tuple


def _standardize(f, modality, model):
    modality = np.asarray(modality, dtype=int)
    f = np.asarray(f, dtype=float)
    return (f - model.latent_mean[modality]) / model.latent_std(modality)


def standard_to_physical(x, marginal):
    """Push standard-normal scores through ``H^-1(Phi(x))``.

    Positive scores go through the upper tail (``isf(Phi(-x))``) so neither
    tail loses precision to cancellation near ``u = 1``.
    """
    x = np.asarray(x, dtype=float)
    if isinstance(marginal, Gaussian):
        return marginal.mu + marginal.sigma * x
    lower = np.clip(special.ndtr(np.minimum(x, 0.0)), U_EPS, 1 - U_EPS)
    upper = np.clip(special.ndtr(-np.maximum(x, 0.0)), U_EPS, 1 - U_EPS)
    return np.where(x <= 0, marginal.quantile(lower), marginal.isf(upper))


def physical_to_standard(z, marginal):
    z = np.asarray(z, dtype=float)
    if isinstance(marginal, Gaussian):
        return (z - marginal.mu) / marginal.sigma
    p = np.asarray(marginal.cdf(z))
    q = np.asarray(marginal.sf(z))
    lower = special.ndtri(np.clip(p, U_EPS, 1 - U_EPS))
    upper = -special.ndtri(np.clip(q, U_EPS, 1 - U_EPS))
    return np.where(p <= 0.5, lower, upper)


def latent_to_physical(f, modality, model: ModelConfig) -> TransformedField:
    """Map latent GP values to uniforms and then to the physical marginals.

    ``f`` may be a vector aligned with ``modality`` or a ``(draws, N)`` array.
    """
    modality = np.asarray(modality, dtype=int).reshape(-1)
    x = _standardize(f, modality, model)
    u = np.clip(special.ndtr(x), U_EPS, 1 - U_EPS)
    z = np.empty_like(x)
    for m, marginal in enumerate(model.marginals):
        cols = modality == m
        if np.any(cols):
            z[..., cols] = standard_to_physical(x[..., cols], marginal)
    return TransformedField(u=u, z=z, marginals=model.marginals)


def physical_to_latent(z, modality, model: ModelConfig) -> np.ndarray:
    """Inverse of :func:`latent_to_physical`: ``f = mu + s * Phi^-1(H(z))``."""
    modality = np.asarray(modality, dtype=int).reshape(-1)
    z = np.asarray(z, dtype=float)
    x = np.empty_like(z)
    for m, marginal in enumerate(model.marginals):
        cols = modality == m
        if not np.any(cols):
            continue
        if not np.all(marginal.in_support(z[..., cols])):
            raise ValueError(f"values outside the support of modality {m} marginal")
        x[..., cols] = physical_to_standard(z[..., cols], marginal)
    return model.latent_mean[modality] + model.latent_std(modality) * x


def bvn_cdf(h, k, rho):
    """Standard bivariate normal CDF ``P(X <= h, Y <= k)`` with correlation ``rho``.

    Uses ``Phi(h) Phi(k) + (1 / 2 pi) * int_0^{asin rho} exp(-(h^2 + k^2 -
    2 h k sin t) / (2 cos^2 t)) dt`` with composite Gauss-Legendre on ``t``.
    Infinite limits are handled exactly.
    """
    h, k = np.broadcast_arrays(np.asarray(h, dtype=float), np.asarray(k, dtype=float))
    rho = float(rho)
    out = np.empty(h.shape)
    neg = np.isneginf(h) | np.isneginf(k)
    hinf = np.isposinf(h)
    kinf = np.isposinf(k)
    out[neg] = 0.0
    out[~neg & hinf] = special.ndtr(k[~neg & hinf])
    out[~neg & ~hinf & kinf] = special.ndtr(h[~neg & ~hinf & kinf])
    fin = ~neg & ~hinf & ~kinf
    hf, kf = h[fin], k[fin]
    base = special.ndtr(hf) * special.ndtr(kf)
    if rho != 0.0 and hf.size:
        tmax = np.arcsin(rho)
        edges = np.linspace(0.0, tmax, _GL_PANELS + 1)
        half = 0.5 * (edges[1:] - edges[:-1])
        mid = 0.5 * (edges[1:] + edges[:-1])
        t = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
        w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
        s, c2 = np.sin(t), np.cos(t) ** 2
        hk = (hf * hf + kf * kf)[:, None]
        expo = -(hk - 2.0 * (hf * kf)[:, None] * s[None, :]) / (2.0 * c2[None, :])
        base = base + np.exp(expo) @ w / (2.0 * np.pi)
    out[fin] = np.clip(base, 0.0, 1.0)
    return out if out.ndim else float(out)


def gaussian_copula_cdf(u1, u2, rho):
    """Bivariate Gaussian copula ``C(u1, u2) = Phi_2(Phi^-1(u1), Phi^-1(u2); rho)``."""
    rho = float(rho)
    if not abs(rho) < 1:
        raise ValueError(f"|rho| must be < 1, got {rho}")
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    if np.any((u1 < 0) | (u1 > 1) | (u2 < 0) | (u2 > 1)):
        raise ValueError("copula arguments must lie in [0, 1]")
    return bvn_cdf(special.ndtri(u1), special.ndtri(u2), rho)
