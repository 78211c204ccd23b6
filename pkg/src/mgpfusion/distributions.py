"""Marginal distributions for the physical fields.

Every marginal exposes ``cdf``, ``sf``, ``quantile`` and ``isf`` (inverse
survival) plus analytic ``mean``/``variance``. The survival pair lets the
copula transform evaluate upper tails without cancellation.

The Gamma family uses the shape/scale convention, so ``mean == shape * scale``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special


def norm_cdf(x):
    """Standard normal CDF, ``erfc(-x / sqrt 2) / 2``."""
    return special.ndtr(x)


def norm_quantile(u):
    """Standard normal quantile."""
    return special.ndtri(u)


def _check_unit_open(u):
    u = np.asarray(u, dtype=float)
    if np.any(~((u > 0) & (u < 1))):
        raise ValueError("probabilities must lie strictly inside (0, 1)")
    return u


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


class Marginal:
    """Base class; subclasses implement the four distribution functions."""

    family = "abstract"

    def cdf(self, x):
        return _out(self._cdf(np.asarray(x, dtype=float)))

    def sf(self, x):
        return _out(self._sf(np.asarray(x, dtype=float)))

    def quantile(self, u):
        return _out(self._quantile(_check_unit_open(u)))

    def isf(self, q):
        return _out(self._isf(_check_unit_open(q)))

    def in_support(self, x):
        return np.isfinite(x)

    def std(self) -> float:
        return math.sqrt(self.variance())

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Gaussian(Marginal):
    mu: float = 0.0
    var: float = 1.0
    family = "gaussian"

    def __post_init__(self):
        if not (np.isfinite(self.mu) and self.var > 0 and np.isfinite(self.var)):
            raise ValueError(f"invalid Gaussian parameters mu={self.mu}, var={self.var}")

    @property
    def sigma(self):
        return math.sqrt(self.var)

    def _cdf(self, x):
        return special.ndtr((x - self.mu) / self.sigma)

    def _sf(self, x):
        return special.ndtr((self.mu - x) / self.sigma)

    def _quantile(self, u):
        return self.mu + self.sigma * special.ndtri(u)

    def _isf(self, q):
        return self.mu - self.sigma * special.ndtri(q)

    def mean(self):
        return float(self.mu)

    def variance(self):
        return float(self.var)

    def to_dict(self):
        return {"family": self.family, "mu": self.mu, "var": self.var}


@dataclass(frozen=True)
class Gamma(Marginal):
    """Gamma distribution with ``shape`` (alpha) and ``scale`` (beta)."""

    shape: float = 1.0
    scale: float = 1.0
    family = "gamma"

    def __post_init__(self):
        if not (self.shape > 0 and self.scale > 0):
            raise ValueError(
                f"invalid Gamma parameters shape={self.shape}, scale={self.scale}"
            )

    def _cdf(self, x):
        return special.gammainc(self.shape, np.maximum(x, 0.0) / self.scale)

    def _sf(self, x):
        return special.gammaincc(self.shape, np.maximum(x, 0.0) / self.scale)

    def _quantile(self, u):
        return self.scale * special.gammaincinv(self.shape, u)

    def _isf(self, q):
        return self.scale * special.gammainccinv(self.shape, q)

    def in_support(self, x):
        return np.isfinite(x) & (np.asarray(x) >= 0)

    def mean(self):
        return float(self.shape * self.scale)

    def variance(self):
        return float(self.shape * self.scale**2)

    def to_dict(self):
        return {"family": self.family, "shape": self.shape, "scale": self.scale}


@dataclass(frozen=True)
class Exponential(Marginal):
    rate: float = 1.0
    family = "exponential"

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError(f"invalid Exponential rate {self.rate}")

    def _cdf(self, x):
        return -np.expm1(-self.rate * np.maximum(x, 0.0))

    def _sf(self, x):
        return np.exp(-self.rate * np.maximum(x, 0.0))

    def _quantile(self, u):
        return -np.log1p(-u) / self.rate

    def _isf(self, q):
        return -np.log(q) / self.rate

    def in_support(self, x):
        return np.isfinite(x) & (np.asarray(x) >= 0)

    def mean(self):
        return 1.0 / self.rate

    def variance(self):
        return 1.0 / self.rate**2

    def to_dict(self):
        return {"family": self.family, "rate": self.rate}


_FAMILIES = {
    "gaussian": (Gaussian, {"mu": "mu", "mean": "mu", "var": "var", "variance": "var"}),
    "normal": (Gaussian, {"mu": "mu", "mean": "mu", "var": "var", "variance": "var"}),
    "gamma": (Gamma, {"shape": "shape", "alpha": "shape", "scale": "scale", "beta": "scale"}),
    "exponential": (Exponential, {"rate": "rate", "lambda": "rate"}),
}


def marginal_from_dict(entry: dict) -> Marginal:
    """Build a marginal from a mapping such as ``{"family": "gamma", "shape": 2}``."""
    entry = dict(entry)
    try:
        family = entry.pop("family").lower()
        cls, aliases = _FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown or missing marginal family in {entry!r}") from None
    kwargs = {}
    for key, value in entry.items():
        if key not in aliases:
            raise ValueError(f"unknown parameter {key!r} for {family} marginal")
        kwargs[aliases[key]] = float(value)
    return cls(**kwargs)
