"""Monte-Carlo comparison of R-BLUE and L-BLUE on simulated copula fields.

Each realization draws the latent GPs jointly at sensor and query
locations, pushes the sensor values through the copula transform, adds
Gaussian sensor noise (and an optional impulse), and scores both estimators
against the true latent field at the query locations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .copula import latent_to_physical
from .sampler import latent_factor, make_rng
from .sblue import BluePredictor, ObservationSet
from .scenario import Scenario

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Draw:
    """One simulated data set."""

    f_sensor: np.ndarray
    f_query: np.ndarray
    u: np.ndarray
    z: np.ndarray
    y: np.ndarray


@dataclass(frozen=True)
class ExperimentReport:
    """Per-realization MSE, indexed ``[realization, mode, modality]``."""

    scenario: str
    seed: int
    modes: tuple
    mse: np.ndarray
    params: dict = None

    @property
    def n_modalities(self):
        return self.mse.shape[2]

    def mean_mse(self):
        """``(mode, modality)`` array of means over realizations."""
        return self.mse.mean(axis=0)

    def mean(self, mode, modality):
        return float(self.mean_mse()[self.modes.index(mode), modality])


def inject_impulse(obs: ObservationSet, index, amplitude) -> ObservationSet:
    """Return a copy of ``obs`` with ``amplitude`` added to observation ``index`` (0-based)."""
    if not 0 <= index < len(obs):
        raise IndexError(f"impulse index {index} outside 0..{len(obs) - 1}")
    y = obs.y.copy()
    y[index] += amplitude
    return obs.with_values(y)


class Simulator:
    """Caches the joint latent factor and the BLUE weights of a scenario."""

    def __init__(self, scn: Scenario):
        self.scn = scn
        model = scn.model
        self.X_all = np.vstack([scn.sensor_X, scn.query_X])
        self.m_all = np.concatenate([scn.sensor_modality, scn.query_modality])
        self.factor = latent_factor(self.X_all, self.m_all, model)
        self.noise_std = np.sqrt(model.noise_var[scn.sensor_modality])
        layout = ObservationSet(scn.sensor_X, scn.sensor_modality,
                                np.zeros(scn.n_sensors))
        self.predictors = {
            mode: BluePredictor(layout, model, mode, scn.noise_model) for mode in scn.modes
        }
        self.weights = {
            mode: p.weights(scn.query_X, scn.query_modality)[0]
            for mode, p in self.predictors.items()
        }
        self.query_masks = [scn.query_modality == m for m in range(model.n_modalities)]

    def draw(self, index) -> Draw:
        scn = self.scn
        rng = make_rng(scn.seed, index)
        n = scn.n_sensors
        f = scn.model.latent_mean[self.m_all] + self.factor @ rng.standard_normal(len(self.m_all))
        noise = self.noise_std * rng.standard_normal(n)
        fs = f[:n]
        field = latent_to_physical(fs, scn.sensor_modality, scn.model)
        y = field.z + noise
        if scn.impulse is not None:
            y[scn.impulse.sensor] += scn.impulse.amplitude
        return Draw(f_sensor=fs, f_query=f[n:], u=field.u, z=field.z, y=y)

    def predict(self, y, mode):
        p = self.predictors[mode]
        return self.scn.model.latent_mean[self.scn.query_modality] + (y - p.mean) @ self.weights[mode].T

    def errors(self, index) -> np.ndarray:
        """``(mode, modality)`` mean squared errors of realization ``index``."""
        d = self.draw(index)
        out = np.empty((len(self.scn.modes), len(self.query_masks)))
        for i, mode in enumerate(self.scn.modes):
            sq = (self.predict(d.y, mode) - d.f_query) ** 2
            for m, mask in enumerate(self.query_masks):
                out[i, m] = sq[mask].mean() if mask.any() else np.nan
        return out


def run_realization(scn: Scenario, realization_index, sim: Simulator = None) -> np.ndarray:
    """Squared-error summary of one realization; see :meth:`Simulator.errors`."""
    return (sim or Simulator(scn)).errors(realization_index)


def run_scenario(scn: Scenario, params=None) -> ExperimentReport:
    sim = Simulator(scn)
    mse = np.stack([sim.errors(i) for i in range(scn.realizations)])
    log.info("%s: %d realizations done", scn.name, scn.realizations)
    return ExperimentReport(scenario=scn.name, seed=scn.seed,
                            modes=tuple(m.value for m in scn.modes), mse=mse, params=params)


def run_sweep(scn: Scenario) -> list:
    """One report per ``(l, theta, sigma)`` grid point, all with the scenario seed."""
    if scn.sweep is None:
        raise ValueError(f"scenario {scn.name!r} has no [sweep] section")
    reports = []
    for l, theta, sigma in scn.sweep.points():
        point = scn.with_params(length_scale=l, theta=theta, sigma=sigma)
        reports.append(run_scenario(point, params={"l": l, "theta": theta, "sigma": sigma}))
    return reports
