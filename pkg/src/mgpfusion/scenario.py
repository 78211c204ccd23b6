"""Scenario files: TOML with [scenario], [model], [sensors], [query],
[marginals], [noise], [impulse] and [sweep] sections.

Modality labels and the impulse sensor index are 1-based in files and
0-based in memory. Noise is given as a standard deviation per modality.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .distributions import marginal_from_dict
from .kernels import KernelConfig, as_locations
from .model import ModelConfig
from .sblue import CorrelationMode, NoiseModel

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

DEFAULTS = {
    "realizations": 1000,
    "seed": 20240521,
    "length_scale": 1.0,
    "theta": 1.0,
    "cross_scale": 0.8,
    "sensor_count": 20,
    "extent": (0.0, 10.0),
    "query_count": 51,
    "sigma": 0.5,
}


@dataclass(frozen=True)
class Impulse:
    sensor: int  # 0-based index into the observation vector
    amplitude: float


@dataclass(frozen=True)
class Sweep:
    length_scale: tuple
    theta: tuple
    sigma: tuple

    def __post_init__(self):
        for name in ("length_scale", "theta", "sigma"):
            vals = tuple(float(v) for v in getattr(self, name))
            if not vals:
                raise ValueError(f"sweep grid '{name}' must be non-empty")
            object.__setattr__(self, name, vals)

    def points(self):
        return list(itertools.product(self.length_scale, self.theta, self.sigma))


@dataclass(frozen=True)
class Scenario:
    name: str
    model: ModelConfig
    sensor_X: np.ndarray
    sensor_modality: np.ndarray
    query_X: np.ndarray
    query_modality: np.ndarray
    realizations: int = DEFAULTS["realizations"]
    seed: int = DEFAULTS["seed"]
    impulse: Impulse = None
    sweep: Sweep = None
    noise_model: NoiseModel = NoiseModel.ADDITIVE
    modes: tuple = (CorrelationMode.RANK, CorrelationMode.PEARSON)
    source: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        n = len(self.sensor_modality)
        if self.impulse is not None and not 0 <= self.impulse.sensor < n:
            raise ValueError(f"impulse sensor {self.impulse.sensor + 1} outside 1..{n}")
        M = self.model.n_modalities
        for labels in (self.sensor_modality, self.query_modality):
            if np.any((labels < 0) | (labels >= M)):
                raise ValueError(f"modality labels must lie in 1..{M}")
        object.__setattr__(self, "noise_model", NoiseModel(self.noise_model))
        object.__setattr__(self, "modes", tuple(CorrelationMode(m) for m in self.modes))

    @property
    def n_sensors(self):
        return len(self.sensor_modality)

    def with_params(self, length_scale=None, theta=None, sigma=None):
        return replace(self, model=self.model.with_params(length_scale, theta, sigma))


def _transect(count, start, stop, n_modalities):
    xs = np.linspace(start, stop, count)
    X = np.column_stack([np.tile(xs, n_modalities), np.zeros(count * n_modalities)])
    modality = np.repeat(np.arange(n_modalities), count)
    return X, modality


def _layout(section, n_modalities, default_count):
    if "locations" in section:
        X = as_locations(section["locations"])
        modality = np.asarray(section.get("modality", [1] * len(X)), dtype=int) - 1
        if modality.size != X.shape[0]:
            raise ValueError("explicit locations need one modality label each")
        return X, modality
    start, stop = section.get("extent", DEFAULTS["extent"])
    return _transect(int(section.get("count", default_count)), float(start), float(stop),
                     n_modalities)


def scenario_from_dict(doc: dict, name=None) -> Scenario:
    meta = doc.get("scenario", {})
    mdl = doc.get("model", {})
    if "coregionalization" in mdl:
        B = np.asarray(mdl["coregionalization"], dtype=float)
    else:
        b = float(mdl.get("cross_scale", DEFAULTS["cross_scale"]))
        B = np.array([[1.0, b], [b, 1.0]])
    M = B.shape[0]
    kernel = KernelConfig(float(mdl.get("length_scale", DEFAULTS["length_scale"])),
                          float(mdl.get("theta", DEFAULTS["theta"])))

    marg_doc = doc.get("marginals", {})
    marginals = []
    for m in range(1, M + 1):
        entry = marg_doc.get(str(m), marg_doc.get("default"))
        if entry is None:
            raise ValueError(f"no marginal given for modality {m}")
        marginals.append(marginal_from_dict(entry))

    sigma = doc.get("noise", {}).get("sigma", DEFAULTS["sigma"])
    sigma = np.broadcast_to(np.asarray(sigma, dtype=float), (M,))
    model = ModelConfig(kernel=kernel, B=B, marginals=tuple(marginals),
                        noise_var=sigma**2, latent_mean=mdl.get("latent_mean"))

    sX, sm = _layout(doc.get("sensors", {}), M, DEFAULTS["sensor_count"])
    qX, qm = _layout(doc.get("query", {}), M, DEFAULTS["query_count"])

    impulse = None
    imp = doc.get("impulse")
    if imp and imp.get("enabled", True):
        impulse = Impulse(sensor=int(imp["sensor"]) - 1, amplitude=float(imp["amplitude"]))

    sweep = None
    sw = doc.get("sweep")
    if sw:
        sweep = Sweep(
            length_scale=sw.get("length_scale", [kernel.length_scale]),
            theta=sw.get("theta", [kernel.theta]),
            sigma=sw.get("sigma", [float(sigma[0])]),
        )

    return Scenario(
        name=str(meta.get("name", name or "scenario")),
        model=model,
        sensor_X=sX, sensor_modality=sm,
        query_X=qX, query_modality=qm,
        realizations=int(meta.get("realizations", DEFAULTS["realizations"])),
        seed=int(meta.get("seed", DEFAULTS["seed"])),
        impulse=impulse,
        sweep=sweep,
        noise_model=mdl.get("noise_moments", NoiseModel.ADDITIVE.value),
        source=doc,
    )


def bundled_scenarios():
    """Names of the scenario files shipped with the package."""
    root = resources.files("mgpfusion") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".toml"))


def load_scenario(path) -> Scenario:
    """Load a scenario from a TOML path or the name of a bundled scenario."""
    p = Path(path)
    if not p.exists():
        bundled = resources.files("mgpfusion") / "scenarios" / f"{p.stem}.toml"
        if not bundled.is_file():
            raise FileNotFoundError(f"no scenario file {path!s} and no bundled "
                                    f"scenario {p.stem!r}; bundled: {bundled_scenarios()}")
        text = bundled.read_text()
    else:
        text = p.read_text()
    return scenario_from_dict(tomllib.loads(text), name=p.stem)
