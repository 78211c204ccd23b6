"""Field reconstruction from copula-linked multi-output Gaussian processes.

Latent GPs coupled by intrinsic coregionalization are pushed through a
Gaussian copula onto arbitrary physical marginals, observed with sensor
noise, and reconstructed with a spatial BLUE built from either rank (R-BLUE)
or linear (L-BLUE) correlations.
"""

from .copula import (bvn_cdf, gaussian_copula_cdf, latent_to_physical,
                     physical_to_latent)
from .distributions import Exponential, Gamma, Gaussian, Marginal, marginal_from_dict
from .fitting import SampleMatrix, fit_length_scale, fit_pseudo_correlation
from .harness import ExperimentReport, Simulator, run_realization, run_scenario, run_sweep
from .kernels import (CholeskyError, KernelConfig, Location, build_joint_cov,
                      cholesky_psd, sq_exp_kernel)
from .model import ModelConfig
from .rankcorr import (Direction, kendall, kendall_to_linear, linear_to_spearman,
                       nearest_pd, spearman, spearman_after_transform, spearman_to_linear)
from .sampler import make_rng, sample_latent
from .sblue import (BlueEstimate, BluePredictor, CorrelationMode, NoiseModel,
                    ObservationSet, blue_predict, physical_point_estimate)
from .scenario import Scenario, load_scenario

__version__ = "0.1.0"

__all__ = [
    "BlueEstimate", "BluePredictor", "CholeskyError", "CorrelationMode", "Direction",
    "ExperimentReport", "Exponential", "Gamma", "Gaussian", "KernelConfig", "Location",
    "Marginal", "ModelConfig", "NoiseModel", "ObservationSet", "SampleMatrix", "Scenario",
    "Simulator", "blue_predict", "build_joint_cov", "bvn_cdf", "cholesky_psd",
    "fit_length_scale", "fit_pseudo_correlation", "gaussian_copula_cdf", "kendall",
    "kendall_to_linear", "latent_to_physical", "linear_to_spearman", "load_scenario",
    "make_rng", "marginal_from_dict", "nearest_pd", "physical_point_estimate",
    "physical_to_latent", "run_realization",
    "run_scenario", "run_sweep", "sample_latent", "spearman", "spearman_after_transform",
    "spearman_to_linear", "sq_exp_kernel",
]
