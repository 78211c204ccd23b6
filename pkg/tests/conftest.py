import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from mgpfusion import Gamma, Gaussian, KernelConfig, ModelConfig

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def two_modality_model(marginal=None, l=1.0, theta=1.0, b12=0.8, sigma=0.5):
    marginal = marginal or Gaussian(0.0, 1.0)
    return ModelConfig(KernelConfig(l, theta), [[1.0, b12], [b12, 1.0]],
                       (marginal, marginal), sigma**2)


@pytest.fixture
def gauss_model():
    return two_modality_model()


@pytest.fixture
def gamma_model():
    return two_modality_model(Gamma(2.0, 1.0))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
