import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mgpfusion.distributions import (Exponential, Gamma, Gaussian, marginal_from_dict,
                                     norm_cdf, norm_quantile)

# reference values from mpmath at 30 digits
NORM_Q975 = 1.9599639845400542
GAMMA2_CDF_AT_2 = 0.5939941502901619
GAMMA2_MEDIAN = 1.6783469900166607
GAMMA2_Q99 = 6.638352067993812
GAMMA2_ISF_1E12 = 31.09987319576915

families = st.one_of(
    st.builds(Gaussian, st.floats(-10, 10), st.floats(0.01, 100)),
    st.builds(Gamma, st.floats(0.2, 20), st.floats(0.05, 20)),
    st.builds(Exponential, st.floats(0.05, 20)),
)


def test_normal_functions():
    assert norm_quantile(0.975) == pytest.approx(NORM_Q975, rel=1e-15)
    assert norm_cdf(0.0) == 0.5
    assert Gaussian(1.0, 4.0).quantile(0.975) == pytest.approx(1 + 2 * NORM_Q975, rel=1e-15)


def test_gamma_reference_values():
    g = Gamma(2.0, 1.0)
    assert g.cdf(2.0) == pytest.approx(GAMMA2_CDF_AT_2, rel=1e-14)
    assert g.quantile(0.5) == pytest.approx(GAMMA2_MEDIAN, rel=1e-13)
    assert g.quantile(0.99) == pytest.approx(GAMMA2_Q99, rel=1e-13)
    assert g.isf(1e-12) == pytest.approx(GAMMA2_ISF_1E12, rel=1e-12)
    assert Gamma(2.0, 3.0).quantile(0.5) == pytest.approx(3 * GAMMA2_MEDIAN, rel=1e-13)
    assert (g.mean(), g.variance()) == (2.0, 2.0)


def test_exponential_closed_form():
    e = Exponential(2.0)
    assert e.quantile(1 - math.exp(-1)) == pytest.approx(0.5, rel=1e-15)
    assert e.quantile(0.5) == pytest.approx(math.log(2) / 2, rel=1e-15)
    assert e.isf(math.exp(-3)) == pytest.approx(1.5, rel=1e-15)
    assert e.cdf(-1.0) == 0.0


@pytest.mark.parametrize("u", [0.0, 1.0, -0.1, 1.5, np.nan])
@pytest.mark.parametrize("m", [Gaussian(), Gamma(2, 1), Exponential(1)])
def test_quantile_domain(m, u):
    with pytest.raises(ValueError):
        m.quantile(u)


@given(families, st.floats(1e-10, 1 - 1e-10))
def test_quantile_cdf_round_trip(m, u):
    x = m.quantile(u)
    assert m.cdf(x) == pytest.approx(u, rel=1e-9, abs=1e-13)
    assert m.sf(m.isf(u)) == pytest.approx(u, rel=1e-9, abs=1e-13)


@given(families, st.lists(st.floats(1e-6, 1 - 1e-6), min_size=2, max_size=20))
def test_quantile_monotone(m, us):
    us = np.sort(us)
    assert np.all(np.diff(m.quantile(us)) >= 0)


@given(families, st.floats(0.01, 50))
def test_cdf_plus_sf_is_one(m, x):
    assert m.cdf(x) + m.sf(x) == pytest.approx(1.0, abs=1e-14)


def test_from_dict_aliases_and_round_trip():
    assert marginal_from_dict({"family": "gamma", "alpha": 2, "beta": 3}) == Gamma(2, 3)
    assert marginal_from_dict({"family": "Normal", "mean": 1, "variance": 2}) == Gaussian(1, 2)
    assert marginal_from_dict({"family": "exponential", "lambda": 4}) == Exponential(4)
    for m in (Gamma(2, 3), Gaussian(1, 2), Exponential(4)):
        assert marginal_from_dict(m.to_dict()) == m


@pytest.mark.parametrize("entry", [{"family": "beta"}, {"shape": 1}, {"family": "gamma", "k": 1}])
def test_from_dict_rejects(entry):
    with pytest.raises(ValueError):
        marginal_from_dict(entry)


@pytest.mark.parametrize("bad", [lambda: Gaussian(0, 0), lambda: Gamma(-1, 1),
                                 lambda: Exponential(0)])
def test_invalid_parameters(bad):
    with pytest.raises(ValueError):
        bad()


def test_moments():
    assert Exponential(2.0).mean() == 0.5
    assert Gamma(3.0, 2.0).mean() == 6.0
    assert Gaussian(1.5, 0.3).mean() == 1.5 and Gaussian(1.5, 0.3).variance() == 0.3
    assert Gaussian().quantile(0.5) == 0.0 and Gaussian().cdf(0.0) == 0.5
    assert Exponential(1.0).cdf(0.0) == 0.0


@pytest.mark.parametrize("m", [Gaussian(2.0, 3.0), Gamma(2.0, 1.5), Exponential(0.5)])
def test_monte_carlo_mean_of_quantile_transform(m):
    u = np.random.default_rng(17).uniform(size=1_000_000)
    x = m.quantile(np.clip(u, 1e-300, None))
    assert abs(x.mean() - m.mean()) <= 4 * m.std() / 1000


@pytest.mark.parametrize("m", [Gaussian(), Gamma(2, 1), Gamma(0.3, 2), Exponential(3)])
def test_round_trip_on_grid(m):
    u = np.concatenate([[1e-6], np.linspace(1e-3, 1 - 1e-3, 999), [1 - 1e-6]])
    assert np.abs(m.cdf(m.quantile(u)) - u).max() < 1e-10
    assert np.all(np.diff(m.quantile(u)) > 0)
