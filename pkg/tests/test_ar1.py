import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from essbench.ar1 import (Ar1Params, ar1_coeff_for_iact, ar1_exact_iact, ar1_mean_variance,
                          ar1_simulate, ar1_spectral_density, ar1_stationary_moments,
                          ar1_transient_moments)
from essbench.chain import autocov_fft
from essbench.errors import NonStationaryError
from essbench.rng import derive_seed, generator, splitmix64


def test_exact_iact_values():
    assert ar1_exact_iact(0.0) == 1.0
    assert ar1_exact_iact(0.5) == pytest.approx(3.0, abs=1e-15)
    assert ar1_exact_iact(4999 / 5001) == pytest.approx(5000, rel=1e-12)
    assert ar1_exact_iact(math.sqrt(0.75)) == pytest.approx(13.928203230275509, rel=1e-14)
    for a in (1.0, -1.0, 1.5):
        with pytest.raises(NonStationaryError):
            ar1_exact_iact(a)


def test_coeff_for_iact_values():
    assert ar1_coeff_for_iact(1) == 0.0
    assert ar1_coeff_for_iact(5000) == pytest.approx(4999 / 5001, abs=1e-16)
    assert ar1_coeff_for_iact(5000) == pytest.approx(0.99960008, abs=1e-8)
    assert ar1_coeff_for_iact(50000) == pytest.approx(49999 / 50001, abs=1e-16)
    assert ar1_coeff_for_iact(100) == pytest.approx(99 / 101, abs=1e-16)
    with pytest.raises(ValueError):
        ar1_coeff_for_iact(0.5)


@given(st.floats(1.0, 1e7))
def test_iact_coeff_roundtrip(tau):
    assert ar1_exact_iact(ar1_coeff_for_iact(tau)) == pytest.approx(tau, rel=1e-8)


@pytest.mark.parametrize("a", [-0.5, 0.0, 0.3, 0.9])
def test_spectral_density(a):
    assert 2 * math.pi * ar1_spectral_density(a, 0.0) == pytest.approx(ar1_exact_iact(a))
    # normalised density integrates to rho(0) = 1 over [-pi, pi]
    total, _ = quad(lambda w: float(ar1_spectral_density(a, w)), -math.pi, math.pi)
    assert total == pytest.approx(1.0, rel=1e-9)


def test_transient_moments():
    p = Ar1Params(0.5, 1.0, 1.0)
    assert ar1_transient_moments(p, 2) == pytest.approx((1.5, 1.25))
    assert ar1_transient_moments(Ar1Params(0.5), 0) == (0.0, 0.0)
    far = ar1_transient_moments(Ar1Params(0.9), 10_000)
    assert far == pytest.approx((0.0, 1 / (1 - 0.81)))
    assert ar1_transient_moments(p, 3, "stationary") == ar1_stationary_moments(p)


def test_params_validation():
    with pytest.raises(NonStationaryError):
        Ar1Params(1.0)
    with pytest.raises(ValueError):
        Ar1Params(0.5, sigma_eps=0.0)


def test_simulate_determinism_and_streams():
    p = Ar1Params(0.7)
    a = ar1_simulate(p, 1000, seed=42).samples
    b = ar1_simulate(p, 1000, seed=42).samples
    c = ar1_simulate(p, 1000, seed=42, replicate=1).samples
    d = ar1_simulate(p, 1000, seed=43).samples
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c) and not np.array_equal(a, d)


def test_simulate_matches_recurrence():
    p = Ar1Params(0.6, 0.2, 1.5)
    x = ar1_simulate(p, 50, seed=9, init=2.0).samples
    rng = generator(9, 0)
    eps = 0.2 + 1.5 * rng.standard_normal(50)
    prev, expected = 2.0, []
    for e in eps:
        prev = 0.6 * prev + e
        expected.append(prev)
    np.testing.assert_allclose(x, expected, rtol=1e-13)


def test_white_noise_lag_one():
    n = 100_000
    x = ar1_simulate(Ar1Params(0.0), n, seed=1).samples
    acov = autocov_fft(x, 1).values
    assert abs(acov[1] / acov[0]) < 3 / math.sqrt(n)


def test_ensemble_moments_and_correlations():
    a, n, reps = 0.8, 4000, 200
    p = Ar1Params(a)
    xs = np.stack([ar1_simulate(p, n, seed=77, replicate=k).samples for k in range(reps)])
    _, var_stat = ar1_stationary_moments(p)
    # sample variance across replicates
    v = xs.var(axis=1)
    se = v.std(ddof=1) / math.sqrt(reps)
    assert abs(v.mean() - var_stat) < 3 * se + var_stat * ar1_exact_iact(a) / n
    # autocorrelations up to lag 20
    rho = np.stack([autocov_fft(x, 20).values / autocov_fft(x, 0).values[0] for x in xs])
    se_rho = rho.std(axis=0, ddof=1) / math.sqrt(reps)
    bias = (np.arange(21) + ar1_exact_iact(a)) / n
    assert np.all(np.abs(rho.mean(axis=0) - a ** np.arange(21)) <= 3 * se_rho + bias)
    # variance of the sample mean
    means = xs.mean(axis=1)
    target = ar1_mean_variance(p, n)
    se_var = target * math.sqrt(2 / (reps - 1))
    assert abs(means.var(ddof=1) - target) < 3 * se_var + target * 2 * ar1_exact_iact(a) / n


def test_stationary_draw_start():
    p = Ar1Params(0.95)
    first = np.array([ar1_simulate(p, 1, seed=3, replicate=k).samples[0] for k in range(4000)])
    assert first.var() == pytest.approx(1 / (1 - 0.95 ** 2), rel=0.1)


def test_fixed_start_transient():
    p = Ar1Params(0.5, 1.0, 1.0)
    xs = np.array([ar1_simulate(p, 2, seed=5, init=0.0, replicate=k).samples[1]
                   for k in range(20_000)])
    mean, var = ar1_transient_moments(p, 2)
    assert xs.mean() == pytest.approx(mean, abs=0.03)
    assert xs.var() == pytest.approx(var, rel=0.05)


def test_seed_derivation():
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert derive_seed(1, 2) != derive_seed(2, 1)
    assert derive_seed(5) == splitmix64(5)
    assert generator(1, 2).random() == generator(1, 2).random()
