import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rmtlab.ensembles import (
    EnsembleSpec,
    RngStream,
    SamplingMode,
    chi_sample,
    default_cutoff,
    sample_h_beta,
    sample_truncated_scaled,
    scale_max,
    simulate_largest,
    truncated_offdiag,
)
from rmtlab.tridiag import all_eigenvalues


def mean_within(samples, expected, k):
    se = samples.std(ddof=1) / np.sqrt(samples.size)
    return abs(samples.mean() - expected) <= k * se


@pytest.mark.parametrize("d", [5, 2])
def test_chi_square_mean(d):
    x2 = chi_sample(np.full(10 ** 5, float(d)), RngStream(d)) ** 2
    assert mean_within(x2, d, 3)


def test_chi_square_variance():
    x2 = chi_sample(np.full(10 ** 5, 4.0), RngStream(4)) ** 2
    # standard error of the sample variance from the fourth central moment
    m4 = np.mean((x2 - x2.mean()) ** 4)
    se = np.sqrt((m4 - x2.var() ** 2) / x2.size)
    assert abs(x2.var(ddof=1) - 8) <= 5 * se


def test_chi_small_degrees_and_domain():
    x = chi_sample(np.full(1000, 0.3), RngStream(0))
    assert np.all(x >= 0)
    assert isinstance(chi_sample(1.0, RngStream(0)), float)
    with pytest.raises(ValueError):
        chi_sample(0.0, RngStream(0))


def test_spec_validation_and_cutoff():
    assert EnsembleSpec(10 ** 9, mode="large-n").cutoff == 10000
    assert default_cutoff(10) == 10
    assert EnsembleSpec(10 ** 6, mode=SamplingMode.LARGE_N).cutoff == 1000
    with pytest.raises(ValueError):
        EnsembleSpec(1000, mode=SamplingMode.LARGE_N)
    with pytest.raises(ValueError):
        EnsembleSpec(100, beta=3)
    with pytest.raises(ValueError):
        EnsembleSpec(0)
    with pytest.raises(ValueError):
        EnsembleSpec(10, cutoff=11)


def test_single_entry_draw():
    T = sample_h_beta(EnsembleSpec(1), RngStream(3))
    assert T.n == 1 and T.offdiag.size == 0
    assert T.diag[0] == RngStream(3).generator().standard_normal()


def test_exact_draw_moments():
    n = 10 ** 4
    T = sample_h_beta(EnsembleSpec(n, 2), RngStream(1))
    assert abs(T.diag.var() - 1) <= 0.05
    k = np.arange(1, n)
    slope = np.polyfit(n - k, T.offdiag ** 2, 1)[0]
    assert abs(slope - 1.0) <= 0.05  # beta / 2


def test_truncated_sampler_shape():
    spec = EnsembleSpec(10 ** 9, 2, mode=SamplingMode.LARGE_N)
    T = sample_truncated_scaled(spec, RngStream(0))
    assert T.n == 10000
    assert T.offdiag[0] == pytest.approx(0.5 * np.sqrt(1 - 1e-9), rel=1e-15)
    np.testing.assert_array_equal(T.offdiag, truncated_offdiag(spec.n, spec.cutoff))


def test_scale_max():
    assert scale_max(1.0, 10 ** 6) == 0.0
    assert scale_max(1 + (10 ** 6) ** (-2 / 3), 10 ** 6) == pytest.approx(2.0)


def test_truncated_edge_mean():
    spec = EnsembleSpec(10 ** 6, 2, mode=SamplingMode.LARGE_N)
    lam = simulate_largest(spec, 1000, seed=3)
    assert abs(lam.mean() - (-1.77)) <= 0.05


def test_determinism_and_chunking():
    spec = EnsembleSpec(10 ** 6, 2, mode=SamplingMode.LARGE_N)
    a = simulate_largest(spec, 30, seed=5, chunk=7)
    b = simulate_largest(spec, 30, seed=5, chunk=30)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, simulate_largest(spec, 30, seed=6))
    T1 = sample_h_beta(EnsembleSpec(50), RngStream(2, 9))
    T2 = sample_h_beta(EnsembleSpec(50), RngStream(2, 9))
    assert np.array_equal(T1.diag, T2.diag) and np.array_equal(T1.offdiag, T2.offdiag)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 300), st.sampled_from([1, 2, 4]), st.integers(0, 2 ** 32))
def test_offdiagonal_nonnegative(n, beta, seed):
    assert np.all(sample_h_beta(EnsembleSpec(n, beta), RngStream(seed)).offdiag >= 0)


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_semicircle_support(beta):
    n = 2000
    eigs = all_eigenvalues(sample_h_beta(EnsembleSpec(n, beta), RngStream(beta)))
    x = eigs / np.sqrt(2 * beta * n)
    assert np.mean(np.abs(x) > 1.05) <= 0.01


@pytest.mark.parametrize("beta,mean", [(1, -1.2065), (2, -1.7711), (4, -2.0552)])
def test_exact_mode_edge_means(beta, mean):
    # beta = 4 is measured in the s4 = s / 2^(2/3) variable
    lam = simulate_largest(EnsembleSpec(400, beta), 300, seed=beta)
    assert mean_within(lam, mean, 4.5)
