import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from rmtlab.histogram import (
    EmptyHistogramError,
    bin_averages,
    check_equidistant,
    colon_edges,
    histogram_density,
    sup_distance,
)


def test_colon_edges():
    edges = colon_edges(-7, 0.2, 3)
    assert edges.size == 51 and edges[0] == -7 and edges[-1] == pytest.approx(3)
    assert colon_edges(0, 0.05, 5).size == 101
    assert colon_edges(0, 0.3, 1).tolist() == pytest.approx([0, 0.3, 0.6, 0.9])
    with pytest.raises(ValueError):
        colon_edges(0, 0, 1)


def test_small_cases():
    np.testing.assert_array_equal(histogram_density([0.5], [0, 1]).density, [1.0])
    np.testing.assert_array_equal(histogram_density([0.25, 0.75], [0, 0.5, 1]).density, [1.0, 1.0])


def test_right_edge_is_kept():
    h = histogram_density([0.0, 1.0], [0, 0.5, 1])
    np.testing.assert_array_equal(h.density, [1.0, 1.0])


def test_uniform_law_of_large_numbers():
    u = np.random.default_rng(0).uniform(size=10 ** 6)
    h = histogram_density(u, colon_edges(0, 0.1, 1))
    assert np.max(np.abs(h.density - 1)) <= 0.01


def test_errors():
    with pytest.raises(EmptyHistogramError):
        histogram_density([5.0], [0, 1])
    with pytest.raises(ValueError):
        check_equidistant([0, 1, 3])
    with pytest.raises(ValueError):
        check_equidistant([1.0])


@settings(max_examples=50, deadline=None)
@given(arrays(float, st.integers(1, 200), elements=st.floats(-1, 1)), st.integers(1, 30))
def test_unit_mass_and_permutation(samples, bins):
    edges = np.linspace(-1, 1, bins + 1)
    h = histogram_density(samples, edges)
    assert np.all(h.density >= 0)
    assert np.sum(h.density) * h.dx == pytest.approx(1.0)
    shuffled = np.random.default_rng(1).permutation(samples)
    np.testing.assert_array_equal(histogram_density(shuffled, edges).density, h.density)


def test_bin_averages_of_linear_curve():
    x = np.linspace(0, 1, 11)
    avg = bin_averages(x, 2 * x, [0, 0.5, 1])
    np.testing.assert_allclose(avg, [0.5, 1.5])
    # zero outside the curve's range
    np.testing.assert_allclose(bin_averages(x, np.ones_like(x), [1.5, 2]), [0.0], atol=1e-12)


def test_sup_distance_of_exact_density():
    edges = colon_edges(0, 0.25, 1)
    h = histogram_density(np.linspace(0, 1, 4001), edges)
    assert sup_distance(h, [0.0, 1.0], [1.0, 1.0]) < 1e-3
