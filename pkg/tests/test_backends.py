"""Both kernel implementations must be available and agree."""
import numpy as np
import pytest

from rmtlab import _accel
from rmtlab.ensembles import EnsembleSpec, RngStream, sample_h_beta
from rmtlab.prolate import prolate_matrix
from rmtlab.tridiag import (
    all_eigenvalues,
    householder_tridiagonalize,
    max_eigenvalue,
    max_eigenvalue_batch,
    sturm_count,
)

pytestmark = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def both(fn):
    with _accel.backend("numba"):
        a = fn()
    with _accel.backend("numpy"):
        b = fn()
    return a, b


@pytest.mark.parametrize("n", [1, 2, 7, 33, 300])
def test_bisection_bit_identical(n):
    T = sample_h_beta(EnsembleSpec(n, 2), RngStream(n))
    a, b = both(lambda: all_eigenvalues(T))
    assert np.array_equal(a, b)
    a, b = both(lambda: max_eigenvalue(T))
    assert a == b
    for x in (-3.0, 0.0, 0.5, 4.0):
        a, b = both(lambda: sturm_count(T, x))
        assert a == b


def test_batch_bit_identical():
    rng = np.random.default_rng(0)
    diag = rng.standard_normal((40, 25))
    shared = np.abs(rng.standard_normal(24))
    per_row = np.abs(rng.standard_normal((40, 24)))
    for off in (shared, per_row):
        a, b = both(lambda: max_eigenvalue_batch(diag, off))
        assert np.array_equal(a, b)


def test_batch_matches_single():
    rng = np.random.default_rng(1)
    diag = rng.standard_normal((5, 9))
    off = rng.standard_normal((5, 8))
    from rmtlab.tridiag import TridiagonalSymmetric
    single = [max_eigenvalue(TridiagonalSymmetric(d, e)) for d, e in zip(diag, off)]
    assert np.array_equal(max_eigenvalue_batch(diag, off), single)


def test_householder_backends_agree():
    A = prolate_matrix(40, 0.05)
    a, b = both(lambda: all_eigenvalues(householder_tridiagonalize(A)))
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-13)


def test_backend_switch_restores_state():
    before = _accel.BACKEND
    with _accel.backend("numpy"):
        assert not _accel.USE_NUMBA
    assert _accel.BACKEND == before
    with pytest.raises(ValueError):
        with _accel.backend("fortran"):
            pass
