"""Gap probability from the Prolate matrix, with Richardson extrapolation.

The sine kernel restricted to an interval is discretised by the ``n x n``
Prolate matrix with bandwidth ``w = s / (2n)``; the gap probability is then
``prod(1 - lambda_i)`` over its eigenvalues. The error behaves like
``1/n^2``, so values at doubling ``n`` can be extrapolated.
"""
from dataclasses import dataclass

import numpy as np

from .tridiag import DenseSymmetric, TridiagonalSymmetric, dense_symmetric_eigenvalues

S_GRID = np.arange(501) * 0.01
SIZES = (20, 40, 80, 160)
EIG_TOL = 1e-14


@dataclass(frozen=True)
class ProlateResult:
    s: np.ndarray
    sizes: np.ndarray
    E_by_n: np.ndarray
    E_extrapolated: np.ndarray
    stages: tuple


def _check_w(w):
    if not 0.0 <= w < 0.5:
        raise ValueError(f"bandwidth w must lie in [0, 1/2), got {w}")


def prolate_coefficients(n, w):
    """First row ``a_0 = 2w``, ``a_k = sin(2 pi w k) / (pi k)``."""
    _check_w(w)
    k = np.arange(1, n)
    return np.concatenate([[2.0 * w], np.sin(2.0 * np.pi * w * k) / (np.pi * k)])


def prolate_matrix(n, w):
    """Symmetric Toeplitz ``n x n`` Prolate matrix."""
    if n < 1:
        raise ValueError("n must be positive")
    a = prolate_coefficients(n, w)
    idx = np.arange(n)
    return DenseSymmetric(a[np.abs(idx[:, None] - idx[None, :])])


def commuting_tridiagonal(n, w):
    """Tridiagonal matrix that commutes with ``prolate_matrix(n, w)``."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_w(w)
    k = np.arange(1, n + 1)
    alpha = ((n + 1) / 2.0 - k) ** 2 * np.cos(2.0 * np.pi * w)
    kb = np.arange(1, n)
    beta = 0.5 * kb * (n - kb)
    return TridiagonalSymmetric(alpha, beta)


def product_one_minus(lams):
    """``prod(1 - lams)``, summed in log space when every factor is positive."""
    factors = 1.0 - np.asarray(lams, dtype=float)
    if np.all(factors > 0):
        return float(np.exp(np.sum(np.log(factors))))
    return float(np.prod(factors))


def gap_probability(s, n, tol=EIG_TOL):
    """``E_1(s)`` from the ``n x n`` Prolate matrix with ``w = s / (2n)``."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    w = s / (2.0 * n)
    _check_w(w)
    if s == 0:
        return 1.0
    lams = dense_symmetric_eigenvalues(prolate_matrix(n, w), tol)
    return product_one_minus(lams)


def richardson_extrapolate(values, order_start=2):
    """Repeated Richardson elimination across columns at doubling sizes.

    Stage ``i`` (from 1) maps adjacent columns ``(a, b)`` to
    ``b + (b - a) / (2^(order_start + i - 1) - 1)``. Returns the final
    column and the tuple of all stages, stage 0 being the input.
    """
    cur = np.asarray(values, dtype=float)
    if cur.ndim == 1:
        cur = cur[None, :]
    if cur.shape[1] < 2:
        raise ValueError("need at least two size columns")
    stages = [cur]
    for i in range(1, cur.shape[1]):
        cur = cur[:, 1:] + np.diff(cur, axis=1) / (2.0 ** (order_start + i - 1) - 1.0)
        stages.append(cur)
    return cur[:, 0], tuple(stages)


def prolate_gap_table(s_grid=S_GRID, sizes=SIZES, tol=EIG_TOL):
    """``E_1`` on ``s_grid`` for each size and the extrapolated curve."""
    sizes = np.asarray(sizes, dtype=int)
    if sizes.size >= 2 and np.any(sizes[1:] != 2 * sizes[:-1]):
        raise ValueError("sizes must double")
    s_grid = np.asarray(s_grid, dtype=float)
    table = np.empty((s_grid.size, sizes.size))
    for j, n in enumerate(sizes):
        for i, s in enumerate(s_grid):
            table[i, j] = gap_probability(s, int(n), tol)
    if sizes.size >= 2:
        extrapolated, stages = richardson_extrapolate(table)
    else:
        extrapolated, stages = table[:, 0], (table,)
    return ProlateResult(s_grid, sizes, table, extrapolated, stages)


def stage_errors(result, reference):
    """Max-over-``s`` error of every column of every stage against ``reference``.

    Entry ``[j][i]`` is the error of stage ``i`` in the column whose largest
    contributing size is ``sizes[j]`` (NaN where that column does not exist),
    which is the lower-triangular layout of a convergence table.
    """
    reference = np.asarray(reference, dtype=float)
    m = result.sizes.size
    out = np.full((m, len(result.stages)), np.nan)
    for i, stage in enumerate(result.stages):
        err = np.max(np.abs(stage - reference[:, None]), axis=0)
        out[i:, i] = err
    return out
