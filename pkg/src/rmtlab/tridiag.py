"""Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.

Only eigenvalues are computed. Every routine works from the LDL^T pivot
recurrence

    q_1 = d_1 - x,    q_k = d_k - x - e_{k-1}^2 / q_{k-1},

whose negative pivots count the eigenvalues below ``x``. Dense symmetric
matrices are first reduced to tridiagonal form with Householder reflections.

Each kernel exists as a numba-compiled loop (``*_jit``) and a vectorised numpy
routine (``*_np``); the public functions dispatch on :data:`rmtlab._accel.USE_NUMBA`.
The bisection paths perform the same floating point operations in the same
order and return identical bits. The Householder paths agree to rounding
only, since the numpy one goes through BLAS.
"""
from dataclasses import dataclass

import numpy as np

from . import _accel
from ._accel import njit, prange

EPS = np.finfo(float).eps
DEFAULT_TOL = 1e-12
MAX_ITER = 200
SAFE_MIN = 2.0 ** -300
SAFE_MAX = 2.0 ** 300


@dataclass(frozen=True)
class TridiagonalSymmetric:
    """Real symmetric tridiagonal matrix stored as two vectors."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.ascontiguousarray(self.diag, dtype=float).reshape(-1)
        e = np.ascontiguousarray(self.offdiag, dtype=float).reshape(-1)
        if d.size < 1:
            raise ValueError("tridiagonal matrix needs n >= 1")
        if e.size != d.size - 1:
            raise ValueError(
                f"offdiag has length {e.size}, expected {d.size - 1}")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ValueError("entries must be finite")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self):
        return self.diag.size

    def gershgorin(self):
        """Return ``(lo, hi)`` enclosing the whole spectrum."""
        return _gershgorin(self.diag, self.offdiag)

    @property
    def scale(self):
        """Spectral radius bound from the Gershgorin discs."""
        lo, hi = self.gershgorin()
        return max(abs(lo), abs(hi))

    def to_dense(self):
        a = np.diag(self.diag)
        if self.n > 1:
            idx = np.arange(self.n - 1)
            a[idx, idx + 1] = self.offdiag
            a[idx + 1, idx] = self.offdiag
        return a


@dataclass(frozen=True)
class DenseSymmetric:
    """Dense real symmetric matrix; symmetry is checked exactly."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("entries must be finite")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not exactly symmetric")
        object.__setattr__(self, "entries", a)

    @property
    def n(self):
        return self.entries.shape[0]


def _gershgorin(d, e):
    r = np.zeros_like(d)
    if e.size:
        ae = np.abs(e)
        r[:-1] += ae
        r[1:] += ae
    return float(np.min(d - r)), float(np.max(d + r))


def _scale(lo, hi):
    s = max(abs(lo), abs(hi))
    return s if s > 0.0 else 1.0


def _pow2_factor(scale):
    """Exact power-of-two factor that brings ``scale`` near 1, or 1.0.

    Applied only far outside the normal range, where pivots and the
    bisection target would under- or overflow.
    """
    if SAFE_MIN <= scale <= SAFE_MAX or scale == 0.0:
        return 1.0
    return float(np.ldexp(1.0, int(np.clip(-np.frexp(scale)[1], -1000, 1000))))


def _n_iter(width, tol, scale):
    """Bisection steps needed to shrink ``width`` below ``tol * scale``."""
    target = tol * scale
    if width <= target:
        return 0
    return min(MAX_ITER, int(np.ceil(np.log2(width / target))))


# ---------------------------------------------------------------------------
# numba kernels


@njit(cache=True)
def _sturm_count_jit(d, e2, x, pivmin):
    n = d.shape[0]
    count = 0
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for k in range(1, n):
        q = d[k] - x - e2[k - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


@njit(cache=True)
def _kth_eigenvalue_jit(d, e2, k, lo, hi, pivmin, n_iter):
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        if _sturm_count_jit(d, e2, mid, pivmin) > k:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


BLOCK = 32


@njit(cache=True)
def _bisect_block_jit(d, e2, k, lo, hi, pivmin, n_iter):
    # Lanes share the matrix; the inner loop over lanes keeps several
    # independent pivot chains in flight, which lets LLVM vectorise the division.
    m = k.shape[0]
    n = d.shape[0]
    q = np.empty(m)
    mid = np.empty(m)
    cnt = np.empty(m, dtype=np.int64)
    for _ in range(n_iter):
        for j in range(m):
            mid[j] = 0.5 * (lo[j] + hi[j])
            v = d[0] - mid[j]
            if abs(v) < pivmin:
                v = -pivmin
            q[j] = v
            cnt[j] = 1 if v < 0.0 else 0
        for i in range(1, n):
            di = d[i]
            ei = e2[i - 1]
            for j in range(m):
                v = di - mid[j] - ei / q[j]
                v = -pivmin if abs(v) < pivmin else v
                q[j] = v
                cnt[j] += 1 if v < 0.0 else 0
        for j in range(m):
            if cnt[j] > k[j]:
                hi[j] = mid[j]
            else:
                lo[j] = mid[j]
    out = np.empty(m)
    for j in range(m):
        out[j] = 0.5 * (lo[j] + hi[j])
    return out


@njit(cache=True, parallel=True)
def _all_eigenvalues_jit(d, e2, lo, hi, pivmin, n_iter):
    n = d.shape[0]
    out = np.empty(n)
    nblocks = (n + BLOCK - 1) // BLOCK
    for b in prange(nblocks):
        start = b * BLOCK
        stop = min(n, start + BLOCK)
        k = np.arange(start, stop)
        blo = np.full(stop - start, lo)
        bhi = np.full(stop - start, hi)
        out[start:stop] = _bisect_block_jit(d, e2, k, blo, bhi, pivmin, n_iter)
    return out


@njit(cache=True, parallel=True)
def _max_eigenvalue_batch_jit(d, e2, lo, hi, pivmin, n_iter):
    trials, n = d.shape
    out = np.empty(trials)
    for i in prange(trials):
        out[i] = _kth_eigenvalue_jit(d[i], e2[i], n - 1, lo[i], hi[i],
                                     pivmin[i], n_iter[i])
    return out


@njit(cache=True)
def _householder_jit(a):
    n = a.shape[0]
    diag = np.empty(n)
    off = np.zeros(max(n - 1, 0))
    for k in range(n - 2):
        m = n - k - 1
        norm = 0.0
        for i in range(m):
            norm += a[k + 1 + i, k] * a[k + 1 + i, k]
        norm = np.sqrt(norm)
        if norm == 0.0:
            off[k] = 0.0
            continue
        x0 = a[k + 1, k]
        alpha = -norm if x0 >= 0.0 else norm
        v = np.empty(m)
        for i in range(m):
            v[i] = a[k + 1 + i, k]
        v[0] -= alpha
        vn = 0.0
        for i in range(m):
            vn += v[i] * v[i]
        vn = np.sqrt(vn)
        for i in range(m):
            v[i] /= vn
        p = np.zeros(m)
        for i in range(m):
            s = 0.0
            for j in range(m):
                s += a[k + 1 + i, k + 1 + j] * v[j]
            p[i] = s
        kk = 0.0
        for i in range(m):
            kk += v[i] * p[i]
        for i in range(m):
            p[i] -= kk * v[i]
        for i in range(m):
            for j in range(m):
                a[k + 1 + i, k + 1 + j] -= 2.0 * (v[i] * p[j] + p[i] * v[j])
        off[k] = alpha
    for i in range(n):
        diag[i] = a[i, i]
    if n >= 2:
        off[n - 2] = a[n - 1, n - 2]
    return diag, off


# ---------------------------------------------------------------------------
# numpy kernels


def _sturm_counts_np(d, e2, x, pivmin):
    """Eigenvalue counts below each shift in ``x``.

    ``d`` and ``e2`` are either 1-D (one matrix, many shifts) or 2-D with the
    matrix index along axis 1 (one matrix per row of shifts).
    """
    x = np.asarray(x, dtype=float)
    batched = d.ndim == 2
    count = np.zeros(x.shape, dtype=np.int64)
    q = (d[:, 0] if batched else d[0]) - x
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count += q < 0.0
    for k in range(1, d.shape[-1]):
        if batched:
            q = d[:, k] - x - e2[:, k - 1] / q
        else:
            q = d[k] - x - e2[k - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0.0
    return count


def _bisect_np(d, e2, k, lo, hi, pivmin, n_iter):
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        above = _sturm_counts_np(d, e2, mid, pivmin) > k
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    return 0.5 * (lo + hi)


def _householder_np(a):
    n = a.shape[0]
    off = np.zeros(max(n - 1, 0))
    for k in range(n - 2):
        x = a[k + 1:, k]
        norm = np.sqrt(np.dot(x, x))
        if norm == 0.0:
            continue
        alpha = -norm if x[0] >= 0.0 else norm
        v = x.copy()
        v[0] -= alpha
        v /= np.sqrt(np.dot(v, v))
        sub = a[k + 1:, k + 1:]
        p = sub @ v
        p -= np.dot(v, p) * v
        sub -= 2.0 * (np.outer(v, p) + np.outer(p, v))
        off[k] = alpha
    diag = np.diag(a).copy()
    if n >= 2:
        off[n - 2] = a[n - 1, n - 2]
    return diag, off


# ---------------------------------------------------------------------------
# public API


def _prep(T):
    d, e = T.diag, T.offdiag
    factor = _pow2_factor(T.scale)
    if factor != 1.0:
        d, e = d * factor, e * factor
    e2 = e * e
    lo, hi = _gershgorin(d, e)
    scale = _scale(lo, hi)
    return d, e2, lo, hi, scale, EPS * scale, factor


def sturm_count(T, x):
    """Number of eigenvalues of ``T`` strictly below ``x``.

    Pivots smaller than ``eps * scale`` in magnitude are replaced by
    ``-eps * scale``.
    """
    d, e2, _, _, _, pivmin, factor = _prep(T)
    x = float(x) * factor
    if _accel.USE_NUMBA:
        return int(_sturm_count_jit(d, e2, x, pivmin))
    return int(_sturm_counts_np(d, e2, x, pivmin))


def max_eigenvalue(T, tol=DEFAULT_TOL):
    """Largest eigenvalue of ``T`` by bisection on the Gershgorin interval.

    The result lies within ``tol * scale`` of the true value, where
    ``scale`` is the Gershgorin bound on the spectral radius.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    d, e2, lo, hi, scale, pivmin, factor = _prep(T)
    n_iter = _n_iter(hi - lo, tol, scale)
    k = T.n - 1
    if _accel.USE_NUMBA:
        lam = _kth_eigenvalue_jit(d, e2, k, lo, hi, pivmin, n_iter)
    else:
        lam = _bisect_np(d, e2, k, lo, hi, pivmin, n_iter)
    return float(lam) / factor


def all_eigenvalues(T, tol=DEFAULT_TOL):
    """All eigenvalues of ``T`` in ascending order.

    Each index is bisected independently, so the numba path spreads indices
    over threads without changing the result.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    d, e2, lo, hi, scale, pivmin, factor = _prep(T)
    n_iter = _n_iter(hi - lo, tol, scale)
    if _accel.USE_NUMBA:
        eigs = _all_eigenvalues_jit(d, e2, lo, hi, pivmin, n_iter)
    else:
        n = T.n
        eigs = _bisect_np(d, e2, np.arange(n), np.full(n, lo),
                          np.full(n, hi), pivmin, n_iter)
    return eigs / factor if factor != 1.0 else eigs


def max_eigenvalue_batch(diag, offdiag, tol=DEFAULT_TOL):
    """Largest eigenvalue of each row-matrix in a batch.

    ``diag`` has shape ``(trials, n)``; ``offdiag`` has shape ``(n - 1,)``
    (shared by every trial) or ``(trials, n - 1)``.
    """
    d = np.ascontiguousarray(diag, dtype=float)
    if d.ndim != 2:
        raise ValueError("diag must be 2-D (trials, n)")
    if tol <= 0:
        raise ValueError("tol must be positive")
    trials, n = d.shape
    e = np.broadcast_to(np.asarray(offdiag, dtype=float), (trials, n - 1))
    r = np.zeros((trials, n))
    ae = np.abs(e)
    r[:, :-1] += ae
    r[:, 1:] += ae
    radius = np.maximum(np.abs(np.min(d - r, axis=1)), np.abs(np.max(d + r, axis=1)))
    factor = np.array([_pow2_factor(v) for v in radius])
    if np.any(factor != 1.0):
        d = d * factor[:, None]
        e = e * factor[:, None]
        r = r * factor[:, None]
    e2 = e * e
    lo = np.min(d - r, axis=1)
    hi = np.max(d + r, axis=1)
    scale = np.maximum(np.abs(lo), np.abs(hi))
    scale[scale == 0.0] = 1.0
    pivmin = EPS * scale
    n_iter = np.array([_n_iter(h - l, tol, s) for l, h, s in zip(lo, hi, scale)],
                      dtype=np.int64)
    if _accel.USE_NUMBA:
        out = _max_eigenvalue_batch_jit(d, np.ascontiguousarray(e2), lo, hi,
                                        pivmin, n_iter)
    else:
        out = np.empty(trials)
        # group rows by iteration count so every row takes exactly its own steps
        for steps in np.unique(n_iter):
            rows = np.nonzero(n_iter == steps)[0]
            out[rows] = _bisect_np(d[rows], e2[rows], n - 1, lo[rows], hi[rows],
                                   pivmin[rows], int(steps))
    return out / factor


def householder_tridiagonalize(A):
    """Reduce a :class:`DenseSymmetric` matrix to tridiagonal form.

    The returned matrix is orthogonally similar to ``A``; off-diagonal
    signs may differ from other reductions.
    """
    a = np.array(A.entries, dtype=float, order="C")
    factor = _pow2_factor(np.max(np.abs(a)) if a.size else 0.0)
    if factor != 1.0:
        a *= factor
    if _accel.USE_NUMBA:
        d, e = _householder_jit(a)
    else:
        d, e = _householder_np(a)
    return TridiagonalSymmetric(d / factor, e / factor)


def dense_symmetric_eigenvalues(A, tol=DEFAULT_TOL):
    """Eigenvalues of a dense symmetric matrix, ascending."""
    return all_eigenvalues(householder_tridiagonalize(A), tol)
