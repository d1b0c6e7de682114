"""Tridiagonal beta-Hermite samplers and largest-eigenvalue rescaling.

The model matrix has standard normal diagonal entries and off-diagonal
``chi_{(n-k) beta} / sqrt(2)``; its spectrum has the law of the Gaussian
ensemble with the same beta. For huge ``n`` only the top-left
``round(10 n^(1/3))`` block matters for the largest eigenvalue, and there
the chi variables are replaced by their means.

Freezing the off-diagonal removes noise of the same size as the diagonal
noise: near the edge the diagonal entry and its two off-diagonal neighbours
act together as one white-noise potential whose intensity is twice that of
the diagonal alone. The truncated sampler therefore draws the scaled
diagonal with variance ``1/(beta n)`` rather than ``1/(2 beta n)``.
"""
import enum
from dataclasses import dataclass

import numpy as np

from .tridiag import TridiagonalSymmetric, max_eigenvalue_batch

BETAS = (1, 2, 4)
LARGE_N_MIN = 10 ** 6
DETERMINISTIC_CHI_DOF = 10 ** 4


class SamplingMode(enum.Enum):
    EXACT = "exact"
    LARGE_N = "large-n"


def default_cutoff(n):
    return min(int(n), int(round(10 * n ** (1.0 / 3.0))))


@dataclass(frozen=True)
class EnsembleSpec:
    n: int
    beta: int = 2
    cutoff: int = None
    mode: SamplingMode = SamplingMode.EXACT

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.beta not in BETAS:
            raise ValueError(f"beta must be one of {BETAS}")
        mode = SamplingMode(self.mode)
        object.__setattr__(self, "mode", mode)
        cutoff = default_cutoff(self.n) if self.cutoff is None else int(self.cutoff)
        if not 1 <= cutoff <= self.n:
            raise ValueError("cutoff must lie in [1, n]")
        object.__setattr__(self, "cutoff", cutoff)
        if mode is SamplingMode.LARGE_N and self.n < LARGE_N_MIN:
            raise ValueError(f"large-n mode needs n >= {LARGE_N_MIN}")


@dataclass(frozen=True)
class RngStream:
    """Independent random stream number ``index`` under a master ``seed``."""

    seed: int
    index: int = 0

    def generator(self):
        ss = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.index),))
        return np.random.Generator(np.random.PCG64(ss))


def _gen(rng):
    return rng.generator() if isinstance(rng, RngStream) else rng


def chi_sample(d, rng):
    """Draw ``X >= 0`` with ``X^2 ~ chi^2_d`` (``d`` scalar or array, > 0)."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise ValueError("degrees of freedom must be positive")
    out = np.sqrt(_gen(rng).gamma(d / 2.0, 2.0))
    return float(out) if out.ndim == 0 else out


def sample_h_beta(spec, rng):
    """Full ``n x n`` tridiagonal beta-Hermite draw."""
    if spec.mode is not SamplingMode.EXACT:
        raise ValueError("sample_h_beta needs an exact-mode spec")
    gen = _gen(rng)
    n = spec.n
    diag = gen.standard_normal(n)
    if n == 1:
        return TridiagonalSymmetric(diag, np.empty(0))
    dof = spec.beta * np.arange(n - 1, 0, -1, dtype=float)
    off = np.sqrt(gen.gamma(dof / 2.0, 2.0)) / np.sqrt(2.0)
    return TridiagonalSymmetric(diag, off)


def truncated_offdiag(n, cutoff):
    """Deterministic off-diagonal ``sqrt(n - k) / (2 sqrt(n))``, ``k = 1..cutoff-1``."""
    k = np.arange(1, cutoff, dtype=float)
    return np.sqrt(n - k) / (2.0 * np.sqrt(n))


def sample_truncated_scaled(spec, rng):
    """Top-left ``cutoff`` block of ``H_beta / sqrt(2 beta n)`` for huge ``n``.

    The off-diagonal takes its large-``n`` limit and the diagonal carries
    the combined noise, variance ``1/(beta n)``. The largest eigenvalue is
    close to 1.
    """
    if spec.mode is not SamplingMode.LARGE_N:
        raise ValueError("sample_truncated_scaled needs a large-n spec")
    diag = _gen(rng).standard_normal(spec.cutoff) / np.sqrt(spec.beta * spec.n)
    return TridiagonalSymmetric(diag, truncated_offdiag(spec.n, spec.cutoff))


def scale_max(lambda_max, n):
    """Edge rescaling ``(lambda_max - 1) * 2 * n^(2/3)`` of the scaled matrix."""
    return (np.asarray(lambda_max, dtype=float) - 1.0) * 2.0 * float(n) ** (2.0 / 3.0)


def simulate_largest(spec, trials, seed=0, chunk=1000, tol=1e-12):
    """Rescaled largest eigenvalues of ``trials`` independent draws.

    Large-n specs use the truncated sampler; exact specs draw the full
    matrix and divide its top eigenvalue by ``sqrt(2 beta n)`` before the
    same edge rescaling. Trial ``i`` always uses ``RngStream(seed, i)``, so
    results depend neither on ``chunk`` nor on the worker count.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    out = np.empty(trials)
    large = spec.mode is SamplingMode.LARGE_N
    if large:
        off = truncated_offdiag(spec.n, spec.cutoff)
    norm = 1.0 if large else np.sqrt(2.0 * spec.beta * spec.n)
    for start in range(0, trials, chunk):
        stop = min(trials, start + chunk)
        if large:
            diag = np.stack([sample_truncated_scaled(spec, RngStream(seed, i)).diag
                             for i in range(start, stop)])
            out[start:stop] = max_eigenvalue_batch(diag, off, tol)
        else:
            draws = [sample_h_beta(spec, RngStream(seed, i)) for i in range(start, stop)]
            diag = np.stack([T.diag for T in draws])
            offs = np.stack([T.offdiag for T in draws])
            out[start:stop] = max_eigenvalue_batch(diag, offs, tol) / norm
    return scale_max(out, spec.n)
