"""Bulk consecutive-spacing statistics of simulated spectra."""
import math
from dataclasses import dataclass

import numpy as np

from .ensembles import EnsembleSpec, RngStream, sample_h_beta
from .tridiag import all_eigenvalues


@dataclass(frozen=True)
class SpacingBatch:
    values: np.ndarray
    n: int
    beta: int
    trials: int


def window(n):
    """Index range ``[lo, hi)`` (0-based) of the middle half of ``n`` eigenvalues."""
    lo = math.ceil(n / 4)
    hi = (3 * n) // 4
    return lo, hi


def normalized_spacings(eigs, n, beta):
    """Unfolded spacings inside the middle half of one spectrum.

    ``delta_k = (lam[k+1] - lam[k]) / (pi beta) * sqrt(2 beta n - lam[k]^2)``
    for consecutive pairs with both eigenvalues in the window.
    """
    eigs = np.asarray(eigs, dtype=float)
    if eigs.size != n:
        raise ValueError(f"expected {n} eigenvalues, got {eigs.size}")
    lo, hi = window(n)
    lam = eigs[lo:hi]
    disc = 2.0 * beta * n - lam[:-1] ** 2
    if np.any(disc <= 0):
        raise ValueError("eigenvalue outside the semicircle bulk inside the window")
    return np.diff(lam) / (np.pi * beta) * np.sqrt(disc)


def simulate_spacing_batch(n, trials, beta=2, seed=0):
    """Spacings from ``trials`` exact tridiagonal draws, in trial order."""
    if n < 8 or n % 2:
        raise ValueError("n must be even and at least 8")
    spec = EnsembleSpec(n, beta)
    parts = []
    for i in range(trials):
        T = sample_h_beta(spec, RngStream(seed, i))
        parts.append(normalized_spacings(all_eigenvalues(T), n, beta))
    values = np.concatenate(parts) if parts else np.empty(0)
    return SpacingBatch(values, n, beta, trials)
