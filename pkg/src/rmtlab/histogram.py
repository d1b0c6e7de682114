"""Equidistant-bin density histograms and comparison with smooth curves."""
from dataclasses import dataclass

import numpy as np


class EmptyHistogramError(ValueError):
    """No sample fell inside the bin range."""


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    midpoints: np.ndarray
    density: np.ndarray

    @property
    def dx(self):
        return float(self.edges[1] - self.edges[0])


def colon_edges(lo, step, hi):
    """Edges ``lo, lo+step, ...`` up to and including ``hi`` (within rounding)."""
    if step <= 0:
        raise ValueError("step must be positive")
    count = int(np.floor((hi - lo) / step + 1e-10)) + 1
    return lo + step * np.arange(count)


def check_equidistant(edges, rtol=1e-9):
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise ValueError("need at least two bin edges")
    widths = np.diff(edges)
    dx = widths[0]
    if dx <= 0 or np.any(np.abs(widths - dx) > rtol * abs(dx)):
        raise ValueError("bin edges must be ascending and equidistant")
    return edges, float(dx)


def histogram_density(samples, edges):
    """Normalised histogram on equidistant ``edges``.

    Bins are half-open ``[e_i, e_{i+1})`` except the last, which also holds
    its right edge. Samples outside ``[edges[0], edges[-1]]`` are dropped and
    the in-range counts are scaled to unit mass.
    """
    edges, dx = check_equidistant(edges)
    samples = np.asarray(samples, dtype=float).ravel()
    counts, _ = np.histogram(samples, bins=edges)
    total = counts.sum()
    if total == 0:
        raise EmptyHistogramError("no samples inside the bin range")
    density = counts / total / dx
    midpoints = 0.5 * (edges[:-1] + edges[1:])
    return Histogram(edges, midpoints, density)


def bin_averages(x, y, edges, points_per_bin=41):
    """Average of the curve ``(x, y)`` over each bin.

    The curve is interpolated linearly (zero outside its range) and averaged
    with the trapezoid rule, which is what a histogram of exact draws from
    the curve would estimate.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    order = np.argsort(x)
    x, y = x[order], y[order]
    edges = np.asarray(edges, dtype=float)
    t = np.linspace(0.0, 1.0, points_per_bin)
    pts = edges[:-1, None] + np.diff(edges)[:, None] * t[None, :]
    vals = np.interp(pts, x, y, left=0.0, right=0.0)
    return np.trapezoid(vals, t, axis=1)


def sup_distance(hist, x, y):
    """Largest absolute gap between histogram densities and curve bin averages."""
    return float(np.max(np.abs(hist.density - bin_averages(x, y, hist.edges))))
