"""Gaudin spacing law for beta = 2 from the sigma form of Painleve V.

``E(s)``, the probability that an interval of length ``s`` (unit mean
spacing) holds no eigenvalue, is ``exp(int_0^{pi s} sigma(t)/t dt)`` and
the spacing density is its second derivative, available in closed form from
``sigma`` and ``sigma'``.
"""
from dataclasses import dataclass, replace

import numpy as np

from .numerics import OdeProblem, integrate

T0 = 1e-12
TN = 16.0
GRID_POINTS = 1000
RELTOL = 1e-13
ABSTOL = 1e-14


@dataclass(frozen=True)
class GaudinSolution:
    t: np.ndarray
    sigma: np.ndarray
    sigmap: np.ndarray
    I: np.ndarray
    s: np.ndarray
    E: np.ndarray
    p: np.ndarray = None


def initial_state(t0):
    """Small-t expansion of ``(sigma, sigma', I)``."""
    pi = np.pi
    return np.array([
        -t0 / pi - (t0 / pi) ** 2,
        -1 / pi - 2 * t0 / pi,
        -t0 / pi - t0 ** 2 / (2 * pi ** 2),
    ])


def make_rhs(clamp):
    """Right-hand side; radicands down to ``-clamp`` are rounded up to zero.

    A more negative radicand yields NaN, so the integrator rejects the trial
    step; if that keeps happening the march ends in an ``IntegrationError``.
    """

    def rhs(t, y):
        sig, sigp, _ = y
        rad = (sig - t * sigp) * (t * sigp - sig + sigp * sigp)
        if rad < 0.0:
            if rad < -clamp:
                return np.array([sigp, np.nan, sig / t])
            rad = 0.0
        return np.array([sigp, -2.0 / t * np.sqrt(rad), sig / t])

    return rhs


def solve_painleve5(t0=T0, tn=TN, grid_points=GRID_POINTS, reltol=RELTOL,
                    abstol=ABSTOL, t_eval=None):
    """Integrate the sigma-form system from ``t0`` to ``tn``.

    ``t_eval`` overrides the default equispaced grid; it must start at
    ``t0`` and increase. ``p`` is left unset (see :func:`spacing_density`).
    """
    if not 0 < t0 < tn:
        raise ValueError("need 0 < t0 < tn")
    grid = np.linspace(t0, tn, grid_points) if t_eval is None else np.asarray(t_eval, float)
    problem = OdeProblem(make_rhs(10 * abstol), t0, tn, grid, reltol, abstol, dimension=3)
    traj = integrate(problem, initial_state(t0))
    y = traj.states
    t = traj.times
    return GaudinSolution(t, y[:, 0], y[:, 1], y[:, 2], t / np.pi, np.exp(y[:, 2]))


def spacing_density(sol):
    """Fill ``p(s) = (t sigma' - sigma + sigma^2) E / s^2`` with ``t = pi s``.

    At the first grid point the expression is a ratio of roundoff; it is
    replaced by the value of the leading ``p ~ c s^2`` law fitted at the
    second point.
    """
    t, s = sol.t, sol.s
    p = (t * sol.sigmap - sol.sigma + sol.sigma ** 2) * sol.E / s ** 2
    if p.size >= 2:
        p[0] = p[1] * (s[0] / s[1]) ** 2
    return replace(sol, p=p)


def gaudin(t0=T0, tn=TN, grid_points=GRID_POINTS, reltol=RELTOL, abstol=ABSTOL,
           t_eval=None):
    """Solve and evaluate the density in one call."""
    return spacing_density(solve_painleve5(t0, tn, grid_points, reltol, abstol, t_eval))


def gap_probability_on(s_values, t0=T0, reltol=RELTOL, abstol=ABSTOL):
    """``E`` at the given ascending ``s`` values (``s = 0`` maps to ``t0``)."""
    s_values = np.asarray(s_values, dtype=float)
    t = np.maximum(np.pi * s_values, t0)
    sol = solve_painleve5(t0, float(t[-1]), reltol=reltol, abstol=abstol, t_eval=t)
    return sol.E
