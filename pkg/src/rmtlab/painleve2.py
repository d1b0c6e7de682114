"""Tracy-Widom laws for beta = 1, 2, 4 from the Hastings-McLeod solution.

The state ``(q, q', I, I', J)`` with ``I(s) = int_s^inf (x - s) q(x)^2 dx`` and
``J(s) = int_s^inf q(x) dx`` is marched from a right endpoint ``s0``, where
``q`` is still indistinguishable from Ai, down the negative axis. The
distributions then follow in closed form from the state, and so do the
densities, so no numerical differentiation is needed.
"""
from dataclasses import dataclass, fields, replace

import numpy as np

from .numerics import OdeProblem, adaptive_quad, airy_ai, airy_ai_prime, integrate

S0 = 5.0
SN = -8.0
GRID_POINTS = 1000
RELTOL = 1e-13
ABSTOL = 1e-15
TAIL_END = 20.0
TAIL_TOL = 1e-18
F_FLOOR = 1e-300
F4_SHIFT = 2.0 ** (2.0 / 3.0)


class TailTruncationError(ArithmeticError):
    """F1 or F4 underflowed on the whole grid, leaving nothing to report."""


@dataclass(frozen=True)
class TracyWidomSolution:
    s: np.ndarray
    q: np.ndarray
    qp: np.ndarray
    I: np.ndarray
    Ip: np.ndarray
    J: np.ndarray
    F1: np.ndarray = None
    F2: np.ndarray = None
    F4: np.ndarray = None
    f1: np.ndarray = None
    f2: np.ndarray = None
    f4: np.ndarray = None
    s4: np.ndarray = None

    def subset(self, mask):
        values = {}
        for fld in fields(self):
            v = getattr(self, fld.name)
            values[fld.name] = None if v is None else v[mask]
        return TracyWidomSolution(**values)


def painleve2_rhs(s, y):
    q, qp, _, Ip, _ = y
    return np.array([qp, s * q + 2.0 * q ** 3, Ip, q * q, -q])


def initial_state(s0, tail_end=TAIL_END, tol=TAIL_TOL, exact_slope=True):
    """``(q, q', I, I', J)`` at ``s0`` from the Airy right-tail asymptote.

    ``I'(s0) = -int_{s0}^inf Ai^2``. With ``exact_slope=False`` the value
    ``Ai(s0)^2`` (which is ``I''(s0)``) is used instead, a common slip
    that makes ``f2`` slightly negative near ``s0``.
    """
    ai0 = airy_ai(s0)
    i0 = adaptive_quad(lambda x: (x - s0) * airy_ai(x) ** 2, s0, tail_end, tol)
    j0 = adaptive_quad(airy_ai, s0, tail_end, tol)
    if exact_slope:
        ip0 = -adaptive_quad(lambda x: airy_ai(x) ** 2, s0, tail_end, tol)
    else:
        ip0 = ai0 * ai0
    return np.array([ai0, airy_ai_prime(s0), i0, ip0, j0])


def solve_painleve2(s0=S0, sn=SN, grid_points=GRID_POINTS,
                    reltol=RELTOL, abstol=ABSTOL, exact_slope=True):
    """March the Painleve II system from ``s0`` down to ``sn``.

    Raises :class:`rmtlab.numerics.IntegrationError` when the march fails,
    typically because ``s0`` is too small or the tolerances too loose for
    the unstable Hastings-McLeod solution.
    """
    if not s0 > sn:
        raise ValueError("need s0 > sn")
    grid = np.linspace(s0, sn, grid_points)
    problem = OdeProblem(painleve2_rhs, s0, sn, grid, reltol, abstol, dimension=5)
    traj = integrate(problem, initial_state(s0, exact_slope=exact_slope))
    y = traj.states
    return TracyWidomSolution(traj.times, y[:, 0], y[:, 1], y[:, 2], y[:, 3], y[:, 4])


def tracy_widom_curves(state):
    """Fill the distributions ``F1, F2, F4`` and densities ``f1, f2, f4``.

    ``F4`` and ``f4`` are functions of ``s4 = s / 2^(2/3)``; ``f4`` is the
    density in that variable. Grid points where ``F1`` or ``F4`` fall to
    ``1e-300`` or below are dropped.
    """
    q, I, Ip, J = state.q, state.I, state.Ip, state.J
    F2 = np.exp(-I)
    F1 = np.sqrt(F2 * np.exp(-J))
    with np.errstate(over="ignore"):
        F4 = np.sqrt(F2) * (np.exp(J / 2) + np.exp(-J / 2)) / 2
    keep = (F1 > F_FLOOR) & (F4 > F_FLOOR)
    if not np.any(keep):
        raise TailTruncationError("F1 or F4 vanishes on the whole grid")
    f2 = -Ip * F2
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        f1 = (f2 + q * F2) * np.exp(-J) / (2 * F1)
        f4 = ((f2 * (2 + np.exp(J) + np.exp(-J)) + F2 * q * (np.exp(-J) - np.exp(J)))
              / (2 ** (1 / 3) * 4 * F4))
    full = replace(state, F1=F1, F2=F2, F4=F4, f1=f1, f2=f2, f4=f4,
                   s4=state.s / F4_SHIFT)
    return full if np.all(keep) else full.subset(keep)


def tracy_widom(s0=S0, sn=SN, grid_points=GRID_POINTS, reltol=RELTOL, abstol=ABSTOL):
    """Solve and post-process in one call."""
    return tracy_widom_curves(solve_painleve2(s0, sn, grid_points, reltol, abstol))
