"""Adaptive Dormand-Prince 5(4) integration with dense output.

The step is accepted when the embedded error satisfies
``|err_i| <= abstol + reltol * max(|y_i|, |y_new_i|)`` for every component.
Step sizes follow a PI controller; requested output times are filled from the
order-4 continuous extension, never by shortening steps.
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np

C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
# fifth-order minus embedded fourth-order weights
E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200,
              22 / 525, -1 / 40])
# continuous extension: y(t + th*h) = y + h * K^T (P @ [th, th^2, th^3, th^4])
P = np.array([
    [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608,
     -12715105075 / 11282082432],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933,
     87487479700 / 32700410799],
    [0.0, -1754552775 / 470086768, 14199869525 / 1410260304,
     -10690763975 / 1880347072],
    [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408,
     701980252875 / 199316789632],
    [0.0, -282668133 / 205662961, 2019193451 / 616988883,
     -1453857185 / 822651844],
    [0.0, 40617522 / 29380423, -110615467 / 29380423,
     69997945 / 29380423],
])

SAFETY = 0.9
MAX_FACTOR = 5.0
MIN_FACTOR = 0.2
# PI gains (Hairer & Wanner's DOPRI5 defaults)
ALPHA = 0.17
BETA = 0.04


class IntegrationError(RuntimeError):
    """The step size collapsed; ``t`` is where the march stopped."""

    def __init__(self, message, t):
        super().__init__(f"{message} (t = {t!r})")
        self.t = t


@dataclass
class OdeProblem:
    rhs: Callable
    t_start: float
    t_end: float
    t_eval: np.ndarray
    reltol: float = 1e-3
    abstol: float = 1e-6
    dimension: int = None

    def __post_init__(self):
        if self.reltol <= 0 or self.abstol <= 0:
            raise ValueError("reltol and abstol must be positive")
        self.t_eval = np.asarray(self.t_eval, dtype=float)
        direction = np.sign(self.t_end - self.t_start)
        if direction == 0:
            raise ValueError("empty integration span")
        steps = np.diff(self.t_eval) * direction
        if np.any(steps < 0):
            raise ValueError("output grid must run from t_start toward t_end")
        span = sorted((self.t_start, self.t_end))
        if self.t_eval.size and (self.t_eval.min() < span[0]
                                 or self.t_eval.max() > span[1]):
            raise ValueError("output grid leaves the integration span")


@dataclass
class OdeTrajectory:
    times: np.ndarray
    states: np.ndarray
    n_steps: int = 0
    n_rejected: int = 0


def _initial_step(rhs, t0, y0, f0, direction, reltol, abstol):
    scale = abstol + reltol * np.abs(y0)
    d0 = np.max(np.abs(y0) / scale)
    d1 = np.max(np.abs(f0) / scale)
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    f1 = rhs(t0 + direction * h0, y0 + direction * h0 * f0)
    d2 = np.max(np.abs(f1 - f0) / scale) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1 / 5)
    return min(100 * h0, h1)


def integrate(problem, y0, max_steps=1_000_000):
    """Integrate ``problem`` from ``y0`` and sample at ``problem.t_eval``."""
    rhs = problem.rhs
    y = np.array(y0, dtype=float)
    if problem.dimension is not None and y.size != problem.dimension:
        raise ValueError(f"y0 has {y.size} entries, expected {problem.dimension}")
    t = float(problem.t_start)
    t_end = float(problem.t_end)
    direction = 1.0 if t_end > t else -1.0
    rtol, atol = problem.reltol, problem.abstol
    t_eval = problem.t_eval
    out = np.empty((t_eval.size, y.size))
    i_out = 0
    while i_out < t_eval.size and t_eval[i_out] == t:
        out[i_out] = y
        i_out += 1

    f = np.asarray(rhs(t, y), dtype=float)
    h = _initial_step(rhs, t, y, f, direction, rtol, atol)
    K = np.empty((7, y.size))
    err_prev = 1e-4
    n_steps = n_rejected = 0
    rejected = False

    while direction * (t_end - t) > 0:
        if n_steps >= max_steps:
            raise IntegrationError("too many steps", t)
        min_h = 16 * np.spacing(max(abs(t), 1e-300))
        if h < min_h:
            raise IntegrationError("step size underflow", t)
        if h > abs(t_end - t):
            h = abs(t_end - t)
        hs = direction * h
        K[0] = f
        for s in range(1, 7):
            K[s] = rhs(t + C[s] * hs, y + hs * (np.dot(A[s], K[:s])))
        y_new = y + hs * (B[:6] @ K[:6])
        f_new = K[6].copy()
        err = hs * (E @ K)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        with np.errstate(invalid="ignore"):
            err_norm = float(np.max(np.abs(err) / scale))
        if not np.isfinite(err_norm) or not np.all(np.isfinite(y_new)):
            err_norm = np.inf

        if err_norm <= 1.0:
            t_new = t + hs if h < abs(t_end - t) else t_end
            while i_out < t_eval.size and direction * (t_eval[i_out] - t_new) <= 0:
                theta = (t_eval[i_out] - t) / hs
                powers = theta ** np.arange(1, 5)
                out[i_out] = y + hs * (K.T @ (P @ powers))
                i_out += 1
            t, y, f = t_new, y_new, f_new
            n_steps += 1
            if err_norm == 0.0:
                factor = MAX_FACTOR
            else:
                factor = SAFETY * err_norm ** -ALPHA * err_prev ** BETA
                factor = min(MAX_FACTOR, max(MIN_FACTOR, factor))
            if rejected:
                factor = min(1.0, factor)
            h *= factor
            err_prev = max(err_norm, 1e-4)
            rejected = False
        else:
            n_rejected += 1
            if np.isfinite(err_norm):
                factor = max(MIN_FACTOR, SAFETY * err_norm ** -0.2)
            else:
                factor = MIN_FACTOR
            h *= factor
            rejected = True

    # grid points at t_end exactly (or lost to rounding) take the final state
    while i_out < t_eval.size:
        out[i_out] = y
        i_out += 1
    return OdeTrajectory(t_eval.copy(), out, n_steps, n_rejected)
