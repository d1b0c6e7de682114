"""Airy function Ai and its derivative for x >= -2.

Below ``SWITCH`` the Maclaurin series is summed in 40-digit arithmetic
(mpmath), since Ai(x) is the small difference of two growing series and
double precision would lose most digits near the switchover. Above it the
exponentially scaled asymptotic expansion is used.
"""
import math

import mpmath
import numpy as np

SWITCH = 8.0
X_MIN = -2.0
_DPS = 40

with mpmath.workdps(_DPS):
    _C1 = 1 / (mpmath.cbrt(9) * mpmath.gamma(mpmath.mpf(2) / 3))
    _C2 = 1 / (mpmath.cbrt(3) * mpmath.gamma(mpmath.mpf(1) / 3))


def _asymptotic_coeffs(count=60):
    u = [1.0]
    for k in range(1, count):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1)
                 / ((2 * k - 1) * 216 * k))
    u = np.array(u)
    v = -np.array([(6 * k + 1) / (6 * k - 1) for k in range(count)]) * u
    v[0] = 1.0
    return u, v


_U, _V = _asymptotic_coeffs()


def _series(x, derivative):
    with mpmath.workdps(_DPS):
        x = mpmath.mpf(x)
        x3 = x ** 3
        tiny = mpmath.mpf(10) ** (-_DPS)
        if derivative:
            f_term, f_sum = x * x / 2, x * x / 2
            g_term, g_sum = mpmath.mpf(1), mpmath.mpf(1)
        else:
            f_term, f_sum = mpmath.mpf(1), mpmath.mpf(1)
            g_term, g_sum = x, x
        k = 1
        while True:
            if derivative:
                if k >= 2:
                    f_term = f_term * x3 / ((3 * k - 1) * (3 * k - 3))
                    f_sum += f_term
                g_term = g_term * x3 / ((3 * k) * (3 * k - 2))
            else:
                f_term = f_term * x3 / ((3 * k - 1) * (3 * k))
                f_sum += f_term
                g_term = g_term * x3 / ((3 * k) * (3 * k + 1))
            g_sum += g_term
            big = max(abs(f_sum), abs(g_sum), 1)
            if k >= 40 and abs(f_term) + abs(g_term) < tiny * big:
                break
            k += 1
        return float(_C1 * f_sum - _C2 * g_sum)


def _asymptotic(x, derivative):
    zeta = 2.0 / 3.0 * x * math.sqrt(x)
    pref = math.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    coeffs = _V if derivative else _U
    total = 0.0
    last = math.inf
    term = 1.0
    for k, c in enumerate(coeffs):
        term = c * (-1.0 / zeta) ** k
        if abs(term) > last:  # past the smallest term of a divergent series
            break
        total += term
        last = abs(term)
        if abs(term) < 1e-17 * abs(total):
            break
    if derivative:
        return -pref * x ** 0.25 * total
    return pref / x ** 0.25 * total


def _evaluate(x, derivative):
    x = float(x)
    if not x >= X_MIN:
        raise ValueError(f"Airy evaluation needs x >= {X_MIN}, got {x}")
    if math.isinf(x):
        return 0.0
    if x < SWITCH:
        return _series(x, derivative)
    return _asymptotic(x, derivative)


def _vectorised(x, derivative):
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        return _evaluate(arr, derivative)
    return np.array([_evaluate(v, derivative) for v in arr.ravel()]).reshape(arr.shape)


def airy_ai(x):
    """Ai(x) for scalar or array ``x >= -2``."""
    return _vectorised(x, False)


def airy_ai_prime(x):
    """Ai'(x) for scalar or array ``x >= -2``."""
    return _vectorised(x, True)
