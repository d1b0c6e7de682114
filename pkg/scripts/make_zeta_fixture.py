"""Generate a table of the first N Riemann zeta zero ordinates.

Low zeros come straight from ``mpmath.zetazero``. Higher ones are located
as sign changes of the Riemann-Siegel Z function evaluated in double
precision (main sum plus the C0 to C4 correction terms, tabulated once in
high precision) and refined with Brent's method.

Usage::

    python scripts/make_zeta_fixture.py 10000 tests/data/zeta_zeros_1e4.txt
"""
import argparse

import mpmath
import numpy as np
from numpy.polynomial import chebyshev
from scipy.optimize import brentq

N_EXACT = 150


def _correction_fits(deg=60):
    mpmath.mp.dps = 60
    pi = mpmath.pi

    def c0(p):
        return mpmath.cos(2 * pi * (p * p - p - mpmath.mpf(1) / 16)) / mpmath.cos(2 * pi * p)

    nodes = np.cos(np.pi * (np.arange(deg + 1) + 0.5) / (deg + 1))
    vals = {0: [], 1: [], 2: [], 3: [], 4: []}
    for x in nodes:
        p = (mpmath.mpf(float(x)) + 1) / 2
        d = list(mpmath.diffs(c0, p, 12))
        vals[0].append(float(d[0]))
        vals[1].append(float(-d[3] / (96 * pi**2)))
        vals[2].append(float(d[6] / (18432 * pi**4) + d[2] / (64 * pi**2)))
        vals[3].append(float(-d[9] / (5308416 * pi**6) - d[5] / (3840 * pi**4)
                             - d[1] / (64 * pi**2)))
        vals[4].append(float(d[12] / (2038431744 * pi**8) + 11 * d[8] / (5898240 * pi**6)
                             + 19 * d[4] / (24576 * pi**4) + d[0] / (128 * pi**2)))
    return [chebyshev.chebfit(nodes, vals[k], deg) for k in range(5)]


FITS = _correction_fits()


def theta(t):
    return (t / 2 * np.log(t / (2 * np.pi)) - t / 2 - np.pi / 8
            + 1 / (48 * t) + 7 / (5760 * t**3))


def siegel_z(t):
    t = np.atleast_1d(np.asarray(t, dtype=float))
    tau = np.sqrt(t / (2 * np.pi))
    m = np.floor(tau).astype(int)
    p = tau - m
    th = theta(t)
    out = np.zeros_like(t)
    for n in range(1, int(m.max()) + 1):
        mask = m >= n
        out[mask] += np.cos(th[mask] - t[mask] * np.log(n)) / np.sqrt(n)
    out *= 2
    x = 2 * p - 1
    u = 1 / tau
    corr = (chebyshev.chebval(x, FITS[0])
            + chebyshev.chebval(x, FITS[1]) * u
            + chebyshev.chebval(x, FITS[2]) * u ** 2
            + chebyshev.chebval(x, FITS[3]) * u ** 3
            + chebyshev.chebval(x, FITS[4]) * u ** 4)
    sign = np.where((m - 1) % 2 == 0, 1.0, -1.0)
    return out + sign * np.sqrt(u) * corr


def zeros_between(lo, hi, step=0.004, chunk=200000):
    found = []
    start = lo
    while start < hi:
        count = max(1, int(np.ceil((min(hi, start + chunk * step) - start) / step)))
        grid = start + step * np.arange(count + 1)
        z = siegel_z(grid)
        idx = np.nonzero(np.sign(z[:-1]) != np.sign(z[1:]))[0]
        for i in idx:
            found.append(brentq(lambda s: siegel_z(s)[0], grid[i], grid[i + 1],
                                xtol=1e-12, rtol=1e-15))
        start = grid[-1]
    return np.array(found)


def main():
    parser = argparse.ArgumentParser(description="Write the first COUNT zeta zero ordinates.")
    parser.add_argument("count", type=int)
    parser.add_argument("path")
    args = parser.parse_args()
    count, path = args.count, args.path
    mpmath.mp.dps = 25
    low = [float(mpmath.zetazero(k).imag) for k in range(1, N_EXACT + 1)]
    upper = float(mpmath.zetazero(count).imag) + 0.1
    mid = 0.5 * (low[-1] + float(mpmath.zetazero(N_EXACT + 1).imag))
    high = zeros_between(mid, upper)
    gammas = np.concatenate([low, high])[:count]
    if len(gammas) != count:
        raise SystemExit(f"found {len(gammas)} zeros, expected {count}")
    for k in (1000, 5000, count):
        if k <= count:
            ref = float(mpmath.zetazero(k).imag)
            print(k, gammas[k - 1], ref, gammas[k - 1] - ref)
    with open(path, "w") as fh:
        for g in gammas:
            fh.write(f"{g:.9f}\n")


if __name__ == "__main__":
    main()
