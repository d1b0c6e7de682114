"""Reference computations that share no code with the package."""
import numpy as np
from scipy.optimize import brentq
from scipy.special import airy


def charpoly(d, e, x):
    """``det(T_k - x)`` for k = len(d) by the three-term recurrence."""
    p_prev, p = 1.0, d[0] - x
    for k in range(1, len(d)):
        p_prev, p = p, (d[k] - x) * p - e[k - 1] ** 2 * p_prev
    return p


def charpoly_eigenvalues(d, e):
    """Eigenvalues of an unreduced tridiagonal matrix by interlacing brackets.

    The roots of each leading principal minor separate those of the next,
    so every root of the ``k``-th minor has its own sign-change bracket.
    """
    d = np.asarray(d, float)
    e = np.asarray(e, float)
    bound = np.max(np.abs(d)) + 2 * (np.max(np.abs(e)) if e.size else 0.0) + 1.0
    roots = np.array([d[0]])
    for k in range(2, len(d) + 1):
        f = lambda x, k=k: charpoly(d[:k], e[: k - 1], x)  # noqa: E731
        cuts = np.concatenate([[-bound], roots, [bound]])
        roots = np.array([brentq(f, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)
                          for a, b in zip(cuts[:-1], cuts[1:])])
    return roots


def gauss_legendre(a, b, m):
    x, w = np.polynomial.legendre.leggauss(m)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def composite_gauss_legendre(f, a, b, panels=50, m=20):
    edges = np.linspace(a, b, panels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(lo, hi, m)
        total += np.dot(w, f(x))
    return total


def airy_kernel_F2(s, m=60, length=14.0):
    """``det(I - K_Airy)`` on ``[s, s + length]`` by Nystrom discretisation."""
    x, w = gauss_legendre(s, s + length, m)
    ai, aip, _, _ = airy(x)
    X, Y = np.meshgrid(x, x, indexing="ij")
    with np.errstate(divide="ignore", invalid="ignore"):
        K = (np.outer(ai, aip) - np.outer(aip, ai)) / (X - Y)
    K[np.diag_indices(m)] = aip ** 2 - x * ai ** 2
    sw = np.sqrt(w)
    return np.linalg.det(np.eye(m) - sw[:, None] * K * sw[None, :])


def sine_kernel_E(s, m=40):
    """``det(I - K_sine)`` on ``[0, s]``: probability of no level in length s."""
    if s == 0:
        return 1.0
    x, w = gauss_legendre(0.0, s, m)
    K = np.sinc(x[:, None] - x[None, :])
    sw = np.sqrt(w)
    return np.linalg.det(np.eye(m) - sw[:, None] * K * sw[None, :])
