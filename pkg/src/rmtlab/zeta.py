"""Riemann zeta zero tables and their unfolded nearest-neighbour spacings."""
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


class ZeroTableError(ValueError):
    """A zero table is malformed: unparseable, empty or out of order."""


@dataclass(frozen=True)
class ZetaZeros:
    gammas: np.ndarray
    offset: float = 0.0

    def __post_init__(self):
        g = np.asarray(self.gammas, dtype=float).reshape(-1)
        if self.offset < 0:
            raise ValueError("offset must be nonnegative")
        if g.size > 1 and np.any(np.diff(g) <= 0):
            raise ZeroTableError("ordinates are not strictly ascending")
        object.__setattr__(self, "gammas", g)


def load_zeros(path, offset=0.0):
    """Read one ordinate per line; blank lines are skipped.

    ``offset`` is stored alongside the values, never added to them.
    """
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise ZeroTableError(f"{path}:{lineno}: cannot parse {text!r}") from None
    if not values:
        raise ZeroTableError(f"{path}: no zeros in file")
    gammas = np.array(values)
    bad = np.nonzero(np.diff(gammas) <= 0)[0]
    if bad.size:
        raise ZeroTableError(f"{path}: ordinates not ascending near entry {bad[0] + 2}")
    return ZetaZeros(gammas, float(offset))


def zeta_normalized_spacings(z):
    """``(g[n+1] - g[n]) / (2 pi) * log((g[n] + offset) / (2 pi))``."""
    g = z.gammas
    if g.size < 2:
        raise ValueError("need at least two zeros")
    height = g[:-1] + z.offset
    if np.any(height <= TWO_PI):
        raise ValueError("zero ordinates must exceed 2 pi for a positive density")
    return np.diff(g) / TWO_PI * np.log(height / TWO_PI)
