"""Backend selection for the hot loops.

Kernels are written twice: an explicit-loop version compiled with numba's
``@njit`` and a vectorised pure-numpy version. Setting ``RMTLAB_DISABLE_NUMBA=1``
(or running without numba installed) selects the numpy path at import time.
"""
import contextlib
import os

_FLAG = os.environ.get("RMTLAB_DISABLE_NUMBA", "").strip().lower()
DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None

if HAVE_NUMBA and "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
    # probing an outdated TBB first only produces a warning
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
USE_NUMBA = HAVE_NUMBA and not DISABLED
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, otherwise a no-op decorator.

    The compiled kernels are always defined so benchmarks and tests can
    compare both paths, even when the numpy path is the active one.
    """
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


if HAVE_NUMBA:
    prange = numba.prange
else:  # pragma: no cover
    prange = range


def set_threads(n):
    """Set the numba worker count; a no-op on the numpy backend."""
    if n is None or not HAVE_NUMBA:
        return
    n = max(1, min(int(n), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)


@contextlib.contextmanager
def backend(name):
    """Temporarily force ``"numba"`` or ``"numpy"`` dispatch."""
    global USE_NUMBA, BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    saved = USE_NUMBA, BACKEND
    USE_NUMBA, BACKEND = name == "numba", name
    try:
        yield
    finally:
        USE_NUMBA, BACKEND = saved
