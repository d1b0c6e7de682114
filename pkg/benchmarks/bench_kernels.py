"""Time the numba and numpy eigenvalue kernels side by side.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Both backends run on the same inputs; the bisection results are checked
for bit equality before timing is reported.
"""
import argparse
import time

import numpy as np

from rmtlab import _accel
from rmtlab.ensembles import EnsembleSpec, RngStream, SamplingMode, sample_h_beta
from rmtlab.ensembles import sample_truncated_scaled, truncated_offdiag
from rmtlab.prolate import prolate_matrix
from rmtlab.tridiag import all_eigenvalues, householder_tridiagonalize, max_eigenvalue_batch


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases(quick):
    n_all = 300 if quick else 1000
    T = sample_h_beta(EnsembleSpec(n_all, 2), RngStream(0))
    yield f"all_eigenvalues n={n_all}", lambda: all_eigenvalues(T), True

    spec = EnsembleSpec(10 ** 9, 2, mode=SamplingMode.LARGE_N)
    trials = 200 if quick else 2000
    diag = np.stack([sample_truncated_scaled(spec, RngStream(0, i)).diag for i in range(trials)])
    off = truncated_offdiag(spec.n, spec.cutoff)
    yield (f"max_eigenvalue_batch {trials}x{spec.cutoff}",
           lambda: max_eigenvalue_batch(diag, off), True)

    n_h = 80 if quick else 160
    A = prolate_matrix(n_h, 2.5 / n_h)
    yield f"householder n={n_h}", lambda: householder_tridiagonalize(A).diag, False


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true")
    args = parser.parse_args()
    print(f"{'kernel':40s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}  agree")
    for name, fn, exact in cases(args.quick):
        with _accel.backend("numba"):
            fn()  # compile
            t_jit, a = best_of(fn, args.repeat)
        with _accel.backend("numpy"):
            t_np, b = best_of(fn, args.repeat)
        agree = np.array_equal(a, b) if exact else np.allclose(a, b, rtol=0, atol=1e-12)
        print(f"{name:40s} {t_jit:10.4f} {t_np:10.4f} {t_np / t_jit:8.1f}  {agree}")


if __name__ == "__main__":
    main()
