"""Command-line front end; every experiment writes a CSV table.

Floats are printed with 17 significant digits so the files round-trip
exactly, and a fixed seed reproduces a file byte for byte regardless of
``--threads``.
"""
import argparse
import csv
import math
import os
import sys

import numpy as np

from . import _accel
from .ensembles import LARGE_N_MIN, EnsembleSpec, SamplingMode, simulate_largest
from .histogram import colon_edges, histogram_density, sup_distance, Histogram
from .numerics import IntegrationError, QuadratureError
from .painleve2 import tracy_widom
from .painleve5 import gaudin, gap_probability_on
from .prolate import SIZES, prolate_gap_table, stage_errors
from .spacings import simulate_spacing_batch
from .zeta import ZeroTableError, load_zeros, zeta_normalized_spacings

def _fmt(v):
    if isinstance(v, str):
        return v
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_csv(path, header, columns):
    rows = zip(*columns)
    fh = sys.stdout if path in (None, "-") else open(path, "w", newline="", encoding="utf-8")
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    finally:
        if fh is not sys.stdout:
            fh.close()


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        data = {h: [] for h in header}
        for row in reader:
            for h, v in zip(header, row):
                data[h].append(float(v) if v != "" else math.nan)
    return {h: np.array(v) for h, v in data.items()}


def write_histogram(path, hist):
    write_csv(path, ["left", "right", "midpoint", "density"],
              [hist.edges[:-1], hist.edges[1:], hist.midpoints, hist.density])


def bins_type(text):
    try:
        lo, step, hi = (float(v) for v in text.split(":"))
        edges = colon_edges(lo, step, hi)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"bins must be lo:step:hi with step > 0, got {text!r}") from None
    if edges.size < 2:
        raise argparse.ArgumentTypeError("bins must give at least one bin")
    return edges


def positive_int(text):
    try:
        value = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1 or value != float(text):
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def beta_type(text):
    value = positive_int(text)
    if value not in (1, 2, 4):
        raise argparse.ArgumentTypeError("beta must be 1, 2 or 4")
    return value


def sizes_type(text):
    try:
        sizes = [positive_int(v) for v in text.split(",")]
    except argparse.ArgumentTypeError:
        raise argparse.ArgumentTypeError(f"sizes must be comma-separated integers: {text!r}")
    if any(b != 2 * a for a, b in zip(sizes, sizes[1:])):
        raise argparse.ArgumentTypeError("sizes must double, e.g. 20,40,80,160")
    return sizes


# ---------------------------------------------------------------------------
# subcommands


def cmd_tracy_widom(args):
    tw = tracy_widom(args.s0, args.sn, args.points, args.reltol, args.abstol)
    names = ["s", "F1", "F2", "F4", "f1", "f2", "f4", "s4"]
    write_csv(args.out, names, [getattr(tw, k) for k in names])


def cmd_largest_sim(args):
    mode = SamplingMode.LARGE_N if args.n >= LARGE_N_MIN else SamplingMode.EXACT
    spec = EnsembleSpec(args.n, args.beta, args.cutoff, mode)
    samples = simulate_largest(spec, args.trials, args.seed)
    write_histogram(args.out, histogram_density(samples, args.bins))


def cmd_spacing_sim(args):
    batch = simulate_spacing_batch(args.n, args.trials, args.beta, args.seed)
    write_histogram(args.out, histogram_density(batch.values, args.bins))


def cmd_gaudin(args):
    g = gaudin(args.t0, args.tn, args.points, args.reltol, args.abstol)
    write_csv(args.out, ["s", "E", "p", "t", "sigma", "sigmap", "I"],
              [g.s, g.E, g.p, g.t, g.sigma, g.sigmap, g.I])


def cmd_prolate(args):
    sizes = args.sizes
    if args.table1:
        result = prolate_gap_table(args.s_grid, sizes)
        reference = gap_probability_on(args.s_grid)
        table = stage_errors(result, reference)
        header = ["N"] + [f"error{i}" for i in range(table.shape[1])]
        write_csv(args.out, header, [result.sizes] + [table[:, i] for i in range(table.shape[1])])
        return
    result = prolate_gap_table(args.s_grid, sizes)
    header = ["s"] + [f"E_n{n}" for n in result.sizes]
    cols = [result.s] + [result.E_by_n[:, j] for j in range(result.sizes.size)]
    if len(sizes) >= 2:
        header.append("E_extrapolated")
        cols.append(result.E_extrapolated)
    write_csv(args.out, header, cols)


def cmd_zeta_spacings(args):
    zeros = load_zeros(args.file, args.offset)
    delta = zeta_normalized_spacings(zeros)
    write_histogram(args.out, histogram_density(delta, args.bins))


def cmd_compare(args):
    hist_cols = read_csv(args.histogram)
    curve_cols = read_csv(args.curve)
    for name in (args.x, args.y):
        if name not in curve_cols:
            raise KeyError(f"column {name!r} missing from {args.curve}")
    edges = np.append(hist_cols["left"], hist_cols["right"][-1])
    hist = Histogram(edges, hist_cols["midpoint"], hist_cols["density"])
    x, y = curve_cols[args.x], curve_cols[args.y]
    ok = np.isfinite(x) & np.isfinite(y)
    dist = sup_distance(hist, x[ok], y[ok])
    print(f"sup_norm,{_fmt(dist)}")
    if args.tolerance is not None and dist > args.tolerance:
        print(f"sup-norm {dist:.6g} exceeds tolerance {args.tolerance:.6g}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog="rmtlab", formatter_class=fmt,
        description="Eigenvalue statistics of beta-ensembles: simulation, "
                    "Painleve II/V and Prolate-matrix routes.")
    parser.add_argument("--threads", type=positive_int, default=None,
                        help="numba worker threads (default: $RMT_THREADS or all)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text, formatter_class=fmt)
        p.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
        p.set_defaults(func=func)
        return p

    p = add("tracy-widom", cmd_tracy_widom, "Tracy-Widom F and f curves for beta = 1, 2, 4")
    p.add_argument("--s0", type=float, default=5.0, help="right end, where q = Ai")
    p.add_argument("--sn", type=float, default=-8.0, help="left end of the grid")
    p.add_argument("--points", type=positive_int, default=1000, help="output grid size")
    p.add_argument("--reltol", type=float, default=1e-13, help="ODE relative tolerance")
    p.add_argument("--abstol", type=float, default=1e-15, help="ODE absolute tolerance")

    p = add("largest-sim", cmd_largest_sim,
            "histogram of the rescaled largest eigenvalue (truncated sampler for n >= 1e6)")
    p.add_argument("--n", type=positive_int, default=10 ** 9, help="matrix size")
    p.add_argument("--trials", type=positive_int, default=10 ** 4, help="number of draws")
    p.add_argument("--beta", type=beta_type, default=2, help="1, 2 or 4")
    p.add_argument("--cutoff", type=positive_int, default=None,
                   help="truncated block size; round(10 n^(1/3)) when omitted")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--bins", type=bins_type, default="-7:0.2:3", help="bin edges lo:step:hi")

    p = add("spacing-sim", cmd_spacing_sim, "histogram of unfolded bulk spacings")
    p.add_argument("--n", type=positive_int, default=1000, help="matrix size (even)")
    p.add_argument("--trials", type=positive_int, default=1000, help="number of draws")
    p.add_argument("--beta", type=beta_type, default=2, help="1, 2 or 4")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--bins", type=bins_type, default="0:0.05:5", help="bin edges lo:step:hi")

    p = add("gaudin", cmd_gaudin, "gap probability E(s) and spacing density p(s), beta = 2")
    p.add_argument("--t0", type=float, default=1e-12, help="start of the t = pi s grid")
    p.add_argument("--tn", type=float, default=16.0, help="end of the t grid")
    p.add_argument("--points", type=positive_int, default=1000, help="output grid size")
    p.add_argument("--reltol", type=float, default=1e-13, help="ODE relative tolerance")
    p.add_argument("--abstol", type=float, default=1e-14, help="ODE absolute tolerance")

    p = add("prolate", cmd_prolate, "Prolate-matrix gap probability with Richardson extrapolation")
    p.add_argument("--sizes", type=sizes_type, default=",".join(map(str, SIZES)),
                   help="doubling matrix sizes")
    p.add_argument("--s-grid", type=bins_type, default="0:0.01:5", dest="s_grid",
                   help="interval lengths lo:step:hi")
    p.add_argument("--table1", action="store_true",
                   help="emit max-over-s errors against Painleve V per stage")

    p = add("zeta-spacings", cmd_zeta_spacings, "histogram of unfolded zeta zero spacings")
    p.add_argument("file", help="text file, one ordinate per line, ascending")
    p.add_argument("--offset", type=float, default=0.0,
                   help="added to each ordinate inside the log density")
    p.add_argument("--bins", type=bins_type, default="0:0.05:5", help="bin edges lo:step:hi")

    p = sub.add_parser("compare", formatter_class=fmt,
                       help="sup-norm between a histogram CSV and a curve CSV")
    p.add_argument("histogram", help="CSV written by a *-sim or zeta-spacings command")
    p.add_argument("curve", help="CSV written by tracy-widom or gaudin")
    p.add_argument("--x", default="s", help="curve abscissa column")
    p.add_argument("--y", default="p", help="curve ordinate column")
    p.add_argument("--tolerance", type=float, default=None,
                   help="exit 1 if the sup-norm exceeds this")
    p.set_defaults(func=cmd_compare)
    return parser


def _attach_negative_values(argv):
    # argparse reads "--bins -7:0.2:3" as two options; glue value to flag
    out = []
    it = iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


VALUE_FLAGS = ("--bins", "--s-grid", "--sn", "--s0", "--offset")


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    threads = args.threads
    if threads is None and os.environ.get("RMT_THREADS"):
        try:
            threads = positive_int(os.environ["RMT_THREADS"])
        except argparse.ArgumentTypeError as exc:
            parser.error(f"RMT_THREADS: {exc}")
    _accel.set_threads(threads)
    try:
        status = args.func(args)
    except (IntegrationError, QuadratureError, ArithmeticError, ValueError,
            ZeroTableError, KeyError, OSError) as exc:
        print(f"rmtlab {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
