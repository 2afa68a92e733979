#!/usr/bin/env python3
"""Rerun the reference convergence and timing studies and print the tables.

Each study is a named preset over the built-in benchmarks:

  spatial-1d-sine   grid/midpoint/gradient errors, tau fixed at 1e-5 (ex41)
  spatial-1d-exp    same sweep for the exponential problem (ex42)
  time-order-1d     time-step sweep at h = 1e-4, second-order rates (ex42)
  extrap-1d         tau = h sweep, time-extrapolated, ratios -> 16 (ex41/ex42)
  spatial-2d        grid/center errors, tau fixed at 1e-5 (ex43)
  coupled-2d        tau = h^2 sweep, ratios -> 16 (ex43)
  extrap-2d         tau = h/20 sweep, time-extrapolated (ex43)
  timing-1d         matched-output-point cost comparison (ex41)

`--fast` trims the expensive sweeps (the fixed-tau studies march 100000
steps per row at full size).
"""

import argparse
import sys
import time

from compactheat.bench import ex41, ex42, ex43, run_convergence, run_timing


def show(table, columns=("grid", "mid", "grad")):
    kind = "ratio" if table.rate_kind == "ratio" else "rate"
    header = f"{'h':>12} {'tau':>12}"
    for c in columns:
        header += f" {'err_' + c:>12} {kind + '_' + c:>10}"
    print(header)

    def fmt(v, width, fixed=False):
        if v is None:
            return "*".rjust(width)
        return (f"{v:.4f}" if fixed else f"{v:.4e}").rjust(width)

    for r in table.rows:
        line = f"{r.h:12.6g} {r.tau:12.6g}"
        for c in columns:
            line += f" {fmt(getattr(r, 'error_' + c), 12)}"
            line += f" {fmt(getattr(r, 'rate_' + c), 10, fixed=True)}"
        print(line)
    print()


def spatial_1d_sine(fast, jobs):
    hs = [1 / 4, 1 / 8, 1 / 16, 1 / 32] if fast else [1 / 4, 1 / 8, 1 / 16, 1 / 32, 1 / 64]
    print("== spatial-1d-sine: fixed tau = 1e-5, errors at T = 1 (ex41)")
    show(run_convergence(ex41(), "fixed-tau", hs, tau=1e-5, refine=True, gradient=True, jobs=jobs))


def spatial_1d_exp(fast, jobs):
    hs = [1 / 4, 1 / 8, 1 / 16, 1 / 32] if fast else [1 / 4, 1 / 8, 1 / 16, 1 / 32, 1 / 64]
    print("== spatial-1d-exp: fixed tau = 1e-5, errors at T = 1 (ex42)")
    show(run_convergence(ex42(), "fixed-tau", hs, tau=1e-5, refine=True, gradient=True, jobs=jobs))


def time_order_1d(fast, jobs):
    taus = [1 / 10, 1 / 20, 1 / 40, 1 / 80, 1 / 160, 1 / 320, 1 / 640]
    print("== time-order-1d: fixed h = 1e-4, tau sweep (ex42)")
    show(
        run_convergence(ex42(), "fixed-h", taus, h=1e-4, refine=True, gradient=True, jobs=jobs)
    )


def extrap_1d(fast, jobs):
    hs = [1 / 8, 1 / 16, 1 / 32, 1 / 64] if fast else [1 / 8, 1 / 16, 1 / 32, 1 / 64, 1 / 128, 1 / 256]
    for bench in (ex41(), ex42()):
        print(f"== extrap-1d: tau = h, time-extrapolated, nodes+midpoints ({bench.id})")
        table = run_convergence(bench, "tau=h", hs, refine=True, extrapolate=True, jobs=jobs)
        print(f"{'h':>12} {'err_all':>12} {'ratio':>10}")
        errors = [max(r.error_grid, r.error_mid) for r in table.rows]
        for i, r in enumerate(table.rows):
            ratio = errors[i] / errors[i + 1] if i + 1 < len(errors) else None
            tail = "*".rjust(10) if ratio is None else f"{ratio:10.4f}"
            print(f"{r.h:12.6g} {errors[i]:12.4e} {tail}")
        print()


def spatial_2d(fast, jobs):
    hs = [1 / 4, 1 / 8, 1 / 16] if fast else [1 / 4, 1 / 8, 1 / 16, 1 / 32]
    print("== spatial-2d: fixed tau = 1e-5, grid and cell-center errors (ex43)")
    show(
        run_convergence(ex43(), "fixed-tau", hs, tau=1e-5, refine=True, jobs=jobs),
        columns=("grid", "mid"),
    )


def coupled_2d(fast, jobs):
    hs = [1 / 5, 1 / 10, 1 / 20, 1 / 40]
    print("== coupled-2d: tau = h^2, grid and cell-center errors (ex43)")
    show(
        run_convergence(ex43(), "tau=h^2", hs, refine=True, jobs=jobs),
        columns=("grid", "mid"),
    )


def extrap_2d(fast, jobs):
    hs = [1 / 5, 1 / 10, 1 / 20, 1 / 40] if fast else [1 / 5, 1 / 10, 1 / 20, 1 / 40, 1 / 80]
    print("== extrap-2d: tau = h/20, time-extrapolated (ex43)")
    show(
        run_convergence(ex43(), "tau=h/20", hs, refine=True, extrapolate=True, jobs=jobs),
        columns=("grid", "mid"),
    )


def timing_1d(fast, jobs):
    points = 63 if fast else 255
    print(f"== timing-1d: tau = h^2, {points} matched output points (ex41)")
    report = run_timing(ex41(), points)
    for path in (report.full, report.refined):
        print(
            f"  {path.label:24s} N={path.n_cells:4d} steps={path.n_steps:6d} "
            f"error={path.error:.4e} time={path.seconds:8.3f}s"
        )
    print(f"  speedup: {report.speedup:.2f}x\n")


STUDIES = {
    "spatial-1d-sine": spatial_1d_sine,
    "spatial-1d-exp": spatial_1d_exp,
    "time-order-1d": time_order_1d,
    "extrap-1d": extrap_1d,
    "spatial-2d": spatial_2d,
    "coupled-2d": coupled_2d,
    "extrap-2d": extrap_2d,
    "timing-1d": timing_1d,
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument(
        "--study",
        action="append",
        choices=sorted(STUDIES) + ["all"],
        help="study preset to run (repeatable; default: all)",
    )
    parser.add_argument("--fast", action="store_true", help="trim the expensive sweeps")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()
    chosen = args.study or ["all"]
    names = sorted(STUDIES) if "all" in chosen else chosen
    start = time.perf_counter()
    for name in names:
        STUDIES[name](args.fast, args.jobs)
    print(f"done in {time.perf_counter() - start:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
