"""Command-line entry point.

Four subcommands drive the library: `solve` (one solve, optionally with
refined outputs), `converge` (a refinement study), `extrapolate` (the same
study on time-extrapolated fields), and `timing` (matched-output-point
cost comparison). Results are emitted as CSV or JSON; the CSV convergence
schema is fixed:

    h,tau,error_grid,rate_grid,error_mid,rate_mid,error_grad,rate_grad

with absent cells rendered as `*` and floats printed with five significant
digits. JSON carries the full-precision record. Step sizes are accepted as
fractions (`--tau 1/100000`) and parsed exactly, or as decimals.

Exit status: 0 on success, 1 on I/O failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__
from .bench import (
    Benchmark,
    ConvergenceRow,
    ConvergenceTable,
    REGIMES,
    TimingReport,
    error_ratio,
    get_benchmark,
    observed_rate,
    run_convergence,
    run_timing,
    _solve_row,
)

CSV_HEADER = "h,tau,error_grid,rate_grid,error_mid,rate_mid,error_grad,rate_grad"

TIMING_CSV_HEADER = (
    "path,points,n_cells,h,tau,n_steps,output_points,error,seconds,speedup"
)


class UsageError(ValueError):
    """Invalid command line; reported on stderr with exit status 2."""


@dataclass
class RunConfig:
    command: str
    benchmark: str
    dim: int
    fmt: str = "csv"
    output: Optional[str] = None
    c: float = 1.0
    t_end: float = 1.0
    refine: bool = False
    gradient: bool = False
    extrapolate: bool = False
    jobs: int = 1
    # solve
    n_cells: Optional[int] = None
    tau: Optional[float] = None
    n_steps: Optional[int] = None
    # converge / extrapolate
    regime: Optional[str] = None
    h_list: list = field(default_factory=list)
    tau_list: list = field(default_factory=list)
    fixed_h: Optional[float] = None
    # timing
    points: Optional[int] = None


def parse_step(text: str) -> float:
    """Parse a step size given as an exact fraction or a decimal."""
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid step size {text!r}") from exc


def _step_list(text: str) -> list:
    return [parse_step(part) for part in text.split(",") if part]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compactheat",
        description="Compact-difference heat solvers with midpoint refinement, "
        "derivative recovery, and Richardson extrapolation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--benchmark", required=True, choices=sorted(["ex41", "ex42", "ex43"]))
        p.add_argument("--dim", type=int, choices=(1, 2))
        p.add_argument("--c", type=parse_step, default=1.0, help="diffusivity (1D only)")
        p.add_argument("--T", dest="t_end", type=parse_step, default=1.0)
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="output path (default: stdout)")

    p_solve = sub.add_parser("solve", help="run a single solve")
    common(p_solve)
    p_solve.add_argument("--N", dest="n_cells", type=int, required=True)
    group = p_solve.add_mutually_exclusive_group(required=True)
    group.add_argument("--tau", type=parse_step)
    group.add_argument("--M", dest="n_steps", type=int)
    p_solve.add_argument("--refine", action="store_true")
    p_solve.add_argument("--gradient", action="store_true")

    for name, help_text in (
        ("converge", "run a refinement study"),
        ("extrapolate", "refinement study of time-extrapolated solves"),
    ):
        p = sub.add_parser(name, help=help_text)
        common(p)
        p.add_argument("--regime", choices=REGIMES, default="tau=h" if name == "extrapolate" else None)
        p.add_argument("--h", help="comma-separated spatial steps (single value for fixed-h)")
        p.add_argument("--tau", help="time step (fixed-tau) or comma-separated list (fixed-h)")
        p.add_argument("--refine", action="store_true")
        p.add_argument("--gradient", action="store_true")
        if name == "converge":
            p.add_argument("--extrapolate", action="store_true")
        p.add_argument("--jobs", type=int, default=1)

    p_timing = sub.add_parser("timing", help="matched-output-point cost comparison")
    common(p_timing)
    p_timing.add_argument("--points", type=int, required=True)
    return parser


def parse_args(argv) -> RunConfig:
    """Validate the command line into a RunConfig; UsageError on bad input."""
    ns = _build_parser().parse_args(argv)
    dim = 2 if ns.benchmark == "ex43" else 1
    if ns.dim is not None and ns.dim != dim:
        raise UsageError(f"benchmark {ns.benchmark} is {dim}-dimensional")
    if ns.c != 1.0 and dim == 2:
        raise UsageError("the 2D scheme has unit diffusivity; --c applies to 1D only")
    cfg = RunConfig(
        command=ns.command,
        benchmark=ns.benchmark,
        dim=dim,
        fmt=ns.fmt,
        output=ns.output,
        c=ns.c,
        t_end=ns.t_end,
    )
    if ns.command == "solve":
        cfg.n_cells = ns.n_cells
        cfg.refine = ns.refine
        cfg.gradient = ns.gradient
        if ns.n_cells < 2:
            raise UsageError("--N must be at least 2")
        min_cells = 4 if dim == 1 else 5
        if (ns.refine or ns.gradient) and ns.n_cells < min_cells:
            raise UsageError(
                f"refined output in {dim}D needs --N >= {min_cells}, got {ns.n_cells}"
            )
        if ns.tau is not None:
            if not 0 < ns.tau <= ns.t_end:
                raise UsageError("--tau must lie in (0, T]")
            cfg.tau = ns.tau
            cfg.n_steps = max(1, round(ns.t_end / ns.tau))
        else:
            if ns.n_steps < 1:
                raise UsageError("--M must be positive")
            cfg.n_steps = ns.n_steps
    elif ns.command in ("converge", "extrapolate"):
        cfg.extrapolate = ns.command == "extrapolate" or getattr(
            ns, "extrapolate", False
        )
        cfg.refine = ns.refine
        cfg.gradient = ns.gradient
        cfg.jobs = ns.jobs
        if ns.jobs < 1:
            raise UsageError("--jobs must be positive")
        if ns.regime is None:
            raise UsageError("--regime is required")
        cfg.regime = ns.regime
        h_values = _step_list(ns.h) if ns.h else []
        tau_values = _step_list(ns.tau) if ns.tau else []
        if ns.regime == "fixed-tau":
            if len(tau_values) != 1:
                raise UsageError("regime fixed-tau needs a single --tau")
            if not h_values:
                raise UsageError("regime fixed-tau needs an --h list")
            cfg.tau = tau_values[0]
            cfg.h_list = h_values
        elif ns.regime == "fixed-h":
            if len(h_values) != 1:
                raise UsageError("regime fixed-h needs a single --h")
            if not tau_values:
                raise UsageError("regime fixed-h needs a --tau list")
            cfg.fixed_h = h_values[0]
            cfg.tau_list = tau_values
        else:
            if not h_values:
                raise UsageError(f"regime {ns.regime} needs an --h list")
            if tau_values:
                raise UsageError(f"regime {ns.regime} derives tau; do not pass --tau")
            cfg.h_list = h_values
    else:  # timing
        cfg.points = ns.points
        if dim != 1:
            raise UsageError("timing comparison is defined for 1D benchmarks")
        if ns.points % 2 == 0 or ns.points < 7:
            raise UsageError("--points must be odd and >= 7")
    return cfg


def _fmt(value) -> str:
    return "*" if value is None else f"{value:.4e}"


def _table_csv(table: ConvergenceTable) -> str:
    lines = [CSV_HEADER]
    for r in table.rows:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    r.h,
                    r.tau,
                    r.error_grid,
                    r.rate_grid,
                    r.error_mid,
                    r.rate_mid,
                    r.error_grad,
                    r.rate_grad,
                )
            )
        )
    return "\n".join(lines) + "\n"


def _timing_csv(report: TimingReport) -> str:
    lines = [TIMING_CSV_HEADER]
    for path in (report.full, report.refined):
        lines.append(
            ",".join(
                [
                    path.label,
                    str(report.points),
                    str(path.n_cells),
                    f"{path.h:.4e}",
                    f"{path.tau:.4e}",
                    str(path.n_steps),
                    str(path.output_points),
                    f"{path.error:.4e}",
                    f"{path.seconds:.4e}",
                    f"{report.speedup:.4e}",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def emit(result, fmt: str, path: Optional[str]) -> None:
    """Serialize a table or timing report; atomic write (temp + rename)."""
    if fmt == "csv":
        text = _timing_csv(result) if isinstance(result, TimingReport) else _table_csv(result)
    elif fmt == "json":
        text = json.dumps(result.to_record(), indent=2) + "\n"
    else:
        raise UsageError(f"unknown format {fmt!r}")
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".compactheat-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except Exception:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def _run_solve(cfg: RunConfig, benchmark: Benchmark) -> ConvergenceTable:
    row = _solve_row(
        benchmark,
        cfg.n_cells,
        cfg.n_steps,
        cfg.t_end,
        cfg.refine,
        cfg.gradient,
        extrapolate=False,
    )
    return ConvergenceTable(
        benchmark_id=benchmark.id,
        dim=benchmark.dim,
        regime="single",
        rate_kind="log2",
        extrapolated=False,
        refine=cfg.refine,
        gradient=cfg.gradient,
        t_end=cfg.t_end,
        rows=(row,),
    )


def run(cfg: RunConfig):
    benchmark = get_benchmark(cfg.benchmark, c=cfg.c)
    if cfg.command == "solve":
        return _run_solve(cfg, benchmark)
    if cfg.command in ("converge", "extrapolate"):
        if cfg.regime == "fixed-h":
            values = cfg.tau_list
        else:
            values = cfg.h_list
        return run_convergence(
            benchmark,
            cfg.regime,
            values,
            tau=cfg.tau,
            h=cfg.fixed_h,
            refine=cfg.refine,
            gradient=cfg.gradient,
            extrapolate=cfg.extrapolate,
            t_end=cfg.t_end,
            jobs=cfg.jobs,
        )
    return run_timing(benchmark, cfg.points, t_end=cfg.t_end)


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"compactheat: {exc}", file=sys.stderr)
        return 2
    try:
        result = run(cfg)
    except ValueError as exc:
        print(f"compactheat: {exc}", file=sys.stderr)
        return 2
    try:
        emit(result, cfg.fmt, cfg.output)
    except OSError as exc:
        print(f"compactheat: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
