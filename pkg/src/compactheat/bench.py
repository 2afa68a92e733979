"""Manufactured-solution benchmarks, error norms, and study harnesses.

Errors are absolute discrete maximum norms at the final time, taken over
each output family's own validity range (all nodes for grid values,
j = 1..N-2 for 1D midpoints, the stated K/L ranges for gradients, cell
centers in 2D). Rates are log2 of the error drop under mesh halving;
step-coupled regimes report the raw error ratio between successive rows
instead, which approaches 16 for a fourth-order combination. A relative
grid error (scaled by the exact solution's max magnitude at T) is carried
alongside as a supplementary diagnostic.

Everything here is deterministic: repeated runs produce bit-identical
tables, with or without a worker pool.
"""

from __future__ import annotations

import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Union

import numpy as np

from .extrapolate import ExtrapolationPair, extrapolate_time
from .grids import Field1D, Field2D, Grid1D, Grid2D, TimeGrid
from .refine1d import GradientField1D, RefinedField1D, gradient_1d, refine_1d
from .refine2d import (
    GradientField2D,
    RefinedField2D,
    gradient_2d,
    refine_2d,
    refine_centers_2d,
)
from .solver1d import HeatProblem1D, solve_1d
from .solver2d import HeatProblem2D, solve_2d

_TIME_TOL = 1e-12

REGIMES = ("fixed-tau", "fixed-h", "tau=h", "tau=h^2", "tau=h/20")


@dataclass(frozen=True)
class Benchmark:
    """A problem with a closed-form solution used to measure errors directly.

    The exact solution satisfies the equation and its initial/boundary data
    analytically. 1D callables take (x, t); 2D callables take (x, y, t) and
    exact_dy is populated.
    """

    id: str
    dim: int
    problem: Union[HeatProblem1D, HeatProblem2D]
    exact: Callable
    exact_dx: Callable
    exact_dy: Optional[Callable] = None
    c: float = 1.0
    a: float = 0.0
    b: float = 1.0


def ex41(c: float = 1.0) -> Benchmark:
    """Decaying sine mode on [0, 1] with homogeneous boundaries."""
    pi = np.pi
    return Benchmark(
        id="ex41",
        dim=1,
        problem=HeatProblem1D(
            c=c,
            phi=lambda x: np.sin(pi * x),
            g1=lambda t: 0.0,
            g2=lambda t: 0.0,
        ),
        exact=lambda x, t: np.exp(-c * pi * pi * t) * np.sin(pi * x),
        exact_dx=lambda x, t: pi * np.exp(-c * pi * pi * t) * np.cos(pi * x),
        c=c,
    )


def ex42(c: float = 1.0) -> Benchmark:
    """Growing exponential exp(x + c t) with non-homogeneous boundaries."""
    return Benchmark(
        id="ex42",
        dim=1,
        problem=HeatProblem1D(
            c=c,
            phi=lambda x: np.exp(x),
            g1=lambda t: np.exp(c * t),
            g2=lambda t: np.exp(1.0 + c * t),
        ),
        exact=lambda x, t: np.exp(x + c * t),
        exact_dx=lambda x, t: np.exp(x + c * t),
        c=c,
    )


def ex43(c: float = 1.0) -> Benchmark:
    """Decaying product mode on the unit square, zero boundaries."""
    if c != 1.0:
        raise ValueError("the 2D scheme has unit diffusivity; c must be 1")
    pi = np.pi
    decay = lambda t: np.exp(-2.0 * pi * pi * t)
    return Benchmark(
        id="ex43",
        dim=2,
        problem=HeatProblem2D(
            phi=lambda x, y: np.sin(pi * x) * np.sin(pi * y),
            g1=lambda y, t: 0.0,
            g2=lambda y, t: 0.0,
            g3=lambda x, t: 0.0,
            g4=lambda x, t: 0.0,
        ),
        exact=lambda x, y, t: decay(t) * np.sin(pi * x) * np.sin(pi * y),
        exact_dx=lambda x, y, t: pi * decay(t) * np.cos(pi * x) * np.sin(pi * y),
        exact_dy=lambda x, y, t: pi * decay(t) * np.sin(pi * x) * np.cos(pi * y),
    )


BENCHMARKS = {"ex41": ex41, "ex42": ex42, "ex43": ex43}


def get_benchmark(benchmark_id: str, c: float = 1.0) -> Benchmark:
    try:
        factory = BENCHMARKS[benchmark_id]
    except KeyError:
        raise ValueError(
            f"unknown benchmark {benchmark_id!r}; choose from {sorted(BENCHMARKS)}"
        ) from None
    return factory(c=c)


def _evaluate(f: Callable, *coords, t: float) -> np.ndarray:
    """Evaluate f on coordinate arrays, falling back to scalar calls."""
    try:
        out = np.asarray(f(*coords, t), dtype=float)
        if out.shape == np.broadcast(*coords).shape:
            return out
    except (TypeError, ValueError):
        pass
    flat = [np.asarray(c).ravel() for c in coords]
    out = np.array([f(*vals, t) for vals in zip(*flat)], dtype=float)
    return out.reshape(np.asarray(coords[0]).shape)


def _check_time(time_level: float, at_time: float):
    if abs(time_level - at_time) > _TIME_TOL * (1.0 + abs(at_time)):
        raise ValueError(f"field is at t={time_level}, expected t={at_time}")


def max_error(numeric, exact, at_time: float) -> float:
    """Discrete maximum-norm error of a numeric output family at a time.

    Accepts solved fields, gradient fields, and refined fields; `exact` is
    the matching exact function (for GradientField2D, the pair of axis
    derivative functions).
    """
    _check_time(numeric.time_level, at_time)
    if isinstance(numeric, Field1D):
        xs = numeric.grid.nodes()
        return float(np.abs(numeric.values - _evaluate(exact, xs, t=at_time)).max())
    if isinstance(numeric, GradientField1D):
        n = numeric.grid.n_cells
        xs = numeric.grid.nodes()[1:n]
        return float(np.abs(numeric.values - _evaluate(exact, xs, t=at_time)).max())
    if isinstance(numeric, RefinedField1D):
        xs = numeric.coordinates()
        return float(
            np.abs(numeric.mid_values - _evaluate(exact, xs, t=at_time)).max()
        )
    if isinstance(numeric, Field2D):
        xg, yg = np.meshgrid(
            numeric.grid.x_axis.nodes(), numeric.grid.y_axis.nodes(), indexing="ij"
        )
        return float(np.abs(numeric.values - _evaluate(exact, xg, yg, t=at_time)).max())
    if isinstance(numeric, GradientField2D):
        try:
            exact_dx, exact_dy = exact
        except TypeError:
            raise TypeError(
                "GradientField2D needs a pair of derivative functions (d/dx, d/dy)"
            ) from None
        nx = numeric.grid.x_axis.n_cells
        ny = numeric.grid.y_axis.n_cells
        xs = numeric.grid.x_axis.nodes()
        ys = numeric.grid.y_axis.nodes()
        kx, ky = np.meshgrid(xs[2 : nx - 1], ys[1:ny], indexing="ij")
        e_k = np.abs(numeric.k_values - _evaluate(exact_dx, kx, ky, t=at_time)).max()
        lx, ly = np.meshgrid(xs[1:nx], ys[2 : ny - 1], indexing="ij")
        e_l = np.abs(numeric.l_values - _evaluate(exact_dy, lx, ly, t=at_time)).max()
        return float(max(e_k, e_l))
    if isinstance(numeric, RefinedField2D):
        return max(
            _refined_family_errors(numeric, exact, at_time).values(), default=0.0
        )
    raise TypeError(f"unsupported numeric output {type(numeric).__name__}")


def _refined_family_errors(refined: RefinedField2D, exact, at_time: float) -> dict:
    gx = refined.grid.x_axis
    gy = refined.grid.y_axis
    nx, ny = gx.n_cells, gy.n_cells
    out = {}
    if refined.x_mid.size:
        xm = gx.a + (np.arange(2, nx - 2) + 0.5) * gx.h
        xg, yg = np.meshgrid(xm, gy.nodes()[1:ny], indexing="ij")
        out["x_mid"] = float(
            np.abs(refined.x_mid - _evaluate(exact, xg, yg, t=at_time)).max()
        )
    if refined.y_mid.size:
        ym = gy.a + (np.arange(2, ny - 2) + 0.5) * gy.h
        xg, yg = np.meshgrid(gx.nodes()[1:nx], ym, indexing="ij")
        out["y_mid"] = float(
            np.abs(refined.y_mid - _evaluate(exact, xg, yg, t=at_time)).max()
        )
    if refined.centers.size:
        xm = gx.a + (np.arange(2, nx - 2) + 0.5) * gx.h
        ym = gy.a + (np.arange(2, ny - 2) + 0.5) * gy.h
        xg, yg = np.meshgrid(xm, ym, indexing="ij")
        out["centers"] = float(
            np.abs(refined.centers - _evaluate(exact, xg, yg, t=at_time)).max()
        )
    return out


def observed_rate(e_coarse: float, e_fine: float) -> Optional[float]:
    """log2(e_coarse / e_fine); None (rendered '*') when undefined."""
    if e_coarse is None or e_fine is None or e_coarse <= 0 or e_fine <= 0:
        return None
    return math.log2(e_coarse / e_fine)


def error_ratio(e_coarse: float, e_fine: float) -> Optional[float]:
    """e_coarse / e_fine; None (rendered '*') when undefined."""
    if e_coarse is None or e_fine is None or e_coarse <= 0 or e_fine <= 0:
        return None
    return e_coarse / e_fine


@dataclass(frozen=True)
class ConvergenceRow:
    h: float
    tau: float
    n_cells: int
    n_steps: int
    error_grid: Optional[float] = None
    error_mid: Optional[float] = None
    error_grad: Optional[float] = None
    rate_grid: Optional[float] = None
    rate_mid: Optional[float] = None
    rate_grad: Optional[float] = None
    rel_error_grid: Optional[float] = None


@dataclass(frozen=True)
class ConvergenceTable:
    benchmark_id: str
    dim: int
    regime: str
    rate_kind: str  # "log2" under mesh halving, "ratio" in coupled regimes
    extrapolated: bool
    refine: bool
    gradient: bool
    t_end: float
    rows: tuple

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["rows"] = [asdict(r) for r in self.rows]
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "ConvergenceTable":
        rows = tuple(ConvergenceRow(**r) for r in rec["rows"])
        meta = {k: v for k, v in rec.items() if k != "rows"}
        return cls(rows=rows, **meta)


def _row_mesh(
    regime: str, value: float, width: float, t_end: float, tau=None, h=None
) -> tuple[int, int]:
    """Cells and steps for one study row; `value` is the swept parameter."""

    def cells(step: float) -> int:
        n = round(width / step)
        if n < 1 or abs(width / n - step) > 1e-9 * step:
            raise ValueError(f"spatial step {step} does not divide the interval")
        return n

    def steps(target_tau: float) -> int:
        m = max(1, round(t_end / target_tau))
        if abs(t_end / m - target_tau) > 1e-9 * target_tau:
            raise ValueError(f"time step {target_tau} does not divide t_end={t_end}")
        return m

    if regime == "fixed-tau":
        return cells(value), steps(tau)
    if regime == "fixed-h":
        return cells(h), steps(value)
    if regime == "tau=h":
        return cells(value), steps(value)
    if regime == "tau=h^2":
        return cells(value), steps(value * value)
    if regime == "tau=h/20":
        return cells(value), steps(value / 20.0)
    raise ValueError(f"unknown regime {regime!r}; choose from {REGIMES}")


def _solve_row(
    benchmark: Benchmark,
    n_cells: int,
    n_steps: int,
    t_end: float,
    refine: bool,
    gradient: bool,
    extrapolate: bool,
) -> ConvergenceRow:
    timegrid = TimeGrid(t_end, n_steps)
    if benchmark.dim == 1:
        grid = Grid1D(benchmark.a, benchmark.b, n_cells)
        field = solve_1d(benchmark.problem, grid, timegrid)
        if extrapolate:
            fine = solve_1d(benchmark.problem, grid, TimeGrid(t_end, 2 * n_steps))
            field = extrapolate_time(ExtrapolationPair(field, fine, "time"))
        e_grid = max_error(field, benchmark.exact, field.time_level)
        e_mid = e_grad = None
        if n_cells >= 4:
            if gradient or refine:
                grads = gradient_1d(field, field.values[0], field.values[-1])
                if gradient:
                    e_grad = max_error(grads, benchmark.exact_dx, field.time_level)
            if refine:
                mids = refine_1d(field, field.values[0], field.values[-1])
                e_mid = max_error(mids, benchmark.exact, field.time_level)
        xs = grid.nodes()
        exact_scale = float(
            np.abs(_evaluate(benchmark.exact, xs, t=field.time_level)).max()
        )
    else:
        grid = Grid2D.square(benchmark.a, benchmark.b, n_cells)
        field = solve_2d(benchmark.problem, grid, timegrid)
        if extrapolate:
            fine = solve_2d(benchmark.problem, grid, TimeGrid(t_end, 2 * n_steps))
            field = extrapolate_time(ExtrapolationPair(field, fine, "time"))
        e_grid = max_error(field, benchmark.exact, field.time_level)
        e_mid = e_grad = None
        if n_cells >= 5:
            if gradient or refine:
                grads = gradient_2d(field)
                if gradient:
                    e_grad = max_error(
                        grads,
                        (benchmark.exact_dx, benchmark.exact_dy),
                        field.time_level,
                    )
            if refine:
                centers = refine_centers_2d(field, grads)
                xm = grid.x_axis.a + (np.arange(2, n_cells - 2) + 0.5) * grid.x_axis.h
                xg, yg = np.meshgrid(xm, xm, indexing="ij")
                e_mid = float(
                    np.abs(
                        centers - _evaluate(benchmark.exact, xg, yg, t=field.time_level)
                    ).max()
                )
        xg, yg = np.meshgrid(grid.x_axis.nodes(), grid.y_axis.nodes(), indexing="ij")
        exact_scale = float(
            np.abs(_evaluate(benchmark.exact, xg, yg, t=field.time_level)).max()
        )
    width = (benchmark.b - benchmark.a) / n_cells
    rel = e_grid / exact_scale if exact_scale > 0 else None
    return ConvergenceRow(
        h=width,
        tau=timegrid.tau,
        n_cells=n_cells,
        n_steps=n_steps,
        error_grid=e_grid,
        error_mid=e_mid,
        error_grad=e_grad,
        rel_error_grid=rel,
    )


def _pool_row(args) -> ConvergenceRow:
    bid, c, n_cells, n_steps, t_end, refine, gradient, extrapolate = args
    return _solve_row(
        get_benchmark(bid, c=c), n_cells, n_steps, t_end, refine, gradient, extrapolate
    )


def run_convergence(
    benchmark: Benchmark,
    regime: str,
    h_list,
    *,
    tau: Optional[float] = None,
    h: Optional[float] = None,
    refine: bool = False,
    gradient: bool = False,
    extrapolate: bool = False,
    t_end: float = 1.0,
    jobs: int = 1,
) -> ConvergenceTable:
    """Run one solve per row of a refinement study and tabulate errors.

    `h_list` is the swept parameter, strictly decreasing by factors of two:
    the spatial step for every regime except "fixed-h", where it is the
    list of time steps. "fixed-tau" requires `tau`; "fixed-h" requires `h`.
    With extrapolate=True each row also runs a half-step companion solve
    and tabulates the errors of the time-extrapolated field.
    """
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}; choose from {REGIMES}")
    if regime == "fixed-tau" and tau is None:
        raise ValueError("regime 'fixed-tau' requires tau")
    if regime == "fixed-h" and h is None:
        raise ValueError("regime 'fixed-h' requires h")
    values = [float(v) for v in h_list]
    if not values:
        raise ValueError("h_list must not be empty")
    for a, b in zip(values, values[1:]):
        if abs(a / b - 2.0) > 1e-9:
            raise ValueError(
                f"successive steps must halve, got {a} then {b}"
            )
    width = benchmark.b - benchmark.a
    meshes = [_row_mesh(regime, v, width, t_end, tau=tau, h=h) for v in values]
    if jobs > 1 and benchmark.id in BENCHMARKS:
        tasks = [
            (benchmark.id, benchmark.c, n, m, t_end, refine, gradient, extrapolate)
            for n, m in meshes
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_pool_row, tasks))
    else:
        rows = [
            _solve_row(benchmark, n, m, t_end, refine, gradient, extrapolate)
            for n, m in meshes
        ]
    rate_kind = "log2" if regime in ("fixed-tau", "fixed-h") else "ratio"
    measure = observed_rate if rate_kind == "log2" else error_ratio
    finished = []
    for i, row in enumerate(rows):
        nxt = rows[i + 1] if i + 1 < len(rows) else None
        finished.append(
            ConvergenceRow(
                h=row.h,
                tau=row.tau,
                n_cells=row.n_cells,
                n_steps=row.n_steps,
                error_grid=row.error_grid,
                error_mid=row.error_mid,
                error_grad=row.error_grad,
                rate_grid=measure(row.error_grid, nxt.error_grid) if nxt else None,
                rate_mid=measure(row.error_mid, nxt.error_mid) if nxt else None,
                rate_grad=measure(row.error_grad, nxt.error_grad) if nxt else None,
                rel_error_grid=row.rel_error_grid,
            )
        )
    return ConvergenceTable(
        benchmark_id=benchmark.id,
        dim=benchmark.dim,
        regime=regime,
        rate_kind=rate_kind,
        extrapolated=extrapolate,
        refine=refine,
        gradient=gradient,
        t_end=t_end,
        rows=tuple(finished),
    )


@dataclass(frozen=True)
class PathTiming:
    label: str
    n_cells: int
    h: float
    tau: float
    n_steps: int
    output_points: int
    error: float
    seconds: float


@dataclass(frozen=True)
class TimingReport:
    benchmark_id: str
    points: int
    full: PathTiming
    refined: PathTiming

    @property
    def speedup(self) -> float:
        return self.full.seconds / self.refined.seconds

    def to_record(self) -> dict:
        return {
            "benchmark_id": self.benchmark_id,
            "points": self.points,
            "full": asdict(self.full),
            "refined": asdict(self.refined),
            "speedup": self.speedup,
        }


def run_timing(
    benchmark: Benchmark,
    matched_output_points: int,
    *,
    t_end: float = 1.0,
    repeats: int = 3,
) -> TimingReport:
    """Time two routes to the same number of output points with tau = h^2.

    The full route solves on P-1 cells and reports its P nodes; the refined
    route solves on (P+1)/2 cells and reports nodes plus interior midpoints
    (also P points, at half the resolution cost). Wall time is the median
    of `repeats` runs of the solver path only.
    """
    if benchmark.dim != 1:
        raise ValueError("timing comparison is defined on the doubled 1D grid")
    p = matched_output_points
    if p % 2 == 0 or p < 7:
        raise ValueError(f"matched output points must be odd and >= 7, got {p}")

    def timed(fn):
        times = []
        result = None
        for _ in range(repeats):
            start = time.perf_counter()
            result = fn()
            times.append(time.perf_counter() - start)
        return result, statistics.median(times)

    width = benchmark.b - benchmark.a

    n_full = p - 1
    grid_full = Grid1D(benchmark.a, benchmark.b, n_full)
    m_full = max(1, round(t_end / (grid_full.h * grid_full.h)))
    tg_full = TimeGrid(t_end, m_full)
    field_full, sec_full = timed(lambda: solve_1d(benchmark.problem, grid_full, tg_full))
    err_full = max_error(field_full, benchmark.exact, field_full.time_level)

    n_half = (p + 1) // 2
    grid_half = Grid1D(benchmark.a, benchmark.b, n_half)
    m_half = max(1, round(t_end / (grid_half.h * grid_half.h)))
    tg_half = TimeGrid(t_end, m_half)

    def refined_path():
        field = solve_1d(benchmark.problem, grid_half, tg_half)
        mids = refine_1d(field, field.values[0], field.values[-1])
        return field, mids

    (field_half, mids_half), sec_half = timed(refined_path)
    err_half = max(
        max_error(field_half, benchmark.exact, field_half.time_level),
        max_error(mids_half, benchmark.exact, field_half.time_level),
    )

    return TimingReport(
        benchmark_id=benchmark.id,
        points=p,
        full=PathTiming(
            label="full-resolution",
            n_cells=n_full,
            h=width / n_full,
            tau=tg_full.tau,
            n_steps=m_full,
            output_points=n_full + 1,
            error=err_full,
            seconds=sec_full,
        ),
        refined=PathTiming(
            label="half-resolution+refine",
            n_cells=n_half,
            h=width / n_half,
            tau=tg_half.tau,
            n_steps=m_half,
            output_points=(n_half + 1) + (n_half - 2),
            error=err_half,
            seconds=sec_half,
        ),
    )
