import math

import numpy as np
import pytest

from compactheat.bench import (
    ConvergenceTable,
    error_ratio,
    ex41,
    ex42,
    ex43,
    get_benchmark,
    max_error,
    observed_rate,
    run_convergence,
    run_timing,
)
from compactheat.grids import Grid1D, Grid2D, sample_function, sample_function_2d


class TestBenchmarks:
    def test_registry(self):
        assert get_benchmark("ex41").dim == 1
        assert get_benchmark("ex42").dim == 1
        assert get_benchmark("ex43").dim == 2
        with pytest.raises(ValueError, match="unknown benchmark"):
            get_benchmark("ex99")

    @pytest.mark.parametrize("bid", ["ex41", "ex42"])
    def test_1d_exact_solution_satisfies_equation(self, bid):
        # finite-difference residual of u_t - c u_xx at a probe point
        bench = get_benchmark(bid, c=1.3)
        x0, t0, d = 0.4, 0.7, 1e-5
        u = bench.exact
        u_t = (u(x0, t0 + d) - u(x0, t0 - d)) / (2 * d)
        u_xx = (u(x0 + d, t0) - 2 * u(x0, t0) + u(x0 - d, t0)) / d**2
        assert u_t == pytest.approx(bench.c * u_xx, rel=1e-4)
        assert bench.exact_dx(x0, t0) == pytest.approx(
            (u(x0 + d, t0) - u(x0 - d, t0)) / (2 * d), rel=1e-6
        )

    def test_1d_data_consistency(self):
        bench = get_benchmark("ex42", c=0.7)
        assert bench.problem.phi(0.3) == pytest.approx(bench.exact(0.3, 0.0))
        assert bench.problem.g1(0.8) == pytest.approx(bench.exact(0.0, 0.8))
        assert bench.problem.g2(0.8) == pytest.approx(bench.exact(1.0, 0.8))

    def test_2d_exact_solution_satisfies_equation(self):
        bench = ex43()
        x0, y0, t0, d = 0.3, 0.6, 0.2, 1e-4
        u = bench.exact
        u_t = (u(x0, y0, t0 + d) - u(x0, y0, t0 - d)) / (2 * d)
        lap = (
            u(x0 + d, y0, t0)
            + u(x0 - d, y0, t0)
            + u(x0, y0 + d, t0)
            + u(x0, y0 - d, t0)
            - 4 * u(x0, y0, t0)
        ) / d**2
        assert u_t == pytest.approx(lap, rel=1e-3)

    def test_2d_rejects_nonunit_diffusivity(self):
        with pytest.raises(ValueError):
            ex43(c=2.0)


class TestMaxError:
    def test_sampled_exact_is_zero(self):
        bench = ex41()
        grid = Grid1D(0.0, 1.0, 16)
        f = sample_function(grid, lambda x: bench.exact(x, 0.0))
        assert max_error(f, bench.exact, 0.0) <= 1e-14

    def test_2d_sampled_exact_is_zero(self):
        bench = ex43()
        f = sample_function_2d(
            Grid2D.square(0.0, 1.0, 8), lambda x, y: bench.exact(x, y, 0.0)
        )
        assert max_error(f, bench.exact, 0.0) <= 1e-14

    def test_time_mismatch_rejected(self):
        bench = ex41()
        f = sample_function(Grid1D(0.0, 1.0, 8), lambda x: 0.0)
        with pytest.raises(ValueError, match="expected t="):
            max_error(f, bench.exact, 1.0)

    def test_reference_grid_errors(self):
        from compactheat.grids import Grid1D, TimeGrid
        from compactheat.solver1d import solve_1d

        for bench, n, expected in ((ex41(), 16, 3.1660e-9), (ex42(), 8, 5.2636e-7)):
            field = solve_1d(bench.problem, Grid1D(0.0, 1.0, n), TimeGrid(1.0, 100000))
            err = max_error(field, bench.exact, field.time_level)
            assert err == pytest.approx(expected, rel=0.05)

    def test_nonnegative_and_positive_on_disagreement(self):
        bench = ex41()
        f = sample_function(Grid1D(0.0, 1.0, 8), lambda x: 1.0)
        assert max_error(f, bench.exact, 0.0) > 0.0

    def test_scalar_exact_function_supported(self):
        f = sample_function(Grid1D(0.0, 1.0, 4), lambda x: x)
        err = max_error(f, lambda x, t: math.sin(x) / math.sin(1.0) * 0 + x, 0.0)
        assert err <= 1e-15


class TestRates:
    def test_power_of_sixteen(self):
        assert observed_rate(1.0, 1.0 / 16.0) == pytest.approx(4.0)

    def test_reference_pairs(self):
        assert observed_rate(8.3491e-7, 5.0915e-8) == pytest.approx(4.0355, abs=5e-4)
        assert observed_rate(4.3449e-4, 1.0871e-4) == pytest.approx(1.9988, abs=5e-4)

    def test_degenerate_inputs_yield_marker(self):
        assert observed_rate(0.0, 1.0) is None
        assert observed_rate(1.0, 0.0) is None
        assert observed_rate(None, 1.0) is None
        assert error_ratio(1.0, 0.0) is None

    def test_identity_and_antisymmetry(self):
        assert observed_rate(3.5, 3.5) == 0.0
        assert observed_rate(2.0, 0.5) == -observed_rate(0.5, 2.0)

    def test_ratio(self):
        assert error_ratio(4.0, 0.25) == pytest.approx(16.0)


class TestRunConvergence:
    def test_fixed_tau_structure_and_rates(self):
        bench = ex41()
        table = run_convergence(
            bench, "fixed-tau", [1 / 4, 1 / 8], tau=1e-4, refine=True, gradient=True
        )
        assert table.rate_kind == "log2"
        assert len(table.rows) == 2
        first, last = table.rows
        assert (first.n_cells, first.n_steps) == (4, 10000)
        assert last.rate_grid is None  # final row prints '*'
        assert 3.5 <= first.rate_grid <= 4.5
        assert first.error_mid is not None and first.error_grad is not None
        assert first.rel_error_grid == pytest.approx(
            first.error_grid / math.exp(-math.pi**2), rel=1e-12
        )

    def test_tau_h_regime_reports_ratios(self):
        bench = ex41()
        table = run_convergence(bench, "tau=h", [1 / 8, 1 / 16], extrapolate=True)
        assert table.rate_kind == "ratio"
        assert table.rows[0].n_steps == 8
        assert table.rows[0].rate_grid == pytest.approx(14.2567, abs=1.0)

    def test_tau_h2_regime_step_counts(self):
        bench = ex43()
        table = run_convergence(bench, "tau=h^2", [1 / 5, 1 / 10], refine=True)
        assert [r.n_steps for r in table.rows] == [25, 100]
        assert table.rows[0].error_grid == pytest.approx(1.6485e-9, rel=5e-2)
        assert table.rows[0].rate_grid == pytest.approx(9.7908, abs=1.0)

    def test_fixed_h_sweeps_tau(self):
        bench = ex42()
        table = run_convergence(
            bench, "fixed-h", [1 / 10, 1 / 20], h=1 / 100
        )
        assert [r.n_steps for r in table.rows] == [10, 20]
        assert all(r.n_cells == 100 for r in table.rows)
        assert 1.8 <= table.rows[0].rate_grid <= 2.2

    def test_too_small_rows_get_absent_columns(self):
        bench = ex41()
        table = run_convergence(
            bench, "tau=h", [1 / 2, 1 / 4], refine=True, gradient=True
        )
        assert table.rows[0].error_mid is None
        assert table.rows[0].error_grad is None
        assert table.rows[1].error_mid is not None

    def test_halving_enforced(self):
        with pytest.raises(ValueError, match="halve"):
            run_convergence(ex41(), "tau=h", [1 / 4, 1 / 6])

    def test_regime_validation(self):
        with pytest.raises(ValueError, match="regime"):
            run_convergence(ex41(), "bogus", [1 / 4])
        with pytest.raises(ValueError, match="tau"):
            run_convergence(ex41(), "fixed-tau", [1 / 4])
        with pytest.raises(ValueError, match="requires h"):
            run_convergence(ex41(), "fixed-h", [1 / 10])

    def test_deterministic_and_jobs_equivalent(self):
        bench = ex41()
        kwargs = dict(tau=1e-3, refine=True, gradient=True)
        a = run_convergence(bench, "fixed-tau", [1 / 4, 1 / 8], **kwargs)
        b = run_convergence(bench, "fixed-tau", [1 / 4, 1 / 8], **kwargs)
        c = run_convergence(bench, "fixed-tau", [1 / 4, 1 / 8], jobs=2, **kwargs)
        assert a == b == c

    def test_record_round_trip(self):
        table = run_convergence(ex41(), "tau=h", [1 / 4, 1 / 8], refine=True)
        assert ConvergenceTable.from_record(table.to_record()) == table


class TestRunTiming:
    def test_small_report_complete(self):
        report = run_timing(ex41(), 15, repeats=1)
        assert report.points == 15
        assert report.full.n_cells == 14
        assert report.refined.n_cells == 8
        assert report.full.output_points == 15
        assert report.refined.output_points == 15
        assert report.full.error > 0 and report.refined.error > 0
        assert report.full.seconds > 0 and report.refined.seconds > 0
        assert report.speedup == report.full.seconds / report.refined.seconds

    def test_refined_path_error_scale(self):
        # half-resolution-plus-refinement lands within a modest factor of
        # the full-resolution error at the same output points
        report = run_timing(ex41(), 31, repeats=1)
        assert report.refined.error <= 30.0 * report.full.error

    def test_validation(self):
        with pytest.raises(ValueError, match="odd"):
            run_timing(ex41(), 16)
        with pytest.raises(ValueError, match="1D"):
            run_timing(ex43(), 15)
