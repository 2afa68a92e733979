import json

import pytest

from compactheat import __version__
from compactheat.bench import ConvergenceTable, ex41, run_convergence
from compactheat.cli import (
    CSV_HEADER,
    RunConfig,
    UsageError,
    emit,
    main,
    parse_args,
    parse_step,
)


class TestParseStep:
    def test_fraction_exact(self):
        assert parse_step("1/64") == 1.0 / 64.0
        assert parse_step("1/100000") == 1e-5

    def test_decimal(self):
        assert parse_step("0.015625") == 0.015625

    def test_invalid(self):
        with pytest.raises(UsageError):
            parse_step("1/0")
        with pytest.raises(UsageError):
            parse_step("abc")


class TestParseArgs:
    def test_converge_table_shape_command(self):
        cfg = parse_args(
            [
                "converge",
                "--dim",
                "1",
                "--benchmark",
                "ex41",
                "--regime",
                "fixed-tau",
                "--tau",
                "1e-5",
                "--h",
                "1/4,1/8,1/16,1/32,1/64",
                "--refine",
                "--gradient",
            ]
        )
        assert cfg.command == "converge"
        assert cfg.regime == "fixed-tau"
        assert cfg.tau == 1e-5
        assert cfg.h_list == [0.25, 0.125, 0.0625, 0.03125, 0.015625]
        assert cfg.refine and cfg.gradient and not cfg.extrapolate

    def test_solve_command(self):
        cfg = parse_args(
            [
                "solve",
                "--dim",
                "2",
                "--benchmark",
                "ex43",
                "--N",
                "20",
                "--tau",
                "1/400",
                "--T",
                "1",
                "--refine",
            ]
        )
        assert cfg.command == "solve"
        assert cfg.dim == 2
        assert cfg.n_cells == 20
        assert cfg.n_steps == 400
        assert cfg.refine

    def test_timing_command(self):
        cfg = parse_args(["timing", "--benchmark", "ex41", "--points", "255"])
        assert cfg.command == "timing"
        assert cfg.points == 255

    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            parse_args(["solve", "--benchmark", "ex41", "--N", "8", "--bogus"])
        assert exc.value.code == 2

    def test_dimension_mismatch(self):
        with pytest.raises(UsageError, match="dimensional"):
            parse_args(
                ["solve", "--dim", "1", "--benchmark", "ex43", "--N", "8", "--M", "4"]
            )

    def test_extrapolate_defaults_to_tau_h(self):
        cfg = parse_args(
            ["extrapolate", "--benchmark", "ex41", "--h", "1/8,1/16"]
        )
        assert cfg.extrapolate
        assert cfg.regime == "tau=h"

    def test_converge_extrapolate_flag_matches_subcommand(self):
        via_flag = parse_args(
            [
                "converge",
                "--benchmark",
                "ex41",
                "--regime",
                "tau=h",
                "--h",
                "1/8,1/16",
                "--extrapolate",
            ]
        )
        via_command = parse_args(
            ["extrapolate", "--benchmark", "ex41", "--h", "1/8,1/16"]
        )
        assert via_flag.extrapolate
        assert via_flag.regime == via_command.regime
        assert via_flag.h_list == via_command.h_list

    def test_refine_needs_enough_cells(self):
        with pytest.raises(UsageError, match=">= 4"):
            parse_args(
                ["solve", "--benchmark", "ex41", "--N", "3", "--M", "4", "--refine"]
            )
        with pytest.raises(UsageError, match=">= 5"):
            parse_args(
                ["solve", "--benchmark", "ex43", "--N", "4", "--M", "4", "--refine"]
            )

    def test_timing_validation(self):
        with pytest.raises(UsageError, match="odd"):
            parse_args(["timing", "--benchmark", "ex41", "--points", "16"])
        with pytest.raises(UsageError, match="1D"):
            parse_args(["timing", "--benchmark", "ex43", "--points", "15"])


class TestEmit:
    def table(self):
        return run_convergence(
            ex41(), "tau=h", [1 / 4, 1 / 8], refine=True, gradient=True
        )

    def test_csv_schema(self, tmp_path, capsys):
        emit(self.table(), "csv", None)
        out = capsys.readouterr().out
        lines = out.strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert len(lines) == 3
        last = lines[2].split(",")
        assert last[3] == "*"  # final row has no rate
        assert last[0] == "1.2500e-01"

    def test_empty_table_is_header_only(self, capsys):
        table = ConvergenceTable(
            benchmark_id="ex41",
            dim=1,
            regime="single",
            rate_kind="log2",
            extrapolated=False,
            refine=False,
            gradient=False,
            t_end=1.0,
            rows=(),
        )
        emit(table, "csv", None)
        assert capsys.readouterr().out == CSV_HEADER + "\n"

    def test_json_round_trip(self, tmp_path):
        table = self.table()
        path = tmp_path / "out.json"
        emit(table, "json", str(path))
        rec = json.loads(path.read_text())
        assert ConvergenceTable.from_record(rec) == table

    def test_no_partial_file_on_failure(self, tmp_path):
        target = tmp_path / "sub" / "out.csv"
        with pytest.raises(OSError):
            emit(self.table(), "csv", str(target))
        assert not target.exists()
        assert list(tmp_path.iterdir()) == []


class TestMain:
    def test_solve_writes_csv(self, tmp_path):
        path = tmp_path / "row.csv"
        status = main(
            [
                "solve",
                "--benchmark",
                "ex41",
                "--N",
                "8",
                "--tau",
                "1/64",
                "--refine",
                "--gradient",
                "--output",
                str(path),
            ]
        )
        assert status == 0
        lines = path.read_text().strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert len(lines) == 2

    def test_cli_is_thin_shell_over_library(self, tmp_path):
        path = tmp_path / "table.json"
        status = main(
            [
                "converge",
                "--benchmark",
                "ex41",
                "--regime",
                "fixed-tau",
                "--tau",
                "1/1000",
                "--h",
                "1/4,1/8",
                "--refine",
                "--gradient",
                "--format",
                "json",
                "--output",
                str(path),
            ]
        )
        assert status == 0
        direct = run_convergence(
            ex41(), "fixed-tau", [1 / 4, 1 / 8], tau=1e-3, refine=True, gradient=True
        )
        assert ConvergenceTable.from_record(json.loads(path.read_text())) == direct

    def test_timing_csv(self, tmp_path):
        path = tmp_path / "timing.csv"
        status = main(
            ["timing", "--benchmark", "ex41", "--points", "15", "--output", str(path)]
        )
        assert status == 0
        lines = path.read_text().strip().split("\n")
        assert lines[0].startswith("path,points,")
        assert len(lines) == 3

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert __version__ in capsys.readouterr().out

    def test_usage_error_is_2(self, capsys):
        assert main(["solve", "--benchmark", "ex41", "--N", "1", "--M", "2"]) == 2
        assert "compactheat" in capsys.readouterr().err

    def test_io_failure_is_1(self, tmp_path, capsys):
        target = tmp_path / "missing" / "out.csv"
        status = main(
            [
                "solve",
                "--benchmark",
                "ex41",
                "--N",
                "4",
                "--M",
                "2",
                "--output",
                str(target),
            ]
        )
        assert status == 1
        assert "cannot write" in capsys.readouterr().err

    def test_bad_regime_combination_is_2(self):
        assert (
            main(
                [
                    "converge",
                    "--benchmark",
                    "ex41",
                    "--regime",
                    "tau=h",
                    "--h",
                    "1/4,1/6",
                ]
            )
            == 2
        )
