"""End-to-end tests for the command-line front end."""

import json

import pytest

from conftest import GOLDEN_DIR, lines
from facsum import __version__
from facsum.exceptions import NoConvergence
from facsum.managers import numerics
from facsum.managers.report import RECORD_FIELDS

SMALL_GRIDS = """
[identities]
n_max = 3
k_max = 1
x_values = 1/2, 2

[integrals]
n_max = 2
x_values = 1, 2.5
factorial_ratio_n_max = 3
dobinski_n_max = 3
quadrature_alphas = 0
"""


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "facsum.ini"
    path.write_text(SMALL_GRIDS)
    return str(path)


def golden(name: str) -> str:
    return (GOLDEN_DIR / name).read_text()


class TestTable:
    def test_stirling2_rows(self, cli):
        code, out, _ = cli("table", "stirling2", "--n", "4")
        assert code == 0
        assert lines(out)[-1] == "0 1 7 6 1"
        assert len(lines(out)) == 5

    def test_single_row(self, cli):
        assert cli("table", "binomial", "--n", "0")[:2] == (0, "1\n")

    def test_r_stirling(self, cli):
        code, out, _ = cli("table", "rstirling2", "--n", "3", "--r", "2")
        assert code == 0
        assert lines(out) == ["0", "0 0", "0 0 1", "0 0 2 1"]

    def test_golden_text(self, cli):
        assert cli("table", "stirling2", "--n", "6")[1] == golden("table_stirling2_n6.txt")

    def test_golden_csv(self, cli):
        out = cli("table", "stirling1", "--n", "3", "--format", "csv")[1]
        assert out == golden("table_stirling1_n3.csv")

    def test_json_before_subcommand(self, cli):
        code, out, _ = cli("--format", "json", "table", "binomial", "--n", "2")
        assert code == 0
        assert [json.loads(line) for line in lines(out)] == [
            {"n": 0, "row": [1]},
            {"n": 1, "row": [1, 1]},
            {"n": 2, "row": [1, 2, 1]},
        ]

    def test_negative_n(self, cli):
        code, out, err = cli("table", "stirling2", "--n", "-1")
        assert code == 2
        assert out == ""
        assert "Invalid arguments" in err

    def test_r_on_plain_kind(self, cli):
        assert cli("table", "binomial", "--n", "3", "--r", "1")[0] == 2

    def test_cap_from_environment(self, cli, monkeypatch):
        monkeypatch.setenv("FACSUM_MAX_N", "3")
        assert cli("table", "stirling2", "--n", "3")[0] == 0
        code, _, err = cli("table", "stirling2", "--n", "4")
        assert code == 2
        assert "exceeds the table cap 3" in err

    def test_unknown_kind(self, cli):
        assert cli("table", "lah", "--n", "3")[0] == 2


class TestSum:
    @pytest.mark.parametrize(
        "argv, expected",
        [
            (["sum", "binomial", "--n", "4"], "16"),
            (["sum", "stirling2", "--n", "5"], "52"),
            (["sum", "stirling1", "--n", "4"], "24"),
            (["sum", "stirling1", "--n", "3", "--weight", "power", "--x", "2"], "24"),
            (["sum", "binomial", "--n", "3", "--weight", "power", "--x", "1/2"], "27/8"),
            (["sum", "rstirling2", "--n", "3", "--r", "2"], "3"),
        ],
    )
    def test_values(self, cli, argv, expected):
        code, out, _ = cli(*argv)
        assert code == 0
        assert lines(out) == [expected]

    def test_trace_golden(self, cli):
        code, out, _ = cli("sum", "binomial", "--n", "3", "--trace")
        assert code == 0
        assert out == golden("sum_binomial_trace.txt")

    def test_trace_json(self, cli):
        out = cli("--format", "json", "sum", "binomial", "--n", "3", "--trace")[1]
        assert json.loads(out) == {
            "value": "8",
            "lower_bound": 0,
            "trace": [["2", "2", "2"], ["4", "4"], ["8"]],
        }

    def test_lower_bound(self, cli):
        code, out, _ = cli("sum", "binomial", "--n", "5", "--n0", "1", "--trace")
        assert code == 0
        assert lines(out)[0] == "16"
        assert [line.split(":")[0] for line in lines(out)[1:]] == ["c_1", "c_2", "c_3", "c_4"]

    def test_weight_needs_point(self, cli):
        code, _, err = cli("sum", "binomial", "--n", "3", "--weight", "rising")
        assert code == 2
        assert "--x" in err

    def test_decimal_point_rejected(self, cli):
        assert cli("sum", "binomial", "--n", "3", "--weight", "power", "--x", "0.5")[0] == 2

    def test_upper_below_lower(self, cli):
        assert cli("sum", "binomial", "--n", "1", "--n0", "3")[0] == 2

    def test_r_rows_start_at_r(self, cli):
        code, out, _ = cli("sum", "rstirling2", "--n", "4", "--r", "2")
        assert code == 0
        assert lines(out) == ["10"]
        assert cli("sum", "rstirling2", "--n", "4", "--r", "2", "--n0", "2")[:2] == (0, "10\n")

    @pytest.mark.parametrize(
        "extra",
        [[], ["--weight", "power", "--x", "1"], ["--weight", "rising", "--x", "1/2"]],
    )
    def test_r_kind_lower_bound_must_be_r(self, cli, extra):
        code, out, err = cli("sum", "rstirling2", "--n", "4", "--r", "2", "--n0", "0", *extra)
        assert code == 2
        assert out == ""
        assert "--n0 0" in err


class TestTransform:
    @pytest.mark.parametrize(
        "argv, expected",
        [
            (["transform", "rft", "--coeffs", "0,0,1"], "0,1,1"),
            (["transform", "rft", "--coeffs", "0,0,1", "--power", "-1"], "0,-1,1"),
            (["transform", "rft", "--coeffs", "0,0,1", "--power", "2"], "0,2,1"),
            (["transform", "rft", "--coeffs", "0,0,1", "--power", "0"], "0,0,1"),
            (["transform", "fft", "--coeffs", "1"], "1"),
            (["transform", "rft", "--coeffs", "0"], "0"),
            (["transform", "rft", "--coeffs", "1/2,0,-1/3"], "1/2,-1/3,-1/3"),
        ],
    )
    def test_values(self, cli, argv, expected):
        code, out, _ = cli(*argv)
        assert code == 0
        assert lines(out) == [expected]

    def test_golden_json(self, cli):
        out = cli("transform", "fft", "--coeffs", "0,0,0,1", "--format", "json")[1]
        assert out == golden("transform_fft_cube.json")

    def test_fft_power_rejected(self, cli):
        code, _, err = cli("transform", "fft", "--coeffs", "1", "--power", "2")
        assert code == 2
        assert "power 1" in err

    def test_bad_coefficients(self, cli):
        assert cli("transform", "rft", "--coeffs", "1,x")[0] == 2


class TestVerify:
    def test_identities_pass(self, cli, small_config):
        code, out, _ = cli("--config", small_config, "verify", "identities")
        assert code == 0
        assert lines(out)
        assert all(line.startswith("PASS ") for line in lines(out))
        assert any("printed index gives" in line for line in lines(out))

    def test_integrals_pass(self, cli, small_config):
        code, out, _ = cli("--config", small_config, "verify", "integrals")
        assert code == 0
        assert all(line.startswith("PASS ") for line in lines(out))

    def test_json_records(self, cli, small_config):
        code, out, _ = cli("--config", small_config, "--format", "json", "verify", "all")
        assert code == 0
        records = [json.loads(line) for line in lines(out)]
        assert records
        assert all(list(record) == RECORD_FIELDS for record in records)
        ids = {record["id"] for record in records}
        assert {"laguerre_moment", "rstirling_composition", "diagonal"} <= ids

    def test_csv_header(self, cli, small_config):
        out = cli("--config", small_config, "verify", "identities", "--format", "csv")[1]
        assert lines(out)[0] == ",".join(RECORD_FIELDS)

    def test_output_is_byte_stable(self, cli, small_config):
        first = cli("--config", small_config, "--format", "json", "verify", "all")[1]
        second = cli("--config", small_config, "--format", "json", "verify", "all")[1]
        assert first == second

    def test_failures_exit_one(self, cli, small_config):
        code, out, _ = cli("--config", small_config, "verify", "integrals", "--tol", "1e-300")
        assert code == 1
        assert any(line.startswith("FAIL ") for line in lines(out))

    def test_non_positive_tolerance(self, cli):
        assert cli("verify", "integrals", "--tol", "0")[0] == 2

    def test_unconverged_rule_is_a_failed_check(self, cli, small_config, monkeypatch):
        def stalled(config):
            raise NoConvergence("Laguerre root 3 of order 12 did not settle")

        monkeypatch.setattr(numerics, "run_integral_suite", stalled)
        code, _, err = cli("--config", small_config, "verify", "integrals")
        assert code == 1
        assert "did not settle" in err

    def test_unknown_suite(self, cli):
        assert cli("verify", "everything")[0] == 2

    def test_missing_config(self, cli, tmp_path):
        code, _, err = cli("--config", str(tmp_path / "absent.ini"), "verify", "identities")
        assert code == 2
        assert "Configuration error" in err


class TestGeneral:
    def test_version(self, cli):
        code, out, _ = cli("--version")
        assert code == 0
        assert out.strip() == f"Facsum {__version__}"

    def test_no_command(self, cli):
        assert cli()[0] == 2

    def test_bad_log_level(self, cli):
        assert cli("--log-level", "LOUD", "table", "binomial", "--n", "1")[0] == 2

    def test_log_file_from_config(self, cli, tmp_path):
        log_file = tmp_path / "logs.txt"
        config = tmp_path / "facsum.ini"
        config.write_text(f"[general]\nlog_file = {log_file}\nlog_level = INFO\n")
        code, _, err = cli("--config", str(config), "sum", "binomial", "--n", "2")
        assert code == 0
        assert log_file.exists()
        assert err == ""
