from decimal import Decimal

import pandas as pd
import pytest

from cli import ExitCode, cmd_convergence, cmd_table, cmd_wavefunction, table_row
from problems.benchmarks import TABLE
from util.config_yml import Config
from util.errors import ConfigError
from xprec import Precision


@pytest.fixture
def config() -> Config:
    return Config(precision=Precision.double)


def test_convergence_history(config, tmp_path):
    out = tmp_path / "convergence.csv"
    df, code = cmd_convergence(config, "harmonic", "n=0", out)
    assert code is ExitCode.ok
    assert {"iteration", "E", "abs_error", "rel_error", "defect"} <= set(df.columns)
    assert df["E"].iloc[-1].startswith("0.5")
    text = out.read_text()
    assert text.startswith(f"# config_hash: {config.config_hash()}")
    assert "# problem: harmonic n=0" in text


def test_table_row_for_the_harmonic_oscillator(config):
    result = table_row(config, "harmonic", "n=1")
    assert result.ok
    assert float(result.e_qlm) == pytest.approx(1.5, rel=1e-11)
    assert float(result.e_exact) == pytest.approx(1.5, rel=1e-11)
    assert abs(float(result.d1)) < 1e-8


def test_table_flags_failed_rows(config, tmp_path):
    out = tmp_path / "table.csv"
    df, code = cmd_table(config, [("harmonic", "n=0"), ("woodsaxon", "6s")], out)
    assert code is ExitCode.failed
    assert df["status"].tolist()[0] == "ok"
    assert df["status"].tolist()[1] != "ok"
    assert df["E_QLM"].tolist()[1] == ""
    assert out.with_suffix(".txt").exists()
    assert len(pd.read_csv(out, comment="#")) == 2


def test_unknown_problem_is_a_configuration_error(config):
    with pytest.raises(ConfigError):
        table_row(config, "nosuchwell", "1s")


def test_wavefunction_needs_a_state(config):
    with pytest.raises(ConfigError):
        cmd_wavefunction(config)
    with pytest.raises(ConfigError):
        cmd_wavefunction(config, figure="99")


def test_wavefunction_columns(config):
    df, code = cmd_wavefunction(config, "harmonic", "n=0")
    assert code is ExitCode.ok
    assert list(df.columns) == ["x", "chi_exact", "chi_langer", "chi_qlm1", "log10_diff_langer", "log10_diff_qlm1"]
    assert df["chi_exact"].max() == pytest.approx(1.0)
    assert df["log10_diff_qlm1"].max() < df["log10_diff_langer"].max()


@pytest.mark.slow
@pytest.mark.parametrize("row", TABLE, ids=lambda row: f"{row.problem}-{row.state}")
def test_benchmark_table_reproduction(row):
    result = table_row(Config(), row.problem, row.state)
    assert result.ok
    # breitcoulomb rows are accepted at 1e-8 relative
    tolerance = Decimal("1e-8") if row.problem == "breitcoulomb" else Decimal("1e-17")
    for computed, expected in [(result.e_qlm, row.e_qlm), (result.e_exact, row.e_exact)]:
        assert abs((computed - Decimal(expected)) / Decimal(expected)) < tolerance


@pytest.mark.slow
@pytest.mark.parametrize("row", TABLE, ids=lambda row: f"{row.problem}-{row.state}")
def test_first_iterate_column_and_iteration_count(row):
    result = table_row(Config(), row.problem, row.state)
    assert result.ok
    assert result.iterations <= row.iterations + 1
    if row.problem == "breitcoulomb":
        return
    assert abs((result.e_qlm1 - Decimal(row.e_qlm1)) / Decimal(row.e_qlm1)) < Decimal("2e-5")
    # D2 agrees to the last digit it is quoted with
    unit = Decimal(10) ** Decimal(row.d2).as_tuple().exponent
    assert abs(result.d2 - Decimal(row.d2)) <= unit


def test_first_iterate_wavefunction_improves_on_langer(config):
    df, code = cmd_wavefunction(config, figure="2")
    assert code is ExitCode.ok
    langer = (df["chi_exact"] - df["chi_langer"]).abs().max()
    qlm1 = (df["chi_exact"] - df["chi_qlm1"]).abs().max()
    assert qlm1 <= 1e-2 * langer
