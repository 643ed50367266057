from cli.commands import (ExitCode, cmd_convergence, cmd_table,
                          cmd_wavefunction, table_row)
from cli.results import EnergyResult, log10_difference, write_csv

__all__ = [
    "EnergyResult",
    "ExitCode",
    "cmd_convergence",
    "cmd_table",
    "cmd_wavefunction",
    "log10_difference",
    "table_row",
    "write_csv",
]
