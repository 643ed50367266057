"""Benchmark table, wavefunction comparison and convergence history commands.

Each command returns its data frame together with an exit code so the
entry script can keep writing partial results when a state fails.
"""

from concurrent.futures import ProcessPoolExecutor
from decimal import Decimal
from enum import IntEnum
from pathlib import Path

import pandas as pd

from cli.results import (EnergyResult, format_energy, header_lines,
                         log10_difference, to_decimal, write_csv)
from oracle import exact_energy, shooting_domain
from oracle import wavefunction as exact_wavefunction
from problems import resolve
from problems.benchmarks import FIGURES, TABLE, published
from qlm.solver import (QlmRun, SolverOptions, iterate_wavefunction, normalize,
                        solve_state)
from util.config_yml import Config
from util.errors import ConfigError, ConvergenceError, QlmError
from util.logging import logging
from xprec import Precision, Real


class ExitCode(IntEnum):
    ok = 0
    failed = 2
    config = 3


def _options(config: Config) -> SolverOptions:
    return SolverOptions(precision=config.precision, solver=config.solver, wkb=config.wkb)


def _header(config: Config) -> list[str]:
    return header_lines(config.config_hash(), config.breit.alpha, config.precision)


def _solve(config: Config, problem: str, state: str, r_max_override: Decimal | None) -> tuple[QlmRun, Real]:
    p, spec = resolve(problem, state, config, r_max_override=r_max_override)
    run = solve_state(p, spec, _options(config))
    E = exact_energy(
        p,
        spec,
        precision=config.precision,
        settings=config.oracle,
        tail_action=config.solver.tail_action,
    )
    return run, E


def table_row(config: Config, problem: str, state: str, r_max_override: Decimal | None = None) -> EnergyResult:
    """Solve one state with both methods; failures become flagged rows instead of exceptions."""
    try:
        run, E = _solve(config, problem, state, r_max_override)
    except ConvergenceError as e:
        logging.error(f"{problem} {state}: {e}")
        return EnergyResult(problem=problem, state=state, error=str(e), converged=False)
    except ConfigError:
        raise
    except QlmError as e:
        logging.error(f"{problem} {state}: {type(e).__name__}: {e}")
        return EnergyResult(problem=problem, state=state, error=f"{type(e).__name__}: {e}")
    return EnergyResult(
        problem=problem,
        state=state,
        e_wkb=to_decimal(run.e_wkb),
        e_qlm1=to_decimal(run.first_iterate_energy),
        e_qlm=to_decimal(run.energy),
        iterations=run.K,
        e_exact=to_decimal(E),
    )


def _table_row(task: tuple[Config, str, str, Decimal | None]) -> EnergyResult:
    return table_row(*task)


def cmd_table(
    config: Config,
    selection: list[tuple[str, str]] | None = None,
    out: Path | None = None,
    *,
    jobs: int = 1,
    r_max_override: Decimal | None = None,
) -> tuple[pd.DataFrame, ExitCode]:
    """The benchmark table for `selection` (default: every published row), in selection order."""
    if selection is None:
        selection = [(row.problem, row.state) for row in TABLE]
    tasks = [(config, problem, state, r_max_override) for problem, state in selection]
    logging.info(f"computing {len(tasks)} table rows with {jobs} worker(s)")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_table_row, tasks))
    else:
        results = [_table_row(task) for task in tasks]
    df = pd.DataFrame([result.to_row(published(result.problem, result.state)) for result in results])
    if out is not None:
        write_csv(df, out, _header(config), text=True)
        logging.info(f"wrote {out}")
    code = ExitCode.ok if all(result.ok for result in results) else ExitCode.failed
    return df, code


def cmd_wavefunction(
    config: Config,
    problem: str | None = None,
    state: str | None = None,
    out: Path | None = None,
    *,
    figure: str | None = None,
    r_max_override: Decimal | None = None,
) -> tuple[pd.DataFrame, ExitCode]:
    """Exact, Langer and first-iterate wavefunctions on the solver mesh nodes, with log10 differences."""
    if figure is not None:
        if figure not in FIGURES:
            raise ConfigError(f"unknown figure {figure!r}; known figures: {', '.join(FIGURES)}")
        problem, state = FIGURES[figure]
    if problem is None or state is None:
        raise ConfigError("wavefunction needs --problem and --state, or --figure")
    p, spec = resolve(problem, state, config, r_max_override=r_max_override)
    precision: Precision = config.precision
    run, E = _solve(config, problem, state, r_max_override)
    first = iterate_wavefunction(run, p, index=0)
    mesh = run.iterates[0].phase.mesh
    domain = shooting_domain(p, spec, precision, config.solver.tail_action)
    indices = [mesh.node_index(i) for i in range(len(mesh.nodes)) if mesh.nodes[i] <= domain.r_out]
    radii = [mesh.points[q] for q in indices]

    chi_exact = normalize(exact_wavefunction(p, E, radii, domain, settings=config.oracle))
    chi_langer, _ = run.seed.evaluate(radii)
    chi_langer = normalize(chi_langer)
    chi_qlm1 = normalize([first.chi[q] for q in indices])

    exact = [float(c) for c in chi_exact]
    langer = [float(c) for c in chi_langer]
    qlm1 = [float(c) for c in chi_qlm1]
    df = pd.DataFrame(
        {
            "x": [float(first.kappa * r) for r in radii],
            "chi_exact": exact,
            "chi_langer": langer,
            "chi_qlm1": qlm1,
            "log10_diff_langer": log10_difference(exact, langer),
            "log10_diff_qlm1": log10_difference(exact, qlm1),
        }
    )
    if out is not None:
        header = [*_header(config), f"# problem: {problem} {state}", f"# E_exact: {format_energy(to_decimal(E))}"]
        write_csv(df, out, header)
        logging.info(f"wrote {out}")
    return df, ExitCode.ok


def cmd_convergence(
    config: Config,
    problem: str,
    state: str,
    out: Path | None = None,
    *,
    r_max_override: Decimal | None = None,
) -> tuple[pd.DataFrame, ExitCode]:
    """One row per iterate: energy, distance to the converged energy and phase defect."""
    p, spec = resolve(problem, state, config, r_max_override=r_max_override)
    run = solve_state(p, spec, _options(config))
    df = run.to_frame()
    df["E"] = [format_energy(to_decimal(it.E)) for it in run.iterates]
    df["rel_error"] = df["abs_error"] / abs(float(run.energy))
    if out is not None:
        header = [*_header(config), f"# problem: {problem} {state}", f"# E_final: {format_energy(to_decimal(run.energy))}"]
        write_csv(df, out, header)
        logging.info(f"wrote {out}")
    return df, ExitCode.ok
