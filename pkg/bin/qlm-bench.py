import sys
from argparse import ArgumentParser, Namespace
from decimal import Decimal
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

from cli import ExitCode, cmd_convergence, cmd_table, cmd_wavefunction  # noqa: E402
from util.config_yml import CONFIG_YML, Config  # noqa: E402
from util.errors import ConfigError, ConvergenceError, QlmError  # noqa: E402
from util.logging import logging  # noqa: E402


def load_config(args: Namespace) -> Config:
    config = Config.from_yaml(args.config)
    precision = args.precision or config.precision
    overrides: dict[str, object] = {
        "precision": args.precision,
        "solver.max_iter": args.max_iter,
        f"solver.energy_tol.{precision}": args.tol,
        "breit.alpha_inverse": 1 / args.alpha if args.alpha is not None else None,
    }
    return config.with_overrides(**overrides)


def run(args: Namespace) -> ExitCode:
    config = load_config(args)
    r_max = args.rmax_override
    if args.command == "table":
        selection = None
        if args.problem is not None:
            if args.state is None:
                raise ConfigError("table --problem needs --state")
            selection = [(args.problem, state) for state in args.state]
        df, code = cmd_table(config, selection, args.out, jobs=args.jobs, r_max_override=r_max)
    elif args.command == "wavefunction":
        state = args.state[0] if args.state else None
        df, code = cmd_wavefunction(config, args.problem, state, args.out, figure=args.figure, r_max_override=r_max)
    else:
        if args.problem is None or not args.state:
            raise ConfigError("convergence needs --problem and --state")
        df, code = cmd_convergence(config, args.problem, args.state[0], args.out, r_max_override=r_max)
    if args.out is None:
        print(df.to_string(index=False))
    return code


def main() -> int:
    parser = ArgumentParser(description="Quasilinearization bound-state benchmarks.")
    parser.add_argument("command", choices=["table", "wavefunction", "convergence"])
    parser.add_argument("--problem", type=str, default=None)
    parser.add_argument("--state", type=str, action="append", default=None, help="repeatable for `table`")
    parser.add_argument("--precision", choices=["double", "extended"], default=None)
    parser.add_argument("--alpha", type=Decimal, default=None, help="fine-structure constant for breitcoulomb")
    parser.add_argument("--rmax-override", type=Decimal, default=None)
    parser.add_argument("--tol", type=float, default=None, help="relative energy tolerance")
    parser.add_argument("--max-iter", type=int, default=None)
    parser.add_argument("--out", type=Path, default=None)
    parser.add_argument("--config", type=Path, default=CONFIG_YML)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--figure", type=str, default=None)
    args = parser.parse_args()
    try:
        return run(args)
    except ConfigError as e:
        logging.error(f"configuration error: {e}")
        return ExitCode.config
    except ConvergenceError as e:
        logging.error(f"{e}; residual history: {e.history}")
        return ExitCode.failed
    except QlmError as e:
        logging.error(f"{type(e).__name__}: {e}")
        return ExitCode.failed


if __name__ == "__main__":
    sys.exit(main())
