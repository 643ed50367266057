import re
from collections.abc import Callable
from decimal import Decimal

from problems.potentials import (Anharmonic, BreitCoulomb, Custom, Harmonic,
                                 Logarithmic, PotentialSpec, TwoPower,
                                 WoodSaxon)
from problems.problem import Parity, Problem, StateSpec
from util.config_yml import Config, PotentialKind, ProblemDefinition
from util.errors import ConfigError

DEFAULT_ALPHA_INVERSE = Decimal(137)

_ORBITAL_LETTERS = "spdfgh"
_STATE_PATTERN = re.compile(r"^(?P<n>\d+)(?P<letter>[spdfgh])(?P<sign>[+\-−]?)$")
_HARMONIC_PATTERN = re.compile(r"^n\s*=?\s*(?P<n>\d+)$")
_BREIT_PATTERN = re.compile(r"^\(?\s*(\d)\s*,?\s*(\d)\s*,?\s*(\d)\s*,?\s*(\d)\s*\)?$")


def parse_state(label: str) -> tuple[StateSpec, int | None, str | None]:
    """Parse "2s", "1s+", "n=3" or "(N,L,S,J)".

    Returns the state, the orbital momentum the label implies (None when the
    label does not fix it) and the double-well sign ("+", "-") if present.
    """
    text = label.strip()
    if match := _STATE_PATTERN.match(text):
        n = int(match["n"])
        if n < 1:
            raise ConfigError(f"state label {label!r}: principal number starts at 1")
        sign = match["sign"].replace("−", "-") or None
        return StateSpec(n_nodes=n - 1, label=text), _ORBITAL_LETTERS.index(match["letter"]), sign
    if match := _HARMONIC_PATTERN.match(text):
        quantum = int(match["n"])
        return StateSpec(n_nodes=quantum // 2, label=f"n={quantum}"), 0, "+" if quantum % 2 == 0 else "-"
    if match := _BREIT_PATTERN.match(text):
        N, L, S, J = (int(g) for g in match.groups())
        if N < 1:
            raise ConfigError(f"state label {label!r}: N starts at 1")
        return StateSpec(n_nodes=N - 1, label=f"({N},{L},{S},{J})"), L, None
    raise ConfigError(f"unrecognised state label {label!r}")


def _anharmonic(state: str, alpha_inverse: Decimal) -> tuple[Problem, StateSpec]:
    spec, l, _ = parse_state(state)
    problem = Problem(
        name="anharmonic5", potential=Anharmonic(), m=Decimal(1), l=l or 0, r_max=Decimal(5)
    )
    return problem, spec


def _logarithmic(state: str, alpha_inverse: Decimal) -> tuple[Problem, StateSpec]:
    spec, l, _ = parse_state(state)
    problem = Problem(
        name="log", potential=Logarithmic(), m=Decimal("0.5"), l=l or 0, r_max=Decimal(70)
    )
    return problem, spec


def _woodsaxon(state: str, alpha_inverse: Decimal) -> tuple[Problem, StateSpec]:
    spec, l, _ = parse_state(state)
    problem = Problem(
        name="woodsaxon", potential=WoodSaxon(), m=Decimal(1), l=l or 0, r_max=Decimal(400)
    )
    return problem, spec


def _one_dimensional(
    name: str, potential: TwoPower | Harmonic, r_max: Decimal, sign: str | None, label: str
) -> Problem:
    if sign is None:
        raise ConfigError(f"{name} states need a parity sign, e.g. '1s+' or '1s-' (got {label!r})")
    if sign == "+":
        return Problem(
            name=f"{name}+",
            potential=potential,
            m=Decimal(1),
            parity=Parity.zero_derivative_at_origin,
            r_min=Decimal(0),
            r_max=r_max,
        )
    return Problem(name=f"{name}-", potential=potential, m=Decimal(1), r_max=r_max)


def _doublewell(state: str, alpha_inverse: Decimal) -> tuple[Problem, StateSpec]:
    spec, _, sign = parse_state(state)
    return _one_dimensional("doublewell", TwoPower(), Decimal(13), sign, state), spec


def _harmonic(state: str, alpha_inverse: Decimal) -> tuple[Problem, StateSpec]:
    spec, _, sign = parse_state(state)
    return _one_dimensional("harmonic", Harmonic(), Decimal(12), sign, state), spec


def _breitcoulomb(state: str, alpha_inverse: Decimal) -> tuple[Problem, StateSpec]:
    text = state.strip()
    match = _BREIT_PATTERN.match(text)
    if match is None:
        raise ConfigError(f"breitcoulomb states are labelled (N,L,S,J), got {state!r}")
    N, L, S, J = (int(g) for g in match.groups())
    spec, _, _ = parse_state(text)
    alpha = Decimal(1) / alpha_inverse
    problem = Problem(
        name="breitcoulomb",
        potential=BreitCoulomb(alpha=alpha, N=N, L=L, S=S, J=J),
        m=Decimal(1),
        l=L,
        r_min=Decimal("1e-4") * alpha_inverse,  # ρ_min = 1e-4 at E ≈ 1
        r_max=Decimal(200000),
    )
    return problem, spec


BUILTINS: dict[str, Callable[[str, Decimal], tuple[Problem, StateSpec]]] = {
    "anharmonic5": _anharmonic,
    "log": _logarithmic,
    "woodsaxon": _woodsaxon,
    "doublewell": _doublewell,
    "breitcoulomb": _breitcoulomb,
    "harmonic": _harmonic,
}


def _potential(name: str, definition: ProblemDefinition, alpha_inverse: Decimal) -> PotentialSpec:
    params = definition.params
    match definition.potential:
        case PotentialKind.anharmonic:
            potential = Anharmonic(**params)
        case PotentialKind.log:
            potential = Logarithmic()
        case PotentialKind.woodsaxon:
            potential = WoodSaxon(**params)
        case PotentialKind.twopower:
            potential = TwoPower(**params)
        case PotentialKind.harmonic:
            potential = Harmonic(**params)
        case PotentialKind.breitcoulomb:
            potential = BreitCoulomb(**({"alpha": 1 / alpha_inverse} | params))
        case PotentialKind.custom:
            if definition.expression is None:
                raise ConfigError(f"problem {name}: custom potential needs an expression")
            potential = Custom(expression=definition.expression, even=definition.symmetric)
    return potential


def problem_from_definition(
    name: str, definition: ProblemDefinition, alpha_inverse: Decimal = DEFAULT_ALPHA_INVERSE
) -> Problem:
    try:
        return Problem(
            name=name,
            potential=_potential(name, definition, alpha_inverse),
            m=definition.m,
            l=definition.l,
            parity=definition.parity,
            r_min=definition.r_min,
            r_max=definition.r_max,
        )
    except ValueError as e:
        raise ConfigError(f"problem {name}: {e}") from e


def resolve(
    name: str,
    state: str,
    config: Config | None = None,
    *,
    r_max_override: Decimal | None = None,
) -> tuple[Problem, StateSpec]:
    """Look the problem up among the configured definitions first, then the built-ins."""
    alpha_inverse = config.breit.alpha_inverse if config is not None else DEFAULT_ALPHA_INVERSE
    if config is not None and name in config.problems:
        problem = problem_from_definition(name, config.problems[name], alpha_inverse)
        spec, _, _ = parse_state(state)
    elif name in BUILTINS:
        problem, spec = BUILTINS[name](state, alpha_inverse)
    else:
        known = sorted(BUILTINS) + sorted(config.problems if config else [])
        raise ConfigError(f"unknown problem {name!r}; known problems: {', '.join(known)}")
    if r_max_override is not None:
        try:
            problem = Problem.model_validate(problem.model_dump() | {"r_max": r_max_override})
        except ValueError as e:
            raise ConfigError(f"--rmax-override {r_max_override}: {e}") from e
    return problem, spec
