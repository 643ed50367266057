from problems.catalog import BUILTINS, parse_state, problem_from_definition, resolve
from problems.problem import (KsqMode, Parity, Problem, ProblemEvaluator,
                              StateSpec, effective_ksq, potential_value)

__all__ = [
    "BUILTINS",
    "KsqMode",
    "Parity",
    "Problem",
    "ProblemEvaluator",
    "StateSpec",
    "effective_ksq",
    "parse_state",
    "potential_value",
    "problem_from_definition",
    "resolve",
]
