from decimal import Decimal

import pytest

from problems import Parity, parse_state, resolve
from problems.benchmarks import FIGURES, LARGE_N_DOUBLEWELL_GROUND, TABLE, published
from util.config_yml import Config, ProblemDefinition
from util.errors import ConfigError
from xprec import Precision


@pytest.mark.parametrize(
    "label, nodes, l, sign",
    [
        ("1s", 0, 0, None),
        ("3s", 2, 0, None),
        ("2p", 1, 1, None),
        ("1s+", 0, 0, "+"),
        ("2s-", 1, 0, "-"),
        ("n=3", 1, 0, "-"),
        ("n=4", 2, 0, "+"),
        ("(2,1,0,1)", 1, 1, None),
    ],
)
def test_parse_state(label, nodes, l, sign):
    spec, orbital, parity_sign = parse_state(label)
    assert spec.n_nodes == nodes
    assert orbital == l
    assert parity_sign == sign


@pytest.mark.parametrize("label", ["0s", "1x", "banana", "(0,0,0,0)"])
def test_bad_state_labels(label):
    with pytest.raises(ConfigError):
        parse_state(label)


def test_double_well_states_pick_the_origin_condition():
    even, _ = resolve("doublewell", "1s+")
    odd, _ = resolve("doublewell", "1s-")
    assert even.parity is Parity.zero_derivative_at_origin and even.r_min == 0
    assert odd.parity is Parity.node_at_origin and odd.r_min > 0
    with pytest.raises(ConfigError):
        resolve("doublewell", "1s")


def test_unknown_problem_lists_known_ones():
    with pytest.raises(ConfigError, match="anharmonic5"):
        resolve("nosuch", "1s")


def test_rmax_override():
    p, _ = resolve("anharmonic5", "1s", r_max_override=Decimal(4))
    assert p.r_max == 4
    with pytest.raises(ConfigError):
        resolve("anharmonic5", "1s", r_max_override=Decimal("1e-9"))


def test_configured_custom_problem():
    config = Config(
        problems={
            "quartic": ProblemDefinition(
                potential="custom", expression="r**4", parity="zero_derivative_at_origin", symmetric=True,
                r_min=Decimal(0), r_max=Decimal(8),
            )
        }
    )
    p, spec = resolve("quartic", "1s", config)
    ev = p.evaluator(Precision.double)
    assert ev.potential(2.0) == pytest.approx(16.0)
    assert ev.ksq(1.0, 3.0) == pytest.approx(2 * (3.0 - 1.0))
    assert spec.n_nodes == 0


def test_custom_expression_is_checked():
    with pytest.raises(ConfigError):
        resolve(
            "bad",
            "1s",
            Config(problems={"bad": ProblemDefinition(potential="custom", expression="__import__('os')")}),
        )


def test_benchmark_catalogue():
    assert len(TABLE) == 17
    assert {row.problem for row in TABLE} == {"breitcoulomb", "log", "anharmonic5", "woodsaxon", "doublewell"}
    row = published("woodsaxon", "3s")
    assert row is not None and row.d1 == "72.9" and row.iterations == 6
    assert published("woodsaxon", "9s") is None
    assert all(resolve(*FIGURES[f]) for f in FIGURES)
    ground = published("doublewell", "1s+")
    assert abs(Decimal(ground.e_exact) - Decimal(LARGE_N_DOUBLEWELL_GROUND)) < Decimal("2e-4")


def test_every_published_row_resolves():
    for row in TABLE:
        p, spec = resolve(row.problem, row.state)
        assert spec.label.replace(" ", "") == row.state

