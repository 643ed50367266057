from decimal import Decimal

import pytest

from problems import resolve
from util.config_yml import Config, Parity
from util.errors import ConfigError
from xprec import Precision

CONFIG = """\
precision: double
solver:
  max_iter: 40
  energy_tol:
    double: 1.0e-11
    extended: 1.0e-20
breit:
  alpha_inverse: "137"
problems:
  quartic:
    potential: custom
    expression: "r**4"
    parity: zero_derivative_at_origin
    symmetric: true
    r_min: 0
    r_max: 8
"""


def test_from_yaml(tmp_path):
    path = tmp_path / "config.yml"
    path.write_text(CONFIG)
    config = Config.from_yaml(path)
    assert config.precision is Precision.double
    assert config.solver.max_iter == 40
    assert config.solver.energy_tol.get(Precision.double) == 1e-11
    assert config.breit.alpha == 1 / Decimal(137)
    p, state = resolve("quartic", "n=0", config)
    assert p.r_max == 8 and state.n_nodes == 0


def test_missing_files_fall_back_to_defaults(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert Config.from_yaml(tmp_path / "absent.yml") == Config()


@pytest.mark.parametrize("text", ["precision: [unterminated", "precision: quadruple", "solver:\n  max_iter: 0\n"])
def test_invalid_files(tmp_path, text):
    path = tmp_path / "config.yml"
    path.write_text(text)
    with pytest.raises(ConfigError):
        Config.from_yaml(path)


def test_overrides():
    config = Config()
    changed = config.with_overrides(**{"precision": "double", "solver.max_iter": 7, "breit.alpha_inverse": None})
    assert changed.precision is Precision.double
    assert changed.solver.max_iter == 7
    assert changed.breit == config.breit
    assert changed.config_hash() != config.config_hash()
    assert config.with_overrides().config_hash() == config.config_hash()
    with pytest.raises(ConfigError):
        config.with_overrides(**{"solver.max_iter": -1})


def test_problem_parity_is_validated(tmp_path):
    path = tmp_path / "config.yml"
    path.write_text(CONFIG.replace("parity: zero_derivative_at_origin", "parity: even"))
    with pytest.raises(ConfigError):
        Config.from_yaml(path)
    path.write_text(CONFIG)
    assert Config.from_yaml(path).problems["quartic"].parity is Parity.zero_derivative_at_origin
