import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from problems import Problem, StateSpec, resolve  # noqa: E402
from xprec import Precision  # noqa: E402


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture(params=list(Precision), ids=str)
def precision(request: pytest.FixtureRequest) -> Precision:
    return request.param


@pytest.fixture
def harmonic_ground() -> tuple[Problem, StateSpec]:
    return resolve("harmonic", "n=0")


@pytest.fixture
def anharmonic_ground() -> tuple[Problem, StateSpec]:
    return resolve("anharmonic5", "1s")
