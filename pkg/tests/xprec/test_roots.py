import math

import numpy as np
import pytest

import xprec
from util.errors import DomainError
from xprec import ExtScalar
from xprec.linalg import solve
from xprec.roots import bisect, illinois


def test_illinois_extended_root():
    root = illinois(lambda x: xprec.cos(x) - x, ExtScalar(0), ExtScalar(1), rtol=1e-30)
    assert abs(float(xprec.cos(root) - root)) < 1e-30
    assert float(root) == pytest.approx(0.7390851332151607, rel=1e-15)


def test_illinois_double_root_of_cubic():
    root = illinois(lambda x: x**3 - 2 * x - 5, 2.0, 3.0, rtol=1e-15)
    assert root == pytest.approx(2.0945514815423265, rel=1e-14)


def test_bisect_keeps_a_sign_change():
    lo, hi = bisect(math.sin, 3.0, 3.5, rtol=1e-12)
    assert lo <= math.pi <= hi
    assert hi - lo <= 1e-11


def test_linear_solve_matches_numpy(rng):
    matrix = rng.normal(size=(5, 5)) + 5 * np.eye(5)
    rhs = rng.normal(size=(5, 2))
    x = solve(matrix.tolist(), rhs.tolist())
    np.testing.assert_allclose(np.array(x, dtype=float), np.linalg.solve(matrix, rhs), rtol=1e-12)


def test_linear_solve_extended_is_exact_on_integers():
    matrix = [[ExtScalar(2), ExtScalar(1)], [ExtScalar(1), ExtScalar(3)]]
    x = solve(matrix, [[ExtScalar(3)], [ExtScalar(4)]])
    assert x[0][0] == 1 and x[1][0] == 1


def test_singular_system():
    with pytest.raises(DomainError):
        solve([[1.0, 2.0], [2.0, 4.0]], [[1.0], [2.0]])


def test_illinois_does_not_stop_on_a_short_one_sided_step():
    # steep below the root, shallow above: regula falsi creeps down from the upper end
    def f(x: float) -> float:
        return 1e9 * (x - 0.5) if x < 0.5 else x - 0.5

    root = illinois(f, 0.0, 1.0, rtol=1e-6)
    assert root == pytest.approx(0.5, abs=1e-6)


def test_illinois_polish_is_relative_to_the_root():
    root = illinois(lambda x: x * x - 2.25, 1.4999, 1.5001, rtol=1e-13)
    assert root == pytest.approx(1.5, rel=1e-13)
