import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from l1paths.paths import (GRID_ONLY, PIECEWISE_LINEAR, OutOfRange, RegularizationPath,
                           eval_path, read_path_csv, write_path_csv)


def _toy():
    lams = np.array([3.0, 2.0, 0.5])
    betas = np.array([[0.0, 0.0], [1.0, 0.0], [2.5, -1.0]])
    return RegularizationPath("lasso", lams, betas, PIECEWISE_LINEAR)


def test_eval_at_knots_and_midpoints():
    path = _toy()
    for lam, beta in path.samples():
        np.testing.assert_array_equal(eval_path(path, lam), beta)
    np.testing.assert_allclose(eval_path(path, 1.25), [1.75, -0.5])
    np.testing.assert_array_equal(eval_path(path, 6.0), [0.0, 0.0])


def test_eval_below_terminal():
    with pytest.raises(OutOfRange):
        eval_path(_toy(), 0.1)


def test_eval_needs_piecewise_linear():
    path = RegularizationPath("dantzig", [1.0, 0.0], [[0.0], [1.0]], GRID_ONLY)
    with pytest.raises(ValueError):
        eval_path(path, 0.5)


def test_constructor_validation():
    with pytest.raises(ValueError):
        RegularizationPath("ridge", [1.0], [[0.0]])
    with pytest.raises(ValueError):
        RegularizationPath("lasso", [1.0, 0.5], [[0.0]])


@given(st.floats(0.5, 3.0))
def test_eval_is_convex_combination(lam):
    path = _toy()
    b = eval_path(path, lam)
    k = np.searchsorted(-path.lambdas, -lam, side="right") - 1
    k = min(k, len(path) - 2)
    lo, hi = path.betas[k], path.betas[k + 1]
    assert np.all(b >= np.minimum(lo, hi) - 1e-15)
    assert np.all(b <= np.maximum(lo, hi) + 1e-15)


def test_csv_round_trip_bytes(tmp_path):
    rng = np.random.default_rng(0)
    path = RegularizationPath("dantzig", np.linspace(2, 0, 5), rng.standard_normal((5, 3)),
                              degenerate=np.array([0, 1, 0, 0, 1], dtype=bool))
    write_path_csv(path, tmp_path / "a.csv")
    back = read_path_csv(tmp_path / "a.csv", "dantzig")
    assert np.array_equal(back.lambdas, path.lambdas)
    assert np.array_equal(back.betas, path.betas)
    assert np.array_equal(back.degenerate, path.degenerate)
    write_path_csv(back, tmp_path / "b.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    header = (tmp_path / "a.csv").read_text().splitlines()[0]
    assert header == "lambda,beta_1,beta_2,beta_3,degenerate"
