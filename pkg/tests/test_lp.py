import math

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from l1paths.dantzig import DantzigLP
from l1paths.datagen import figure1_problem
from l1paths.lp import (LinearProgram, LPStatus, RHSSweeper, certify, detect_degenerate,
                        solve_lp)

from oracles import vertex_minimum


def test_free_variable_lower_bound_row():
    lp = LinearProgram([1.0], [[1.0]], [1.0], (">=",), lower=[-np.inf])
    sol = solve_lp(lp)
    assert sol.status is LPStatus.OPTIMAL
    assert sol.primal[0] == pytest.approx(1.0, abs=1e-12)
    assert sol.objective_value == pytest.approx(1.0, abs=1e-12)
    assert certify(lp, sol)


def test_parallel_objective_is_degenerate():
    lp = LinearProgram([1.0, 1.0], [[1.0, 1.0]], [2.0], (">=",))
    sol = solve_lp(lp)
    assert sol.status is LPStatus.OPTIMAL
    assert sol.objective_value == pytest.approx(2.0, abs=1e-12)
    assert sol.degenerate_optimum
    assert detect_degenerate(lp, sol)


def test_unique_vertex_not_degenerate():
    lp = LinearProgram([1.0, 2.0], [[1.0, 1.0]], [2.0], (">=",))
    sol = solve_lp(lp)
    np.testing.assert_allclose(sol.primal, [2.0, 0.0], atol=1e-12)
    assert not sol.degenerate_optimum
    assert not detect_degenerate(lp, sol)


def test_infeasible():
    lp = LinearProgram([1.0], [[1.0]], [-1.0], ("<=",))
    sol = solve_lp(lp)
    assert sol.status is LPStatus.INFEASIBLE
    assert not certify(lp, sol)


def test_unbounded():
    lp = LinearProgram([-1.0, 0.0], [[1.0, -1.0]], [1.0], ("<=",))
    sol = solve_lp(lp)
    assert sol.status is LPStatus.UNBOUNDED
    ray = sol.certificate
    assert ray is not None and lp.c @ ray < 0


def test_certify_rejects_perturbations():
    lp = LinearProgram([1.0, 1.0], [[1.0, 2.0], [3.0, 1.0]], [2.0, 3.0], (">=", ">="))
    sol = solve_lp(lp)
    assert certify(lp, sol)
    bad = solve_lp(lp)
    bad.primal = bad.primal - 1e-3
    assert not certify(lp, bad)
    bad = solve_lp(lp)
    bad.objective_value += 1.0
    assert not certify(lp, bad)


def test_equality_rows_and_bounds():
    # min -x1 - x2, x1 + x2 = 1.5, 0 <= x <= 1
    lp = LinearProgram([-1.0, -2.0], [[1.0, 1.0]], [1.5], ("=",), upper=[1.0, 1.0])
    sol = solve_lp(lp)
    np.testing.assert_allclose(sol.primal, [0.5, 1.0], atol=1e-12)
    assert certify(lp, sol)


def test_linear_program_validation():
    with pytest.raises(ValueError):
        LinearProgram([1.0], [[1.0, 2.0]], [1.0], ("<=",))
    with pytest.raises(ValueError):
        LinearProgram([1.0], [[1.0]], [1.0], ("<",))
    with pytest.raises(ValueError):
        LinearProgram([1.0], [[1.0]], [1.0], ("<=",), lower=[2.0], upper=[1.0])


@st.composite
def bounded_lps(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 4))
    coef = st.integers(-4, 4).map(float)
    c = np.array(draw(st.lists(coef, min_size=n, max_size=n)))
    A = np.array(draw(st.lists(st.lists(coef, min_size=n, max_size=n), min_size=m, max_size=m)))
    b = np.array(draw(st.lists(st.integers(-6, 6).map(float), min_size=m, max_size=m)))
    senses = tuple(draw(st.lists(st.sampled_from(["<=", ">=", "="]), min_size=m, max_size=m)))
    lower = np.array(draw(st.lists(st.sampled_from([0.0, -2.0, -5.0]), min_size=n, max_size=n)))
    upper = lower + np.array(draw(st.lists(st.sampled_from([1.0, 3.0, 7.0]),
                                           min_size=n, max_size=n)))
    return LinearProgram(c, A, b, senses, lower, upper)


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(bounded_lps())
def test_matches_vertex_enumeration(lp):
    best = vertex_minimum(lp.c, lp.A, lp.b, lp.senses, lp.lower, lp.upper)
    sol = solve_lp(lp)
    if best is None:
        assert sol.status is LPStatus.INFEASIBLE
    else:
        assert sol.status is LPStatus.OPTIMAL
        assert sol.objective_value == pytest.approx(best, abs=1e-9)
        assert certify(lp, sol)


@settings(max_examples=150, deadline=None)
@given(bounded_lps())
def test_warm_basis_reaches_same_optimum(lp):
    sol = solve_lp(lp)
    assume(sol.status is LPStatus.OPTIMAL)
    again = solve_lp(lp, warm_basis=sol.basis)
    assert again.status is LPStatus.OPTIMAL
    assert again.objective_value == pytest.approx(sol.objective_value, abs=1e-9)
    assert again.iterations == 0


@settings(max_examples=100, deadline=None)
@given(bounded_lps(), st.lists(st.integers(-6, 6).map(float), min_size=4, max_size=4))
def test_rhs_sweeper_matches_cold(lp, new_b):
    first = solve_lp(lp)
    assume(first.status is LPStatus.OPTIMAL)
    moved = LinearProgram(lp.c, lp.A, np.array(new_b[:lp.shape[0]]), lp.senses, lp.lower,
                          lp.upper)
    sweeper = RHSSweeper()
    sweeper.solve(lp)
    warm = sweeper.solve(moved)
    cold = solve_lp(moved)
    assert warm.status is cold.status
    if cold.status is LPStatus.OPTIMAL:
        assert warm.objective_value == pytest.approx(cold.objective_value, abs=1e-9)
        assert certify(moved, warm)


def test_dantzig_lp_figure1_is_degenerate():
    enc = DantzigLP(figure1_problem(0.5))
    lp = enc.program(0.5)
    sol = solve_lp(lp)
    assert certify(lp, sol)
    assert sol.objective_value == pytest.approx(1.0, abs=1e-10)
    assert detect_degenerate(lp, sol)


def test_dual_signs_on_dantzig_lp():
    rng = np.random.default_rng(11)
    X = rng.standard_normal((12, 4))
    X /= np.linalg.norm(X, axis=0)
    Y = rng.standard_normal(12)
    enc = DantzigLP(type("P", (), {"X": X, "Y": Y, "p": 4})())
    lp = enc.program(0.3 * enc.lambda_max)
    sol = solve_lp(lp)
    assert certify(lp, sol)
    # minimisation with <= rows: multipliers are nonpositive
    assert np.all(sol.dual <= 1e-9)
    # strong duality on this form: b^T y equals the optimum (x has zero lower bounds)
    assert lp.b @ sol.dual == pytest.approx(sol.objective_value, abs=1e-9 * (1 + math.fabs(
        sol.objective_value)))
