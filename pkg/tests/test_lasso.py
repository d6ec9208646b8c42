import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l1paths.datagen import RegressionProblem, SimSetup, figure1_problem, sample_problem
from l1paths.lasso import (chol_append, chol_delete, kkt_certify, lars_lasso_path,
                           lasso_objective)
from l1paths.numerics import soft_threshold
from l1paths.paths import eval_path

from oracles import correlated_problem, lasso_cd, orthonormal_design, random_problem


def test_zero_above_lambda_max():
    prob = sample_problem(SimSetup.from_label("a"), 1)
    path = lars_lasso_path(prob)
    assert path.lambdas[0] == pytest.approx(prob.lambda_max, rel=1e-15)
    assert np.all(path.betas[0] == 0)
    assert np.all(eval_path(path, 2 * prob.lambda_max) == 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_orthonormal_soft_threshold(seed):
    rng = np.random.default_rng(seed)
    X = orthonormal_design(30, 8, rng)
    Y = rng.standard_normal(30)
    prob = RegressionProblem(X, Y)
    path = lars_lasso_path(prob)
    z = X.T @ Y
    for lam in np.linspace(prob.lambda_max * 1.1, 0, 40):
        np.testing.assert_allclose(eval_path(path, lam), soft_threshold(z, lam), atol=1e-8)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([0.0, 0.5, 0.9]))
def test_matches_coordinate_descent(seed, rho):
    rng = np.random.default_rng(seed)
    prob = correlated_problem(25, 8, rng, rho)
    path = lars_lasso_path(prob)
    for frac in (0.9, 0.5, 0.2, 0.05):
        lam = frac * prob.lambda_max
        ref = lasso_cd(prob.X, prob.Y, lam)
        got = eval_path(path, lam)
        assert lasso_objective(prob, got, lam) <= lasso_objective(prob, ref, lam) + 1e-10
        np.testing.assert_allclose(got, ref, atol=1e-6)


@pytest.mark.parametrize("label", "abc")
def test_kkt_at_every_knot_high_dimensional(label):
    for seed in range(3):
        prob = sample_problem(SimSetup.from_label(label), seed)
        path = lars_lasso_path(prob)
        assert np.all(np.diff(path.lambdas) < 0)
        for lam, beta in path.samples():
            assert kkt_certify(prob, beta, lam)
        assert path.terminal_lambda == 0.0
        # terminal point interpolates: residual correlations vanish
        g = prob.X.T @ (prob.Y - prob.X @ path.betas[-1])
        assert np.max(np.abs(g)) < 1e-8
        assert np.count_nonzero(path.betas[-1]) <= prob.n


def test_kkt_between_knots():
    prob = random_problem(20, 30, np.random.default_rng(4))
    path = lars_lasso_path(prob)
    mids = 0.5 * (path.lambdas[:-1] + path.lambdas[1:])
    for lam in mids:
        assert kkt_certify(prob, eval_path(path, lam), lam)


def test_figure1_terminal_point():
    path = lars_lasso_path(figure1_problem(0.0))
    np.testing.assert_allclose(path.betas[-1], [1.0, 1.0, 0.0], atol=1e-12)


def test_kkt_certify_examples():
    prob = random_problem(30, 5, np.random.default_rng(2))
    assert kkt_certify(prob, np.zeros(5), prob.lambda_max)
    ols = np.linalg.lstsq(prob.X, prob.Y, rcond=None)[0]
    assert kkt_certify(prob, ols, 0.0)
    path = lars_lasso_path(prob)
    lam, beta = path.samples()[3]
    j = np.flatnonzero(beta)[0]
    bad = beta.copy()
    bad[j] += 1e-3
    assert not kkt_certify(prob, bad, lam)


def test_drops_happen_and_are_handled():
    # correlated designs regularly produce sign crossings; look for one and check it
    found = False
    for seed in range(40):
        prob = correlated_problem(20, 10, np.random.default_rng(seed), 0.9, noise=1.0)
        path = lars_lasso_path(prob)
        active = np.abs(path.betas) > 1e-12
        if np.any(active[:-1] & ~active[1:]):
            found = True
            for lam, beta in path.samples():
                assert kkt_certify(prob, beta, lam)
    assert found


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_cholesky_updates(seed, k):
    rng = np.random.default_rng(seed)
    B = rng.standard_normal((12, k + 1))
    M = B.T @ B
    L = np.linalg.cholesky(M[:k, :k])
    L2 = chol_append(L, M[:k, k], M[k, k])
    np.testing.assert_allclose(L2 @ L2.T, M, atol=1e-10)
    pos = int(rng.integers(0, k + 1))
    keep = [i for i in range(k + 1) if i != pos]
    L3 = chol_delete(L2, pos)
    np.testing.assert_allclose(L3 @ L3.T, M[np.ix_(keep, keep)], atol=1e-10)
    assert np.allclose(np.triu(L3, 1), 0.0)
