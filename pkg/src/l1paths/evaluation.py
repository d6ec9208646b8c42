"""Cross-validation, the data-driven Dantzig selector, and comparison metrics."""

import csv
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .boosting import BoostConfig, boost_eval_clamped, boost_path
from .dantzig import (DantzigConfig, DantzigLP, dantzig_selector_lambda, dantzig_sweep,
                      lambda_grid)
from .datagen import GaussianStream, RegressionProblem, fmt, normalize_columns
from .lasso import lars_lasso_path
from .paths import eval_path

ZERO_TOL = 1e-8


@dataclass(eq=False)
class CVResult:
    lambdas: np.ndarray
    cv_mse: np.ndarray
    lambda_cv: float
    sigma_hat_sq_cv: float
    fold_mse: np.ndarray = None  # (folds, len(lambdas))

    @property
    def index_cv(self):
        return int(np.flatnonzero(self.lambdas == self.lambda_cv)[-1])


class SelectionCount(NamedTuple):
    true_positives: int
    false_positives: int


class DDSelection(NamedTuple):
    lambda_dd: float
    beta: np.ndarray
    sigma_hat_cv: float
    cv: CVResult


def fold_assignment(n, folds, seed):
    """Seeded shuffle of range(n) split into `folds` near-equal blocks."""
    if folds < 2 or n < folds:
        raise ValueError(f"need 2 <= folds <= n (got folds={folds}, n={n})")
    keys = GaussianStream(seed).uniforms(n)
    perm = np.argsort(keys, kind="stable")
    return [np.sort(block) for block in np.array_split(perm, folds)]


def fit_on_grid(prob, method, lambdas, bcfg=BoostConfig()):
    """Coefficients of `method` at each lambda in `lambdas` (descending)."""
    lambdas = np.asarray(lambdas, dtype=float)
    if method == "lasso":
        path = lars_lasso_path(prob)
        return np.array([eval_path(path, lam) for lam in lambdas])
    if method == "dantzig":
        return dantzig_sweep(prob, lambdas).betas
    if method == "boost":
        path = boost_path(prob, bcfg)
        return np.array([boost_eval_clamped(path, lam) for lam in lambdas])
    raise ValueError(f"unknown method {method!r}")


def cv_curve(prob, method, lambdas, folds=5, seed=0, bcfg=BoostConfig()):
    """K-fold prediction error of `method` along a shared lambda grid.

    Training designs are re-normalized to unit columns; fitted coefficients
    are mapped back to the full-problem column scale before predicting the
    held-out rows.
    """
    lambdas = np.asarray(lambdas, dtype=float)
    blocks = fold_assignment(prob.n, folds, seed)
    fold_mse = np.zeros((folds, len(lambdas)))
    for k, test in enumerate(blocks):
        train = np.setdiff1d(np.arange(prob.n), test)
        Xtr, scale = normalize_columns(prob.X[train])
        sub = RegressionProblem(Xtr, prob.Y[train])
        betas = fit_on_grid(sub, method, lambdas, bcfg) / scale
        resid = prob.Y[test][None, :] - betas @ prob.X[test].T
        fold_mse[k] = np.mean(resid ** 2, axis=1)
    cv = np.zeros(len(lambdas))
    for k in range(folds):
        cv += fold_mse[k]
    cv /= folds
    best = cv.min()
    ties = np.flatnonzero(cv == best)
    lam_cv = float(lambdas[ties].min())
    return CVResult(lambdas, cv, lam_cv, float(best), fold_mse)


def dd_selector(prob, cfg=DantzigConfig(), seed=0, folds=5):
    """Plug sqrt(min CV error over the Dantzig grid) into sigma * sqrt(2 log p)."""
    enc = DantzigLP(prob)
    grid = lambda_grid(enc.lambda_max, cfg)
    cv = cv_curve(prob, "dantzig", grid, folds, seed)
    sigma_hat = float(np.sqrt(cv.sigma_hat_sq_cv))
    lam_dd = dantzig_selector_lambda(sigma_hat, prob.p)
    fit = enc.solve(min(lam_dd, enc.lambda_max))
    return DDSelection(lam_dd, fit.beta, sigma_hat, cv)


def mse_beta(beta_hat, beta_star):
    d = np.asarray(beta_hat, dtype=float) - np.asarray(beta_star, dtype=float)
    return float(d @ d)


def mse_fit(X, beta_hat, beta_star):
    r = X @ (np.asarray(beta_hat, dtype=float) - np.asarray(beta_star, dtype=float))
    return float(r @ r) / X.shape[0]


def selection_counts(beta_hat, beta_star, zero_tol=ZERO_TOL):
    beta_hat = np.asarray(beta_hat)
    beta_star = np.asarray(beta_star)
    if beta_hat.shape != beta_star.shape:
        raise ValueError("beta_hat and beta_star differ in length")
    sel = np.abs(beta_hat) > zero_tol
    truth = beta_star != 0
    return SelectionCount(int(np.sum(sel & truth)), int(np.sum(sel & ~truth)))


def path_zero_tol(path):
    if path.method == "boost":
        return path.meta["step_eps"] / 2.0
    return ZERO_TOL


def selection_curve(paths, truths, max_fp):
    """Mean over replicates of the best TP reachable with at most f false positives."""
    if not paths:
        raise ValueError("selection_curve needs at least one path")
    levels = np.arange(max_fp + 1)
    total = np.zeros(max_fp + 1)
    for path, truth in zip(paths, truths):
        tol = path_zero_tol(path)
        best = np.zeros(max_fp + 1)
        for beta in path.betas:
            tp, fp = selection_counts(beta, truth, tol)
            if fp <= max_fp:
                best[fp:] = np.maximum(best[fp:], tp)
        total += best
    return levels.astype(float), total / len(paths)


def random_selection_curve(s, p, max_fp):
    f = np.arange(max_fp + 1, dtype=float)
    return f, s * f / (p - s)


def write_cv_csv(cv, dest):
    with open(dest, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["lambda", "cv_mse"])
        w.writerows([[fmt(lam), fmt(v)] for lam, v in zip(cv.lambdas, cv.cv_mse)])
