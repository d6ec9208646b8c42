"""The three studies: replicate simulation, correlation scan, path-equality suite."""

import csv
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .boosting import BoostConfig, boost_eval_clamped, boost_path
from .dantzig import DantzigConfig, DantzigLP, dantzig_selector_lambda, dantzig_sweep, lambda_grid
from .datagen import (GaussianStream, RegressionProblem, SimSetup, figure1_problem, fmt,
                      normalize_columns, sample_problem)
from .evaluation import (cv_curve, mse_beta, mse_fit, path_zero_tol, random_selection_curve,
                         selection_counts, selection_curve)
from .lasso import kkt_certify, lars_lasso_path
from .numerics import diag_dominant
from .paths import METHODS, eval_path

DEFAULT_SEED = 20070601
L1_SLACK = 1e-8
THEOREM1_TOL = 1e-6


class ReplicateFailure(RuntimeError):
    def __init__(self, index, cause):
        super().__init__(f"replicate {index} failed: {cause}")
        self.index = index
        self.cause = cause


class DominanceNotFound(RuntimeError):
    """No diagonally dominant (X^T X)^{-1} found within the attempt budget."""


def exact_mean(values, axis=0):
    """Correctly rounded mean along `axis`; independent of element order."""
    values = np.asarray(values, dtype=float)
    moved = np.moveaxis(values, axis, -1)
    flat = moved.reshape(-1, moved.shape[-1])
    out = np.array([math.fsum(row) for row in flat]) / moved.shape[-1]
    return out.reshape(moved.shape[:-1])


@dataclass(eq=False)
class ExperimentReport:
    setup: SimSetup
    lambdas: np.ndarray
    mse_beta: np.ndarray  # (grid, method)
    mse_fit: np.ndarray
    summary: dict  # method -> {metric: replicate mean}
    selection: dict  # "fp" and method -> mean TP per FP level, plus "random"
    reps: int
    master_seed: int
    meta: dict = field(default_factory=dict)
    replicate: dict = field(default_factory=dict)  # raw per-replicate arrays
    timing: dict = field(default_factory=dict)


_SUMMARY_KEYS = ("lambda_cv", "lambda_dd", "sigma_hat_cv",
                 "mse_beta_cv", "mse_beta_dd", "mse_fit_cv", "mse_fit_dd",
                 "selected_cv", "selected_dd", "tp_cv", "fp_cv", "tp_dd", "fp_dd")


def _coefs_at(method, lam, lasso, dantzig_enc, boost):
    if method == "lasso":
        return eval_path(lasso, lam)
    if method == "dantzig":
        return dantzig_enc.solve(min(lam, dantzig_enc.lambda_max)).beta
    return boost_eval_clamped(boost, lam)


def run_replicate(prob, lambdas, cfg, bcfg, fold_seed, folds=5):
    """All per-replicate quantities on the shared grid."""
    p = prob.p
    out = {}
    lasso = lars_lasso_path(prob)
    kkt_fail = sum(not kkt_certify(prob, b, lam) for lam, b in lasso.samples())
    enc = DantzigLP(prob)
    dz = dantzig_sweep(prob, lambdas, cfg.warm_start, enc)
    boost = boost_path(prob, bcfg)

    grid_betas = {
        "lasso": np.array([eval_path(lasso, lam) for lam in lambdas]),
        "dantzig": dz.betas,
        "boost": np.array([boost_eval_clamped(boost, lam) for lam in lambdas]),
    }
    out["mse_beta"] = np.column_stack([[mse_beta(b, prob.beta_star) for b in grid_betas[m]]
                                       for m in METHODS])
    out["mse_fit"] = np.column_stack([[mse_fit(prob.X, b, prob.beta_star) for b in grid_betas[m]]
                                      for m in METHODS])
    l1_l = np.abs(grid_betas["lasso"]).sum(axis=1)
    l1_d = np.abs(grid_betas["dantzig"]).sum(axis=1)
    out["l1_violations"] = int(np.sum(l1_d > l1_l + L1_SLACK))
    out["kkt_checked"] = len(lasso)
    out["kkt_failed"] = int(kkt_fail)
    out["dantzig_certified"] = len(lambdas)  # sweep raises on any failed certificate
    out["dantzig_degenerate"] = int(dz.degenerate.sum())
    out["dantzig_pivots"] = dz.meta["pivots"]

    summ = np.zeros((len(METHODS), len(_SUMMARY_KEYS)))
    for mi, m in enumerate(METHODS):
        cv = cv_curve(prob, m, lambdas, folds, fold_seed, bcfg)
        sigma_hat = math.sqrt(cv.sigma_hat_sq_cv)
        lam_dd = dantzig_selector_lambda(sigma_hat, p)
        b_cv = grid_betas[m][cv.index_cv]
        b_dd = _coefs_at(m, lam_dd, lasso, enc, boost)
        tol = boost.meta["step_eps"] / 2.0 if m == "boost" else 1e-8
        tp_cv, fp_cv = selection_counts(b_cv, prob.beta_star, tol)
        tp_dd, fp_dd = selection_counts(b_dd, prob.beta_star, tol)
        summ[mi] = (cv.lambda_cv, lam_dd, sigma_hat,
                    mse_beta(b_cv, prob.beta_star), mse_beta(b_dd, prob.beta_star),
                    mse_fit(prob.X, b_cv, prob.beta_star), mse_fit(prob.X, b_dd, prob.beta_star),
                    tp_cv + fp_cv, tp_dd + fp_dd, tp_cv, fp_cv, tp_dd, fp_dd)
    out["summary"] = summ
    out["paths"] = {"lasso": lasso, "dantzig": dz, "boost": boost}
    return out


def shared_grid(problems, cfg):
    lam_max = max(pr.lambda_max for pr in problems)
    return lambda_grid(lam_max, cfg)


def run_setup(setup, reps=50, master_seed=DEFAULT_SEED, cfg=DantzigConfig(),
              bcfg=BoostConfig(), folds=5, progress=None):
    """Replicate study for one setup; deterministic given `master_seed`."""
    t0 = time.perf_counter()
    problems = [sample_problem(setup, master_seed + i) for i in range(reps)]
    lambdas = shared_grid(problems, cfg)
    per_rep = []
    max_fp = setup.p - int(np.count_nonzero(problems[0].beta_star))
    curves = {m: [] for m in METHODS}
    for i, prob in enumerate(problems):
        try:
            res = run_replicate(prob, lambdas, cfg, bcfg, master_seed + i, folds)
        except Exception as exc:  # report which replicate broke
            raise ReplicateFailure(i, exc) from exc
        for m in METHODS:
            curves[m].append(res["paths"].pop(m))
        per_rep.append(res)
        if progress is not None:
            progress(i, res)
    elapsed = time.perf_counter() - t0

    mb = exact_mean([r["mse_beta"] for r in per_rep])
    mf = exact_mean([r["mse_fit"] for r in per_rep])
    summ = exact_mean([r["summary"] for r in per_rep])
    summary = {m: dict(zip(_SUMMARY_KEYS, summ[mi].tolist())) for mi, m in enumerate(METHODS)}
    truths = [pr.beta_star for pr in problems]
    selection = {}
    for m in METHODS:
        fp, tp = selection_curve(curves[m], truths, max_fp)
        selection["fp"] = fp
        selection[m] = tp
    s = int(np.count_nonzero(truths[0]))
    selection["random"] = random_selection_curve(s, setup.p, max_fp)[1]

    meta = {
        "setup": setup.label, "rho": setup.rho, "sigma": setup.sigma, "n": setup.n,
        "p": setup.p, "reps": reps, "master_seed": master_seed, "folds": folds,
        "grid_size": cfg.grid_size, "grid_spacing": cfg.grid_spacing,
        "lambda_min_factor": cfg.lambda_min_factor, "grid_lambda_max": float(lambdas[0]),
        "warm_start": cfg.warm_start,
        "boost_step_eps": "1e-3*lambda_max" if bcfg.step_eps is None else bcfg.step_eps,
        "boost_max_iters": bcfg.max_iters, "boost_record_every": bcfg.record_every,
        "lambda_p_sigma": dantzig_selector_lambda(setup.sigma, setup.p),
        "lasso_knots_checked": sum(r["kkt_checked"] for r in per_rep),
        "lasso_knots_failed": sum(r["kkt_failed"] for r in per_rep),
        "dantzig_solutions_certified": sum(r["dantzig_certified"] for r in per_rep),
        "dantzig_degenerate": sum(r["dantzig_degenerate"] for r in per_rep),
        "l1_domination_violations": sum(r["l1_violations"] for r in per_rep),
        "dantzig_pivots": sum(r["dantzig_pivots"] for r in per_rep),
    }
    replicate = {
        "mse_beta": np.array([r["mse_beta"] for r in per_rep]),
        "mse_fit": np.array([r["mse_fit"] for r in per_rep]),
        "summary": np.array([r["summary"] for r in per_rep]),
    }
    return ExperimentReport(setup, lambdas, mb, mf, summary, selection, reps, master_seed,
                            meta, replicate, {"seconds": elapsed})


def write_report(report, outdir):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)

    def table(name, header, rows):
        with open(out / name, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)

    for name, arr in (("mse_beta.csv", report.mse_beta), ("mse_fit.csv", report.mse_fit)):
        table(name, ["lambda", *METHODS],
              [[fmt(lam), *map(fmt, row)] for lam, row in zip(report.lambdas, arr)])
    sel = report.selection
    table("selection_curve.csv",
          ["fp", "mean_tp_lasso", "mean_tp_dantzig", "mean_tp_boost", "tp_random"],
          [[str(int(f)), fmt(sel["lasso"][i]), fmt(sel["dantzig"][i]), fmt(sel["boost"][i]),
            fmt(sel["random"][i])] for i, f in enumerate(sel["fp"])])
    table("summary.csv", ["method", *_SUMMARY_KEYS],
          [[m, *(fmt(report.summary[m][k]) for k in _SUMMARY_KEYS)] for m in METHODS])
    table("meta.csv", ["key", "value"],
          [[k, fmt(v) if isinstance(v, float) else str(v)] for k, v in report.meta.items()])


# -- correlation scan ---------------------------------------------------------

class ScanRow(NamedTuple):
    r: float
    lam: float
    beta3_lasso: float
    beta3_dantzig: float
    dantzig_degenerate: bool


def default_r_values():
    return np.linspace(0.35, 0.70, 36)


def figure1_scan(r_values=None, lambdas=None, grid_size=200):
    """Third coefficient of both estimators over (r, lambda) for the 3-predictor design."""
    r_values = default_r_values() if r_values is None else np.asarray(r_values, dtype=float)
    problems = [figure1_problem(float(r)) for r in r_values]
    if lambdas is None:
        lambdas = np.linspace(max(pr.lambda_max for pr in problems), 0.0, grid_size)
    lambdas = np.asarray(lambdas, dtype=float)
    rows = []
    for r, prob in zip(r_values, problems):
        lasso = lars_lasso_path(prob)
        dz = dantzig_sweep(prob, lambdas)
        for i, lam in enumerate(lambdas):
            rows.append(ScanRow(float(r), float(lam), float(eval_path(lasso, lam)[2]),
                                float(dz.betas[i, 2]), bool(dz.degenerate[i])))
    return rows


def write_scan(rows, dest):
    with open(dest, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["r", "lambda", "beta3_lasso", "beta3_dantzig", "dantzig_degenerate"])
        for row in rows:
            w.writerow([fmt(row.r), fmt(row.lam), fmt(row.beta3_lasso), fmt(row.beta3_dantzig),
                        str(int(row.dantzig_degenerate))])


# -- path equality under diagonal dominance ---------------------------------------

class Theorem1Summary(NamedTuple):
    trials_run: int
    dominance_hits: int
    max_path_discrepancy: float


def random_design(n, p, seed):
    """Gaussian design with unit columns and a dense Gaussian-signal response."""
    stream = GaussianStream(seed)
    X, _ = normalize_columns(stream.normals(n * p).reshape(n, p))
    beta = stream.normals(p)
    Y = X @ beta + stream.normals(n)
    return RegressionProblem(X, Y, beta, 1.0)


def path_discrepancy(prob, grid_points=50):
    """Max over a grid in (0, lambda_max] of ||beta_lasso - beta_dantzig||_inf."""
    lam_max = prob.lambda_max
    lambdas = lam_max * np.arange(grid_points, 0, -1) / grid_points
    lasso = lars_lasso_path(prob)
    dz = dantzig_sweep(prob, lambdas)
    return max(float(np.max(np.abs(eval_path(lasso, lam) - dz.betas[i])))
               for i, lam in enumerate(lambdas))


def theorem1_suite(n, p, trials, master_seed=DEFAULT_SEED, grid_points=50):
    """Compare Lasso and Dantzig on rejection-sampled dominant designs."""
    if p > n:
        raise ValueError("diagonal dominance check needs n >= p")
    if trials == 0:
        return Theorem1Summary(0, 0, 0.0)
    attempts, hits, worst = 0, 0, 0.0
    budget = 1000 * trials
    while hits < trials and attempts < budget:
        prob = random_design(n, p, master_seed + attempts)
        attempts += 1
        if not diag_dominant(np.linalg.inv(prob.X.T @ prob.X)):
            continue
        hits += 1
        worst = max(worst, path_discrepancy(prob, grid_points))
    if hits == 0:
        raise DominanceNotFound(f"no dominant design in {attempts} attempts (n={n}, p={p})")
    return Theorem1Summary(attempts, hits, worst)


# -- warm vs cold -----------------------------------------------------------------

def benchmark_warm_start(prob, cfg=DantzigConfig()):
    """Time the Dantzig grid sweep with and without basis reuse."""
    lambdas = lambda_grid(prob.lambda_max, cfg)
    out = {}
    paths = {}
    for label, warm in (("warm", True), ("cold", False)):
        t0 = time.perf_counter()
        paths[label] = dantzig_sweep(prob, lambdas, warm_start=warm)
        out[f"{label}_seconds"] = time.perf_counter() - t0
        out[f"{label}_pivots"] = paths[label].meta["pivots"]
    l1w = np.abs(paths["warm"].betas).sum(axis=1)
    l1c = np.abs(paths["cold"].betas).sum(axis=1)
    out["max_l1_objective_gap"] = float(np.max(np.abs(l1w - l1c)))
    out["speedup"] = out["cold_seconds"] / out["warm_seconds"]
    return out
