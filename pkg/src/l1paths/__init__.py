"""Lasso, Dantzig selector and L2Boosting regularization paths with certificates."""

from .boosting import BoostConfig, boost_eval, boost_eval_clamped, boost_path
from .dantzig import (DantzigConfig, DantzigFailure, dantzig_at_lambda, dantzig_grid_path,
                      dantzig_selector_lambda, dantzig_sweep, lambda_grid)
from .datagen import (RegressionProblem, SimSetup, figure1_problem, load_problem, sample_problem,
                      save_problem)
from .evaluation import (cv_curve, dd_selector, mse_beta, mse_fit, selection_counts,
                         selection_curve)
from .experiments import (DEFAULT_SEED, ExperimentReport, figure1_scan, run_setup,
                          theorem1_suite, write_report)
from .lasso import kkt_certify, lars_lasso_path
from .lp import LinearProgram, LPSolution, LPStatus, certify, solve_lp
from .numerics import diag_dominant, residual_correlations, soft_threshold
from .paths import RegularizationPath, eval_path, read_path_csv, write_path_csv
