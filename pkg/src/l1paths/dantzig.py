"""Dantzig estimator as a linear program, grid paths, and the fixed threshold.

    minimize ||beta||_1  subject to  ||X^T (Y - X beta)||_inf <= lambda

is encoded with beta = u - v, u, v >= 0, objective sum(u + v), and the 2p
rows  G (u - v) <= c + lambda,  -G (u - v) <= lambda - c  where G = X^T X
and c = X^T Y are computed once per problem. Along a grid only the
right-hand side changes, so the previous optimal basis stays dual feasible
and is handed to the next solve.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .lp import LinearProgram, LPSolution, LPStatus, RHSSweeper, certify, solve_lp
from .paths import GRID_ONLY, RegularizationPath


class DantzigFailure(RuntimeError):
    """LP reported infeasible or its certificate did not verify."""

    def __init__(self, msg, lam=None):
        super().__init__(msg)
        self.lam = lam


@dataclass(frozen=True)
class DantzigConfig:
    grid_size: int = 200
    grid_spacing: str = "linear"
    lambda_min_factor: float = 0.0
    warm_start: bool = True

    def __post_init__(self):
        if self.grid_size < 2:
            raise ValueError("grid_size must be at least 2")
        if self.grid_spacing not in ("linear", "geometric"):
            raise ValueError("grid_spacing must be 'linear' or 'geometric'")
        if self.lambda_min_factor < 0:
            raise ValueError("lambda_min_factor must be nonnegative")
        if self.grid_spacing == "geometric" and self.lambda_min_factor <= 0:
            raise ValueError("a geometric grid needs lambda_min_factor > 0")


class DantzigFit(NamedTuple):
    beta: np.ndarray
    degenerate: bool
    solution: LPSolution


def lambda_grid(lam_max, cfg):
    lo = cfg.lambda_min_factor * lam_max
    if cfg.grid_spacing == "linear":
        grid = np.linspace(lam_max, lo, cfg.grid_size)
    else:
        grid = np.geomspace(lam_max, lo, cfg.grid_size)
    grid[0] = lam_max
    return grid


class DantzigLP:
    """Per-problem LP data; builds the LinearProgram for any lambda."""

    def __init__(self, prob):
        self.p = prob.p
        self.G = prob.X.T @ prob.X
        self.c = prob.X.T @ prob.Y
        self.A = np.block([[self.G, -self.G], [-self.G, self.G]])
        self.cost = np.ones(2 * self.p)
        self.senses = ("<=",) * (2 * self.p)
        self.lambda_max = float(np.max(np.abs(self.c)))

    def program(self, lam):
        b = np.concatenate([self.c + lam, lam - self.c])
        return LinearProgram(self.cost, self.A, b, self.senses)

    def beta(self, x):
        return x[:self.p] - x[self.p:]

    def solve(self, lam, warm_basis=None, sweeper=None):
        if lam < 0:
            raise ValueError("lambda must be nonnegative")
        lp = self.program(lam)
        if sweeper is not None:
            sol = sweeper.solve(lp)
        else:
            sol = solve_lp(lp, warm_basis=warm_basis)
        if sol.status is LPStatus.OPTIMAL and not certify(lp, sol) and warm_basis is not None:
            sol = solve_lp(lp)
        if sol.status is not LPStatus.OPTIMAL:
            raise DantzigFailure(f"Dantzig LP {sol.status.value} at lambda={lam!r}", lam)
        if not certify(lp, sol):
            raise DantzigFailure(f"Dantzig LP certificate failed at lambda={lam!r}", lam)
        return DantzigFit(self.beta(sol.primal), sol.degenerate_optimum, sol)


def dantzig_at_lambda(prob, lam, warm_basis=None):
    """Certified optimal vertex of the Dantzig LP at `lam`."""
    return DantzigLP(prob).solve(lam, warm_basis)


def dantzig_sweep(prob, lambdas, warm_start=True, encoding=None):
    """Solve along `lambdas` in the given order, chaining bases when asked."""
    enc = encoding or DantzigLP(prob)
    betas = np.zeros((len(lambdas), prob.p))
    degenerate = np.zeros(len(lambdas), dtype=bool)
    pivots = 0
    sweeper = RHSSweeper() if warm_start else None
    for i, lam in enumerate(lambdas):
        try:
            fit = enc.solve(float(lam), sweeper=sweeper)
        except DantzigFailure as exc:
            exc.index = i
            raise
        betas[i] = fit.beta
        degenerate[i] = fit.degenerate
        pivots += fit.solution.iterations
    path = RegularizationPath("dantzig", np.asarray(lambdas, dtype=float), betas, GRID_ONLY,
                              degenerate=degenerate)
    path.meta.update(pivots=pivots, warm_start=warm_start)
    return path


def dantzig_grid_path(prob, cfg=DantzigConfig()):
    """Dantzig solutions on the configured grid from lambda_max downward."""
    enc = DantzigLP(prob)
    grid = lambda_grid(enc.lambda_max, cfg)
    path = dantzig_sweep(prob, grid, cfg.warm_start, enc)
    path.meta.update(grid_spacing=cfg.grid_spacing, grid_size=cfg.grid_size,
                     lambda_min_factor=cfg.lambda_min_factor)
    return path


def dantzig_selector_lambda(sigma, p):
    """The fixed threshold sigma * sqrt(2 log p)."""
    if p < 1 or sigma < 0:
        raise ValueError("need p >= 1 and sigma >= 0")
    return sigma * math.sqrt(2.0 * math.log(p))
