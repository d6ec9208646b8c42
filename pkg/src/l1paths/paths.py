"""Regularization-path container shared by the three estimators, plus CSV I/O."""

import csv
from dataclasses import dataclass, field

import numpy as np

from .datagen import fmt

PIECEWISE_LINEAR = "piecewise-linear"
GRID_ONLY = "grid-only"
METHODS = ("lasso", "dantzig", "boost")


class OutOfRange(ValueError):
    """Requested lambda lies below the terminal point of a path."""


@dataclass(eq=False)
class RegularizationPath:
    method: str
    lambdas: np.ndarray
    betas: np.ndarray  # shape (k, p), row i pairs with lambdas[i]
    interpolation: str = GRID_ONLY
    degenerate: np.ndarray = None  # dantzig only: per-row LP degeneracy flag
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        self.lambdas = np.asarray(self.lambdas, dtype=float)
        self.betas = np.atleast_2d(np.asarray(self.betas, dtype=float))
        if self.betas.shape[0] != self.lambdas.shape[0]:
            raise ValueError("one beta row per lambda")

    def __len__(self):
        return len(self.lambdas)

    @property
    def p(self):
        return self.betas.shape[1]

    @property
    def terminal_lambda(self):
        return float(self.lambdas.min())

    def samples(self):
        return list(zip(self.lambdas.tolist(), self.betas))


def eval_path(path, lam):
    """Exact knot values, linear interpolation between knots, zero above lambda_max."""
    if path.interpolation != PIECEWISE_LINEAR:
        raise ValueError("eval_path needs a piecewise-linear path")
    lams = path.lambdas
    if lam >= lams[0]:
        return np.zeros(path.p) if lam > lams[0] else path.betas[0].copy()
    if lam < lams[-1]:
        raise OutOfRange(f"lambda {lam} below terminal knot {lams[-1]}")
    # lambdas strictly decreasing: find k with lams[k] >= lam > lams[k+1]
    k = int(np.searchsorted(-lams, -lam, side="right")) - 1
    if lams[k] == lam:
        return path.betas[k].copy()
    w = (lams[k] - lam) / (lams[k] - lams[k + 1])
    return (1.0 - w) * path.betas[k] + w * path.betas[k + 1]


def write_path_csv(path, dest):
    p = path.p
    header = ["lambda"] + [f"beta_{j + 1}" for j in range(p)]
    if path.degenerate is not None:
        header.append("degenerate")
    if hasattr(dest, "write"):
        _write_rows(dest, header, path)
    else:
        with open(dest, "w", newline="") as fh:
            _write_rows(fh, header, path)


def _write_rows(fh, header, path):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for i, (lam, beta) in enumerate(zip(path.lambdas, path.betas)):
        row = [fmt(lam)] + [fmt(b) for b in beta]
        if path.degenerate is not None:
            row.append(str(int(path.degenerate[i])))
        w.writerow(row)


def read_path_csv(src, method, interpolation=GRID_ONLY):
    with open(src, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    has_flag = header[-1] == "degenerate"
    ncoef = len(header) - 1 - int(has_flag)
    lambdas = np.array([float(r[0]) for r in body])
    betas = np.array([[float(v) for v in r[1:1 + ncoef]] for r in body]).reshape(len(body), ncoef)
    degenerate = np.array([r[-1] == "1" for r in body]) if has_flag else None
    return RegularizationPath(method, lambdas, betas, interpolation, degenerate)
