"""Seeded designs and responses: the Toeplitz simulation model and the
three-predictor population example.

Randomness comes from numpy's Philox-4x64 counter-based bit generator, keyed
by the 64-bit seed. Only raw 64-bit outputs are consumed; uniforms and
Gaussians are derived here (53-bit mantissa uniforms, Box-Muller pairs), so
the streams do not depend on numpy's higher-level sampling code.
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .numerics import NotPositiveDefinite, cholesky

N_SIM = 40
P_SIM = 60

# 1-based component -> coefficient
SUPPORT_VALUES = {
    60: -0.65, 2: -0.38, 21: -0.37, 49: -0.27, 20: -0.12,
    27: -0.08, 4: 0.05, 43: 0.24, 51: 0.37, 32: 0.41,
}

_SETUPS = {"a": (0.0, 0.2), "b": (0.9, 0.2), "c": (0.9, 0.6)}


@dataclass(frozen=True, eq=False)
class RegressionProblem:
    X: np.ndarray
    Y: np.ndarray
    beta_star: np.ndarray = None
    sigma: float = None

    @property
    def n(self):
        return self.X.shape[0]

    @property
    def p(self):
        return self.X.shape[1]

    @property
    def lambda_max(self):
        return float(np.max(np.abs(self.X.T @ self.Y)))

    def same_as(self, other):
        def eq(a, b):
            if a is None or b is None:
                return a is b
            return np.array_equal(a, b)
        return (eq(self.X, other.X) and eq(self.Y, other.Y)
                and eq(self.beta_star, other.beta_star) and self.sigma == other.sigma)


@dataclass(frozen=True)
class SimSetup:
    label: str
    rho: float
    sigma: float
    n: int = N_SIM
    p: int = P_SIM
    reps: int = 50

    @classmethod
    def from_label(cls, label, reps=50):
        if label not in _SETUPS:
            raise ValueError(f"unknown setup {label!r}; expected one of a, b, c")
        rho, sigma = _SETUPS[label]
        return cls(label, rho, sigma, reps=reps)


class GaussianStream:
    """Standard normals from Philox raw output via Box-Muller."""

    def __init__(self, seed):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self._bits = np.random.Philox(key=seed)

    def uniforms(self, k):
        raw = self._bits.random_raw(k).astype(np.uint64)
        # (0, 1]: never 0, so log() below is finite
        return ((raw >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53

    def normals(self, k):
        pairs = (k + 1) // 2
        u = self.uniforms(2 * pairs).reshape(pairs, 2)
        rad = np.sqrt(-2.0 * np.log(u[:, 0]))
        ang = 2.0 * np.pi * u[:, 1]
        z = np.column_stack([rad * np.cos(ang), rad * np.sin(ang)]).ravel()
        return z[:k]


def toeplitz_sigma(p, rho):
    if not -1.0 < rho < 1.0:
        raise ValueError("rho must lie in (-1, 1)")
    idx = np.arange(p)
    lag = np.abs(idx[:, None] - idx[None, :])
    # 0**0 == 1 keeps the diagonal exact for rho == 0
    return np.power(float(rho), lag).astype(float)


def default_beta_star(p=P_SIM):
    beta = np.zeros(p)
    for comp, val in SUPPORT_VALUES.items():
        beta[comp - 1] = val
    return beta


def normalize_columns(X):
    norms = np.sqrt(np.sum(X * X, axis=0))
    if np.any(norms == 0):
        raise ValueError("design has a zero column")
    return X / norms, norms


def sample_problem(setup, seed):
    """Draw one replicate of Y = X beta* + sigma eps for `setup`."""
    n, p = setup.n, setup.p
    stream = GaussianStream(seed)
    L = cholesky(toeplitz_sigma(p, setup.rho))
    Z = stream.normals(n * p).reshape(n, p)
    X, _ = normalize_columns(Z @ L.T)
    beta = default_beta_star(p)
    beta *= math.sqrt(n) / np.linalg.norm(X @ beta)
    eps = stream.normals(n)
    Y = X @ beta + setup.sigma * eps
    return RegressionProblem(X, Y, beta, setup.sigma)


def figure1_covariance(r):
    return np.array([[1.0, 0.0, r], [0.0, 1.0, r], [r, r, 1.0]])


def figure1_problem(r):
    """Noiseless n = p = 3 problem with X^T X = V(r) and beta* = (1, 1, 0)."""
    if abs(r) >= 1.0 / math.sqrt(2.0):
        raise NotPositiveDefinite(f"|r| = {abs(r)} >= 1/sqrt(2)")
    L = cholesky(figure1_covariance(r))
    X = L.T.copy()
    beta = np.array([1.0, 1.0, 0.0])
    return RegressionProblem(X, X @ beta, beta, 0.0)


# -- CSV ------------------------------------------------------------------

def fmt(x):
    return format(float(x), ".17g")


def write_matrix_csv(path, M, header):
    M = np.atleast_2d(M)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if header is not None:
            w.writerow(header)
        for row in M:
            w.writerow([fmt(v) for v in row])


def read_matrix_csv(path, header=True):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if header:
        rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    try:
        M = np.array([[float(v) for v in r] for r in rows])
    except ValueError as exc:
        raise ValueError(f"{path}: non-numeric entry ({exc})") from None
    return M


def save_problem(prob, directory):
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    write_matrix_csv(d / "design.csv", prob.X, [f"x{j + 1}" for j in range(prob.p)])
    write_matrix_csv(d / "response.csv", prob.Y[:, None], ["y"])
    if prob.beta_star is not None:
        write_matrix_csv(d / "truth.csv", prob.beta_star[:, None], ["beta_star"])


def load_problem(design, response, truth=None, header=True, normalize=True):
    X = read_matrix_csv(design, header)
    Y = read_matrix_csv(response, header)
    if Y.shape[1] != 1 or Y.shape[0] != X.shape[0]:
        raise ValueError("response must be a single column with one row per design row")
    if normalize:
        X, _ = normalize_columns(X)
    beta = None
    if truth is not None:
        beta = read_matrix_csv(truth, header)[:, 0]
    return RegressionProblem(X, Y[:, 0], beta)
