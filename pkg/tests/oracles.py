"""Independent reference computations used by the tests.

None of these touch the package's solvers: LPs are solved by enumerating
vertices, the Lasso by cyclic coordinate descent, and test designs come from
numpy's own Generator so they do not share the package's RNG code.
"""

import itertools

import numpy as np

from l1paths.datagen import RegressionProblem, normalize_columns


def inequality_form(c, A, b, senses, lower, upper):
    """Rewrite an LP as G x <= h, bounds included."""
    rows, rhs = [], []
    for a, bi, s in zip(A, b, senses):
        if s in ("<=", "="):
            rows.append(a)
            rhs.append(bi)
        if s in (">=", "="):
            rows.append(-a)
            rhs.append(-bi)
    n = len(c)
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        if np.isfinite(lower[j]):
            rows.append(-e)
            rhs.append(-lower[j])
        if np.isfinite(upper[j]):
            rows.append(e)
            rhs.append(upper[j])
    return np.array(rows), np.array(rhs)


def vertex_minimum(c, A, b, senses, lower, upper, tol=1e-9):
    """Minimum of c^T x over the vertices of the feasible polytope, or None.

    Correct whenever the polytope is pointed and the LP is bounded below.
    """
    G, h = inequality_form(np.asarray(c, float), np.asarray(A, float), np.asarray(b, float),
                           senses, np.asarray(lower, float), np.asarray(upper, float))
    n = len(c)
    best = None
    for rows in itertools.combinations(range(len(h)), n):
        M = G[list(rows)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, h[list(rows)])
        if np.all(G @ x <= h + tol * (1 + np.abs(h))):
            val = float(c @ x)
            if best is None or val < best:
                best = val
    return best


def dantzig_vertex_minimum(X, Y, lam):
    """Optimal l1 norm of the Dantzig problem by vertex enumeration (p <= 3)."""
    G = X.T @ X
    c = X.T @ Y
    p = G.shape[0]
    A = np.block([[G, -G], [-G, G]])
    b = np.concatenate([c + lam, lam - c])
    return vertex_minimum(np.ones(2 * p), A, b, ("<=",) * (2 * p),
                          np.zeros(2 * p), np.full(2 * p, np.inf))


def lasso_cd(X, Y, lam, iters=20000, tol=1e-14):
    """Coordinate descent for 0.5 ||Y - X b||^2 + lam ||b||_1."""
    p = X.shape[1]
    beta = np.zeros(p)
    col_sq = np.sum(X * X, axis=0)
    r = Y.astype(float).copy()
    for _ in range(iters):
        delta = 0.0
        for j in range(p):
            z = X[:, j] @ r + col_sq[j] * beta[j]
            new = np.sign(z) * max(abs(z) - lam, 0.0) / col_sq[j]
            if new != beta[j]:
                r -= X[:, j] * (new - beta[j])
                delta = max(delta, abs(new - beta[j]))
                beta[j] = new
        if delta < tol:
            break
    return beta


def orthonormal_design(n, p, rng):
    Q, _ = np.linalg.qr(rng.standard_normal((n, p)))
    return Q


def random_problem(n, p, rng, noise=0.5, support=None):
    X, _ = normalize_columns(rng.standard_normal((n, p)))
    beta = np.zeros(p)
    k = p if support is None else support
    idx = rng.choice(p, size=k, replace=False)
    beta[idx] = rng.standard_normal(k)
    Y = X @ beta + noise * rng.standard_normal(n)
    return RegressionProblem(X, Y, beta, noise)


def correlated_problem(n, p, rng, rho, noise=0.5):
    idx = np.arange(p)
    S = rho ** np.abs(idx[:, None] - idx[None, :])
    Z = rng.standard_normal((n, p)) @ np.linalg.cholesky(S).T
    X, _ = normalize_columns(Z)
    beta = np.zeros(p)
    beta[rng.choice(p, size=min(5, p), replace=False)] = rng.standard_normal(min(5, p))
    Y = X @ beta + noise * rng.standard_normal(n)
    return RegressionProblem(X, Y, beta, noise)
