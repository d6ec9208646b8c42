"""Exact Lasso regularization path by LARS-style homotopy with variable drops.

The path lambda -> beta(lambda) of  1/2 ||Y - X b||^2 + lambda ||b||_1  is
piecewise linear. Between knots the active block solves

    (X_A^T X_A) beta_A = X_A^T Y - lambda * s_A

so beta_A moves along  d_A = (X_A^T X_A)^{-1} s_A  as lambda decreases.
Knots occur when an inactive correlation reaches +-lambda (join) or an
active coefficient crosses zero (drop). The active Gram factor is kept as a
Cholesky factor updated by appending rows and downdated with Givens
rotations.
"""

import math

import numpy as np

from .numerics import cho_solve, forward_sub, residual_correlations
from .paths import PIECEWISE_LINEAR, RegularizationPath

GRAM_TOL = 1e-10
KKT_TOL = 1e-8
ACTIVE_TOL = 1e-10


class RankDeficientActiveSet(RuntimeError):
    """The active-set Gram matrix became singular (collinear predictors)."""


def chol_append(L, cross, diag):
    """Factor of [[M, cross], [cross^T, diag]] given L L^T = M."""
    k = L.shape[0]
    w = forward_sub(L, cross) if k else np.zeros(0)
    piv = diag - w @ w
    if piv <= GRAM_TOL:
        raise RankDeficientActiveSet(f"active Gram pivot {piv:.3e}")
    out = np.zeros((k + 1, k + 1))
    out[:k, :k] = L
    out[k, :k] = w
    out[k, k] = math.sqrt(piv)
    return out


def chol_delete(L, pos):
    """Factor of M with row/column `pos` removed, via Givens rotations."""
    L = np.delete(L, pos, axis=0)
    k = L.shape[0]
    for i in range(pos, k):
        a, b = L[i, i], L[i, i + 1]
        r = math.hypot(a, b)
        c, s = a / r, b / r
        ci = L[i:, i].copy()
        cj = L[i:, i + 1].copy()
        L[i:, i] = c * ci + s * cj
        L[i:, i + 1] = -s * ci + c * cj
    return np.ascontiguousarray(L[:, :k])


def lars_lasso_path(prob):
    """All knots of the Lasso path from lambda_max down to its terminal point."""
    X, Y = prob.X, prob.Y
    n, p = X.shape
    if np.any(np.sum(X * X, axis=0) == 0):
        raise ValueError("design has a zero column")
    G = X.T @ X
    c = X.T @ Y
    lam = float(np.max(np.abs(c)))
    beta = np.zeros(p)
    lambdas, betas = [lam], [beta.copy()]
    if lam == 0.0:
        return RegularizationPath("lasso", np.array(lambdas), np.array(betas), PIECEWISE_LINEAR,
                                  meta={"knots": 1})

    t_eps = 1e-12 * lam
    active, signs = [], []
    L = np.zeros((0, 0))
    inactive = np.ones(p, dtype=bool)

    j0 = int(np.argmax(np.abs(c)))
    L = chol_append(L, np.zeros(0), G[j0, j0])
    active.append(j0)
    signs.append(float(np.sign(c[j0])))
    inactive[j0] = False
    just_dropped = None

    while True:
        s_A = np.array(signs)
        d_A = cho_solve(L, s_A)
        a = G[:, active] @ d_A
        g = c - G @ beta

        best_t, best_j, best_kind = lam, None, "end"
        cand = []
        if len(active) < min(n, p):
            for j in np.flatnonzero(inactive):
                for sgn in (1.0, -1.0):
                    den = 1.0 - sgn * a[j]
                    if den <= 1e-12:
                        continue
                    t = max((lam - sgn * g[j]) / den, 0.0)
                    if j == just_dropped and t < t_eps:
                        continue
                    cand.append((t, int(j), "join", sgn))
        for pos, j in enumerate(active):
            if d_A[pos] == 0.0:
                continue
            t = -beta[j] / d_A[pos]
            if t > t_eps:
                cand.append((t, j, "drop", 0.0))
        if cand:
            tmin = min(x[0] for x in cand)
            if tmin < lam - t_eps:
                tied = [x for x in cand if x[0] <= tmin + t_eps]
                best_t, best_j, best_kind, best_sgn = min(tied, key=lambda x: (x[1], x[2]))
                best_t = tmin

        lam_new = lam - best_t
        if best_kind == "end" or lam_new <= t_eps:
            lam_new = 0.0
            beta = np.zeros(p)
            beta[active] = cho_solve(L, c[active])
            _record(lambdas, betas, lam_new, beta)
            break

        just_dropped = None
        if best_kind == "join":
            L = chol_append(L, G[active, best_j], G[best_j, best_j])
            active.append(best_j)
            signs.append(best_sgn)
            inactive[best_j] = False
        else:
            pos = active.index(best_j)
            L = chol_delete(L, pos)
            del active[pos]
            del signs[pos]
            inactive[best_j] = True
            just_dropped = best_j

        lam = lam_new
        beta = np.zeros(p)
        beta[active] = cho_solve(L, c[active] - lam * np.array(signs))
        knot = beta.copy()
        if best_kind == "join":
            # the joining coefficient is exactly zero at its knot; the solve
            # leaves rounding noise there that can carry the wrong sign
            knot[best_j] = 0.0
        _record(lambdas, betas, lam, knot)

    return RegularizationPath("lasso", np.array(lambdas), np.array(betas), PIECEWISE_LINEAR,
                              meta={"knots": len(lambdas)})


def _record(lambdas, betas, lam, beta):
    if lam < lambdas[-1]:
        lambdas.append(lam)
        betas.append(beta.copy())
    else:
        # zero-length segment: keep one knot per lambda
        betas[-1] = beta.copy()


def kkt_certify(prob, beta, lam, tol=KKT_TOL):
    """Check the Lasso optimality conditions at (beta, lam)."""
    g = residual_correlations(prob.X, prob.Y, beta)
    if np.max(np.abs(g)) > lam + tol:
        return False
    act = np.abs(beta) > ACTIVE_TOL
    return bool(np.all(np.abs(g[act] - lam * np.sign(beta[act])) <= tol))


def lasso_objective(prob, beta, lam):
    r = prob.Y - prob.X @ beta
    return 0.5 * r @ r + lam * np.sum(np.abs(beta))
