"""Small dense linear-algebra kernel shared by the path solvers.

Matrices and vectors are plain float64 numpy arrays. Everything here is a
pure function of its inputs.
"""

import numpy as np

PIVOT_TOL = 1e-12
SYMMETRY_TOL = 1e-12


class NotPositiveDefinite(ValueError):
    """Raised when a Cholesky pivot falls to or below the pivot tolerance."""


def as_matrix(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-d array, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def as_vector(v):
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-d array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    return v


def cholesky(A, tol=PIVOT_TOL):
    """Lower-triangular L with L @ L.T == A.

    Row-by-row Cholesky-Banachiewicz. Raises NotPositiveDefinite when a
    pivot is <= `tol` (absolute).
    """
    A = as_matrix(A)
    p = A.shape[0]
    if A.shape[1] != p:
        raise ValueError("cholesky needs a square matrix")
    if np.max(np.abs(A - A.T)) > SYMMETRY_TOL * max(1.0, np.max(np.abs(A))):
        raise ValueError("cholesky needs a symmetric matrix")
    L = np.zeros_like(A)
    for i in range(p):
        for j in range(i):
            L[i, j] = (A[i, j] - np.dot(L[i, :j], L[j, :j])) / L[j, j]
        piv = A[i, i] - np.dot(L[i, :i], L[i, :i])
        if piv <= tol:
            raise NotPositiveDefinite(f"pivot {piv:.3e} at index {i}")
        L[i, i] = np.sqrt(piv)
    return L


def forward_sub(L, b):
    n = L.shape[0]
    x = np.zeros(n)
    for i in range(n):
        x[i] = (b[i] - np.dot(L[i, :i], x[:i])) / L[i, i]
    return x


def back_sub(U, b):
    n = U.shape[0]
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (b[i] - np.dot(U[i, i + 1:], x[i + 1:])) / U[i, i]
    return x


def cho_solve(L, b):
    return back_sub(L.T, forward_sub(L, b))


def solve_spd(A, b):
    """Solve A x = b for symmetric positive-definite A via cholesky()."""
    b = as_vector(b)
    L = cholesky(A)
    if L.shape[0] != b.shape[0]:
        raise ValueError("dimension mismatch between A and b")
    return cho_solve(L, b)


def residual_correlations(X, Y, beta):
    """g(beta) = X^T (Y - X beta)."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if X.ndim != 2 or X.shape[0] != Y.shape[0] or X.shape[1] != beta.shape[0]:
        raise ValueError(
            f"dimension mismatch: X {X.shape}, Y {Y.shape}, beta {beta.shape}")
    return X.T @ (Y - X @ beta)


def diag_dominant(M):
    """True iff M_jj > sum_{i != j} |M_ij| for every column j (strict)."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("diag_dominant needs a square matrix")
    absM = np.abs(M)
    off = absM.sum(axis=0) - np.diag(absM)
    return bool(np.all(np.diag(M) > off))


def soft_threshold(z, lam):
    """sign(z) * max(|z| - lam, 0); works elementwise on arrays too."""
    if np.any(np.asarray(lam) < 0):
        raise ValueError("threshold must be nonnegative")
    out = np.sign(z) * np.maximum(np.abs(z) - lam, 0.0)
    if np.ndim(out) == 0:
        return float(out)
    return out
