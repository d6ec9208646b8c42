"""L2Boosting as forward stagewise regression with a constant step (FS-eps).

Each iteration moves the coordinate most correlated with the current
residual by +-step_eps. Coefficients are held as integer step counts, so
``beta = counts * step_eps`` and the active set is exact.
"""

from dataclasses import dataclass

import numba
import numpy as np

from .paths import GRID_ONLY, OutOfRange, RegularizationPath

REFRESH_EVERY = 1000


@dataclass(frozen=True)
class BoostConfig:
    """Stagewise settings. None means "relative to lambda_max" defaults:
    step_eps = 1e-3 * lambda_max, stop_tol = 1e-6 * lambda_max."""
    step_eps: float = None
    max_iters: int = 200_000
    stop_tol: float = None
    record_every: int = 100

    def __post_init__(self):
        if self.step_eps is not None and not self.step_eps > 0:
            raise ValueError("step_eps must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.stop_tol is not None and self.stop_tol < 0:
            raise ValueError("stop_tol must be nonnegative")
        if self.record_every < 1:
            raise ValueError("record_every must be at least 1")

    def resolve(self, lam_max):
        eps = self.step_eps if self.step_eps is not None else 1e-3 * lam_max
        tol = self.stop_tol if self.stop_tol is not None else 1e-6 * lam_max
        return eps, tol


@numba.njit(cache=True)
def _stagewise(G, c, eps, max_iters, stop_tol, record_every, refresh):
    p = c.shape[0]
    counts = np.zeros(p, dtype=np.int64)
    g = c.copy()
    cap = max_iters // record_every + 64
    rec_counts = np.zeros((cap, p), dtype=np.int64)
    rec_pl = np.zeros(cap)
    rec_it = np.zeros(cap, dtype=np.int64)

    gmax = 0.0
    for k in range(p):
        if abs(g[k]) > gmax:
            gmax = abs(g[k])
    rec_pl[0] = gmax
    nrec = 1
    it = 0
    while it < max_iters and gmax > stop_tol:
        j = 0
        best = -1.0
        for k in range(p):
            if abs(g[k]) > best:
                best = abs(g[k])
                j = k
        s = 1 if g[j] > 0 else -1
        before = counts[j]
        counts[j] += s
        changed = (before == 0) or (counts[j] == 0)
        it += 1
        if it % refresh == 0:
            for k in range(p):
                acc = c[k]
                for l in range(p):
                    acc -= G[k, l] * (counts[l] * eps)
                g[k] = acc
        else:
            for k in range(p):
                g[k] -= s * eps * G[k, j]
        gmax = 0.0
        for k in range(p):
            if abs(g[k]) > gmax:
                gmax = abs(g[k])
        if changed or it % record_every == 0 or it == max_iters or gmax <= stop_tol:
            if nrec == cap:
                cap *= 2
                new_counts = np.zeros((cap, p), dtype=np.int64)
                new_pl = np.zeros(cap)
                new_it = np.zeros(cap, dtype=np.int64)
                new_counts[:nrec] = rec_counts[:nrec]
                new_pl[:nrec] = rec_pl[:nrec]
                new_it[:nrec] = rec_it[:nrec]
                rec_counts, rec_pl, rec_it = new_counts, new_pl, new_it
            rec_counts[nrec] = counts
            rec_pl[nrec] = gmax
            rec_it[nrec] = it
            nrec += 1
    return rec_counts[:nrec], rec_pl[:nrec], rec_it[:nrec], it


def boost_path(prob, cfg=BoostConfig()):
    """Forward-stagewise path, recorded on active-set changes and every
    `record_every` iterations; the lambda axis holds ||g(beta)||_inf."""
    G = np.ascontiguousarray(prob.X.T @ prob.X)
    c = prob.X.T @ prob.Y
    lam_max = float(np.max(np.abs(c)))
    eps, tol = cfg.resolve(lam_max)
    counts, pl, its, n_iter = _stagewise(G, c, float(eps), int(cfg.max_iters), float(tol),
                                         int(cfg.record_every), REFRESH_EVERY)
    betas = counts * eps
    # exact correlations at the recorded points
    pl = np.max(np.abs(c[None, :] - betas @ G), axis=1)
    path = RegularizationPath("boost", pl, betas, GRID_ONLY)
    path.meta.update(step_eps=eps, stop_tol=tol, iterations=n_iter,
                     record_iterations=its, max_iters=cfg.max_iters,
                     record_every=cfg.record_every)
    return path


def boost_eval(path, pseudo_lambda):
    """Record nearest from above in pseudo-lambda; earliest record on ties.

    Only records before the pseudo-lambda first dips below the query count,
    so a late small bounce upward never wins over the earlier iterate.
    """
    pl = path.lambdas
    if pseudo_lambda < pl.min():
        raise OutOfRange(f"pseudo-lambda {pseudo_lambda} below terminal {pl.min()}")
    if pseudo_lambda >= pl[0]:
        return path.betas[0].copy()
    below = np.flatnonzero(pl < pseudo_lambda)
    stop = below[0] if below.size else len(pl)
    k = int(np.argmin(pl[:stop]))
    return path.betas[k].copy()


def boost_eval_clamped(path, pseudo_lambda):
    return boost_eval(path, max(pseudo_lambda, float(path.lambdas.min())))
