"""Dense bounded-variable simplex for small linear programs.

Problems have the general form

    minimize    c @ x
    subject to  A[i] @ x  (<= | = | >=)  b[i]
                lower <= x <= upper

Every row gets a slack ``s_i = b_i - A_i x`` whose bounds encode the row
sense, so the working problem is ``[A | I] [x; s] = b`` with bounds only.
Cold starts try the all-slack basis first (primal simplex if it is primal
feasible, dual simplex if it is dual feasible) and otherwise run a phase 1
on artificial columns. Warm starts refactor a supplied basis and continue
the same way. Pivoting uses Bland's
smallest-index rule in both directions, so results are deterministic.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

FEAS_TOL = 1e-9
GAP_TOL = 1e-8
DEGEN_TOL = 1e-9
PIVOT_TOL = 1e-7
REFACTOR_EVERY = 50


class IterationLimit(RuntimeError):
    """Pivot budget exhausted; indicates cycling or numerical trouble."""


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


SENSES = ("<=", "=", ">=")


@dataclass(frozen=True, eq=False)
class LinearProgram:
    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    senses: tuple
    lower: np.ndarray = None
    upper: np.ndarray = None

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        b = np.asarray(self.b, dtype=float)
        m, n = A.shape
        if c.shape != (n,) or b.shape != (m,):
            raise ValueError(f"shape mismatch: c {c.shape}, A {A.shape}, b {b.shape}")
        senses = tuple(self.senses)
        if len(senses) != m or any(s not in SENSES for s in senses):
            raise ValueError(f"senses must be {m} entries from {SENSES}")
        lower = np.zeros(n) if self.lower is None else np.asarray(self.lower, dtype=float)
        upper = np.full(n, np.inf) if self.upper is None else np.asarray(self.upper, dtype=float)
        if lower.shape != (n,) or upper.shape != (n,):
            raise ValueError("bounds must have one entry per variable")
        if np.any(lower > upper):
            raise ValueError("lower bound exceeds upper bound")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "senses", senses)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def shape(self):
        return self.A.shape


@dataclass(frozen=True)
class Basis:
    """Warm-start handle: basic column per row and nonbasics sitting at upper.

    Column indices address ``[x | s]``: structurals first, then one slack per
    row.
    """
    basic: tuple
    at_upper: frozenset = frozenset()


@dataclass
class LPSolution:
    status: LPStatus
    primal: np.ndarray
    dual: np.ndarray
    objective_value: float
    degenerate_optimum: bool = False
    basis: Basis = None
    iterations: int = 0
    # unbounded: improving primal ray; infeasible: phase-1 row multipliers
    certificate: np.ndarray = None
    warm_started: bool = False
    info: dict = field(default_factory=dict)


_BASIC, _LOWER, _UPPER, _FREE = 0, 1, 2, 3


class _Simplex:
    """Mutable tableau state for a single solve. Not reusable, not shared."""

    def __init__(self, lp):
        self.lp = lp
        m, n = lp.shape
        self.m, self.n = m, n
        self.ncols = n + 2 * m
        self.art0 = n + m
        slo = np.empty(m)
        sup = np.empty(m)
        for i, s in enumerate(lp.senses):
            if s == "<=":
                slo[i], sup[i] = 0.0, np.inf
            elif s == ">=":
                slo[i], sup[i] = -np.inf, 0.0
            else:
                slo[i], sup[i] = 0.0, 0.0
        self.lo = np.concatenate([lp.lower, slo, np.zeros(m)])
        self.up = np.concatenate([lp.upper, sup, np.zeros(m)])
        self.Af = np.hstack([lp.A, np.eye(m), np.eye(m)])
        self.cost2 = np.concatenate([lp.c, np.zeros(2 * m)])
        self.x = np.zeros(self.ncols)
        self.state = np.zeros(self.ncols, dtype=np.int8)
        self.basis = np.zeros(m, dtype=np.int64)
        self.T = None
        self.iterations = 0
        self.max_iter = 50 * (m + n)
        self._since_refactor = 0

    # -- bookkeeping --------------------------------------------------------

    def _place_nonbasic(self, j, prefer_upper=False):
        lo, up = self.lo[j], self.up[j]
        if prefer_upper and np.isfinite(up):
            self.x[j], self.state[j] = up, _UPPER
        elif np.isfinite(lo):
            self.x[j], self.state[j] = lo, _LOWER
        elif np.isfinite(up):
            self.x[j], self.state[j] = up, _UPPER
        else:
            self.x[j], self.state[j] = 0.0, _FREE

    def _refactor(self):
        B = self.Af[:, self.basis]
        self.T = np.linalg.solve(B, self.Af)
        self._recompute_xb()
        self._since_refactor = 0

    def _recompute_xb(self):
        nonbasic = self.state != _BASIC
        rhs = self.lp.b - self.Af[:, nonbasic] @ self.x[nonbasic]
        Binv = self.T[:, self.n:self.n + self.m]
        self.x[self.basis] = Binv @ rhs

    def _pivot(self, r, j):
        T = self.T
        piv = T[r, j]
        T[r] /= piv
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.basis[r] = j
        self.state[j] = _BASIC
        self.iterations += 1
        self._since_refactor += 1
        if self.iterations > self.max_iter:
            raise IterationLimit(f"exceeded {self.max_iter} pivots")
        if self._since_refactor >= REFACTOR_EVERY:
            self._refactor()
        else:
            self._recompute_xb()

    def reduced_costs(self, cost):
        return cost - cost[self.basis] @ self.T

    def _movable(self):
        return (self.state != _BASIC) & (self.up > self.lo)

    # -- starts -------------------------------------------------------------

    def cold_start(self):
        m, n = self.m, self.n
        for j in range(n):
            self._place_nonbasic(j)
        r = self.lp.b - self.lp.A @ self.x[:n]
        for i in range(m):
            s, a = n + i, self.art0 + i
            if self.lo[s] - FEAS_TOL <= r[i] <= self.up[s] + FEAS_TOL:
                self.basis[i] = s
                self.state[s] = _BASIC
                self.x[s] = r[i]
                self._place_nonbasic(a)
            else:
                bound = self.lo[s] if r[i] < self.lo[s] else self.up[s]
                self.x[s] = bound
                self.state[s] = _LOWER if bound == self.lo[s] else _UPPER
                rem = r[i] - bound
                self.Af[i, a] = np.sign(rem)
                self.up[a] = np.inf
                self.basis[i] = a
                self.state[a] = _BASIC
        self._refactor()

    def slack_start(self):
        """All-slack basis with structurals at bounds; slacks may be out of bounds."""
        m, n = self.m, self.n
        self._drop_artificials_unfactored()
        for j in range(n):
            self._place_nonbasic(j)
        self.basis[:] = np.arange(n, n + m)
        self.state[n:n + m] = _BASIC
        self.T = self.Af.copy()
        self._since_refactor = 0
        self._recompute_xb()

    def warm_start(self, basis):
        m, n = self.m, self.n
        basic = np.asarray(basis.basic, dtype=np.int64)
        if basic.shape != (m,) or len(set(basic.tolist())) != m:
            return False
        if np.any(basic < 0) or np.any(basic >= n + m):
            return False
        self._drop_artificials_unfactored()
        self.basis[:] = basic
        self.state[:] = _LOWER
        for j in range(self.ncols):
            if j in basis.at_upper:
                self._place_nonbasic(j, prefer_upper=True)
            else:
                self._place_nonbasic(j)
        self.state[basic] = _BASIC
        try:
            self._refactor()
        except np.linalg.LinAlgError:
            return False
        return bool(np.all(np.isfinite(self.T)))

    def _drop_artificials_unfactored(self):
        k = self.art0
        self.ncols = k
        self.Af = self.Af[:, :k]
        self.lo, self.up = self.lo[:k], self.up[:k]
        self.x, self.state = self.x[:k], self.state[:k]
        self.cost2 = self.cost2[:k]

    # -- iterations ---------------------------------------------------------

    def primal_feasible(self, tol=FEAS_TOL):
        xb = self.x[self.basis]
        return bool(np.all(xb >= self.lo[self.basis] - tol)
                    and np.all(xb <= self.up[self.basis] + tol))

    def dual_feasible(self, cost, tol=DEGEN_TOL):
        d = self.reduced_costs(cost)
        mov = self._movable()
        bad = (mov & (self.state == _LOWER) & (d < -tol)) \
            | (mov & (self.state == _UPPER) & (d > tol)) \
            | (mov & (self.state == _FREE) & (np.abs(d) > tol))
        return not bool(np.any(bad))

    def _ratio_test(self, j, dirn):
        """Largest step along nonbasic j (direction dirn) keeping basics in bounds.

        Returns (theta, row) with row = -1 for a bound flip and None when
        unbounded.
        """
        alpha = dirn * self.T[:, j]
        xb = self.x[self.basis]
        lob, upb = self.lo[self.basis], self.up[self.basis]
        theta = np.full(self.m, np.inf)
        dec = alpha > PIVOT_TOL
        inc = alpha < -PIVOT_TOL
        with np.errstate(invalid="ignore"):
            theta[dec] = (xb[dec] - lob[dec]) / alpha[dec]
            theta[inc] = (upb[inc] - xb[inc]) / (-alpha[inc])
        theta[np.isnan(theta)] = np.inf
        theta = np.maximum(theta, 0.0)
        flip = self.up[j] - self.lo[j]
        tmin = theta.min() if self.m else np.inf
        if flip <= tmin and np.isfinite(flip):
            return flip, -1
        if not np.isfinite(tmin):
            return np.inf, None
        ties = np.flatnonzero(theta <= tmin + 1e-12 * (1.0 + tmin))
        r = ties[np.argmin(self.basis[ties])]
        return theta[r], r

    def _entering(self, d):
        mov = self._movable()
        cand = (mov & (self.state == _LOWER) & (d < -DEGEN_TOL)) \
            | (mov & (self.state == _UPPER) & (d > DEGEN_TOL)) \
            | (mov & (self.state == _FREE) & (np.abs(d) > DEGEN_TOL))
        idx = np.flatnonzero(cand)
        if idx.size == 0:
            return None, 0
        j = int(idx[0])
        return j, (1.0 if d[j] < 0 else -1.0)

    def primal(self, cost):
        """Primal simplex from a feasible basis. Returns False if unbounded."""
        while True:
            d = self.reduced_costs(cost)
            j, dirn = self._entering(d)
            if j is None:
                return True
            theta, r = self._ratio_test(j, dirn)
            if r is None:
                self.ray = self._ray(j, dirn)
                return False
            if r == -1:
                self.x[j] = self.up[j] if dirn > 0 else self.lo[j]
                self.state[j] = _UPPER if dirn > 0 else _LOWER
                self._recompute_xb()
                self.iterations += 1
                if self.iterations > self.max_iter:
                    raise IterationLimit(f"exceeded {self.max_iter} pivots")
                continue
            leave = self.basis[r]
            decreasing = dirn * self.T[r, j] > 0
            self.x[j] += dirn * theta
            if decreasing:
                self.x[leave], self.state[leave] = self.lo[leave], _LOWER
            else:
                self.x[leave], self.state[leave] = self.up[leave], _UPPER
            self._pivot(r, j)

    def dual(self, cost):
        """Dual simplex from a dual-feasible basis. Returns False if infeasible."""
        while True:
            xb = self.x[self.basis]
            lob, upb = self.lo[self.basis], self.up[self.basis]
            below = xb < lob - FEAS_TOL
            above = xb > upb + FEAS_TOL
            rows = np.flatnonzero(below | above)
            if rows.size == 0:
                return True
            r = int(rows[np.argmin(self.basis[rows])])
            leave = self.basis[r]
            alpha_r = self.T[r]
            d = self.reduced_costs(cost)
            mov = self._movable()
            lower, upper, free = (mov & (self.state == _LOWER),
                                  mov & (self.state == _UPPER),
                                  mov & (self.state == _FREE))
            if below[r]:
                elig = (lower & (alpha_r < -PIVOT_TOL)) | (upper & (alpha_r > PIVOT_TOL))
                target, new_state = lob[r], _LOWER
            else:
                elig = (lower & (alpha_r > PIVOT_TOL)) | (upper & (alpha_r < -PIVOT_TOL))
                target, new_state = upb[r], _UPPER
            elig |= free & (np.abs(alpha_r) > PIVOT_TOL)
            idx = np.flatnonzero(elig)
            if idx.size == 0:
                return False
            ratios = np.abs(d[idx]) / np.abs(alpha_r[idx])
            rmin = ratios.min()
            j = int(idx[np.flatnonzero(ratios <= rmin + 1e-12 * (1.0 + rmin))[0]])
            step = (xb[r] - target) / alpha_r[j]
            self.x[j] += step
            self.x[leave], self.state[leave] = target, new_state
            self._pivot(r, j)

    def _ray(self, j, dirn):
        ray = np.zeros(self.ncols)
        ray[j] = dirn
        ray[self.basis] = -dirn * self.T[:, j]
        return ray[:self.n]

    # -- phases -------------------------------------------------------------

    def phase1(self):
        arts = np.arange(self.art0, self.ncols)
        if not np.any(self.state[arts] == _BASIC):
            return True
        cost1 = np.zeros(self.ncols)
        cost1[arts] = 1.0
        self.primal(cost1)
        infeas = float(self.x[arts].sum())
        self.phase1_duals = cost1[self.basis] @ self.T[:, self.n:self.n + self.m]
        if infeas > FEAS_TOL * max(1.0, np.max(np.abs(self.lp.b), initial=0.0)):
            return False
        # drive remaining zero-level artificials out of the basis
        for r in range(self.m):
            a = self.basis[r]
            if a < self.art0:
                continue
            row = self.T[r, :self.art0]
            cand = np.flatnonzero((np.abs(row) > PIVOT_TOL) & (self.state[:self.art0] != _BASIC))
            if cand.size:
                j = int(cand[np.argmax(np.abs(row[cand]))])
                self.x[a], self.state[a] = 0.0, _LOWER
                self._pivot(r, j)
        self.up[arts] = 0.0
        self.x[arts] = np.where(self.state[arts] == _BASIC, self.x[arts], 0.0)
        if not np.any(self.state[arts] == _BASIC):
            self._drop_artificials()
        self._recompute_xb()
        return True

    def _drop_artificials(self):
        k = self.art0
        self.ncols = k
        self.Af = self.Af[:, :k]
        self.T = np.ascontiguousarray(self.T[:, :k])
        self.lo, self.up = self.lo[:k], self.up[:k]
        self.x, self.state = self.x[:k], self.state[:k]
        self.cost2 = self.cost2[:k]

    # -- results ------------------------------------------------------------

    def set_rhs(self, lp):
        self.lp = lp
        self.iterations = 0
        self._recompute_xb()

    def duals(self):
        return self.cost2[self.basis] @ self.T[:, self.n:self.n + self.m]

    def polish(self):
        """Refactor from scratch and recompute primal values and duals."""
        self._refactor()
        B = self.Af[:, self.basis]
        y = np.linalg.solve(B.T, self.cost2[self.basis])
        return y

    def export_basis(self):
        if np.any(self.basis >= self.art0):
            return None
        at_upper = frozenset(int(j) for j in np.flatnonzero(self.state == _UPPER)
                             if j < self.art0)
        return Basis(tuple(int(j) for j in self.basis), at_upper)


def _finish(lp, sx, warm, check_degeneracy, polish=True):
    n = lp.shape[1]
    y = sx.polish() if polish else sx.duals()
    x = sx.x[:n].copy()
    sol = LPSolution(LPStatus.OPTIMAL, x, y, float(lp.c @ x),
                     basis=sx.export_basis(), iterations=sx.iterations,
                     warm_started=warm)
    if check_degeneracy:
        sol.degenerate_optimum = _degenerate(lp, sol, sx)
    return sol


def _solve(lp, warm_basis=None):
    """Run the simplex; returns (solver, warm flag, failure solution or None)."""
    m, n = lp.shape
    warm = False
    sx = None
    if warm_basis is not None:
        sx = _Simplex(lp)
        if sx.warm_start(warm_basis):
            if sx.primal_feasible():
                warm = True
            elif sx.dual_feasible(sx.cost2):
                warm = sx.dual(sx.cost2)
        if not warm:
            sx = None
    if sx is None:
        # the slack basis is often dual feasible (nonnegative costs); dual
        # simplex from there avoids a phase 1 on equality-like systems
        sx = _Simplex(lp)
        sx.slack_start()
        if sx.primal_feasible() or (sx.dual_feasible(sx.cost2) and sx.dual(sx.cost2)):
            pass
        else:
            sx = None
    if sx is None:
        sx = _Simplex(lp)
        sx.cold_start()
        if not sx.phase1():
            return sx, warm, LPSolution(LPStatus.INFEASIBLE, sx.x[:n].copy(), sx.phase1_duals,
                                        np.nan, iterations=sx.iterations,
                                        certificate=sx.phase1_duals)
    if not sx.primal(sx.cost2):
        return sx, warm, LPSolution(LPStatus.UNBOUNDED, sx.x[:n].copy(), np.full(m, np.nan),
                                    -np.inf, iterations=sx.iterations, certificate=sx.ray,
                                    warm_started=warm)
    return sx, warm, None


def solve_lp(lp, warm_basis=None, check_degeneracy=True):
    """Solve `lp`; optionally start from a previously exported Basis."""
    sx, warm, failed = _solve(lp, warm_basis)
    if failed is not None:
        return failed
    return _finish(lp, sx, warm, check_degeneracy)


class RHSSweeper:
    """Re-solves one LP under a sequence of right-hand sides.

    The tableau of the previous optimum is kept, so each new right-hand side
    starts from a dual-feasible basis and usually needs a handful of dual
    simplex pivots. Falls back to a cold solve when that fails.
    """

    def __init__(self, check_degeneracy=True):
        self.check_degeneracy = check_degeneracy
        self._sx = None

    def solve(self, lp):
        sx = self._sx
        if sx is not None and sx.lp.shape == lp.shape and sx.ncols == sx.art0:
            sx.set_rhs(lp)
            try:
                ok = sx.primal_feasible() or sx.dual(sx.cost2)
                ok = ok and sx.primal(sx.cost2)
            except IterationLimit:
                ok = False
            if ok:
                sol = _finish(lp, sx, True, self.check_degeneracy, polish=False)
                if certify(lp, sol):
                    return sol
                sol = _finish(lp, sx, True, self.check_degeneracy, polish=True)
                if certify(lp, sol):
                    return sol
        sx, warm, failed = _solve(lp)
        if failed is not None:
            self._sx = None
            return failed
        self._sx = sx
        return _finish(lp, sx, warm, self.check_degeneracy)


def certify(lp, sol, feas_tol=FEAS_TOL, gap_tol=GAP_TOL):
    """Recheck primal feasibility, dual feasibility and the duality gap."""
    if sol.status is not LPStatus.OPTIMAL:
        return False
    x = np.asarray(sol.primal, dtype=float)
    y = np.asarray(sol.dual, dtype=float)
    if x.shape != (lp.shape[1],) or y.shape != (lp.shape[0],):
        return False
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        return False
    Ax = lp.A @ x
    scale = np.maximum(1.0, np.abs(lp.b))
    for i, s in enumerate(lp.senses):
        resid = Ax[i] - lp.b[i]
        if s == "<=" and resid > feas_tol * scale[i]:
            return False
        if s == ">=" and resid < -feas_tol * scale[i]:
            return False
        if s == "=" and abs(resid) > feas_tol * scale[i]:
            return False
        if s == "<=" and y[i] > DEGEN_TOL:
            return False
        if s == ">=" and y[i] < -DEGEN_TOL:
            return False
    if np.any(x < lp.lower - feas_tol * np.maximum(1.0, np.abs(lp.lower))):
        return False
    if np.any(x > lp.upper + feas_tol * np.maximum(1.0, np.abs(lp.upper))):
        return False
    d = lp.c - lp.A.T @ y
    pos = d > DEGEN_TOL
    neg = d < -DEGEN_TOL
    if np.any(pos & ~np.isfinite(lp.lower)) or np.any(neg & ~np.isfinite(lp.upper)):
        return False
    dual_obj = lp.b @ y + lp.lower[pos] @ d[pos] + lp.upper[neg] @ d[neg]
    primal_obj = lp.c @ x
    tol = gap_tol * (1.0 + abs(primal_obj))
    if abs(primal_obj - sol.objective_value) > tol:
        return False
    return abs(primal_obj - dual_obj) <= tol


def detect_degenerate(lp, sol):
    """True iff the optimum is not unique along some zero-reduced-cost edge."""
    if sol.status is not LPStatus.OPTIMAL or sol.basis is None:
        return False
    sx = _Simplex(lp)
    if not sx.warm_start(sol.basis):
        return False
    return _degenerate(lp, sol, sx)


def _degenerate(lp, sol, sx):
    d = sx.reduced_costs(sx.cost2)
    mov = sx._movable()
    mov[sx.art0:] = False
    cand = np.flatnonzero(mov & (np.abs(d) <= DEGEN_TOL))
    if cand.size == 0:
        return False
    stuck = []
    for j in cand:
        dirs = {_LOWER: (1.0,), _UPPER: (-1.0,), _FREE: (1.0, -1.0)}[int(sx.state[j])]
        for dirn in dirs:
            theta, _ = sx._ratio_test(int(j), dirn)
            if theta > DEGEN_TOL:
                return True
            stuck.append((int(j), dirn))
    # primal-degenerate vertex: zero-length ratio steps do not rule out an
    # optimal face, so probe it with one auxiliary LP per candidate direction
    return any(_face_moves(lp, sol, j, dirn) for j, dirn in stuck)


def _face_moves(lp, sol, j, dirn):
    m, n = lp.shape
    A = np.vstack([lp.A, lp.c])
    b = np.append(lp.b, sol.objective_value)
    senses = lp.senses + ("=",)
    if j < n:
        direction = np.zeros(n)
        direction[j] = 1.0
    else:
        # slack s_i = b_i - A_i x
        direction = -lp.A[j - n]
    aux = LinearProgram(-dirn * direction, A, b, senses, lp.lower, lp.upper)
    res = solve_lp(aux, check_degeneracy=False)
    if res.status is LPStatus.UNBOUNDED:
        return True
    if res.status is not LPStatus.OPTIMAL:
        return False
    moved = dirn * direction @ (res.primal - sol.primal)
    return moved > 1e-7
