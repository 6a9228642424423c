"""Double-precision revised simplex for LPs too large for exact mode.

Same two-phase layout as the exact solver.  Pricing is Dantzig's largest
reduced cost with a switch to Bland's rule while the objective stalls; the
ratio test is Harris's two-pass rule, and columns whose only pivots are tiny
relative to the column are skipped until the next clean pricing pass.  The basis is held as a sparse LU
factorization plus a file of eta (column replacement) updates; it is rebuilt
from the basis columns every ``REFACTOR_EVERY`` pivots.

The factor-revealing LPs are massively degenerate (every right-hand side but
one is zero), so the right-hand side is perturbed by a tiny shift along
``A @ xi`` for a random ``xi >= 0`` while pivoting.  That keeps the system
consistent even though its rows are linearly dependent.  The final basis is
re-evaluated on the true data.
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..errors import SolverError
from ..lp import LinearProgram
from .exact import iteration_cap
from .result import SolveResult, Status

log = logging.getLogger(__name__)

PIVOT_TOL = 1e-9
COST_TOL = 1e-9
FEAS_TOL = 1e-7
REFACTOR_EVERY = 64
STALL_LIMIT = 50
PERTURBATION = 1e-7
HARRIS_TOL = 1e-9
REL_PIVOT_TOL = 1e-7


def constraint_matrix(lp: LinearProgram) -> sp.csc_matrix:
    rows, cols, vals = [], [], []
    for i, row in enumerate(lp.rows):
        for j, c in row:
            rows.append(i)
            cols.append(j)
            vals.append(float(c))
    return sp.csc_matrix((vals, (rows, cols)), shape=(lp.num_rows, lp.num_vars))


class _FloatSimplex:
    def __init__(self, a: sp.csc_matrix, b: np.ndarray, cap: int, perturb: float):
        self.m, self.n = a.shape
        self.sign = np.where(b < 0, -1.0, 1.0)
        a = sp.csc_matrix(sp.diags(self.sign) @ a)
        self.a = a
        self.at = a.T.tocsr()
        self.ext = sp.hstack([a, sp.identity(self.m, format="csc")], format="csc")
        self.true_b = b * self.sign
        rng = np.random.default_rng(20240501)
        self.b = self.true_b + a @ (perturb * (1.0 + rng.random(self.n)))
        self.basis = np.arange(self.n, self.n + self.m)
        self.is_basic = np.zeros(self.n + self.m, dtype=bool)
        self.is_basic[self.n:] = True
        self.pivots = 0
        self.cap = cap
        self.warnings: list[str] = []
        self.refactor()

    def refactor(self) -> None:
        basis_matrix = self.ext[:, self.basis].tocsc()
        try:
            self.lu = spla.splu(basis_matrix)
        except RuntimeError as exc:
            raise SolverError(f"singular basis at pivot {self.pivots}: {exc}") from exc
        self.etas: list[tuple[int, np.ndarray]] = []
        self.xb = self.lu.solve(self.b)
        self.xb[np.abs(self.xb) < 1e-12] = 0.0

    def ftran(self, vec: np.ndarray) -> np.ndarray:
        z = self.lu.solve(vec)
        for r, alpha in self.etas:
            zr = z[r] / alpha[r]
            z -= zr * alpha
            z[r] = zr
        return z

    def btran(self, vec: np.ndarray) -> np.ndarray:
        v = vec.astype(float, copy=True)
        for r, alpha in reversed(self.etas):
            v[r] = (v[r] - (v @ alpha - v[r] * alpha[r])) / alpha[r]
        return self.lu.solve(v, trans="T")

    def column(self, j: int) -> np.ndarray:
        lo, hi = self.ext.indptr[j], self.ext.indptr[j + 1]
        out = np.zeros(self.m)
        out[self.ext.indices[lo:hi]] = self.ext.data[lo:hi]
        return out

    def unit_row(self, r: int) -> np.ndarray:
        """Row r of ``B^-1 A`` over the structural columns."""
        e_r = np.zeros(self.m)
        e_r[r] = 1.0
        return self.at @ self.btran(e_r)

    def pivot(self, r: int, q: int, alpha: np.ndarray) -> None:
        ar = alpha[r]
        if abs(ar) < 1e-7:
            self.warnings.append(f"small pivot {ar:.3e} at iteration {self.pivots}")
        step = max(self.xb[r], 0.0) / ar
        self.xb -= step * alpha
        self.xb[r] = step
        self.xb[np.abs(self.xb) < 1e-12] = 0.0
        self.is_basic[self.basis[r]] = False
        self.basis[r] = q
        self.is_basic[q] = True
        self.etas.append((r, alpha))
        self.pivots += 1
        if self.pivots > self.cap:
            raise SolverError(f"iteration cap of {self.cap} pivots exceeded")
        if len(self.etas) >= REFACTOR_EVERY:
            self.refactor()

    def run_phase(self, cost: np.ndarray, art_cost: float) -> str:
        m, n = self.m, self.n
        full_cost = np.concatenate([cost, np.full(m, art_cost)])
        rejected = np.zeros(n, dtype=bool)
        retried = False
        stalled = 0
        while True:
            y = self.btran(full_cost[self.basis])
            d = cost - self.at @ y
            d[self.is_basic[:n] | rejected] = 0.0
            bland = stalled >= STALL_LIMIT
            if bland:
                cand = np.flatnonzero(d > COST_TOL)
                if cand.size == 0:
                    if rejected.any():
                        if retried:
                            self.warnings.append(
                                f"stopped with {int(rejected.sum())} improving columns that "
                                f"only admit pivots below tolerance (degraded precision)")
                            return "optimal"
                        retried = True
                        rejected[:] = False
                        self.refactor()
                        continue
                    return "optimal"
                q = int(cand[0])
            else:
                score = np.where(d > COST_TOL, d, -1.0)
                q = int(np.argmax(score))
                if score[q] < 0:
                    if rejected.any():
                        if retried:
                            self.warnings.append(
                                f"stopped with {int(rejected.sum())} improving columns that "
                                f"only admit pivots below tolerance (degraded precision)")
                            return "optimal"
                        retried = True
                        rejected[:] = False
                        self.refactor()
                        continue
                    return "optimal"
            alpha = self.ftran(self.column(q))
            big = np.abs(alpha).max()
            ok = alpha > max(PIVOT_TOL, REL_PIVOT_TOL * big)
            if not ok.any():
                if (alpha > PIVOT_TOL).any():
                    # only relatively tiny pivots: try another column
                    rejected[q] = True
                    continue
                if (alpha > 1e-12).any():
                    self.warnings.append(
                        f"only sub-tolerance pivots for column {q} at iteration {self.pivots}")
                return "unbounded"
            xb = np.maximum(self.xb, 0.0)
            ratios = np.full(m, np.inf)
            ratios[ok] = xb[ok] / alpha[ok]
            best = ratios.min()
            if bland:
                ties = np.flatnonzero(ratios <= best + 1e-12 * max(1.0, best))
                r = int(ties[np.argmin(self.basis[ties])])
            else:
                # Harris two-pass: largest pivot among near-minimal ratios
                relaxed = np.full(m, np.inf)
                relaxed[ok] = (xb[ok] + HARRIS_TOL) / alpha[ok]
                ties = np.flatnonzero(ratios <= relaxed.min())
                r = int(ties[np.argmax(alpha[ties])])
            stalled = stalled + 1 if ratios[r] <= 1e-12 else 0
            rejected[:] = False
            retried = False
            self.pivot(r, q, alpha)

    def drive_out_artificials(self) -> None:
        for r in range(self.m):
            if self.basis[r] < self.n:
                continue
            row = self.unit_row(r)
            row[self.is_basic[:self.n]] = 0.0
            cand = np.flatnonzero(np.abs(row) > 1e-7)
            if cand.size:
                q = int(cand[np.argmax(np.abs(row[cand]))])
                self.pivot(r, q, self.ftran(self.column(q)))


def solve_float(lp: LinearProgram, *, cap: int | None = None,
                perturb: float = PERTURBATION) -> SolveResult:
    """Floating-point two-phase simplex; advisory, see module docstring."""
    a = constraint_matrix(lp)
    b = np.array([float(v) for v in lp.rhs])
    cost = np.array([float(v) for v in lp.cost])
    s = _FloatSimplex(a, b, cap if cap is not None else iteration_cap(lp), perturb)

    def result(status: Status, **kw) -> SolveResult:
        return SolveResult(status, pivots=s.pivots, phase1_pivots=phase1, exact=False,
                           backend="float", warnings=s.warnings, **kw)

    s.run_phase(np.zeros(s.n), -1.0)
    phase1 = s.pivots
    if s.xb[s.basis >= s.n].sum() > FEAS_TOL:
        return result(Status.INFEASIBLE)
    s.drive_out_artificials()
    if s.run_phase(cost, 0.0) == "unbounded":
        return result(Status.UNBOUNDED)

    s.b = s.true_b
    s.refactor()
    x = np.zeros(s.n)
    structural = s.basis < s.n
    x[s.basis[structural]] = s.xb[structural]
    if (x < -FEAS_TOL).any():
        s.warnings.append(f"negative basic value {x.min():.3e} on the unperturbed data")
    if (s.xb[~structural] > FEAS_TOL).any():
        s.warnings.append("artificial variable positive on the unperturbed data")
    x = np.maximum(x, 0.0)
    full_cost = np.concatenate([cost, np.zeros(s.m)])
    y = s.btran(full_cost[s.basis]) * s.sign
    return result(Status.OPTIMAL, objective=float(cost @ x), solution=x.tolist(),
                  duals=y.tolist(), basis=s.basis.tolist())
