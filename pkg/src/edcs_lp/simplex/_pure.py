"""Two-phase revised simplex over exact rationals (pure Python).

The basis inverse is kept as a dense ``m x m`` matrix of ``Fraction``.
Entering and leaving variables follow Bland's rule: the lowest-index
improving column enters, and ratio-test ties leave by lowest variable index.
Artificial variables carry indices ``n .. n + m - 1`` and never re-enter.

The compiled kernel implements exactly this pivot sequence; both return the
same dictionary so callers cannot tell them apart except by speed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..errors import SolverError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _integer_columns(columns, cost):
    """Scale each column (and its cost) by a positive integer so all entries are ints.

    Scaling column j by L_j > 0 preserves the sign of its reduced cost, which
    is all pricing needs.
    """
    icols, icost = [], []
    for col, cj in zip(columns, cost):
        scale = cj.denominator
        for _, a in col:
            scale = _lcm(scale, a.denominator)
        icols.append(tuple((i, int(a * scale)) for i, a in col))
        icost.append(int(cj * scale))
    return icols, icost


class _State:
    def __init__(self, m, n, columns, rhs, cap):
        self.m, self.n = m, n
        self.sign = [(-1 if b < 0 else 1) for b in rhs]
        self.cols = [tuple((i, a * self.sign[i]) for i, a in col) for col in columns]
        self.xb = [abs(Fraction(b)) for b in rhs]
        self.basis = [n + i for i in range(m)]
        self.pos = {n + i: i for i in range(m)}
        self.binv = [[_ONE if i == k else _ZERO for k in range(m)] for i in range(m)]
        self.pivots = 0
        self.cap = cap

    def column(self, j):
        if j >= self.n:
            return ((j - self.n, _ONE),)
        return self.cols[j]

    def ftran(self, j):
        col = self.column(j)
        out = []
        for row in self.binv:
            s = _ZERO
            for k, a in col:
                v = row[k]
                if v:
                    s += v * a
            out.append(s)
        return out

    def duals(self, cost):
        y = [_ZERO] * self.m
        for i, var in enumerate(self.basis):
            cb = cost[var] if var < self.n else self.art_cost
            if cb:
                row = self.binv[i]
                for k in range(self.m):
                    if row[k]:
                        y[k] += cb * row[k]
        return y

    def pivot(self, r, q, alpha):
        m = self.m
        ar = alpha[r]
        row_r = self.binv[r]
        nz = [k for k in range(m) if row_r[k]]
        for k in nz:
            row_r[k] /= ar
        self.xb[r] /= ar
        xr = self.xb[r]
        for i in range(m):
            f = alpha[i]
            if i == r or not f:
                continue
            row_i = self.binv[i]
            for k in nz:
                row_i[k] -= f * row_r[k]
            if xr:
                self.xb[i] -= f * xr
        old = self.basis[r]
        del self.pos[old]
        self.basis[r] = q
        self.pos[q] = r
        self.pivots += 1
        if self.pivots > self.cap:
            raise SolverError(f"iteration cap of {self.cap} pivots exceeded")
        return nz

    def run_phase(self, cost, icols, icost):
        """Bland-rule pivoting until optimal ('optimal') or an unbounded ray ('unbounded')."""
        m, n = self.m, self.n
        y = self.duals(cost)
        while True:
            denom = 1
            for v in y:
                if v:
                    denom = _lcm(denom, v.denominator)
            yi = [int(v * denom) for v in y]
            q = -1
            for j in range(n):
                if j in self.pos:
                    continue
                acc = icost[j] * denom
                for i, a in icols[j]:
                    acc -= yi[i] * a
                if acc > 0:
                    q = j
                    break
            if q < 0:
                return "optimal"
            col = self.cols[q]
            dq = cost[q] - sum((y[i] * a for i, a in col), _ZERO)
            alpha = self.ftran(q)
            r = -1
            best = None
            for i in range(m):
                a = alpha[i]
                if a > 0:
                    t = self.xb[i] / a
                    if best is None or t < best or (t == best and self.basis[i] < self.basis[r]):
                        best, r = t, i
            if r < 0:
                return "unbounded"
            factor = dq / alpha[r]
            row_r = list(self.binv[r])
            self.pivot(r, q, alpha)
            for k in range(m):
                if row_r[k]:
                    y[k] += factor * row_r[k]


def solve(m, n, columns, rhs, cost, cap):
    """Solve ``max cost.x  s.t.  A x = rhs, x >= 0`` exactly.

    *columns* is a sequence of ``((row, Fraction), ...)`` tuples.  Returns a
    dict with keys ``status``, ``basis``, ``x``, ``y``, ``objective``,
    ``pivots`` and ``phase1_pivots``.
    """
    cost = [Fraction(c) for c in cost]
    st = _State(m, n, [tuple((i, Fraction(a)) for i, a in col) for col in columns],
                [Fraction(b) for b in rhs], cap)

    # phase I: maximize -(sum of artificials) over the same structural columns
    zero_cost = [_ZERO] * n
    st.art_cost = -_ONE
    icols, _ = _integer_columns(st.cols, zero_cost)
    status = st.run_phase(zero_cost, icols, [0] * n)
    assert status == "optimal"
    phase1 = st.pivots
    infeas = sum((st.xb[i] for i, var in enumerate(st.basis) if var >= n), _ZERO)
    if infeas > 0:
        return {"status": "infeasible", "pivots": st.pivots, "phase1_pivots": phase1}

    # drive zero-level artificials out of the basis where a structural pivot exists
    for r in range(m):
        if st.basis[r] < n:
            continue
        row_r = st.binv[r]
        for j in range(n):
            if j in st.pos:
                continue
            v = sum((row_r[i] * a for i, a in st.cols[j] if row_r[i]), _ZERO)
            if v:
                st.pivot(r, j, st.ftran(j))
                break

    st.art_cost = _ZERO
    icols, icost = _integer_columns(st.cols, cost)
    status = st.run_phase(cost, icols, icost)
    if status == "unbounded":
        return {"status": "unbounded", "pivots": st.pivots, "phase1_pivots": phase1}

    x = [_ZERO] * n
    for i, var in enumerate(st.basis):
        if var < n:
            x[var] = st.xb[i]
    y = st.duals(cost)
    y = [v * s for v, s in zip(y, st.sign)]
    objective = sum((cost[j] * x[j] for j in range(n) if cost[j]), _ZERO)
    return {"status": "optimal", "basis": list(st.basis), "x": x, "y": y,
            "objective": objective, "pivots": st.pivots, "phase1_pivots": phase1}
