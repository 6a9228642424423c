# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact simplex kernel on GMP rationals.

Mirrors ``_pure.solve`` pivot for pivot (same Bland rule, same tie-breaks,
same artificial drive-out), so both backends return identical bases.

Two tableaus share that logic.  The first keeps every rational as a reduced
pair of 64-bit integers, with 128-bit intermediates and an overflow flag; the
entries of these LPs stay small, so it almost always finishes.  If any
operation would overflow, the solve restarts on the second tableau, which
uses GMP ``mpq_t``/``mpz_t`` throughout.  Both are exact, so the pivot
sequence does not depend on which one ran.
"""

from fractions import Fraction

from libc.stdlib cimport calloc, free, malloc

from edcs_lp.errors import SolverError


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef struct __mpq_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    ctypedef __mpq_struct* mpq_ptr

    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set(mpz_ptr, mpz_ptr)
    void mpz_set_ui(mpz_ptr, unsigned long)
    void mpz_mul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_submul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_lcm(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_divexact(mpz_ptr, mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_ptr)
    int mpz_set_str(mpz_ptr, const char*, int)
    char* mpz_get_str(char*, int, mpz_ptr)

    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_ptr)
    void mpq_set_ui(mpq_ptr, unsigned long, unsigned long)
    void mpq_set_si(mpq_ptr, long, unsigned long)
    int mpq_set_str(mpq_ptr, const char*, int)
    void mpq_canonicalize(mpq_ptr)
    void mpq_add(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_sub(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_mul(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_div(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_neg(mpq_ptr, mpq_ptr)
    int mpq_cmp(mpq_ptr, mpq_ptr)
    int mpq_sgn(mpq_ptr)
    int mpq_equal(mpq_ptr, mpq_ptr)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)

cdef extern from *:
    """
    #include <string.h>
    #include <gmp.h>
    static void edcs_free_str(char *s) {
        void (*freefunc)(void *, size_t);
        mp_get_memory_functions(NULL, NULL, &freefunc);
        freefunc(s, strlen(s) + 1);
    }
    """
    void edcs_free_str(char*)


cdef mpq_ptr new_q(Py_ssize_t k) except NULL:
    cdef mpq_ptr arr = <mpq_ptr> malloc(max(k, 1) * sizeof(__mpq_struct))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(k):
        mpq_init(&arr[i])
    return arr


cdef void free_q(mpq_ptr arr, Py_ssize_t k):
    cdef Py_ssize_t i
    if arr == NULL:
        return
    for i in range(k):
        mpq_clear(&arr[i])
    free(arr)


cdef mpz_ptr new_z(Py_ssize_t k) except NULL:
    cdef mpz_ptr arr = <mpz_ptr> malloc(max(k, 1) * sizeof(__mpz_struct))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(k):
        mpz_init(&arr[i])
    return arr


cdef void free_z(mpz_ptr arr, Py_ssize_t k):
    cdef Py_ssize_t i
    if arr == NULL:
        return
    for i in range(k):
        mpz_clear(&arr[i])
    free(arr)


cdef int set_q(mpq_ptr q, object value) except -1:
    value = Fraction(value)
    text = f"{value.numerator}/{value.denominator}".encode()
    if mpq_set_str(q, text, 10) != 0:
        raise ValueError(f"cannot convert {value!r}")
    mpq_canonicalize(q)
    return 0


cdef int set_z(mpz_ptr z, object value) except -1:
    if mpz_set_str(z, str(int(value)).encode(), 10) != 0:
        raise ValueError(f"cannot convert {value!r}")
    return 0


cdef object z_to_int(mpz_ptr z):
    cdef char* s = mpz_get_str(NULL, 16, z)
    try:
        return int(s.decode(), 16)
    finally:
        edcs_free_str(s)


cdef object q_to_fraction(mpq_ptr q):
    return Fraction(z_to_int(mpq_numref(q)), z_to_int(mpq_denref(q)))


cdef class _Tableau:
    cdef Py_ssize_t m, n, nnz
    cdef Py_ssize_t* col_start
    cdef Py_ssize_t* col_row
    cdef mpq_ptr col_val      # sign-adjusted rational entries
    cdef mpz_ptr icol_val     # same entries scaled per column to integers
    cdef mpz_ptr icost        # integer-scaled cost for the current phase
    cdef mpq_ptr cost         # rational cost for the current phase
    cdef mpq_ptr art_cost
    cdef mpq_ptr binv
    cdef mpq_ptr xb
    cdef mpq_ptr y
    cdef mpq_ptr alpha
    cdef mpq_ptr row_r
    cdef mpq_ptr tmp
    cdef mpz_ptr yi
    cdef mpz_ptr zt
    cdef Py_ssize_t* basis
    cdef Py_ssize_t* pos
    cdef Py_ssize_t* nz
    cdef int* sign
    cdef long pivots, cap

    def __cinit__(self, Py_ssize_t m, Py_ssize_t n, columns, rhs, long cap):
        cdef Py_ssize_t i, j, k, p
        self.m, self.n, self.cap, self.pivots = m, n, cap, 0
        self.nnz = sum(len(c) for c in columns)
        self.col_start = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
        self.col_row = <Py_ssize_t*> malloc(max(self.nnz, 1) * sizeof(Py_ssize_t))
        self.basis = <Py_ssize_t*> malloc(max(m, 1) * sizeof(Py_ssize_t))
        self.pos = <Py_ssize_t*> malloc((n + m) * sizeof(Py_ssize_t))
        self.nz = <Py_ssize_t*> malloc(max(m, 1) * sizeof(Py_ssize_t))
        self.sign = <int*> malloc(max(m, 1) * sizeof(int))
        if (self.col_start == NULL or self.col_row == NULL or self.basis == NULL
                or self.pos == NULL or self.nz == NULL or self.sign == NULL):
            raise MemoryError()
        self.col_val = new_q(self.nnz)
        self.icol_val = new_z(self.nnz)
        self.icost = new_z(n)
        self.cost = new_q(n)
        self.art_cost = new_q(1)
        self.binv = new_q(m * m)
        self.xb = new_q(m)
        self.y = new_q(m)
        self.alpha = new_q(m)
        self.row_r = new_q(m)
        self.tmp = new_q(2)
        self.yi = new_z(m)
        self.zt = new_z(3)

        rhs = [Fraction(b) for b in rhs]
        for i in range(m):
            self.sign[i] = -1 if rhs[i] < 0 else 1
            set_q(&self.xb[i], abs(rhs[i]))
            mpq_set_ui(&self.binv[i * m + i], 1, 1)
            self.basis[i] = n + i
        for j in range(n + m):
            self.pos[j] = -1
        for i in range(m):
            self.pos[n + i] = i
        p = 0
        for j in range(n):
            self.col_start[j] = p
            for i, a in columns[j]:
                self.col_row[p] = i
                set_q(&self.col_val[p], Fraction(a) * self.sign[i])
                p += 1
        self.col_start[n] = p

    def __dealloc__(self):
        free_q(self.col_val, self.nnz)
        free_z(self.icol_val, self.nnz)
        free_z(self.icost, self.n)
        free_q(self.cost, self.n)
        free_q(self.art_cost, 1)
        free_q(self.binv, self.m * self.m)
        free_q(self.xb, self.m)
        free_q(self.y, self.m)
        free_q(self.alpha, self.m)
        free_q(self.row_r, self.m)
        free_q(self.tmp, 2)
        free_z(self.yi, self.m)
        free_z(self.zt, 3)
        free(self.col_start)
        free(self.col_row)
        free(self.basis)
        free(self.pos)
        free(self.nz)
        free(self.sign)

    cdef int set_cost(self, list cost) except -1:
        """Load a phase cost and rebuild the integer-scaled pricing columns."""
        cdef Py_ssize_t j, p
        cdef mpz_ptr scale = &self.zt[0]
        for j in range(self.n):
            set_q(&self.cost[j], cost[j])
            mpz_set(scale, mpq_denref(&self.cost[j]))
            for p in range(self.col_start[j], self.col_start[j + 1]):
                mpz_lcm(scale, scale, mpq_denref(&self.col_val[p]))
            # icost = cost * scale, icol = a * scale (exact integers)
            mpz_divexact(&self.zt[1], scale, mpq_denref(&self.cost[j]))
            mpz_mul(&self.icost[j], mpq_numref(&self.cost[j]), &self.zt[1])
            for p in range(self.col_start[j], self.col_start[j + 1]):
                mpz_divexact(&self.zt[1], scale, mpq_denref(&self.col_val[p]))
                mpz_mul(&self.icol_val[p], mpq_numref(&self.col_val[p]), &self.zt[1])
        return 0

    cdef mpq_ptr basic_cost(self, Py_ssize_t var):
        if var < self.n:
            return &self.cost[var]
        return self.art_cost

    cdef void compute_duals(self):
        cdef Py_ssize_t i, k, m = self.m
        cdef mpq_ptr cb
        for k in range(m):
            mpq_set_ui(&self.y[k], 0, 1)
        for i in range(m):
            cb = self.basic_cost(self.basis[i])
            if mpq_sgn(cb) == 0:
                continue
            for k in range(m):
                if mpq_sgn(&self.binv[i * m + k]) != 0:
                    mpq_mul(&self.tmp[0], cb, &self.binv[i * m + k])
                    mpq_add(&self.y[k], &self.y[k], &self.tmp[0])

    cdef void ftran(self, Py_ssize_t j):
        cdef Py_ssize_t i, p, k, m = self.m
        if j >= self.n:
            k = j - self.n
            for i in range(m):
                mpq_set(&self.alpha[i], &self.binv[i * m + k])
            return
        for i in range(m):
            mpq_set_ui(&self.alpha[i], 0, 1)
            for p in range(self.col_start[j], self.col_start[j + 1]):
                k = self.col_row[p]
                if mpq_sgn(&self.binv[i * m + k]) != 0:
                    mpq_mul(&self.tmp[0], &self.binv[i * m + k], &self.col_val[p])
                    mpq_add(&self.alpha[i], &self.alpha[i], &self.tmp[0])

    cdef int pivot(self, Py_ssize_t r, Py_ssize_t q) except -1:
        """Pivot on row r with entering column q; ``alpha`` must hold B^-1 a_q."""
        cdef Py_ssize_t i, k, t, cnt = 0, m = self.m
        cdef mpq_ptr ar = &self.tmp[1]
        mpq_set(ar, &self.alpha[r])
        for k in range(m):
            if mpq_sgn(&self.binv[r * m + k]) != 0:
                mpq_div(&self.binv[r * m + k], &self.binv[r * m + k], ar)
                self.nz[cnt] = k
                cnt += 1
        mpq_div(&self.xb[r], &self.xb[r], ar)
        for i in range(m):
            if i == r or mpq_sgn(&self.alpha[i]) == 0:
                continue
            for t in range(cnt):
                k = self.nz[t]
                mpq_mul(&self.tmp[0], &self.alpha[i], &self.binv[r * m + k])
                mpq_sub(&self.binv[i * m + k], &self.binv[i * m + k], &self.tmp[0])
            if mpq_sgn(&self.xb[r]) != 0:
                mpq_mul(&self.tmp[0], &self.alpha[i], &self.xb[r])
                mpq_sub(&self.xb[i], &self.xb[i], &self.tmp[0])
        self.pos[self.basis[r]] = -1
        self.basis[r] = q
        self.pos[q] = r
        self.pivots += 1
        if self.pivots > self.cap:
            raise SolverError(f"iteration cap of {self.cap} pivots exceeded")
        return 0

    cdef int run_phase(self) except -1:
        """Return 0 at optimality, 1 on an unbounded ray."""
        cdef Py_ssize_t i, j, k, p, q, r, m = self.m, n = self.n
        cdef mpz_ptr denom = &self.zt[0]
        cdef mpz_ptr acc = &self.zt[1]
        cdef mpq_ptr best = &self.tmp[0]
        cdef __mpq_struct dq_s
        cdef __mpq_struct t_s
        cdef __mpq_struct f_s
        cdef mpq_ptr dq = &dq_s
        cdef mpq_ptr t = &t_s
        cdef mpq_ptr factor = &f_s
        cdef int c
        mpq_init(dq)
        mpq_init(t)
        mpq_init(factor)
        try:
            self.compute_duals()
            while True:
                mpz_set_ui(denom, 1)
                for i in range(m):
                    if mpq_sgn(&self.y[i]) != 0:
                        mpz_lcm(denom, denom, mpq_denref(&self.y[i]))
                for i in range(m):
                    mpz_divexact(&self.yi[i], denom, mpq_denref(&self.y[i]))
                    mpz_mul(&self.yi[i], &self.yi[i], mpq_numref(&self.y[i]))
                q = -1
                for j in range(n):
                    if self.pos[j] >= 0:
                        continue
                    mpz_mul(acc, &self.icost[j], denom)
                    for p in range(self.col_start[j], self.col_start[j + 1]):
                        mpz_submul(acc, &self.yi[self.col_row[p]], &self.icol_val[p])
                    if mpz_sgn(acc) > 0:
                        q = j
                        break
                if q < 0:
                    return 0
                mpq_set(dq, &self.cost[q])
                for p in range(self.col_start[q], self.col_start[q + 1]):
                    mpq_mul(t, &self.y[self.col_row[p]], &self.col_val[p])
                    mpq_sub(dq, dq, t)
                self.ftran(q)
                r = -1
                for i in range(m):
                    if mpq_sgn(&self.alpha[i]) > 0:
                        mpq_div(t, &self.xb[i], &self.alpha[i])
                        if r < 0:
                            mpq_set(best, t)
                            r = i
                        else:
                            c = mpq_cmp(t, best)
                            if c < 0 or (c == 0 and self.basis[i] < self.basis[r]):
                                mpq_set(best, t)
                                r = i
                if r < 0:
                    return 1
                mpq_div(factor, dq, &self.alpha[r])
                for k in range(m):
                    mpq_set(&self.row_r[k], &self.binv[r * m + k])
                self.pivot(r, q)
                for k in range(m):
                    if mpq_sgn(&self.row_r[k]) != 0:
                        mpq_mul(t, factor, &self.row_r[k])
                        mpq_add(&self.y[k], &self.y[k], t)
        finally:
            mpq_clear(dq)
            mpq_clear(t)
            mpq_clear(factor)

    cdef int drive_out_artificials(self) except -1:
        cdef Py_ssize_t r, j, p, m = self.m, n = self.n
        cdef __mpq_struct v_s
        cdef mpq_ptr v = &v_s
        mpq_init(v)
        try:
            for r in range(m):
                if self.basis[r] < n:
                    continue
                for j in range(n):
                    if self.pos[j] >= 0:
                        continue
                    mpq_set_ui(v, 0, 1)
                    for p in range(self.col_start[j], self.col_start[j + 1]):
                        if mpq_sgn(&self.binv[r * m + self.col_row[p]]) != 0:
                            mpq_mul(&self.tmp[0], &self.binv[r * m + self.col_row[p]],
                                    &self.col_val[p])
                            mpq_add(v, v, &self.tmp[0])
                    if mpq_sgn(v) != 0:
                        self.ftran(j)
                        self.pivot(r, j)
                        break
        finally:
            mpq_clear(v)
        return 0


def _solve_gmp(Py_ssize_t m, Py_ssize_t n, columns, rhs, cost, long cap):
    cdef _Tableau tab = _Tableau(m, n, columns, rhs, cap)
    cdef Py_ssize_t i, j
    cdef long phase1
    cost = [Fraction(c) for c in cost]

    tab.set_cost([Fraction(0)] * n)
    mpq_set_si(tab.art_cost, -1, 1)
    tab.run_phase()
    phase1 = tab.pivots
    infeasible = False
    for i in range(m):
        if tab.basis[i] >= n and mpq_sgn(&tab.xb[i]) > 0:
            infeasible = True
    if infeasible:
        return {"status": "infeasible", "pivots": tab.pivots, "phase1_pivots": phase1}
    tab.drive_out_artificials()

    mpq_set_ui(tab.art_cost, 0, 1)
    tab.set_cost(cost)
    if tab.run_phase() == 1:
        return {"status": "unbounded", "pivots": tab.pivots, "phase1_pivots": phase1}

    x = [Fraction(0)] * n
    basis = []
    for i in range(m):
        basis.append(tab.basis[i])
        if tab.basis[i] < n:
            x[tab.basis[i]] = q_to_fraction(&tab.xb[i])
    tab.compute_duals()
    y = [q_to_fraction(&tab.y[i]) * tab.sign[i] for i in range(m)]
    objective = sum((cost[j] * x[j] for j in range(n) if cost[j]), Fraction(0))
    return {"status": "optimal", "basis": basis, "x": x, "y": y, "objective": objective,
            "pivots": tab.pivots, "phase1_pivots": phase1}


# ---------------------------------------------------------------------------
# machine-word rationals

cdef extern from *:
    """
    #include <stdint.h>
    typedef struct { int64_t n; int64_t d; } rq;
    #define RQ_MAX ((__int128)INT64_MAX)

    static inline uint64_t rq_ugcd(uint64_t a, uint64_t b) {
        int shift;
        if (!a) return b;
        if (!b) return a;
        shift = __builtin_ctzll(a | b);
        a >>= __builtin_ctzll(a);
        do {
            b >>= __builtin_ctzll(b);
            if (a > b) { uint64_t t = b; b = a; a = t; }
            b -= a;
        } while (b);
        return a << shift;
    }
    static inline uint64_t rq_abs(int64_t x) {
        return x < 0 ? (uint64_t)0 - (uint64_t)x : (uint64_t)x;
    }
    static inline int rq_fits(__int128 x) { return x <= RQ_MAX && x >= -RQ_MAX; }
    static const rq RQ_ZERO = {0, 1};

    static inline rq rq_mul(rq a, rq b, int *ovf) {
        rq out;
        int64_t g1, g2;
        __int128 n, d;
        if (a.n == 0 || b.n == 0) return RQ_ZERO;
        g1 = (int64_t)rq_ugcd(rq_abs(a.n), (uint64_t)b.d);
        g2 = (int64_t)rq_ugcd(rq_abs(b.n), (uint64_t)a.d);
        n = (__int128)(a.n / g1) * (b.n / g2);
        d = (__int128)(a.d / g2) * (b.d / g1);
        if (!rq_fits(n) || !rq_fits(d)) { *ovf = 1; return RQ_ZERO; }
        out.n = (int64_t)n;
        out.d = (int64_t)d;
        return out;
    }
    static inline rq rq_add(rq a, rq b, int *ovf) {
        rq out;
        int64_t g, g2;
        __int128 t, d;
        if (a.n == 0) return b;
        if (b.n == 0) return a;
        g = (int64_t)rq_ugcd((uint64_t)a.d, (uint64_t)b.d);
        t = (__int128)a.n * (b.d / g) + (__int128)b.n * (a.d / g);
        if (t == 0) return RQ_ZERO;
        if (!rq_fits(t)) { *ovf = 1; return RQ_ZERO; }
        g2 = (int64_t)rq_ugcd(rq_abs((int64_t)t), (uint64_t)g);
        d = (__int128)(a.d / g) * (b.d / g2);
        if (!rq_fits(d)) { *ovf = 1; return RQ_ZERO; }
        out.n = (int64_t)(t / g2);
        out.d = (int64_t)d;
        return out;
    }
    static inline rq rq_neg(rq a) { a.n = -a.n; return a; }
    static inline rq rq_sub(rq a, rq b, int *ovf) { return rq_add(a, rq_neg(b), ovf); }
    static inline rq rq_div(rq a, rq b, int *ovf) {
        rq inv;
        inv.n = b.n < 0 ? -b.d : b.d;
        inv.d = b.n < 0 ? -b.n : b.n;
        return rq_mul(a, inv, ovf);
    }
    static inline int rq_cmp(rq a, rq b) {
        __int128 l = (__int128)a.n * b.d, r = (__int128)b.n * a.d;
        return (l > r) - (l < r);
    }
    """
    ctypedef struct rq:
        long long n
        long long d
    rq RQ_ZERO
    rq rq_mul(rq, rq, int*)
    rq rq_add(rq, rq, int*)
    rq rq_sub(rq, rq, int*)
    rq rq_div(rq, rq, int*)
    int rq_cmp(rq, rq)


class _Overflow(Exception):
    pass


cdef int set_rq(rq* out, object value) except -1:
    value = Fraction(value)
    if abs(value.numerator) >= 2 ** 62 or value.denominator >= 2 ** 62:
        raise _Overflow()
    out.n = value.numerator
    out.d = value.denominator
    return 0


cdef rq* new_rq(Py_ssize_t k) except NULL:
    cdef rq* arr = <rq*> malloc(max(k, 1) * sizeof(rq))
    cdef Py_ssize_t i
    if arr == NULL:
        raise MemoryError()
    for i in range(k):
        arr[i] = RQ_ZERO
    return arr


cdef class _FastTableau:
    cdef Py_ssize_t m, n, nnz
    cdef Py_ssize_t* col_start
    cdef Py_ssize_t* col_row
    cdef rq* col_val
    cdef rq* cost
    cdef rq art_cost
    cdef rq* binv
    cdef rq* xb
    cdef rq* y
    cdef rq* alpha
    cdef rq* row_r
    cdef Py_ssize_t* basis
    cdef Py_ssize_t* pos
    cdef Py_ssize_t* nz
    cdef int* sign
    cdef int ovf
    cdef long pivots, cap

    def __cinit__(self, Py_ssize_t m, Py_ssize_t n, columns, rhs, long cap):
        cdef Py_ssize_t i, j, p
        self.m, self.n, self.cap, self.pivots, self.ovf = m, n, cap, 0, 0
        self.art_cost = RQ_ZERO
        self.nnz = sum(len(c) for c in columns)
        self.col_start = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
        self.col_row = <Py_ssize_t*> malloc(max(self.nnz, 1) * sizeof(Py_ssize_t))
        self.basis = <Py_ssize_t*> malloc(max(m, 1) * sizeof(Py_ssize_t))
        self.pos = <Py_ssize_t*> malloc((n + m) * sizeof(Py_ssize_t))
        self.nz = <Py_ssize_t*> malloc(max(m, 1) * sizeof(Py_ssize_t))
        self.sign = <int*> malloc(max(m, 1) * sizeof(int))
        if (self.col_start == NULL or self.col_row == NULL or self.basis == NULL
                or self.pos == NULL or self.nz == NULL or self.sign == NULL):
            raise MemoryError()
        self.col_val = new_rq(self.nnz)
        self.cost = new_rq(n)
        self.binv = new_rq(m * m)
        self.xb = new_rq(m)
        self.y = new_rq(m)
        self.alpha = new_rq(m)
        self.row_r = new_rq(m)

        rhs = [Fraction(b) for b in rhs]
        for i in range(m):
            self.sign[i] = -1 if rhs[i] < 0 else 1
            set_rq(&self.xb[i], abs(rhs[i]))
            self.binv[i * m + i].n = 1
            self.basis[i] = n + i
        for j in range(n + m):
            self.pos[j] = -1
        for i in range(m):
            self.pos[n + i] = i
        p = 0
        for j in range(n):
            self.col_start[j] = p
            for i, a in columns[j]:
                self.col_row[p] = i
                set_rq(&self.col_val[p], Fraction(a) * self.sign[i])
                p += 1
        self.col_start[n] = p

    def __dealloc__(self):
        free(self.col_start)
        free(self.col_row)
        free(self.basis)
        free(self.pos)
        free(self.nz)
        free(self.sign)
        free(self.col_val)
        free(self.cost)
        free(self.binv)
        free(self.xb)
        free(self.y)
        free(self.alpha)
        free(self.row_r)

    cdef int check(self) except -1:
        if self.ovf:
            raise _Overflow()
        return 0

    cdef int set_cost(self, list cost) except -1:
        cdef Py_ssize_t j
        for j in range(self.n):
            set_rq(&self.cost[j], cost[j])
        return 0

    cdef rq basic_cost(self, Py_ssize_t var):
        if var < self.n:
            return self.cost[var]
        return self.art_cost

    cdef int compute_duals(self) except -1:
        cdef Py_ssize_t i, k, m = self.m
        cdef rq cb
        for k in range(m):
            self.y[k] = RQ_ZERO
        for i in range(m):
            cb = self.basic_cost(self.basis[i])
            if cb.n == 0:
                continue
            for k in range(m):
                if self.binv[i * m + k].n != 0:
                    self.y[k] = rq_add(self.y[k], rq_mul(cb, self.binv[i * m + k], &self.ovf),
                                       &self.ovf)
        return self.check()

    cdef int ftran(self, Py_ssize_t j) except -1:
        cdef Py_ssize_t i, p, k, m = self.m
        cdef rq acc
        if j >= self.n:
            k = j - self.n
            for i in range(m):
                self.alpha[i] = self.binv[i * m + k]
            return 0
        for i in range(m):
            acc = RQ_ZERO
            for p in range(self.col_start[j], self.col_start[j + 1]):
                k = self.col_row[p]
                if self.binv[i * m + k].n != 0:
                    acc = rq_add(acc, rq_mul(self.binv[i * m + k], self.col_val[p], &self.ovf),
                                 &self.ovf)
            self.alpha[i] = acc
        return self.check()

    cdef int pivot(self, Py_ssize_t r, Py_ssize_t q) except -1:
        """Pivot on row r with entering column q; ``alpha`` must hold B^-1 a_q."""
        cdef Py_ssize_t i, k, t, cnt = 0, m = self.m
        cdef rq ar = self.alpha[r]
        cdef rq f
        cdef rq* row_i
        cdef rq* row_r = &self.binv[r * m]
        for k in range(m):
            if row_r[k].n != 0:
                row_r[k] = rq_div(row_r[k], ar, &self.ovf)
                self.nz[cnt] = k
                cnt += 1
        self.xb[r] = rq_div(self.xb[r], ar, &self.ovf)
        for i in range(m):
            f = self.alpha[i]
            if i == r or f.n == 0:
                continue
            row_i = &self.binv[i * m]
            for t in range(cnt):
                k = self.nz[t]
                row_i[k] = rq_sub(row_i[k], rq_mul(f, row_r[k], &self.ovf), &self.ovf)
            if self.xb[r].n != 0:
                self.xb[i] = rq_sub(self.xb[i], rq_mul(f, self.xb[r], &self.ovf), &self.ovf)
        self.check()
        self.pos[self.basis[r]] = -1
        self.basis[r] = q
        self.pos[q] = r
        self.pivots += 1
        if self.pivots > self.cap:
            raise SolverError(f"iteration cap of {self.cap} pivots exceeded")
        return 0

    cdef int run_phase(self) except -1:
        """Bland-rule pivoting; returns 0 when optimal, 1 on an unbounded ray."""
        cdef Py_ssize_t i, j, k, p, q, r, m = self.m, n = self.n
        cdef rq acc, dq, best, t, factor
        cdef int c
        self.compute_duals()
        while True:
            q = -1
            for j in range(n):
                if self.pos[j] >= 0:
                    continue
                acc = self.cost[j]
                for p in range(self.col_start[j], self.col_start[j + 1]):
                    if self.y[self.col_row[p]].n != 0:
                        acc = rq_sub(acc, rq_mul(self.y[self.col_row[p]], self.col_val[p],
                                                 &self.ovf), &self.ovf)
                if acc.n > 0:
                    q = j
                    dq = acc
                    break
            self.check()
            if q < 0:
                return 0
            self.ftran(q)
            r = -1
            for i in range(m):
                if self.alpha[i].n > 0:
                    t = rq_div(self.xb[i], self.alpha[i], &self.ovf)
                    if r < 0:
                        best = t
                        r = i
                    else:
                        c = rq_cmp(t, best)
                        if c < 0 or (c == 0 and self.basis[i] < self.basis[r]):
                            best = t
                            r = i
            self.check()
            if r < 0:
                return 1
            factor = rq_div(dq, self.alpha[r], &self.ovf)
            for k in range(m):
                self.row_r[k] = self.binv[r * m + k]
            self.pivot(r, q)
            for k in range(m):
                if self.row_r[k].n != 0:
                    self.y[k] = rq_add(self.y[k], rq_mul(factor, self.row_r[k], &self.ovf),
                                       &self.ovf)
            self.check()

    cdef int drive_out_artificials(self) except -1:
        cdef Py_ssize_t r, j, p, m = self.m, n = self.n
        cdef rq v
        for r in range(m):
            if self.basis[r] < n:
                continue
            for j in range(n):
                if self.pos[j] >= 0:
                    continue
                v = RQ_ZERO
                for p in range(self.col_start[j], self.col_start[j + 1]):
                    if self.binv[r * m + self.col_row[p]].n != 0:
                        v = rq_add(v, rq_mul(self.binv[r * m + self.col_row[p]],
                                             self.col_val[p], &self.ovf), &self.ovf)
                self.check()
                if v.n != 0:
                    self.ftran(j)
                    self.pivot(r, j)
                    break
        return 0


cdef object rq_to_fraction(rq v):
    return Fraction(v.n, v.d)


def _solve_fast(Py_ssize_t m, Py_ssize_t n, columns, rhs, cost, long cap):
    cdef _FastTableau tab = _FastTableau(m, n, columns, rhs, cap)
    cdef Py_ssize_t i, j
    cdef long phase1
    cost = [Fraction(c) for c in cost]

    tab.set_cost([Fraction(0)] * n)
    tab.art_cost.n = -1
    tab.art_cost.d = 1
    tab.run_phase()
    phase1 = tab.pivots
    for i in range(m):
        if tab.basis[i] >= n and tab.xb[i].n > 0:
            return {"status": "infeasible", "pivots": tab.pivots, "phase1_pivots": phase1}
    tab.drive_out_artificials()

    tab.art_cost = RQ_ZERO
    tab.set_cost(cost)
    if tab.run_phase() == 1:
        return {"status": "unbounded", "pivots": tab.pivots, "phase1_pivots": phase1}

    x = [Fraction(0)] * n
    basis = []
    for i in range(m):
        basis.append(tab.basis[i])
        if tab.basis[i] < n:
            x[tab.basis[i]] = rq_to_fraction(tab.xb[i])
    tab.compute_duals()
    y = [rq_to_fraction(tab.y[i]) * tab.sign[i] for i in range(m)]
    objective = sum((cost[j] * x[j] for j in range(n) if cost[j]), Fraction(0))
    return {"status": "optimal", "basis": basis, "x": x, "y": y, "objective": objective,
            "pivots": tab.pivots, "phase1_pivots": phase1}


def solve(Py_ssize_t m, Py_ssize_t n, columns, rhs, cost, long cap, arithmetic="auto"):
    """Same contract as ``edcs_lp.simplex._pure.solve``.

    *arithmetic* is ``"auto"`` (64-bit first, GMP on overflow), ``"word"``
    (64-bit only; raises ``OverflowError``) or ``"gmp"``.  The extra key
    ``arithmetic`` in the result records which tableau produced it.
    """
    if arithmetic not in ("auto", "word", "gmp"):
        raise ValueError(f"unknown arithmetic {arithmetic!r}")
    if arithmetic != "gmp":
        try:
            out = _solve_fast(m, n, columns, rhs, cost, cap)
            out["arithmetic"] = "word"
            return out
        except _Overflow:
            if arithmetic == "word":
                raise OverflowError("64-bit rational overflow")
    out = _solve_gmp(m, n, columns, rhs, cost, cap)
    out["arithmetic"] = "gmp"
    return out
