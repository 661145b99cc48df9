# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled compute core.

Same interface as cksim._pyengine: batched bracket/Casimir residuals in
extended precision (long double) and fixed-step flows with dual-number
gradients in double precision.  Kept free of Python objects in the inner
loops; the structure deliberately parallels the pure module so the two can
cross-check each other.
"""

import numpy as np

from .errors import BarrierSingularity, DomainError

from libc.math cimport (cos, cosh, exp, expm1, fabs, isfinite, sin, sinh,
                        sqrt)

cdef extern from "math.h" nogil:
    long double expl(long double)
    long double expm1l(long double)
    long double sinhl(long double)
    long double coshl(long double)
    long double fabsl(long double)

name = "compiled"

TERM_NONE = 0
TERM_SINGULARITY = 1
TERM_NONFINITE = 2
TERM_DOMAIN = 3

cdef enum:
    C_TERM_NONE = 0
    C_TERM_SINGULARITY = 1
    C_TERM_NONFINITE = 2
    C_TERM_DOMAIN = 3

cdef double SING_GUARD = 1e-6
cdef double BARRIER_GUARD = 1e-10
cdef double POLAR_GUARD = 1e-12
cdef double MIDPOINT_TOL = 1e-12
cdef int MIDPOINT_MAX_ITER = 50
cdef double SWITCH = 1e-4

cdef long double LC6 = <long double>1.0 / <long double>6.0
cdef long double LC120 = <long double>1.0 / <long double>120.0
cdef long double LC3 = <long double>1.0 / <long double>3.0
cdef long double LC30 = <long double>1.0 / <long double>30.0


# ---------------------------------------------------------------------------
# long double duals for the residual batches

ctypedef struct LD:
    long double v
    long double d


cdef inline LD lmk(long double v, long double d) noexcept nogil:
    cdef LD r
    r.v = v
    r.d = d
    return r


cdef inline LD ladd(LD a, LD b) noexcept nogil:
    return lmk(a.v + b.v, a.d + b.d)


cdef inline LD lsub(LD a, LD b) noexcept nogil:
    return lmk(a.v - b.v, a.d - b.d)


cdef inline LD lmul(LD a, LD b) noexcept nogil:
    return lmk(a.v * b.v, a.d * b.v + a.v * b.d)


cdef inline LD ldiv(LD a, LD b) noexcept nogil:
    cdef long double q = a.v / b.v
    return lmk(q, (a.d - q * b.d) / b.v)


cdef inline LD lscale(long double c, LD a) noexcept nogil:
    return lmk(c * a.v, c * a.d)


cdef inline LD lexp(LD a) noexcept nogil:
    cdef long double e = expl(a.v)
    return lmk(e, e * a.d)


cdef inline LD lsinhc(LD a) noexcept nogil:
    cdef long double v = a.v, u2, val, slope
    if fabsl(v) < SWITCH:
        u2 = v * v
        val = 1.0 + u2 * (LC6 + u2 * LC120)
        slope = v * (LC3 + u2 * LC30)
    else:
        val = sinhl(v) / v
        slope = coshl(v) / v - sinhl(v) / (v * v)
    return lmk(val, slope * a.d)


cdef inline long double lsinhc_v(long double v) noexcept nogil:
    cdef long double u2
    if fabsl(v) < SWITCH:
        u2 = v * v
        return 1.0 + u2 * (LC6 + u2 * LC120)
    return sinhl(v) / v


cdef void eval_all_ld(long double q1v, long double q2v, long double p1v,
                      long double p2v, int seed, long double z,
                      long double b1, long double b2, long double k1,
                      long double k2, LD *out) noexcept nogil:
    """out[0..4] = J-, J3, J+, expanded Casimir, generator-route Casimir."""
    cdef LD q1 = lmk(q1v, 1.0 if seed == 0 else 0.0)
    cdef LD q2 = lmk(q2v, 1.0 if seed == 1 else 0.0)
    cdef LD p1 = lmk(p1v, 1.0 if seed == 2 else 0.0)
    cdef LD p2 = lmk(p2v, 1.0 if seed == 3 else 0.0)
    cdef LD u1 = lscale(k1 * k2 * z, lmul(q1, q1))
    cdef LD u2 = lscale(k1 * z, lmul(q2, q2))
    cdef LD a = lsinhc(u1)
    cdef LD b = lsinhc(u2)
    cdef LD e_up = lexp(u2)
    cdef LD e_dn = lexp(lscale(-1.0, u1))
    cdef LD jm = ladd(lmul(q2, q2), lscale(k2, lmul(q1, q1)))
    cdef LD j3 = ladd(lmul(lmul(lmul(a, q1), p1), e_up),
                      lmul(lmul(lmul(b, q2), p2), e_dn))
    cdef LD t1 = lmul(a, lmul(p1, p1))
    cdef LD t2 = lmul(b, lmul(p2, p2))
    cdef LD one = lmk(1.0, 0.0)
    if b1 != 0.0:
        t1 = ladd(t1, ldiv(lscale(b1, one), lmul(lmul(q1, q1), a)))
    if b2 != 0.0:
        t2 = ladd(t2, ldiv(lscale(b2, one), lmul(lmul(q2, q2), b)))
    cdef LD jp = ladd(lmul(t1, e_up), lscale(k2, lmul(t2, e_dn)))

    cdef LD e_cross = lexp(lsub(u2, u1))
    cdef LD w = lsub(lscale(k2, lmul(q1, p2)), lmul(q2, p1))
    cdef LD c = lmul(lmul(lmul(a, b), lmul(w, w)), e_cross)
    if b1 != 0.0 or b2 != 0.0:
        c = ladd(c, lscale(k2, ladd(lscale(b1, lexp(lscale(2.0, u2))),
                                    lscale(b2, lexp(lscale(-2.0, u1))))))
    if b1 != 0.0:
        c = ladd(c, lmul(lscale(b1, ldiv(lmul(q2, q2), lmul(q1, q1))),
                         lmul(ldiv(b, a), e_cross)))
    if b2 != 0.0:
        c = ladd(c, lmul(lscale(k2 * k2 * b2,
                                ldiv(lmul(q1, q1), lmul(q2, q2))),
                         lmul(ldiv(a, b), e_cross)))

    cdef LD ccoal = lsub(lmul(lmul(jm, lsinhc(lscale(k1 * z, jm))), jp),
                         lscale(k2, lmul(j3, j3)))
    out[0] = jm
    out[1] = j3
    out[2] = jp
    out[3] = c
    out[4] = ccoal


def bracket_stats(states, double z, double b1, double b2, double k1,
                  double k2):
    """Residual batch; see the pure backend for the column layout."""
    arr = np.ascontiguousarray(states, dtype=np.float64)
    cdef double[:, :] s = arr
    cdef Py_ssize_t n = s.shape[0], i
    out_arr = np.empty((n, 7), dtype=np.float64)
    cdef double[:, :] out = out_arr
    cdef LD g[4][5]
    cdef long double q1, q2, p1, p2, r1, r2, r3, cjm, cj3, cjp, dual, az
    cdef int k
    with nogil:
        for i in range(n):
            q1 = s[i, 0]
            q2 = s[i, 1]
            p1 = s[i, 2]
            p2 = s[i, 3]
            for k in range(4):
                eval_all_ld(q1, q2, p1, p2, k, z, b1, b2, k1, k2, &g[k][0])
            az = (<long double>k1) * (<long double>z) * g[0][0].v
            r1 = (g[0][0].d * g[2][2].d - g[2][0].d * g[0][2].d
                  + g[1][0].d * g[3][2].d - g[3][0].d * g[1][2].d) \
                - 4.0 * (<long double>k2) * g[0][1].v
            r2 = (g[0][1].d * g[2][2].d - g[2][1].d * g[0][2].d
                  + g[1][1].d * g[3][2].d - g[3][1].d * g[1][2].d) \
                - 2.0 * g[0][2].v * coshl(az)
            r3 = (g[0][1].d * g[2][0].d - g[2][1].d * g[0][0].d
                  + g[1][1].d * g[3][0].d - g[3][1].d * g[1][0].d) \
                + 2.0 * g[0][0].v * lsinhc_v(az)
            cjm = (g[0][3].d * g[2][0].d - g[2][3].d * g[0][0].d
                   + g[1][3].d * g[3][0].d - g[3][3].d * g[1][0].d)
            cj3 = (g[0][3].d * g[2][1].d - g[2][3].d * g[0][1].d
                   + g[1][3].d * g[3][1].d - g[3][3].d * g[1][1].d)
            cjp = (g[0][3].d * g[2][2].d - g[2][3].d * g[0][2].d
                   + g[1][3].d * g[3][2].d - g[3][3].d * g[1][2].d)
            dual = g[0][4].v - g[0][3].v
            out[i, 0] = <double>r1
            out[i, 1] = <double>r2
            out[i, 2] = <double>r3
            out[i, 3] = <double>cjm
            out[i, 4] = <double>cj3
            out[i, 5] = <double>cjp
            out[i, 6] = <double>dual
    return out_arr


# ---------------------------------------------------------------------------
# double duals for the flows

ctypedef struct DD:
    double v
    double d


cdef inline DD dmk(double v, double d) noexcept nogil:
    cdef DD r
    r.v = v
    r.d = d
    return r


cdef inline DD dadd(DD a, DD b) noexcept nogil:
    return dmk(a.v + b.v, a.d + b.d)


cdef inline DD dsub(DD a, DD b) noexcept nogil:
    return dmk(a.v - b.v, a.d - b.d)


cdef inline DD dmul(DD a, DD b) noexcept nogil:
    return dmk(a.v * b.v, a.d * b.v + a.v * b.d)


cdef inline DD ddiv(DD a, DD b) noexcept nogil:
    cdef double q = a.v / b.v
    return dmk(q, (a.d - q * b.d) / b.v)


cdef inline DD dscale(double c, DD a) noexcept nogil:
    return dmk(c * a.v, c * a.d)


cdef inline DD dshift(double c, DD a) noexcept nogil:
    return dmk(c + a.v, a.d)


cdef inline DD dexp(DD a) noexcept nogil:
    cdef double e = exp(a.v)
    return dmk(e, e * a.d)


cdef inline DD dsqrt(DD a) noexcept nogil:
    cdef double s = sqrt(a.v)
    return dmk(s, 0.5 * a.d / s)


cdef inline DD dsinhc(DD a) noexcept nogil:
    cdef double v = a.v, u2, val, slope
    if fabs(v) < SWITCH:
        u2 = v * v
        val = 1.0 + u2 * (1.0 / 6.0 + u2 * (1.0 / 120.0))
        slope = v * (1.0 / 3.0 + u2 * (1.0 / 30.0))
    else:
        val = sinh(v) / v
        slope = cosh(v) / v - sinh(v) / (v * v)
    return dmk(val, slope * a.d)


cdef inline DD dexpm1c(DD a) noexcept nogil:
    cdef double v = a.v, val, slope, e
    if fabs(v) < SWITCH:
        val = 1.0 + v * (0.5 + v * (1.0 / 6.0 + v * (1.0 / 24.0)))
        slope = 0.5 + v * (1.0 / 3.0 + v * (0.125 + v * (1.0 / 30.0)))
    else:
        e = exp(v)
        val = expm1(v) / v
        slope = (e - val) / v
    return dmk(val, slope * a.d)


cdef inline DD dgsin(double k, DD x) noexcept nogil:
    cdef double rk
    if k > 0.0:
        rk = sqrt(k)
        return dmk(sin(rk * x.v) / rk, cos(rk * x.v) * x.d)
    if k < 0.0:
        rk = sqrt(-k)
        return dmk(sinh(rk * x.v) / rk, cosh(rk * x.v) * x.d)
    return x


cdef inline DD dgcos(double k, DD x) noexcept nogil:
    cdef double rk
    if k > 0.0:
        rk = sqrt(k)
        return dmk(cos(rk * x.v), -rk * sin(rk * x.v) * x.d)
    if k < 0.0:
        rk = sqrt(-k)
        return dmk(cosh(rk * x.v), rk * sinh(rk * x.v) * x.d)
    return dmk(1.0, 0.0)


# Hamiltonian evaluations; return 0, or a termination code on failure.

cdef int h_beltrami_dd(double *y, int seed, int family, int variant,
                       double k1, double k2, double z, double b1, double b2,
                       double beta0, double gamma, int sign, DD *out) noexcept nogil:
    cdef DD q1 = dmk(y[0], 1.0 if seed == 0 else 0.0)
    cdef DD q2 = dmk(y[1], 1.0 if seed == 1 else 0.0)
    cdef DD p1 = dmk(y[2], 1.0 if seed == 2 else 0.0)
    cdef DD p2 = dmk(y[3], 1.0 if seed == 3 else 0.0)
    if b1 != 0.0 and fabs(y[0]) < BARRIER_GUARD:
        return C_TERM_SINGULARITY
    if b2 != 0.0 and fabs(y[1]) < BARRIER_GUARD:
        return C_TERM_SINGULARITY
    cdef DD u1 = dscale(k1 * k2 * z, dmul(q1, q1))
    cdef DD u2 = dscale(k1 * z, dmul(q2, q2))
    cdef DD a = dsinhc(u1)
    cdef DD b = dsinhc(u2)
    cdef DD e_up = dexp(u2)
    cdef DD e_dn = dexp(dscale(-1.0, u1))
    cdef DD jm = dadd(dmul(q2, q2), dscale(k2, dmul(q1, q1)))
    cdef DD one = dmk(1.0, 0.0)
    cdef DD t1 = dmul(a, dmul(p1, p1))
    cdef DD t2 = dmul(b, dmul(p2, p2))
    if b1 != 0.0:
        t1 = dadd(t1, ddiv(dscale(b1, one), dmul(dmul(q1, q1), a)))
    if b2 != 0.0:
        t2 = dadd(t2, ddiv(dscale(b2, one), dmul(dmul(q2, q2), b)))
    cdef DD jp = dadd(dmul(t1, e_up), dscale(k2, dmul(t2, e_dn)))
    cdef DD h = dscale(0.5, jp)
    cdef DD u, den
    if family == 1:
        h = dadd(h, dscale(k2 * beta0, dmul(jm, dsinhc(dscale(k1 * z, jm)))))
    elif family == 2:
        u = dscale(2.0 * k1 * z, jm)
        den = dmul(jm, dexpm1c(u))
        if den.v <= 0.0:
            return C_TERM_DOMAIN
        h = dsub(h, dscale(k2 * gamma, dmul(dsqrt(ddiv(one, den)), dexp(u))))
    if variant == 1:
        h = dmul(h, dexp(dscale(k1 * z, jm)))
    out[0] = dscale(<double>sign, h)
    return 0


cdef int casimir_beltrami_dd(double *y, int seed, double k1, double k2,
                             double z, double b1, double b2, DD *out) noexcept nogil:
    cdef DD q1 = dmk(y[0], 1.0 if seed == 0 else 0.0)
    cdef DD q2 = dmk(y[1], 1.0 if seed == 1 else 0.0)
    cdef DD p1 = dmk(y[2], 1.0 if seed == 2 else 0.0)
    cdef DD p2 = dmk(y[3], 1.0 if seed == 3 else 0.0)
    if b1 != 0.0 and fabs(y[0]) < BARRIER_GUARD:
        return C_TERM_SINGULARITY
    if b2 != 0.0 and fabs(y[1]) < BARRIER_GUARD:
        return C_TERM_SINGULARITY
    cdef DD u1 = dscale(k1 * k2 * z, dmul(q1, q1))
    cdef DD u2 = dscale(k1 * z, dmul(q2, q2))
    cdef DD a = dsinhc(u1)
    cdef DD b = dsinhc(u2)
    cdef DD e_cross = dexp(dsub(u2, u1))
    cdef DD w = dsub(dscale(k2, dmul(q1, p2)), dmul(q2, p1))
    cdef DD c = dmul(dmul(dmul(a, b), dmul(w, w)), e_cross)
    if b1 != 0.0 or b2 != 0.0:
        c = dadd(c, dscale(k2, dadd(dscale(b1, dexp(dscale(2.0, u2))),
                                    dscale(b2, dexp(dscale(-2.0, u1))))))
    if b1 != 0.0:
        c = dadd(c, dmul(dscale(b1, ddiv(dmul(q2, q2), dmul(q1, q1))),
                         dmul(ddiv(b, a), e_cross)))
    if b2 != 0.0:
        c = dadd(c, dmul(dscale(k2 * k2 * b2,
                                ddiv(dmul(q1, q1), dmul(q2, q2))),
                         dmul(ddiv(a, b), e_cross)))
    out[0] = c
    return 0


cdef int casimir_polar_dd(double *y, int seed, double k2, double b1,
                          double b2, DD *out) noexcept nogil:
    cdef DD th = dmk(y[1], 1.0 if seed == 1 else 0.0)
    cdef DD pth = dmk(y[3], 1.0 if seed == 3 else 0.0)
    cdef DD c = dmul(pth, pth)
    cdef DD s2, c2, one
    one = dmk(1.0, 0.0)
    if b1 != 0.0:
        s2 = dgsin(k2, th)
        if fabs(s2.v) <= POLAR_GUARD:
            return C_TERM_DOMAIN
        c = dadd(c, ddiv(dscale(4.0 * b1, one), dmul(s2, s2)))
    if b2 != 0.0:
        c2 = dgcos(k2, th)
        if fabs(c2.v) <= POLAR_GUARD:
            return C_TERM_DOMAIN
        c = dadd(c, ddiv(dscale(4.0 * k2 * b2, one), dmul(c2, c2)))
    out[0] = c
    return 0


cdef int h_polar_dd(double *y, int seed, int family, int variant, double k1,
                    double k2, double b1, double b2, double beta0,
                    double kck, int sign, DD *out) noexcept nogil:
    cdef DD r = dmk(y[0], 1.0 if seed == 0 else 0.0)
    cdef DD pr = dmk(y[2], 1.0 if seed == 2 else 0.0)
    cdef DD s1 = dgsin(k1, r)
    if fabs(s1.v) <= POLAR_GUARD:
        return C_TERM_DOMAIN
    cdef DD cas
    cdef int err = casimir_polar_dd(y, seed, k2, b1, b2, &cas)
    if err != 0:
        return err
    cdef DD core = dadd(dscale(0.5 * k2, dmul(pr, pr)),
                        ddiv(cas, dscale(2.0, dmul(s1, s1))))
    cdef DD c1, t1, one
    one = dmk(1.0, 0.0)
    if family != 0:
        c1 = dgcos(k1, r)
        if fabs(c1.v) < POLAR_GUARD:
            return C_TERM_DOMAIN
        t1 = ddiv(s1, c1)
        if family == 1:
            core = dadd(core, dscale(k2 * beta0, dmul(t1, t1)))
        else:
            if fabs(t1.v) <= POLAR_GUARD:
                return C_TERM_DOMAIN
            core = dsub(core, dscale(k2 * kck, ddiv(one, t1)))
    if variant == 0:
        core = dmul(dgcos(k1, r), core)
    out[0] = dscale(<double>sign, core)
    return 0


cdef int field(double *y, int coords, int family, int variant, double k1,
               double k2, double z, double b1, double b2, double beta0,
               double kck, double gamma, int sign, double *f) noexcept nogil:
    cdef DD h
    cdef int seed, err
    cdef double g[4]
    for seed in range(4):
        if coords == 0:
            err = h_beltrami_dd(y, seed, family, variant, k1, k2, z, b1, b2,
                                beta0, gamma, sign, &h)
        else:
            err = h_polar_dd(y, seed, family, variant, k1, k2, b1, b2,
                             beta0, kck, sign, &h)
        if err != 0:
            return err
        g[seed] = h.d
    f[0] = g[2]
    f[1] = g[3]
    f[2] = -g[0]
    f[3] = -g[1]
    return 0


cdef int guard_state(double *y, int coords, int family, double k1, double k2,
                     double z, double b1, double b2) noexcept nogil:
    cdef double jm
    cdef DD r, th
    cdef int i
    for i in range(4):
        if not isfinite(y[i]):
            return C_TERM_NONFINITE
    if coords == 0:
        if b1 != 0.0 and fabs(y[0]) < SING_GUARD:
            return C_TERM_SINGULARITY
        if b2 != 0.0 and fabs(y[1]) < SING_GUARD:
            return C_TERM_SINGULARITY
        if family == 2:
            jm = y[1] * y[1] + k2 * y[0] * y[0]
            if jm * dexpm1c(dmk(2.0 * k1 * z * jm, 0.0)).v <= 0.0:
                return C_TERM_DOMAIN
    else:
        r = dmk(y[0], 0.0)
        th = dmk(y[1], 0.0)
        if fabs(dgsin(k1, r).v) < SING_GUARD:
            return C_TERM_SINGULARITY
        if k1 > 0.0 and dgcos(k1, r).v < SING_GUARD:
            return C_TERM_DOMAIN
        if b1 != 0.0 and fabs(dgsin(k2, th).v) < SING_GUARD:
            return C_TERM_SINGULARITY
        if b2 != 0.0 and fabs(dgcos(k2, th).v) < SING_GUARD:
            return C_TERM_SINGULARITY
    return C_TERM_NONE


cdef int rk4_step(double *y, double dt, int coords, int family, int variant,
                  double k1, double k2, double z, double b1, double b2,
                  double beta0, double kck, double gamma, int sign,
                  double *yn) noexcept nogil:
    cdef double ka[4]
    cdef double kb[4]
    cdef double kc[4]
    cdef double kd[4]
    cdef double tmp[4]
    cdef int i, err
    err = field(y, coords, family, variant, k1, k2, z, b1, b2, beta0, kck,
                gamma, sign, &ka[0])
    if err != 0:
        return err
    for i in range(4):
        tmp[i] = y[i] + 0.5 * dt * ka[i]
    err = field(&tmp[0], coords, family, variant, k1, k2, z, b1, b2, beta0,
                kck, gamma, sign, &kb[0])
    if err != 0:
        return err
    for i in range(4):
        tmp[i] = y[i] + 0.5 * dt * kb[i]
    err = field(&tmp[0], coords, family, variant, k1, k2, z, b1, b2, beta0,
                kck, gamma, sign, &kc[0])
    if err != 0:
        return err
    for i in range(4):
        tmp[i] = y[i] + dt * kc[i]
    err = field(&tmp[0], coords, family, variant, k1, k2, z, b1, b2, beta0,
                kck, gamma, sign, &kd[0])
    if err != 0:
        return err
    for i in range(4):
        yn[i] = y[i] + dt * (ka[i] + 2.0 * kb[i] + 2.0 * kc[i] + kd[i]) / 6.0
    return 0


cdef int midpoint_step(double *y, double dt, int coords, int family,
                       int variant, double k1, double k2, double z,
                       double b1, double b2, double beta0, double kck,
                       double gamma, int sign, double *yn) noexcept nogil:
    cdef double f[4]
    cdef double mid[4]
    cdef double cand[4]
    cdef double delta, diff
    cdef int i, it, err
    err = field(y, coords, family, variant, k1, k2, z, b1, b2, beta0, kck,
                gamma, sign, &f[0])
    if err != 0:
        return err
    for i in range(4):
        yn[i] = y[i] + dt * f[i]
    for it in range(MIDPOINT_MAX_ITER):
        for i in range(4):
            mid[i] = 0.5 * (y[i] + yn[i])
        err = field(&mid[0], coords, family, variant, k1, k2, z, b1, b2,
                    beta0, kck, gamma, sign, &f[0])
        if err != 0:
            return err
        delta = 0.0
        for i in range(4):
            cand[i] = y[i] + dt * f[i]
            diff = fabs(cand[i] - yn[i])
            if diff > delta:
                delta = diff
            yn[i] = cand[i]
        if delta < MIDPOINT_TOL:
            break
    return 0


def flow(int coords, int family, int variant, double k1, double k2,
         double z, double b1, double b2, double beta0, double kck,
         double gamma, int sign, y0, double dt, int steps, int integrator):
    """Backend flow entry point; see the pure backend for the contract."""
    y0_arr = np.ascontiguousarray(y0, dtype=np.float64)
    states_arr = np.empty((steps + 1, 4), dtype=np.float64)
    h_arr = np.empty(steps + 1, dtype=np.float64)
    c_arr = np.empty(steps + 1, dtype=np.float64)
    cdef double[:, :] states = states_arr
    cdef double[:] hs = h_arr
    cdef double[:] cs = c_arr
    cdef double[:] y0v = y0_arr
    cdef double y[4]
    cdef double yn[4]
    cdef DD h, c
    cdef int i, j, err, term_kind = C_TERM_NONE, term_step = -1
    cdef Py_ssize_t n = 1
    for j in range(4):
        y[j] = y0v[j]

    if coords == 0:
        err = h_beltrami_dd(&y[0], -1, family, variant, k1, k2, z, b1, b2,
                            beta0, gamma, sign, &h)
        if err == 0:
            err = casimir_beltrami_dd(&y[0], -1, k1, k2, z, b1, b2, &c)
    else:
        err = h_polar_dd(&y[0], -1, family, variant, k1, k2, b1, b2, beta0,
                         kck, sign, &h)
        if err == 0:
            err = casimir_polar_dd(&y[0], -1, k2, b1, b2, &c)
    if err == C_TERM_SINGULARITY:
        raise BarrierSingularity("initial state sits on a barrier")
    if err != 0:
        raise DomainError("initial state outside the Hamiltonian domain")
    for j in range(4):
        states[0, j] = y[j]
    hs[0] = h.v
    cs[0] = c.v

    for i in range(steps):
        if integrator == 0:
            err = rk4_step(&y[0], dt, coords, family, variant, k1, k2, z,
                           b1, b2, beta0, kck, gamma, sign, &yn[0])
        else:
            err = midpoint_step(&y[0], dt, coords, family, variant, k1, k2,
                                z, b1, b2, beta0, kck, gamma, sign, &yn[0])
        if err == 0:
            err = guard_state(&yn[0], coords, family, k1, k2, z, b1, b2)
        if err == 0:
            if coords == 0:
                err = h_beltrami_dd(&yn[0], -1, family, variant, k1, k2, z,
                                    b1, b2, beta0, gamma, sign, &h)
                if err == 0:
                    err = casimir_beltrami_dd(&yn[0], -1, k1, k2, z, b1, b2,
                                              &c)
            else:
                err = h_polar_dd(&yn[0], -1, family, variant, k1, k2, b1,
                                 b2, beta0, kck, sign, &h)
                if err == 0:
                    err = casimir_polar_dd(&yn[0], -1, k2, b1, b2, &c)
        if err != 0:
            term_kind = err
            term_step = i
            break
        for j in range(4):
            y[j] = yn[j]
            states[n, j] = y[j]
        hs[n] = h.v
        cs[n] = c.v
        n += 1

    return (states_arr[:n], h_arr[:n], c_arr[:n], term_kind, term_step)
