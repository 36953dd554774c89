# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: bit-identical mirror of ``peakfn._kernels.pure``.

Compiled with -ffp-contract=off so no fused multiply-adds are introduced;
every arithmetic statement matches the pure-Python file in order and in
libm usage.  Keep the two files in sync when editing either.
"""

from libc.math cimport pow, fabs, INFINITY

cdef double[8] GK_X
GK_X[0] = 0.9914553711208126
GK_X[1] = 0.9491079123427585
GK_X[2] = 0.8648644233597691
GK_X[3] = 0.7415311855993945
GK_X[4] = 0.5860872354676911
GK_X[5] = 0.4058451513773972
GK_X[6] = 0.20778495500789848
GK_X[7] = 0.0

cdef double[8] GK_WK
GK_WK[0] = 0.022935322010529224
GK_WK[1] = 0.06309209262997856
GK_WK[2] = 0.10479001032225019
GK_WK[3] = 0.14065325971552592
GK_WK[4] = 0.1690047266392679
GK_WK[5] = 0.19035057806478542
GK_WK[6] = 0.20443294007529889
GK_WK[7] = 0.20948214108472782

cdef double[4] GK_WG
GK_WG[0] = 0.1294849661688697
GK_WG[1] = 0.27970539148927664
GK_WG[2] = 0.3818300505051189
GK_WG[3] = 0.4179591836734694

cdef enum:
    MAX_DEPTH = 48
    MAX_STACK = 64


cdef inline double _psi(double tau, double lid, double ca, double p) nogil:
    if tau < 1.0:
        tau = 1.0
    return tau * lid + ca * pow(tau, 1.0 + p)


def psi_val(double tau, double lid, double ca, double p):
    """Growth envelope tau*log(1/D) + ca*tau^(1+p), held flat below tau=1."""
    return _psi(tau, lid, ca, p)


cdef inline void _gk15_psi_negt(double a, double b, double lid, double ca,
                                double p, double t,
                                double *out_val, double *out_err) nogil:
    cdef double c = 0.5 * (a + b)
    cdef double h = 0.5 * (b - a)
    cdef double fc = pow(_psi(c, lid, ca, p), -t)
    cdef double resk = fc * GK_WK[7]
    cdef double resg = fc * GK_WG[3]
    cdef double dx, f1, f2
    cdef int i
    for i in range(7):
        dx = h * GK_X[i]
        f1 = pow(_psi(c - dx, lid, ca, p), -t)
        f2 = pow(_psi(c + dx, lid, ca, p), -t)
        resk += GK_WK[i] * (f1 + f2)
        if i == 1 or i == 3 or i == 5:
            resg += GK_WG[i // 2] * (f1 + f2)
    out_val[0] = resk * h
    out_err[0] = fabs((resk - resg) * h)


def quad_psi_negt(double a, double b, double lid, double ca, double p,
                  double t, double rel_tol):
    """Adaptive integral of psi(s)^(-t) over [a, b], a >= 1.

    Returns (value, error_bound); see the pure backend for the contract.
    """
    if b <= a:
        return 0.0, 0.0
    cdef double[MAX_STACK] st_lo
    cdef double[MAX_STACK] st_hi
    cdef int[MAX_STACK] st_depth
    cdef int top = 0
    cdef double total = 0.0
    cdef double err = 0.0
    cdef double lo, hi, mid, val, e
    cdef int depth
    st_lo[0] = a
    st_hi[0] = b
    st_depth[0] = 0
    top = 1
    while top > 0:
        top -= 1
        lo = st_lo[top]
        hi = st_hi[top]
        depth = st_depth[top]
        _gk15_psi_negt(lo, hi, lid, ca, p, t, &val, &e)
        if e <= rel_tol * fabs(val) or depth >= MAX_DEPTH:
            total += val
            err += e
        else:
            mid = 0.5 * (lo + hi)
            st_lo[top] = mid
            st_hi[top] = hi
            st_depth[top] = depth + 1
            top += 1
            st_lo[top] = lo
            st_hi[top] = mid
            st_depth[top] = depth + 1
            top += 1
    return total, err


def pow_sums(Py_ssize_t n, double e):
    """Prefix sums S_k = sum_{j<=k} j^e for k = 1..n (list of length n)."""
    out = []
    cdef double s = 0.0
    cdef Py_ssize_t j
    for j in range(1, n + 1):
        s += pow(<double> j, e)
        out.append(s)
    return out


def bracket_sweep(Py_ssize_t m_max, double p):
    """Worst relative margins of the two power-sum sandwich brackets.

    Same contract as the pure backend.
    """
    cdef double s1 = 1.0
    cdef double s2 = 1.0
    cdef double r0 = INFINITY, r1 = INFINITY, r2 = INFINITY, r3 = INFINITY
    cdef Py_ssize_t a0 = 0, a1 = 0, a2 = 0, a3 = 0
    cdef Py_ssize_t m
    cdef double mf, mp, low1, high1, low2, high2, margin, scale, rel
    for m in range(2, m_max + 1):
        mf = <double> m
        mp = pow(mf, p)
        low1 = (mp - 1.0) / p
        high1 = low1 + (1.0 - pow(mf, p - 1.0))
        high2 = (pow(mf, p + 1.0) - 1.0) / (p + 1.0)
        low2 = high2 + (1.0 - mp)

        margin = s1 - low1
        scale = max(fabs(s1), fabs(low1))
        if scale == 0.0:
            scale = 1.0
        rel = margin / scale
        if rel < r0:
            r0 = rel
            a0 = m

        margin = high1 - s1
        scale = max(fabs(s1), fabs(high1))
        if scale == 0.0:
            scale = 1.0
        rel = margin / scale
        if rel < r1:
            r1 = rel
            a1 = m

        margin = s2 - low2
        scale = max(fabs(s2), fabs(low2))
        if scale == 0.0:
            scale = 1.0
        rel = margin / scale
        if rel < r2:
            r2 = rel
            a2 = m

        margin = high2 - s2
        scale = max(fabs(s2), fabs(high2))
        if scale == 0.0:
            scale = 1.0
        rel = margin / scale
        if rel < r3:
            r3 = rel
            a3 = m

        s1 += pow(mf, p - 1.0)
        s2 += mp
    return (r0, a0, r1, a1, r2, a2, r3, a3)


def choose_l_sweep(Py_ssize_t m_max, double p, double big_l):
    """Worst relative margin of the linear-vs-power comparison constant."""
    cdef double denom = p * (p + 1.0)
    cdef double best = INFINITY
    cdef Py_ssize_t arg = 0
    cdef Py_ssize_t m
    cdef double mf, m1p, lhs, rhs, scale, rel
    for m in range(1, m_max + 1):
        mf = <double> m
        m1p = pow(mf, 1.0 + p)
        lhs = 2.0 * (mf - 1.0) + (m1p - (p + 1.0) * mf + p) / denom
        rhs = big_l * m1p / denom
        scale = max(fabs(lhs), fabs(rhs))
        if scale == 0.0:
            scale = 1.0
        rel = (rhs - lhs) / scale
        if rel < best:
            best = rel
            arg = m
    return best, arg


def radius_bound_sweep(Py_ssize_t m_max, double p, double lid, double lia,
                       double big_l):
    """Worst relative margin of the radius-growth majorant."""
    cdef double ca = lia * big_l / (p * (p + 1.0))
    cdef double best = INFINITY
    cdef Py_ssize_t arg = 0
    cdef double lir = lid
    cdef double s = 0.0
    cdef Py_ssize_t m
    cdef double mf, bound, scale, rel, log_inv_eps
    for m in range(1, m_max + 1):
        mf = <double> m
        bound = mf * lid + ca * pow(mf, 1.0 + p)
        scale = max(fabs(lir), fabs(bound))
        if scale == 0.0:
            scale = 1.0
        rel = (bound - lir) / scale
        if rel < best:
            best = rel
            arg = m
        s += pow(mf, p - 1.0)
        log_inv_eps = lid + s * lia
        lir = lia + lir + log_inv_eps
    return best, arg
