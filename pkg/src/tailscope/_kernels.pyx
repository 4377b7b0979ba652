# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: entropic-moment profile and Kendall rank trend.

Signatures match ``tailscope._fallback``; see that module for the contract.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def z_profile(const cnp.int64_t[::1] ys, const cnp.int64_t[::1] mult,
              cnp.int64_t n, cnp.int64_t vmax):
    cdef Py_ssize_t d = ys.shape[0]
    cdef Py_ssize_t i, j
    cdef cnp.int64_t y, num
    cdef double w, prod, term, t, yk
    out = np.zeros(vmax, dtype=np.float64)
    comp = np.zeros(vmax, dtype=np.float64)
    cdef double[::1] z = out
    cdef double[::1] c = comp
    with nogil:
        for i in range(d):
            y = ys[i]
            w = <double>mult[i] * (<double>y / <double>n)
            prod = 1.0
            for j in range(1, vmax + 1):
                # factor (n - j - y + 1) / (n - j); exact zero once j >= n - y + 1
                num = n - j - y + 1
                if num <= 0:
                    break
                prod *= <double>num / <double>(n - j)
                term = w * prod
                # Kahan step for Z_j
                yk = term - c[j - 1]
                t = z[j - 1] + yk
                c[j - 1] = (t - z[j - 1]) - yk
                z[j - 1] = t
    return out


def kendall_trend(const double[::1] x, const double[::1] y):
    cdef Py_ssize_t m = x.shape[0]
    cdef Py_ssize_t i, k
    cdef long long s = 0
    cdef double dx, dy
    if m < 2:
        return 0.0
    with nogil:
        for i in range(m - 1):
            for k in range(i + 1, m):
                dx = x[k] - x[i]
                dy = y[k] - y[i]
                if dx * dy > 0:
                    s += 1
                elif dx * dy < 0:
                    s -= 1
    return s / (0.5 * m * (m - 1))
