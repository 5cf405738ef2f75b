# cython: language_level=3
"""Compiled implementations of the hot kernels.

Same contracts as ``hbblock._kernels._fallback``; the explicit loops avoid
the temporary arrays of the numpy versions and are the fast path for short
frame lengths, where the history window spans thousands of frames.
"""

from libc.math cimport exp, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()


def history_survival(rates, double frame_len, weights):
    cdef double[::1] lam = np.ascontiguousarray(rates, dtype=np.float64)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = lam.shape[0]
    cdef Py_ssize_t window = w.shape[0] - 1
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, m, mmax
    cdef double s
    for i in range(n):
        s = 0.0
        mmax = window if window < i else i
        for m in range(1, mmax + 1):
            s += lam[i - m] * w[m]
        ov[i] = exp(frame_len * s)
    return out


def self_blocked_count(xs, ys, double ap_x, double ap_y,
                       double cos_half_sector, double min_range):
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] yv = np.ascontiguousarray(ys, dtype=np.float64)
    cdef Py_ssize_t nx = xv.shape[0]
    cdef Py_ssize_t ny = yv.shape[0]
    cdef Py_ssize_t i, j
    cdef double dx, dy, d
    cdef long count = 0
    for i in range(nx):
        dx = xv[i] - ap_x
        if dx <= 0.0:
            continue
        for j in range(ny):
            dy = yv[j] - ap_y
            d = sqrt(dx * dx + dy * dy)
            if dx > d * cos_half_sector and d > min_range:
                count += 1
    return count
