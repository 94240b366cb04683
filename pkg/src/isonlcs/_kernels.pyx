# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernels; see ``_kernels_py`` for the reference versions.

Everything that does not depend on the grid point (recurrence coefficients,
sign-folded coherences, rotation factors) is tabulated once up front, so
the per-point loops are pure multiply-adds.
"""

import numpy as np
from scipy.special import gammaln

from libc.math cimport exp, log, sqrt, atan2, cos, sin, M_PI


def _recurrence_tables(Py_ssize_t m):
    n = np.arange(m, dtype=float)
    k = np.arange(m, dtype=float)[:, None]
    back = np.sqrt(n * (n + k))
    inv_fwd = 1.0 / np.sqrt((n + 1) * (n + 1 + k))
    return np.ascontiguousarray(back), np.ascontiguousarray(inv_fwd)


def _coherence_tables(c):
    m = len(c)
    fr = np.zeros((m, m))
    fi = np.zeros((m, m))
    sign = (-1.0) ** np.arange(m)
    for k in range(m):
        pair = c[: m - k] * np.conj(c[k:]) * sign[: m - k]
        scale = 1.0 if k == 0 else 2.0
        fr[k, : m - k] = scale * pair.real
        fi[k, : m - k] = scale * pair.imag
    return fr, fi


DEF BLOCK = 256


def sfunc_points(c, zs, double s):
    c = np.ascontiguousarray(c, dtype=np.complex128)
    cdef const double complex[::1] zv = np.ascontiguousarray(np.ravel(zs), dtype=np.complex128)
    cdef Py_ssize_t m = c.shape[0]
    cdef Py_ssize_t npts = zv.shape[0]
    back_arr, inv_fwd_arr = _recurrence_tables(m)
    fr_arr, fi_arr = _coherence_tables(c)
    cdef const double[:, ::1] back = back_arr
    cdef const double[:, ::1] inv_fwd = inv_fwd_arr
    cdef const double[:, ::1] fr = fr_arr
    cdef const double[:, ::1] fi = fi_arr
    cdef const double[::1] half_lgam = np.ascontiguousarray(0.5 * gammaln(np.arange(m) + 1.0))
    out = np.empty(npts)
    cdef double[::1] ov = out
    cdef double q = (1.0 + s) / (1.0 - s)
    cdef double q2 = q * q
    cdef double pref = 2.0 / (M_PI * (1.0 - s))
    # per-point state for one block; the innermost loops run across points
    cdef double y[BLOCK]
    cdef double log_y[BLOCK]
    cdef double log_gauss[BLOCK]
    cdef double e_re[BLOCK]
    cdef double e_im[BLOCK]
    cdef double ck_re[BLOCK]
    cdef double ck_im[BLOCK]
    cdef double u[BLOCK]
    cdef double u_prev[BLOCK]
    cdef double sum_re[BLOCK]
    cdef double sum_im[BLOCK]
    cdef double acc[BLOCK]
    cdef Py_ssize_t start, width, b, k, n, top
    cdef double r2, theta, tmp, diag, coef_back, coef_inv, a_re, a_im

    for start in range(0, npts, BLOCK):
        width = min(BLOCK, npts - start)
        for b in range(width):
            r2 = zv[start + b].real * zv[start + b].real + zv[start + b].imag * zv[start + b].imag
            y[b] = 4.0 * r2 / ((1.0 - s) * (1.0 - s))
            log_y[b] = log(y[b]) if y[b] > 0 else -1e300
            theta = atan2(zv[start + b].imag, zv[start + b].real)
            e_re[b] = cos(theta)
            e_im[b] = sin(theta)
            log_gauss[b] = -2.0 * r2 / (1.0 - s)
            ck_re[b] = 1.0
            ck_im[b] = 0.0
            acc[b] = 0.0
        for k in range(m):
            top = m - k
            for b in range(width):
                if k > 0:
                    tmp = ck_re[b] * e_re[b] - ck_im[b] * e_im[b]
                    ck_im[b] = ck_re[b] * e_im[b] + ck_im[b] * e_re[b]
                    ck_re[b] = tmp
                    # y = 0 gives exp(-huge) = 0, the correct seed for k > 0
                    u[b] = exp(log_gauss[b] + 0.5 * k * log_y[b] - half_lgam[k])
                else:
                    u[b] = exp(log_gauss[b])
                u_prev[b] = 0.0
                sum_re[b] = 0.0
                sum_im[b] = 0.0
            for n in range(top):
                a_re = fr[k, n]
                a_im = fi[k, n]
                diag = q * (2 * n + 1 + k)
                coef_back = q2 * back[k, n]
                coef_inv = inv_fwd[k, n]
                for b in range(width):
                    sum_re[b] += u[b] * a_re
                    sum_im[b] += u[b] * a_im
                    tmp = ((diag - y[b]) * u[b] - coef_back * u_prev[b]) * coef_inv
                    u_prev[b] = u[b]
                    u[b] = tmp
            for b in range(width):
                acc[b] += sum_re[b] * ck_re[b] - sum_im[b] * ck_im[b]
        for b in range(width):
            ov[start + b] = pref * acc[b]
    return out


def quadrature_points(c, xs, phis):
    c = np.ascontiguousarray(c, dtype=np.complex128)
    cdef const double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64)
    phis = np.ascontiguousarray(phis, dtype=np.float64)
    cdef Py_ssize_t m = c.shape[0]
    cdef Py_ssize_t nx = xv.shape[0]
    cdef Py_ssize_t nphi = phis.shape[0]
    rot = c[:, None] * np.exp(-1j * np.outer(np.arange(m), phis))
    cdef const double[:, ::1] rot_re = np.ascontiguousarray(rot.real)
    cdef const double[:, ::1] rot_im = np.ascontiguousarray(rot.imag)
    out = np.empty((nx, nphi))
    cdef double[:, ::1] ov = out
    cdef double[::1] h = np.empty(m)
    cdef double[::1] a_re = np.empty(nphi)
    cdef double[::1] a_im = np.empty(nphi)
    cdef Py_ssize_t i, j, n
    cdef double x, hn
    cdef double sqrt2 = sqrt(2.0)
    cdef double norm0 = 1.0 / sqrt(sqrt(M_PI))

    for i in range(nx):
        x = xv[i]
        h[0] = norm0 * exp(-0.5 * x * x)
        if m > 1:
            h[1] = sqrt2 * x * h[0]
        for n in range(1, m - 1):
            h[n + 1] = sqrt(2.0 / (n + 1)) * x * h[n] - sqrt(<double>n / (n + 1)) * h[n - 1]
        for j in range(nphi):
            a_re[j] = 0.0
            a_im[j] = 0.0
        for n in range(m):
            hn = h[n]
            for j in range(nphi):
                a_re[j] += hn * rot_re[n, j]
                a_im[j] += hn * rot_im[n, j]
        for j in range(nphi):
            ov[i, j] = a_re[j] * a_re[j] + a_im[j] * a_im[j]
    return out
