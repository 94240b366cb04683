"""Pure numpy implementations of the grid kernels.

Loops run over Fock indices; every grid point is handled at once as a
vector lane. ``_kernels.pyx`` mirrors these functions point by point.
"""

import math

import numpy as np
from scipy.special import gammaln


def sfunc_points(c, zs, s):
    """s-ordered quasi-probability F(z, s) of the pure state ``c`` at ``zs``.

    Each k-term is real by construction, so only the real sum is formed. With ``q = (1+s)/(1-s)`` and
    ``y = 4|z|^2/(1-s)^2`` the double sum is

        2/(pi(1-s)) sum_{n,k} (-1)^n u_n^k [c_n c*_{n+k} e^{ik arg z} + c_{n+k} c*_n e^{-ik arg z}]

    (single term for k = 0), where ``u_n^k`` is the normalized Laguerre term
    ``q^(n + k/2) <n+k|D(lambda)|n>`` with ``|lambda|^2 = 4|z|^2/(1-s^2)``,
    already multiplied by the Gaussian prefactor. It obeys

        u_{n+1} = [(q(2n+1+k) - y) u_n - q^2 sqrt(n(n+k)) u_{n-1}] / sqrt((n+1)(n+1+k))

    seeded by ``u_0^k = exp(-2|z|^2/(1-s)) y^(k/2) / sqrt(k!)``, which stays
    finite at ``s = -1``.
    """
    c = np.asarray(c, dtype=complex)
    zs = np.asarray(zs, dtype=complex).ravel()
    m = len(c)
    q = (1.0 + s) / (1.0 - s)
    q2 = q * q
    r2 = np.abs(zs) ** 2
    y = 4.0 * r2 / (1.0 - s) ** 2
    log_y = np.log(np.where(y > 0, y, 1.0))
    phase = np.exp(1j * np.angle(zs))
    log_gauss = -2.0 * r2 / (1.0 - s)
    acc = np.zeros(len(zs))
    phase_k = np.ones(len(zs), dtype=complex)
    for k in range(m):
        if k == 0:
            u = np.exp(log_gauss)
        else:
            u = np.where(y > 0, np.exp(log_gauss + 0.5 * k * log_y - 0.5 * gammaln(k + 1)), 0.0)
            phase_k = phase_k * phase
        u_prev = np.zeros_like(u)
        sign = 1.0
        for n in range(m - k):
            if k == 0:
                acc += sign * abs(c[n]) ** 2 * u
            else:
                fwd = c[n] * np.conj(c[n + k])
                acc += sign * u * 2.0 * (fwd * phase_k).real
            if n + 1 < m - k:
                u_next = ((q * (2 * n + 1 + k) - y) * u - q2 * math.sqrt(n * (n + k)) * u_prev) / math.sqrt(
                    (n + 1) * (n + 1 + k)
                )
                u_prev, u = u, u_next
            sign = -sign
    pref = 2.0 / (math.pi * (1.0 - s))
    return pref * acc


def quadrature_points(c, xs, phis):
    """|sum_n c_n h_n(x) exp(-i n phi)|^2 on the grid ``xs`` x ``phis``.

    ``h_n`` are the normalized Hermite functions; result shape ``(nx, nphi)``.
    """
    c = np.asarray(c, dtype=complex)
    xs = np.asarray(xs, dtype=float)
    phis = np.asarray(phis, dtype=float)
    m = len(c)
    h = np.empty((m, len(xs)))
    h[0] = np.pi ** -0.25 * np.exp(-0.5 * xs * xs)
    if m > 1:
        h[1] = math.sqrt(2.0) * xs * h[0]
    for n in range(1, m - 1):
        h[n + 1] = math.sqrt(2.0 / (n + 1)) * xs * h[n] - math.sqrt(n / (n + 1)) * h[n - 1]
    rot = np.exp(-1j * np.outer(np.arange(m), phis))
    amp = (h.T * c) @ rot
    return np.abs(amp) ** 2
