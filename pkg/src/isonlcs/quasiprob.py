"""Phase-space distributions of pure states on the shifted basis.

Points are complex ``z = x + ip``. Grids use ``ij`` indexing, so
``values[i, j]`` belongs to ``(xs[i], ys[j])``.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import diags
from scipy.sparse.linalg import expm_multiply
from scipy.special import eval_genlaguerre, logsumexp

from . import kernels
from .errors import DomainError, UnsupportedStateError, UsageError
from .fockspace import TruncatedBasis
from .specfun import assoc_laguerre, hermite, hermite_functions, log_factorial
from .states import StateVector, nlcs_log_weights, nlcs_normalization

KINDS = ("wigner", "husimi", "quadrature", "s_general")
NEG_THRESHOLD = -1e-9
P_THRESHOLD = 1e-16
SUPPORT_TOL = 1e-20
DEFAULT_RESOLUTION = (201, 201)


@dataclass(frozen=True, eq=False)
class PhaseGrid:
    """Real values on a rectangular grid.

    For ``kind="quadrature"`` the axes are ``(x, phi)``; otherwise ``(x, p)``.
    """

    kind: str
    s: float
    window: tuple
    resolution: tuple
    values: np.ndarray

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UsageError(f"unknown grid kind {self.kind!r}")
        if self.values.shape != tuple(self.resolution):
            raise UsageError(f"values shape {self.values.shape} != resolution {self.resolution}")

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.window[0], self.window[1], self.resolution[0])

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.window[2], self.window[3], self.resolution[1])

    def cell_area(self) -> float:
        nx, ny = self.resolution
        dx = (self.window[1] - self.window[0]) / (nx - 1)
        dy = (self.window[3] - self.window[2]) / (ny - 1)
        return dx * dy

    def integral(self) -> float:
        """Riemann sum over the window."""
        return float(self.values.sum() * self.cell_area())


def _trimmed(state: StateVector) -> np.ndarray:
    return state.amplitudes[: state.support(SUPPORT_TOL)]


def _check_window(window, resolution):
    x0, x1, y0, y1 = (float(v) for v in window)
    nx, ny = (int(v) for v in resolution)
    if not (x1 > x0 and y1 > y0):
        raise UsageError(f"window {window} must have x_min < x_max and y_min < y_max")
    if nx < 2 or ny < 2:
        raise UsageError(f"resolution {resolution} must be at least 2 x 2")
    return (x0, x1, y0, y1), (nx, ny)


# quadrature distribution


def quadrature_eigenvector(x: float, phi: float, basis: TruncatedBasis) -> np.ndarray:
    """Coefficients ``<ñ|x,phi> = exp(-x^2/2) pi^(-1/4) H_n(x) e^{in phi} / sqrt(2^n n!)``."""
    h = hermite_functions(basis.n_max, np.array([float(x)]))[:, 0]
    return h * np.exp(1j * phi * np.arange(basis.dim))


def quadrature_distribution(state: StateVector, x_grid, phi_grid) -> PhaseGrid:
    """P(x, phi) = |sum_n c_n <x,phi|ñ>|^2 on ``x_grid`` x ``phi_grid``."""
    xs = np.asarray(x_grid, dtype=float)
    phis = np.asarray(phi_grid, dtype=float)
    values = kernels.quadrature_points(_trimmed(state), xs, phis)
    window = (float(xs[0]), float(xs[-1]), float(phis[0]), float(phis[-1]))
    return PhaseGrid("quadrature", 0.0, window, (len(xs), len(phis)), values)


def nlcs_quadrature_double_sum(alpha: complex, x: float, phi: float, n_terms: int = 60) -> float:
    """Closed double series for P(x, phi) of the nlcs; used as an oracle.

    Terms are r^(n+m) cos((n-m)(theta-phi)) H_n H_m / (n! m! sqrt(2^(n+m) (n+2)!(m+2)!(n+3)!(m+3)!)),
    scaled by N_alpha^2 exp(-x^2)/sqrt(pi).
    """
    r, theta = abs(alpha), cmath.phase(alpha)
    n = np.arange(n_terms)
    log_mag = -log_factorial(n) - 0.5 * (n * math.log(2.0) + log_factorial(n + 2) + log_factorial(n + 3))
    if r > 0:
        log_mag = log_mag + n * math.log(r)
    else:
        log_mag = np.where(n == 0, log_mag, -np.inf)
    a = np.exp(log_mag) * np.array([hermite(k, x) for k in n])
    cosines = np.cos(np.subtract.outer(n, n) * (theta - phi))
    total = a @ cosines @ a
    return float(nlcs_normalization(alpha) ** 2 * math.exp(-x * x) / math.sqrt(math.pi) * total)


# displacement operator


def displacement_element(m: int, n: int, lam: complex) -> complex:
    """<m~|D(lambda)|n~> from the associated Laguerre form.

    For m >= n this is exp(-|l|^2/2) sqrt(n!/m!) l^(m-n) L_n^(m-n)(|l|^2); for
    m < n the conjugation identity <m|D(l)|n> = conj(<n|D(-l)|m>) is used.
    """
    if m < 0 or n < 0:
        raise DomainError("Fock indices must be >= 0")
    lam = complex(lam)
    if m < n:
        return displacement_element(n, m, -lam).conjugate()
    k = m - n
    x = abs(lam) ** 2
    if lam == 0:
        return 1.0 + 0j if k == 0 else 0j
    log_pref = -0.5 * x + 0.5 * (log_factorial(n) - log_factorial(m)) + k * math.log(abs(lam))
    return math.exp(log_pref) * cmath.exp(1j * k * cmath.phase(lam)) * assoc_laguerre(n, k, x)


def displacement_matrix(lam: complex, basis: TruncatedBasis) -> np.ndarray:
    """Matrix of <m~|D(lambda)|n~> over the truncated basis, filled by diagonals.

    Uses the vectorized scipy Laguerre evaluation, so it doubles as a check
    on :func:`displacement_element`.
    """
    lam = complex(lam)
    dim = basis.dim
    out = np.zeros((dim, dim), dtype=complex)
    if lam == 0:
        return np.eye(dim, dtype=complex)
    x = abs(lam) ** 2
    lf = log_factorial(np.arange(dim))
    for k in range(dim):
        n = np.arange(dim - k)
        m = n + k
        lag = eval_genlaguerre(n, k, x)
        mag = np.exp(-0.5 * x + 0.5 * (lf[n] - lf[m]) + k * math.log(abs(lam)))
        lower = mag * lag * cmath.exp(1j * k * cmath.phase(lam))
        out[m, n] = lower
        if k:
            # conj(<n|D(-l)|m>) with (-l)^k = (-1)^k l^k
            out[n, m] = (-1) ** k * np.conj(lower)
    return out


# s-ordered functions


def s_function(state: StateVector, z, s: float):
    """s-ordered quasi-probability F(z, s) for s < 1; scalar or array ``z``.

    s = 0 gives the Wigner function and s = -1 the Husimi function. The
    singular s = 1 case is described by :func:`p_function_coefficients`.

    For 0 < s < 1 the alternating terms grow like ((1+s)/(1-s))^n over the
    state's support, so absolute accuracy degrades as s approaches 1 for
    broad states; s <= 0 is well conditioned.
    """
    s = float(s)
    if s >= 1.0:
        raise DomainError("F(z, s) requires s < 1; use p_function_coefficients for s = 1")
    zs = np.asarray(z, dtype=complex)
    values = kernels.sfunc_points(_trimmed(state), zs.ravel(), s)
    values = np.asarray(values).reshape(zs.shape)
    return float(values) if values.ndim == 0 else values


def _grid_points(window, resolution):
    xs = np.linspace(window[0], window[1], resolution[0])
    ys = np.linspace(window[2], window[3], resolution[1])
    return xs[:, None] + 1j * ys[None, :]


def s_grid(state: StateVector, s: float, window, resolution=DEFAULT_RESOLUTION, kind: str = "s_general") -> PhaseGrid:
    window, resolution = _check_window(window, resolution)
    values = s_function(state, _grid_points(window, resolution), s)
    return PhaseGrid(kind, float(s), window, resolution, values)


def wigner_grid(state: StateVector, window=None, resolution=DEFAULT_RESOLUTION) -> PhaseGrid:
    return s_grid(state, 0.0, window or default_window(state), resolution, "wigner")


def husimi_grid(state: StateVector, window=None, resolution=DEFAULT_RESOLUTION) -> PhaseGrid:
    return s_grid(state, -1.0, window or default_window(state), resolution, "husimi")


def default_window(state: StateVector) -> tuple:
    """Square window centred on mu = <K_->, half-width 6 max(1, sqrt<K_0>)."""
    c = state.amplitudes
    n = np.arange(len(c))
    mu = complex(np.sum(np.conj(c[:-1]) * np.sqrt(n[1:]) * c[1:]))
    mean_n = float(np.sum(n * np.abs(c) ** 2))
    half = 6.0 * max(1.0, math.sqrt(mean_n))
    return (mu.real - half, mu.real + half, mu.imag - half, mu.imag + half)


def husimi_overlap(state: StateVector, z) -> np.ndarray:
    """(1/pi)|<z|psi>|^2 with <z|ñ> = exp(-|z|^2/2) (z*)^n / sqrt(n!)."""
    c = _trimmed(state)
    zs = np.asarray(z, dtype=complex)
    flat = zs.ravel()
    n = np.arange(len(c))
    lf = log_factorial(n)
    out = np.empty(flat.shape)
    for i, zz in enumerate(flat):
        if zz == 0:
            out[i] = abs(c[0]) ** 2 / math.pi
            continue
        # <psi|z> = sum conj(c_n) z^n e^{-|z|^2/2}/sqrt(n!), summed in logs for large |z|
        logs = n * math.log(abs(zz)) - 0.5 * lf - 0.5 * abs(zz) ** 2 + np.log(np.abs(c) + 1e-300)
        phases = np.exp(1j * (n * cmath.phase(zz) - np.angle(c)))
        shift = logs.max()
        amp = np.sum(np.exp(logs - shift) * phases)
        out[i] = math.exp(2.0 * shift) * abs(amp) ** 2 / math.pi
    return out.reshape(zs.shape)


def wigner_parity(state: StateVector, z, pad: int = 80) -> np.ndarray:
    """(2/pi) sum_k (-1)^k |<k~|D(-z)|psi>|^2 with D from a sparse matrix exponential.

    The state is embedded in a basis enlarged by ``pad`` levels so the
    displaced vector does not reach the truncation edge.
    """
    c = _trimmed(state)
    zs = np.asarray(z, dtype=complex)
    flat = zs.ravel()
    dim = len(c) + pad + int(4 * np.max(np.abs(flat)) ** 2 + 10 * np.max(np.abs(flat)))
    sq = np.sqrt(np.arange(1, dim))
    a = diags(sq, 1, shape=(dim, dim), format="csr", dtype=complex)
    ad = diags(sq, -1, shape=(dim, dim), format="csr", dtype=complex)
    psi = np.zeros(dim, dtype=complex)
    psi[: len(c)] = c
    parity = (-1.0) ** np.arange(dim)
    out = np.empty(flat.shape)
    for i, zz in enumerate(flat):
        lam = -zz
        phi = expm_multiply(lam * ad - np.conj(lam) * a, psi)
        out[i] = 2.0 / math.pi * float(np.sum(parity * np.abs(phi) ** 2))
    return out.reshape(zs.shape)


def husimi_printed_diagnostic(state: StateVector, z) -> dict:
    """Compare the overlap Husimi function with two printed closed forms.

    ``"gaussian_form"`` is N_alpha^2 exp(-|z|^2)/pi. ``"s_limit_form"`` is the
    s -> -1 limit of the printed double sum taken term by term: only n = 0
    survives, leaving exp(-|z|^2)/pi sum_m B_{0,m} z^m / sqrt(m!). Neither
    reproduces the overlap for superposition states.
    """
    if state.family != "nlcs":
        raise UnsupportedStateError("the printed Husimi forms are stated for the nlcs only")
    z = complex(z)
    c = _trimmed(state)
    m = np.arange(len(c))
    b0m = c[0] * np.conj(c)
    s_limit = math.exp(-abs(z) ** 2) / math.pi * complex(np.sum(b0m * z ** m / np.sqrt(np.exp(log_factorial(m)))))
    overlap_q = float(husimi_overlap(state, z))
    gaussian = nlcs_normalization(state.parameter) ** 2 * math.exp(-abs(z) ** 2) / math.pi
    return {
        "overlap": overlap_q,
        "gaussian_form": gaussian,
        "s_limit_form": s_limit,
        "gaussian_deviation": abs(gaussian - overlap_q),
        "s_limit_deviation": abs(s_limit - overlap_q),
    }


def wigner_negativity_scan(state: StateVector, window=None, resolution=DEFAULT_RESOLUTION):
    """Global minimum of the Wigner grid, its location and the negative-cell fraction."""
    grid = wigner_grid(state, window, resolution)
    idx = np.unravel_index(int(np.argmin(grid.values)), grid.values.shape)
    loc = complex(grid.xs[idx[0]], grid.ys[idx[1]])
    frac = float(np.mean(grid.values < NEG_THRESHOLD))
    return float(grid.values[idx]), loc, frac


# singular P-function


@dataclass(frozen=True)
class SingularP:
    """Coefficients B_nn (-1)^n of exp(|z|^2) d^n/d(|z|^2)^n delta(|z|^2) / pi."""

    coefficients: np.ndarray
    max_order: int


def p_function_coefficients(state: StateVector, threshold: float = P_THRESHOLD) -> SingularP:
    """Singular P-function of an nlcs as a finite list of derivative weights.

    B_nn = N_alpha^2 |alpha|^(2n) / (n!(n+2)!(n+3)!) is evaluated from the closed
    form, independent of the basis cutoff; orders with B_nn < threshold * B_00
    are dropped.
    """
    if state.family != "nlcs":
        raise UnsupportedStateError(f"P-function coefficients need an nlcs, got family {state.family!r}")
    logs = nlcs_log_weights(abs(state.parameter), 1000)
    logs = logs - logsumexp(logs)
    keep = np.nonzero(logs >= logs[0] + math.log(threshold))[0]
    order = int(keep[-1])
    b = np.exp(logs[: order + 1])
    return SingularP(b * (-1.0) ** np.arange(order + 1), order)
