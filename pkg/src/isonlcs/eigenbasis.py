"""Position-space eigenfunctions of the isotonic oscillator.

psi_n(x) = N_n P_n(x) exp(-x^2/2) / (1 + 2x^2) for n = 0, 3, 4, 5, ...

All derivatives are analytic. The Hermite derivative identity
``H_k' = 2k H_{k-1}`` handles the polynomial factor, and the envelope
``g(x) = exp(-x^2/2)/(1+2x^2)`` obeys ``g' = -phi g`` with ``phi`` the
superpotential.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fockspace import deformation_f
from .specfun import hermite, log_factorial

SQRT2 = math.sqrt(2.0)
QUAD_INTERVAL = (-12.0, 12.0)
QUAD_NODES = 800


def check_level(n: int) -> None:
    if n < 0 or n in (1, 2):
        raise DomainError(f"level {n} is not in the spectrum (allowed: 0, 3, 4, 5, ...)")


def _hermite_or_zero(k, x):
    return hermite(k, x) if k >= 0 else np.zeros_like(np.asarray(x, dtype=float))


def poly_P(n: int, x, deriv: int = 0):
    """Polynomial factor P_n(x) or one of its first two derivatives."""
    check_level(n)
    x = np.asarray(x, dtype=float)
    if n == 0:
        val = np.ones_like(x) if deriv == 0 else np.zeros_like(x)
        return val if x.ndim else float(val)
    terms = ((1.0, n), (4.0 * n, n - 2), (4.0 * n * (n - 3), n - 4))
    out = np.zeros_like(x)
    for coef, k in terms:
        if coef == 0.0 or k < 0:
            continue
        # d^j/dx^j H_k = 2^j k!/(k-j)! H_{k-j}
        if deriv == 0:
            out = out + coef * _hermite_or_zero(k, x)
        elif deriv == 1:
            out = out + coef * 2 * k * _hermite_or_zero(k - 1, x)
        elif deriv == 2:
            out = out + coef * 4 * k * (k - 1) * _hermite_or_zero(k - 2, x)
        else:
            raise DomainError("only derivatives up to order 2 are provided")
    return out if x.ndim else float(out)


def norm_const(n: int) -> float:
    """N_n = [(n-1)(n-2) / (2^n n! sqrt(pi))]^(1/2)."""
    check_level(n)
    log_val = math.log((n - 1) * (n - 2)) - n * math.log(2.0) - log_factorial(n) - 0.5 * math.log(math.pi)
    return math.exp(0.5 * log_val)


def superpotential(x, deriv: int = 0):
    """phi(x) = x + 4x/(1+2x^2), or its derivative with ``deriv=1``."""
    x = np.asarray(x, dtype=float)
    d = 1.0 + 2.0 * x * x
    if deriv == 0:
        out = x + 4.0 * x / d
    elif deriv == 1:
        out = 1.0 + 4.0 * (1.0 - 2.0 * x * x) / (d * d)
    else:
        raise DomainError("only phi and phi' are provided")
    return out if x.ndim else float(out)


def potential(x):
    """V(x) = (x^2 + 8(2x^2 - 1)/(2x^2 + 1)^2) / 2."""
    x = np.asarray(x, dtype=float)
    d = 1.0 + 2.0 * x * x
    return 0.5 * (x * x + 8.0 * (2.0 * x * x - 1.0) / (d * d))


def energy(n: int) -> float:
    check_level(n)
    return n - 1.5


def _envelope(x):
    g = np.exp(-0.5 * x * x) / (1.0 + 2.0 * x * x)
    phi = superpotential(x)
    g1 = -phi * g
    g2 = (phi * phi - superpotential(x, 1)) * g
    return g, g1, g2


def psi(n: int, x, deriv: int = 0):
    """Eigenfunction psi_n(x) or its analytic first/second derivative."""
    x = np.asarray(x, dtype=float)
    c = norm_const(n)
    g, g1, g2 = _envelope(x)
    p0 = poly_P(n, x)
    if deriv == 0:
        out = c * p0 * g
    elif deriv == 1:
        out = c * (poly_P(n, x, 1) * g + p0 * g1)
    elif deriv == 2:
        out = c * (poly_P(n, x, 2) * g + 2.0 * poly_P(n, x, 1) * g1 + p0 * g2)
    else:
        raise DomainError("only derivatives up to order 2 are provided")
    return out if x.ndim else float(out)


@dataclass(frozen=True)
class EigenFunction:
    """Samples of psi_n and its analytic derivatives on a grid."""

    n: int
    grid_x: np.ndarray
    values: np.ndarray
    derivative_values: np.ndarray
    second_derivative_values: np.ndarray

    @classmethod
    def sample(cls, n: int, grid_x):
        grid_x = np.asarray(grid_x, dtype=float)
        if np.any(np.diff(grid_x) < 0):
            raise DomainError("grid_x must be sorted")
        return cls(n, grid_x, psi(n, grid_x), psi(n, grid_x, 1), psi(n, grid_x, 2))


@dataclass(frozen=True)
class Quadrature:
    """Gauss-Legendre rule; defaults to 800 nodes on [-12, 12]."""

    nodes: np.ndarray
    weights: np.ndarray

    @classmethod
    def gauss_legendre(cls, n_nodes=QUAD_NODES, interval=QUAD_INTERVAL):
        t, w = np.polynomial.legendre.leggauss(n_nodes)
        a, b = interval
        return cls(0.5 * (b - a) * t + 0.5 * (b + a), 0.5 * (b - a) * w)

    def inner(self, f, g) -> float:
        return float(np.sum(self.weights * np.conj(f) * g).real)

    def norm(self, f) -> float:
        return math.sqrt(self.inner(f, f))


def apply_partner_A(values, derivs, x, adjoint: bool = False):
    """A f = (f' + phi f)/sqrt(2); with ``adjoint=True`` A^dag f = (-f' + phi f)/sqrt(2)."""
    phi = superpotential(np.asarray(x, dtype=float))
    sign = -1.0 if adjoint else 1.0
    return (sign * np.asarray(derivs) + phi * np.asarray(values)) / SQRT2


def _bracket(x):
    d = 1.0 + 2.0 * x * x
    return 2.0 * (2.0 * x * x - 1.0) / (d * d)


def apply_differential_ladder(n: int, direction: str, x):
    """Apply the differential deformed ladder operator to psi_n on ``x``.

    Lowering:
    ``sqrt2 N_- = [w(x) - 1](d/dx + phi) + (d/dx + x) N_0``,
    raising:
    ``sqrt2 N_+ = -w(x)(d/dx + phi) + (-d/dx + x) N_0``,
    with ``w(x) = 2(2x^2 - 1)/(1 + 2x^2)^2``. ``N_0`` acts on psi_n as ``n``.
    """
    check_level(n)
    x = np.asarray(x, dtype=float)
    f, df = psi(n, x), psi(n, x, 1)
    phi = superpotential(x)
    w = _bracket(x)
    susy = df + phi * f
    if direction == "lower":
        out = (w - 1.0) * susy + n * (df + x * f)
    elif direction == "raise":
        out = -w * susy + n * (-df + x * f)
    else:
        raise DomainError(f"direction must be 'lower' or 'raise', got {direction!r}")
    return out / SQRT2


def ladder_coefficient(n: int, direction: str) -> float:
    """Matrix-element prefactor of the deformed ladder on level ``n``."""
    if direction == "lower":
        return math.sqrt(n) * deformation_f(n) if n >= 3 else 0.0
    return math.sqrt(n + 1) * deformation_f(n + 1) if n >= 3 else 0.0


def schrodinger_residual(n: int, x):
    """Pointwise ``-psi''/2 + V psi - E_n psi``."""
    return -0.5 * psi(n, x, 2) + potential(x) * psi(n, x) - energy(n) * psi(n, x)


def gram_matrix(levels, quad: Quadrature | None = None) -> np.ndarray:
    quad = quad or Quadrature.gauss_legendre()
    vals = np.array([psi(n, quad.nodes) for n in levels])
    return (vals * quad.weights) @ vals.T


def eigen_check(levels=(0, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12), quad: Quadrature | None = None) -> dict:
    """Orthonormality, Schrodinger and ladder-consistency diagnostics."""
    quad = quad or Quadrature.gauss_legendre()
    x = quad.nodes
    levels = list(levels)
    gram = gram_matrix(levels, quad)
    ortho = float(np.max(np.abs(gram - np.eye(len(levels)))))
    schro = max(quad.norm(schrodinger_residual(n, x)) for n in levels if n <= 10)
    ladder_low, ladder_up = 0.0, 0.0
    for n in range(4, 11):
        ref = quad.norm(psi(n, x))
        lowered = apply_differential_ladder(n, "lower", x) - ladder_coefficient(n, "lower") * psi(n - 1, x)
        raised = apply_differential_ladder(n, "raise", x) - ladder_coefficient(n, "raise") * psi(n + 1, x)
        ladder_low = max(ladder_low, quad.norm(lowered) / ref)
        ladder_up = max(ladder_up, quad.norm(raised) / ref)
    return {
        "orthonormality": ortho,
        "schrodinger": schro,
        "ladder_lower": ladder_low,
        "ladder_raise": ladder_up,
        "lower_psi3": quad.norm(apply_differential_ladder(3, "lower", x)),
        "lower_psi0": quad.norm(apply_differential_ladder(0, "lower", x)),
        "raise_psi0": quad.norm(apply_differential_ladder(0, "raise", x)),
    }
