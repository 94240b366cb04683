"""Deformed, undeformed and rescaled ladder operators on the shifted Fock basis.

The physical levels of the isotonic oscillator are ``0, 3, 4, 5, ...``. The
level ``|0>`` decouples from the rest, so every matrix here acts on the
sub-space spanned by ``|3>, |4>, ...``, indexed by the shifted label
``ñ = n - 3``. Column ``j`` of a matrix is the image of ``|ñ = j>``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UsageError

OFFSET = 3
EDGE_MARGIN = 4


@dataclass(frozen=True)
class TruncatedBasis:
    """Shifted basis ``|ñ> = |ñ + 3>`` for ``ñ = 0..n_max``."""

    n_max: int = 200
    includes_isolated_ground: bool = True

    def __post_init__(self):
        if self.n_max < 8:
            raise DomainError(f"n_max must be >= 8, got {self.n_max}")

    @property
    def offset(self) -> int:
        return OFFSET

    @property
    def dim(self) -> int:
        return self.n_max + 1

    def levels(self) -> np.ndarray:
        """Physical levels ``n = ñ + 3`` carried by the basis."""
        return np.arange(self.dim) + OFFSET

    def interior(self, margin=EDGE_MARGIN) -> np.ndarray:
        """Shifted indices far enough from the truncation edge."""
        return np.arange(self.dim - margin)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense square matrix acting on a :class:`TruncatedBasis`."""

    entries: np.ndarray
    basis: TruncatedBasis
    label: str = ""

    def __post_init__(self):
        d = self.basis.dim
        if self.entries.shape != (d, d):
            raise UsageError(f"{self.label}: expected shape {(d, d)}, got {self.entries.shape}")
        if not np.all(np.isfinite(self.entries)):
            raise DomainError(f"{self.label}: non-finite entries")

    @property
    def dim(self) -> int:
        return self.basis.dim

    def _check(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        if other.basis != self.basis:
            raise UsageError(f"basis mismatch between {self.label!r} and {other.label!r}")
        return None

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.entries @ other.entries, self.basis, f"{self.label}{other.label}")

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.entries + other.entries, self.basis, f"({self.label}+{other.label})")

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.entries - other.entries, self.basis, f"({self.label}-{other.label})")

    def __mul__(self, scalar):
        return OperatorMatrix(self.entries * scalar, self.basis, self.label)

    __rmul__ = __mul__

    def dag(self):
        return OperatorMatrix(self.entries.conj().T, self.basis, f"{self.label}^dag")

    def power(self, k: int):
        out = np.linalg.matrix_power(self.entries, k)
        return OperatorMatrix(out, self.basis, f"{self.label}^{k}")

    def commutator(self, other):
        return self @ other - other @ self

    def diagonal(self) -> np.ndarray:
        return np.diag(self.entries)

    def astype(self, dtype):
        return OperatorMatrix(self.entries.astype(dtype), self.basis, self.label)


def deformation_f(n: int, *, with_flag: bool = False):
    """Deformation function f(n) = sqrt((n-1)(n-3)).

    The radicand is negative only at ``n = 2``, a level absent from the
    spectrum; there the function returns 0 and, with ``with_flag=True``,
    reports ``degenerate=True``.
    """
    if n < 0:
        raise DomainError(f"deformation_f needs n >= 0, got {n}")
    radicand = (n - 1) * (n - 3)
    degenerate = radicand < 0
    value = 0.0 if degenerate else math.sqrt(radicand)
    return (value, degenerate) if with_flag else value


def _sqrt_int(values, dtype):
    # square roots of exact integers, taken in the working precision
    return np.sqrt(np.asarray(values, dtype=np.longdouble)).astype(dtype)


def _real_dtype(dtype):
    return np.finfo(np.dtype(dtype)).dtype


def _from_band(basis, lower_band, upper_band, diag, label, dtype):
    d = basis.dim
    m = np.zeros((d, d), dtype=dtype)
    if lower_band is not None:
        m[np.arange(1, d), np.arange(d - 1)] = lower_band
    if upper_band is not None:
        m[np.arange(d - 1), np.arange(1, d)] = upper_band
    if diag is not None:
        m[np.arange(d), np.arange(d)] = diag
    return OperatorMatrix(m, basis, label)


def build_deformed_ladders(basis: TruncatedBasis, dtype=complex):
    """Return ``(N_minus, N_plus, N_zero)`` with

    ``N_minus|n> = sqrt(n) f(n) |n-1>``, ``N_plus|n> = sqrt(n+1) f(n+1) |n+1>``
    and ``N_zero|n> = n|n>`` on physical levels.

    Each off-diagonal entry is the square root of the exact integer
    ``n (n-1) (n-3)``; with ``dtype=np.clongdouble`` the matrices carry
    extended precision.
    """
    n = basis.levels()
    # N_minus maps column ñ (level n) to row ñ-1; |3> -> 0 because f(3) = 0
    upper = _sqrt_int(n[1:] * (n[1:] - 1) * (n[1:] - 3), _real_dtype(dtype))
    n_minus = _from_band(basis, None, upper, None, "N_minus", dtype)
    n_plus = _from_band(basis, upper, None, None, "N_plus", dtype)
    n_zero = _from_band(basis, None, None, n.astype(_real_dtype(dtype)), "N_0", dtype)
    return n_minus, n_plus, n_zero


def build_undeformed_ladders(basis: TruncatedBasis, dtype=complex):
    """Return ``(a, a_dag)`` obtained by dividing out the deformation.

    ``a = f(N_0 + 1)^-1 N_minus`` and ``a_dag = f(N_0)^-1 N_plus``; on the
    sub-space this gives ``a|3> = 0``, ``a_dag|3> = 2|4>`` and the usual
    ``sqrt(n)``, ``sqrt(n+1)`` actions elsewhere.
    """
    n = basis.levels()
    rdt = _real_dtype(dtype)
    # a|n> = sqrt(n)|n-1> for n >= 4; column ñ = 0 (level 3) stays empty
    a = _from_band(basis, None, _sqrt_int(n[1:], rdt), None, "a", dtype)
    a_dag = _from_band(basis, _sqrt_int(n[:-1] + 1, rdt), None, None, "a_dag", dtype)
    return a, a_dag


def rescaling_F(n):
    """Diagonal of F = (N_0 - 2) / (N_minus N_plus) on physical levels n >= 3.

    ``N_minus N_plus |n> = (n+1) n (n-2) |n>``, so ``F(n) = 1 / (n (n+1))``.
    """
    n = np.asarray(n)
    if np.any(n < 3):
        raise DomainError("F is defined on physical levels n >= 3")
    return (n - 2) / ((n + 1) * n * (n - 2))


def build_rescaled_ladders(basis: TruncatedBasis, case: str, dtype=complex):
    """Rescaled ladder triples satisfying a Heisenberg algebra.

    ``case='i'``: ``(N_minus, calN_plus, N_1)`` with ``calN_plus = N_plus F``.
    ``case='ii'``: ``(calN_minus, N_plus, N_2)`` with ``calN_minus = F N_minus``.
    ``case='iii'``: ``(K_minus, K_plus, K_0)`` with ``G = sqrt(F)``,
    ``K_plus = N_plus G`` and ``K_minus = G N_minus``.
    The number operator of each triple is ``raise @ lower``.
    """
    case = str(case).lower()
    n_minus, n_plus, _ = build_deformed_ladders(basis, dtype)
    n = basis.levels()
    rdt = _real_dtype(dtype)
    f_diag = rescaling_F(n.astype(rdt))
    F = _from_band(basis, None, None, f_diag, "F", dtype)
    if case == "i":
        cal_plus = n_plus @ F
        lower, upper = n_minus, OperatorMatrix(cal_plus.entries, basis, "calN_plus")
        number_label = "N_1"
    elif case == "ii":
        cal_minus = F @ n_minus
        lower, upper = OperatorMatrix(cal_minus.entries, basis, "calN_minus"), n_plus
        number_label = "N_2"
    elif case == "iii":
        G = _from_band(basis, None, None, np.sqrt(f_diag), "G", dtype)
        lower = OperatorMatrix((G @ n_minus).entries, basis, "K_minus")
        upper = OperatorMatrix((n_plus @ G).entries, basis, "K_plus")
        number_label = "K_0"
    else:
        raise DomainError(f"unknown rescaling case {case!r}; expected 'i', 'ii' or 'iii'")
    number = OperatorMatrix((upper @ lower).entries, basis, number_label)
    return lower, upper, number


def casimir_h(n):
    """h(n) = (5/2) n (n+1) - n (n+1) (n + 1/2)."""
    if isinstance(n, (list, tuple)):
        n = np.asarray(n, dtype=float)
    return 2.5 * n * (n + 1) - n * (n + 1) * (n + 0.5)


SELECTORS = (
    "QUAD",
    "CASIMIR_LEFT",
    "CASIMIR_RIGHT",
    "HEIS_I",
    "HEIS_II",
    "HEIS_III",
    "NUM_III",
)


def _interior_max(op: OperatorMatrix, cols) -> float:
    return float(np.max(np.abs(op.entries[:, cols]))) if len(cols) else 0.0


def _casimir_operators(basis, dtype):
    n_minus, n_plus, n_zero = build_deformed_ladders(basis, dtype)
    n = n_zero.diagonal().real
    h = _from_band(basis, None, None, casimir_h(n), "h(N_0)", dtype)
    h_shift = _from_band(basis, None, None, casimir_h(n - 1), "h(N_0-1)", dtype)
    left = n_minus @ n_plus + h
    right = n_plus @ n_minus + h_shift
    return left, right


def casimir_value(basis: TruncatedBasis, dtype=np.clongdouble):
    """Both orderings of the Casimir on interior columns.

    Returns ``(left, right)`` as arrays of the diagonal values; off-diagonal
    entries vanish identically for these banded products.
    """
    left, right = _casimir_operators(basis, dtype)
    cols = basis.interior()
    return left.diagonal()[cols].real.astype(float), right.diagonal()[cols].real.astype(float)


def algebra_residual(basis: TruncatedBasis, which: str, dtype=np.clongdouble) -> float:
    """Max absolute entry of an algebra identity's residual on interior columns.

    Selectors are listed in :data:`SELECTORS`. Columns within
    :data:`EDGE_MARGIN` of the truncation edge are excluded, since every
    truncated commutator is wrong there.

    The default ``dtype`` is extended precision: near ``n = 200`` the
    products ``N_plus N_minus`` are of order 1e7 and double rounding alone
    leaves residuals of order 1e-9. Passing ``dtype=complex`` measures that
    rounding floor instead.
    """
    which = which.upper()
    if which not in SELECTORS:
        raise DomainError(f"unknown selector {which!r}; expected one of {SELECTORS}")
    cols = basis.interior()

    if which == "QUAD":
        n_minus, n_plus, n_zero = build_deformed_ladders(basis, dtype)
        n = n_zero.diagonal()
        target = _from_band(basis, None, None, 5 * n - 3 * n * n, "5N-3N^2", dtype)
        return _interior_max(n_plus.commutator(n_minus) - target, cols)
    if which == "CASIMIR_LEFT":
        left, _ = _casimir_operators(basis, dtype)
        return _interior_max(left, cols)
    if which == "CASIMIR_RIGHT":
        _, right = _casimir_operators(basis, dtype)
        return _interior_max(right, cols)

    ident = OperatorMatrix(np.eye(basis.dim, dtype=dtype), basis, "I")
    if which == "HEIS_I":
        lower, upper, _ = build_rescaled_ladders(basis, "i", dtype)
        return _interior_max(lower.commutator(upper) - ident, cols)
    if which == "HEIS_II":
        lower, upper, _ = build_rescaled_ladders(basis, "ii", dtype)
        return _interior_max(lower.commutator(upper) - ident, cols)
    k_minus, k_plus, k_zero = build_rescaled_ladders(basis, "iii", dtype)
    if which == "HEIS_III":
        return _interior_max(k_minus.commutator(k_plus) - ident, cols)
    raising = k_zero.commutator(k_plus) - k_plus
    lowering = k_zero.commutator(k_minus) + k_minus
    return max(_interior_max(raising, cols), _interior_max(lowering, cols))


def algebra_report(basis: TruncatedBasis, dtype=np.clongdouble) -> dict:
    """Residuals for every selector, keyed by selector name."""
    return {sel: algebra_residual(basis, sel, dtype) for sel in SELECTORS}
