"""Special functions and log-domain helpers.

Factorials of indices up to a few hundred overflow double precision, so every
factorial ratio in the package is assembled from :func:`log_factorial` and
exponentiated only at the end.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError, RangeError

N_TABLE = 1024
HERMITE_CAP = 400


@dataclass(frozen=True)
class LogFactorialTable:
    """Immutable table of ``ln(n!)`` for ``n = 0..size``."""

    size: int = N_TABLE
    values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.size < 1:
            raise DomainError("table size must be positive")
        vals = np.zeros(self.size + 1)
        # cumulative sum of ln(k) keeps ln(n!) - ln((n-1)!) = ln(n) to rounding
        vals[1:] = np.cumsum(np.log(np.arange(1, self.size + 1, dtype=float)))
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return self.size + 1


@lru_cache(maxsize=None)
def default_table() -> LogFactorialTable:
    return LogFactorialTable(N_TABLE)


def log_factorial(n, table=None):
    """Return ``ln(n!)``; accepts an int or an integer array."""
    table = table or default_table()
    arr = np.asarray(n)
    if np.any(arr < 0):
        raise DomainError(f"log_factorial needs n >= 0, got {n}")
    if np.any(arr > table.size):
        raise RangeError(f"log_factorial: n={n} exceeds table size {table.size}")
    out = table.values[arr]
    return float(out) if out.ndim == 0 else out


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by three-term recurrence.

    ``x`` may be a scalar or an array; the recurrence runs over ``n`` for all
    abscissae at once.
    """
    if n < 0:
        raise DomainError(f"hermite degree must be >= 0, got {n}")
    if n > HERMITE_CAP:
        raise RangeError(f"hermite degree {n} exceeds cap {HERMITE_CAP}")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if x.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(2, n + 1):
        h, h_prev = 2.0 * x * h - 2.0 * (k - 1) * h_prev, h
    return h if x.ndim else float(h)


def hermite_functions(n_max: int, x):
    """Normalized Hermite functions for ``n = 0..n_max``.

    Returns an array of shape ``(n_max + 1,) + x.shape`` holding
    ``exp(-x**2/2) * pi**-0.25 * H_n(x) / sqrt(2**n n!)``. The normalized
    recurrence never forms H_n or n! separately, so it is safe far beyond
    :data:`HERMITE_CAP`.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * x * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


def assoc_laguerre(n: int, k: int, x):
    """Associated Laguerre polynomial L_n^k(x).

    Integer ``k`` may be negative as long as ``n + k >= 0``.
    """
    if n < 0 or n + k < 0:
        raise DomainError(f"assoc_laguerre needs n >= 0 and n + k >= 0, got n={n}, k={k}")
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev if x.ndim else float(l_prev)
    l_cur = 1.0 + k - x
    for j in range(1, n):
        l_cur, l_prev = ((2 * j + 1 + k - x) * l_cur - (j + k) * l_prev) / (j + 1), l_cur
    return l_cur if x.ndim else float(l_cur)


def log_term_nlcs(n: int, log_r: float, table=None) -> float:
    """ln(r**(2n) / (n! (n+2)! (n+3)!)) with ``log_r = ln r``."""
    if not math.isfinite(log_r):
        raise DomainError("log_r must be finite; handle r = 0 separately")
    lf = lambda m: log_factorial(m, table)
    return 2 * n * log_r - lf(n) - lf(n + 2) - lf(n + 3)


def log_terms_nlcs(n_max: int, log_r: float, table=None) -> np.ndarray:
    """Vectorized :func:`log_term_nlcs` for ``n = 0..n_max``."""
    if not math.isfinite(log_r):
        raise DomainError("log_r must be finite; handle r = 0 separately")
    n = np.arange(n_max + 1)
    return (
        2 * n * log_r
        - log_factorial(n, table)
        - log_factorial(n + 2, table)
        - log_factorial(n + 3, table)
    )

