"""Nonlinear and canonical coherent states on the shifted Fock basis."""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .errors import DomainError, TruncationError, UsageError
from .fockspace import TruncatedBasis, deformation_f
from .specfun import log_factorial, log_terms_nlcs

NORM_TOL = 1e-12
TAIL_TOL = 1e-12
TAIL_WIDTH = 10


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized amplitudes ``c_ñ`` over a :class:`TruncatedBasis`.

    ``family`` records how the state was built (``"nlcs"``, ``"canonical"``,
    ``"fock"`` or ``"custom"``) and ``parameter`` the complex label
    (alpha, zeta or the Fock index).
    """

    basis: TruncatedBasis
    amplitudes: np.ndarray
    label: str = ""
    parameter: complex = 0j
    family: str = "custom"

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.basis.dim,):
            raise UsageError(f"expected {self.basis.dim} amplitudes, got {amps.shape}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm2(self) -> float:
        return float(np.sum(self.probabilities))

    def tail_mass(self, width: int = TAIL_WIDTH) -> float:
        return float(np.sum(self.probabilities[self.basis.dim - width:]))

    def support(self, rel_tol: float = 1e-20) -> int:
        """Number of leading amplitudes that matter; later ones are below ``rel_tol * max``."""
        a = np.abs(self.amplitudes)
        keep = np.nonzero(a > rel_tol * a.max())[0]
        return int(keep[-1]) + 1


def _check_invariants(state: StateVector, what: str):
    total = state.norm2()
    if abs(total - 1.0) > NORM_TOL:
        raise TruncationError(f"{what}: normalization drifted to {total!r}")
    tail = state.tail_mass()
    if tail >= TAIL_TOL:
        raise TruncationError(
            f"{what}: tail mass {tail:.3e} in the last {TAIL_WIDTH} levels exceeds {TAIL_TOL:g}",
            suggested_n_max=2 * state.basis.n_max,
        )
    return state


def fock_state(k: int, basis: TruncatedBasis) -> StateVector:
    if not 0 <= k <= basis.n_max:
        raise DomainError(f"Fock index {k} outside basis 0..{basis.n_max}")
    amps = np.zeros(basis.dim, dtype=complex)
    amps[k] = 1.0
    return StateVector(basis, amps, f"fock({k})", complex(k), "fock")


def nlcs_log_weights(r: float, n_max: int) -> np.ndarray:
    """ln of the unnormalized probabilities r^(2n) / (n!(n+2)!(n+3)!)."""
    if r == 0:
        out = np.full(n_max + 1, -np.inf)
        out[0] = -math.log(12.0)
        return out
    return log_terms_nlcs(n_max, math.log(r))


def nlcs_normalization(alpha: complex, n_terms: int = 400) -> float:
    """N_alpha = (sum_n |alpha|^(2n) / (n!(n+2)!(n+3)!))^(-1/2)."""
    logs = nlcs_log_weights(abs(alpha), n_terms)
    return math.exp(-0.5 * logsumexp(logs))


def nlcs_build(alpha: complex, basis: TruncatedBasis) -> StateVector:
    """Nonlinear coherent state with ``c_n ∝ alpha^n / sqrt(n!(n+2)!(n+3)!)``.

    The factorial form differs from the running-product form
    ``sqrt((n+3)!~) f~(n+3)!`` by the constant sqrt(12), absorbed into the
    numerical normalization.
    """
    alpha = complex(alpha)
    r, theta = abs(alpha), cmath.phase(alpha)
    logs = nlcs_log_weights(r, basis.n_max)
    log_p = logs - logsumexp(logs)
    n = np.arange(basis.dim)
    amps = np.exp(0.5 * log_p) * np.exp(1j * n * theta)
    state = StateVector(basis, amps, f"nlcs({alpha})", alpha, "nlcs")
    return _check_invariants(state, f"nlcs(alpha={alpha})")


def canonical_build(zeta: complex, basis: TruncatedBasis) -> StateVector:
    """Canonical coherent state ``exp(-|zeta|^2/2) sum zeta^n/sqrt(n!) |ñ>``."""
    zeta = complex(zeta)
    r, theta = abs(zeta), cmath.phase(zeta)
    if r * r + 6 * r >= basis.n_max:
        raise TruncationError(
            f"canonical(zeta={zeta}): |zeta|^2 + 6|zeta| = {r * r + 6 * r:.2f} >= n_max={basis.n_max}",
            suggested_n_max=int(math.ceil(2 * (r * r + 6 * r))) + 10,
        )
    n = np.arange(basis.dim)
    if r == 0:
        log_amp = np.where(n == 0, 0.0, -np.inf)
    else:
        log_amp = -0.5 * r * r + n * math.log(r) - 0.5 * log_factorial(n)
    amps = np.exp(log_amp) * np.exp(1j * n * theta)
    state = StateVector(basis, amps, f"canonical({zeta})", zeta, "canonical")
    return _check_invariants(state, f"canonical(zeta={zeta})")


def ftilde_factorial(m: int) -> float:
    """Running product f(m) f(m-1) ... f(4); equals 1 at m = 3."""
    if m < 3:
        raise DomainError("defined for physical levels m >= 3")
    return math.prod(deformation_f(k) for k in range(4, m + 1))


def tilde_factorial(m: int) -> int:
    """(m)!~ = m (m-1) ... 4; equals 1 at m = 3."""
    if m < 3:
        raise DomainError("defined for physical levels m >= 3")
    return math.prod(range(4, m + 1))


def overlap(a: StateVector, b: StateVector) -> complex:
    """<a|b>."""
    if a.basis != b.basis:
        raise UsageError("overlap of states on different bases")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


@dataclass
class DivergenceReport:
    alpha_modulus: float
    term_log_magnitudes: np.ndarray
    ratio_trend: np.ndarray
    verdict: str
    n_terms: int = 0
    extended: bool = False
    notes: list = field(default_factory=list)


def dual_log_ratios(r: float, n_terms: int) -> np.ndarray:
    """Consecutive differences ln|t_n| - ln|t_{n-1}|, n = 1..n_terms-1.

    The dual coefficient is
    ``t_n = alpha^n sqrt((n+3)!/6) sqrt((n+2)! n!/2) / n!``, so each ratio is
    ``ln r + (ln(n+3) + ln(n+2) - ln n)/2``; no factorial is formed.
    """
    n = np.arange(1, n_terms, dtype=float)
    return math.log(r) + 0.5 * (np.log(n + 3) + np.log(n + 2) - np.log(n))


def dual_series_diagnose(alpha: complex, n_terms: int = 60, max_terms: int = 10**8) -> DivergenceReport:
    """Diagnose the dual-pair coefficient series.

    The verdict is ``"diverges"`` when the last five consecutive log-ratios
    are positive and strictly increasing. The ratios grow like
    ``ln|alpha| + ln(n)/2`` and so turn positive only near ``n ~ |alpha|^-2``.
    When ``n_terms`` stops short of that point the window is extended (by
    doubling, up to ``max_terms``) and the report is marked ``extended``.
    """
    if n_terms < 10:
        raise DomainError("n_terms must be >= 10")
    r = abs(complex(alpha))
    if r == 0:
        return DivergenceReport(0.0, np.array([0.0]), np.array([]), "converges", 1)

    def verdict_for(ratios):
        tail = ratios[-5:]
        return bool(np.all(tail > 0) and np.all(np.diff(tail) > 0))

    used, extended = n_terms, False
    ratios = dual_log_ratios(r, used)
    while not verdict_for(ratios) and used < max_terms:
        used = min(2 * used, max_terms)
        extended = True
        ratios = dual_log_ratios(r, used)
    # t_0 = sqrt(3!/6) sqrt(2! 0!/2) / 0! = 1
    logs = np.concatenate([[0.0], np.cumsum(ratios)])
    verdict = "diverges" if verdict_for(ratios) else "undetermined"
    notes = []
    if extended:
        notes.append(f"window extended from {n_terms} to {used} terms to reach the growing regime")
    return DivergenceReport(r, logs, ratios, verdict, used, extended, notes)
